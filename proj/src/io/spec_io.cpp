#include "ovs/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ovs/errors.hpp"
#include "ovs/svec.hpp"

namespace ovs {

using json = nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw SpecError(path + ": " + what); }

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) bad(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double number(const json& v, const std::string& path) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "Infinity") return kInf;
    bad(path, "expected a number, got \"" + s + "\"");
  }
  if (!v.is_number()) bad(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(path, "expected a finite number");
  return d;
}

std::size_t count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) bad(path, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

Vector vec(const json& v, const std::string& path, std::optional<std::size_t> dim = {}) {
  if (!v.is_array()) bad(path, "expected an array of numbers");
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (v[i].is_string()) bad(p, "expected a finite number");
    out[i] = number(v[i], p);
  }
  if (dim && out.size() != *dim)
    bad(path, "expected " + std::to_string(*dim) + " entries, got " + std::to_string(out.size()));
  return out;
}

std::vector<Vector> vecs(const json& v, const std::string& path, std::size_t dim) {
  if (!v.is_array()) bad(path, "expected an array of vectors");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(vec(v[i], path + "[" + std::to_string(i) + "]", dim));
  return out;
}

std::string kind_of(const json& obj, const std::string& path) {
  const json& k = field(obj, path, "kind");
  if (!k.is_string()) bad(join(path, "kind"), "expected a string");
  return k.get<std::string>();
}

TolerancePolicy parse_tolerance(const json& doc) {
  TolerancePolicy t;
  auto it = doc.find("tolerance");
  if (it == doc.end()) return t;
  if (!it->is_object()) bad("tolerance", "expected an object");
  for (const auto& [key, val] : it->items()) {
    const std::string p = "tolerance." + key;
    if (key == "abs_tol") t.abs_tol = number(val, p);
    else if (key == "rel_tol") t.rel_tol = number(val, p);
    else if (key == "bisection_tol") t.bisection_tol = number(val, p);
    else if (key == "max_iter") t.max_iter = static_cast<int>(count(val, p));
    else bad(p, "unknown tolerance field");
  }
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    bad("tolerance", e.what());
  }
  return t;
}

Cone parse_cone(const json& c, const std::string& path, std::size_t dim) {
  const std::string kind = kind_of(c, path);
  if (kind == "orthant") return Cone::orthant(dim);
  if (kind == "zero") return Cone::zero(dim);
  if (kind == "full") return Cone::full(dim);
  if (kind == "vpoly") return Cone::vpoly(dim, vecs(field(c, path, "generators"), join(path, "generators"), dim));
  if (kind == "hpoly") return Cone::hpoly(dim, vecs(field(c, path, "normals"), join(path, "normals"), dim));
  if (kind == "psd") {
    const std::size_t side = count(field(c, path, "side"), join(path, "side"));
    if (svec_dim(side) != dim)
      bad(join(path, "side"), "psd side " + std::to_string(side) + " needs dim " + std::to_string(svec_dim(side)));
    return Cone::psd(side);
  }
  if (kind == "declared_closure") {
    ConePredicate pred;
    if (auto d = c.find("description"); d != c.end() && d->is_string()) pred.description = d->get<std::string>();
    const json& pieces = field(c, path, "pieces");
    const std::string pp = join(path, "pieces");
    if (!pieces.is_array() || pieces.empty()) bad(pp, "expected a nonempty array of pieces");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const std::string ip = pp + "[" + std::to_string(i) + "]";
      if (!pieces[i].is_object()) bad(ip, "expected an object");
      ConePredicate::Piece piece;
      auto get = [&](const char* key, std::vector<Vector>& out) {
        if (auto it = pieces[i].find(key); it != pieces[i].end()) out = vecs(*it, join(ip, key), dim);
      };
      get("strict", piece.strict);
      get("weak", piece.weak);
      get("equal", piece.equal);
      pred.pieces.push_back(std::move(piece));
    }
    Cone closure = parse_cone(field(c, path, "closure"), join(path, "closure"), dim);
    return Cone::declared_closure(std::move(pred), std::move(closure));
  }
  bad(join(path, "kind"), "unknown cone kind \"" + kind + "\"");
}

double parse_q(const json& s, const std::string& path) {
  const double q = number(field(s, path, "q"), join(path, "q"));
  if (q != 1.0 && q != 2.0 && q != kInf) bad(join(path, "q"), "q must be 1, 2 or \"inf\"");
  return q;
}

Seminorm parse_seminorm(const json& s, const std::string& path, std::size_t dim, const Cone& cone,
                        const TolerancePolicy& tol) {
  const std::string kind = kind_of(s, path);
  if (kind == "lq") return Seminorm::lq(dim, parse_q(s, path));
  if (kind == "weighted_lq") {
    const Vector w = vec(field(s, path, "weights"), join(path, "weights"), dim);
    for (std::size_t i = 0; i < w.size(); ++i)
      if (!(w[i] > 0.0)) bad(join(path, "weights") + "[" + std::to_string(i) + "]", "weights must be positive");
    return Seminorm::weighted_lq(w, parse_q(s, path));
  }
  if (kind == "polytope_gauge") {
    HPolytope b;
    b.dim = dim;
    const auto normals = vecs(field(s, path, "normals"), join(path, "normals"), dim);
    Vector offsets(normals.size(), 1.0);
    if (s.contains("offsets")) offsets = vec(s["offsets"], join(path, "offsets"), normals.size());
    for (std::size_t i = 0; i < normals.size(); ++i) b.add(normals[i], offsets[i]);
    return Seminorm::polytope_gauge(b, tol);
  }
  if (kind == "order_unit") return Seminorm::order_unit(cone, vec(field(s, path, "unit"), join(path, "unit"), dim), tol);
  if (kind == "pullback") {
    const json& m = field(s, path, "matrix");
    const auto rows = vecs(m, join(path, "matrix"), dim);
    if (rows.empty()) bad(join(path, "matrix"), "expected at least one row");
    const json& inner = field(s, path, "inner");
    const std::string ip = join(path, "inner");
    // the inner seminorm lives on R^rows; an order-unit inner seminorm is not supported here
    if (kind_of(inner, ip) == "order_unit" || kind_of(inner, ip) == "pullback")
      bad(join(ip, "kind"), "inner seminorm must be lq, weighted_lq or polytope_gauge");
    return Seminorm::pullback(DenseMatrix::from_rows(rows, dim), parse_seminorm(inner, ip, rows.size(), cone, tol));
  }
  bad(join(path, "kind"), "unknown seminorm kind \"" + kind + "\"");
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) line += text[i] == '\n';
    throw SpecError("line " + std::to_string(line) + ": JSON syntax error: " + e.what());
  }
}

SpaceSpec space_from_json(const json& doc, const std::string& path) {
  if (!doc.is_object()) bad(path.empty() ? "document" : path, "expected an object");
  const std::size_t dim = count(field(doc, path, "dim"), join(path, "dim"));
  if (dim == 0) bad(join(path, "dim"), "dimension must be positive");
  SpaceSpec out{SeminormedSpace{Cone::zero(dim), Seminorm::lq(dim, 2.0)}, std::nullopt, parse_tolerance(doc)};
  try {
    out.space.cone = parse_cone(field(doc, path, "cone"), join(path, "cone"), dim);
    out.space.seminorm = parse_seminorm(field(doc, path, "seminorm"), join(path, "seminorm"), dim, out.space.cone, out.tol);
    if (auto it = doc.find("unit"); it != doc.end()) {
      out.unit = vec(*it, join(path, "unit"), dim);
      // validates the unit
      Seminorm::order_unit(out.space.cone, *out.unit, out.tol);
    }
    out.space.validate();
  } catch (const SpecError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    // library validation (order unit rejected, asymmetric polytope, ...)
    bad(path.empty() ? "document" : path, e.what());
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

MapSpace SpaceSpec::as_map_space() const {
  if (unit) return aou_space(space.cone, *unit, tol);
  return space;
}

SpaceSpec parse_space_spec(const std::string& text) { return space_from_json(parse_json(text), ""); }

SpaceSpec load_space_spec(const std::string& path) {
  try {
    return parse_space_spec(read_file(path));
  } catch (const SpecError& e) {
    if (std::string(e.what()).rfind(path, 0) == 0) throw;
    throw SpecError(path + ": " + e.what());
  }
}

MapSpec parse_map_spec(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) bad("document", "expected an object");
  const SpaceSpec dom = space_from_json(field(doc, "", "domain"), "domain");
  const SpaceSpec cod = space_from_json(field(doc, "", "codomain"), "codomain");
  const auto rows = vecs(field(doc, "", "matrix"), "matrix", dom.space.dim());
  if (rows.size() != cod.space.dim())
    bad("matrix", "expected " + std::to_string(cod.space.dim()) + " rows, got " + std::to_string(rows.size()));
  return MapSpec{PositiveMap(DenseMatrix::from_rows(rows, dom.space.dim()), dom.as_map_space(), cod.as_map_space()),
                 parse_tolerance(doc)};
}

MapSpec load_map_spec(const std::string& path) {
  try {
    return parse_map_spec(read_file(path));
  } catch (const SpecError& e) {
    if (std::string(e.what()).rfind(path, 0) == 0) throw;
    throw SpecError(path + ": " + e.what());
  }
}

Vector parse_csv_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw SpecError("point: cannot parse \"" + item + "\" as a number");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size() || !std::isfinite(v)) throw SpecError("point: cannot parse \"" + item + "\" as a number");
    out.push_back(v);
  }
  if (out.empty() || (!text.empty() && text.back() == ','))
    throw SpecError("point: expected comma-separated numbers, got \"" + text + "\"");
  return Vector(std::move(out));
}

}  // namespace ovs
