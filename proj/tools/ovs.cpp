// ovs: command-line surface over the library.
// Exit codes: 0 ok, 1 property failure, 2 parse error, 3 unsupported dispatch.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ovs/cstar.hpp"
#include "ovs/errors.hpp"
#include "ovs/posmaps.hpp"
#include "ovs/propcheck.hpp"
#include "ovs/spec_io.hpp"
#include "ovs/unitize.hpp"

using namespace ovs;

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kParseError = 2;
constexpr int kUnsupported = 3;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string csv(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
  return s;
}

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("OVS_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw SpecError(std::string("OVS_SEED: not an unsigned integer: ") + env);
    }
  }
  return flag;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

Vector point_for(const SpaceSpec& s, const std::string& text) {
  Vector x = parse_csv_vector(text);
  if (x.size() != s.space.dim())
    throw SpecError("point: expected " + std::to_string(s.space.dim()) + " coordinates, got " + std::to_string(x.size()));
  return x;
}

int cmd_dist(const std::string& space, const std::string& point) {
  const SpaceSpec s = load_space_spec(space);
  const Vector x = point_for(s, point);
  std::cout << num(dist_to_cone(x, s.space.cone, s.space.seminorm, s.tol)) << "\n";
  return kOk;
}

int cmd_unitize(const std::string& space, const std::string& element) {
  const SpaceSpec s = load_space_spec(space);
  const auto colon = element.rfind(':');
  if (colon == std::string::npos) throw SpecError("element: expected \"x1,...,xn:lambda\"");
  const Vector x = point_for(s, element.substr(0, colon));
  const Vector lam = parse_csv_vector(element.substr(colon + 1));
  if (lam.size() != 1) throw SpecError("element: lambda must be a single number");
  const UnitizedSpace u = build_unitization(s.space, s.tol);
  const UnitizedElement e = u.element(x, lam[0]);
  const UnitizedNorm n = order_unit_norm(u, e);
  std::cout << "in_cone: " << (unitized_contains(u, e) ? "true" : "false") << "\n";
  std::cout << "norm: " << num(n.norm) << "\n";
  std::cout << "alpha_omega: " << num(n.alpha) << "," << num(n.omega) << "\n";
  return kOk;
}

std::string render_svg(const std::vector<CrossSectionPoint>& pts, std::size_t n, double w) {
  std::ostringstream os;
  const double cell = 600.0 / static_cast<double>(n);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 600 600\" width=\"600\" height=\"600\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"white\"/>\n";
  os << "<g fill=\"#4a78b5\" stroke=\"none\">\n";
  char buf[160];
  for (const auto& p : pts) {
    if (!p.inside) continue;
    // [-w, w] maps linearly onto [0, 600]; y grows downwards in SVG
    const double cx = (p.x + w) / (2.0 * w) * 600.0;
    const double cy = (w - p.y) / (2.0 * w) * 600.0;
    std::snprintf(buf, sizeof buf, "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\"/>\n", cx - cell / 2,
                  cy - cell / 2, cell, cell);
    os << buf;
  }
  os << "</g>\n";
  os << "<line x1=\"300\" y1=\"0\" x2=\"300\" y2=\"600\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"0\" y1=\"300\" x2=\"600\" y2=\"300\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "</svg>\n";
  return os.str();
}

int cmd_crosssection(const std::string& space, std::size_t grid, double window, const std::string& out, bool decide) {
  const SpaceSpec s = load_space_spec(space);
  if (s.space.dim() != 2) throw DimensionError("crosssection: base space must be 2-dimensional");
  if (grid < 2) throw SpecError("grid: need at least 2 points per side");
  if (!(window > 0.0)) throw SpecError("window: must be positive");
  const UnitizedSpace u = build_unitization(s.space, s.tol);
  const auto pts = cross_section_grid(u, grid, window);
  if (!out.empty()) {
    if (out.size() >= 4 && out.substr(out.size() - 4) == ".svg") {
      write_file(out, render_svg(pts, grid, window));
    } else {
      std::ostringstream os;
      os << "x,y,inside,d\n";
      for (const auto& p : pts) os << num(p.x) << "," << num(p.y) << "," << (p.inside ? 1 : 0) << "," << num(p.d) << "\n";
      write_file(out, os.str());
    }
  }
  if (decide) {
    const CrossSectionDecision d = decide_cross_section(u, window);
    std::cout << "polyhedral: " << (d.polyhedral ? "true" : "false") << "\n";
    std::cout << "facets: " << d.facets << "\n";
    std::cout << "lattice: " << (d.lattice ? "true" : "false") << "\n";
    std::cout << "extreme_rays: " << d.extreme_rays << "\n";
    std::cout << "detail: " << d.detail << "\n";
  }
  return kOk;
}

int cmd_propsuite(const std::string& suite, std::uint64_t seed, const std::string& out) {
  const SuiteResult r = run_suite(suite, effective_seed(seed));
  const std::string tsv = format_suite_tsv(r);
  if (out.empty())
    std::cout << tsv;
  else
    write_file(out, tsv);
  std::size_t bad = 0;
  for (const auto& row : r.rows)
    if (!row.ok()) {
      ++bad;
      std::cerr << "unexpected: " << row.instance << " " << row.report.property << " " << to_string(row.report.verdict)
                << " (expected " << to_string(row.expected) << ")";
      if (row.report.witness) std::cerr << " witness " << csv(*row.report.witness);
      std::cerr << ": " << row.report.detail << "\n";
    }
  std::cerr << "suite " << suite << ": " << r.rows.size() << " rows, " << bad << " unexpected\n";
  return bad == 0 ? kOk : kPropertyFailure;
}

int cmd_extend(const std::string& map, const std::string& mode, std::optional<double> alpha, std::size_t samples,
               std::uint64_t seed) {
  const MapSpec m = load_map_spec(map);
  const SamplingOptions so{samples, effective_seed(seed)};
  std::optional<PositiveMap> g;
  double a = 0.0;
  try {
    if (alpha) {
      a = *alpha;
      g = extend_g_alpha(m.map, a, m.tol);
    } else if (mode == "norm-preserving") {
      a = operator_norm(m.map, m.tol);
      g = norm_preserving_extension(m.map, m.tol);
    } else if (mode == "universal") {
      a = 1.0;
      g = universal_extension(m.map, so, m.tol);
    } else if (mode == "unitize") {
      a = operator_norm(m.map, m.tol);
      g = unitize_map(m.map, m.tol);
    } else {
      throw SpecError("mode: expected universal, norm-preserving or unitize");
    }
  } catch (const PreconditionError& e) {
    std::cerr << "rejected: " << e.what();
    if (!e.witness().empty()) std::cerr << " witness " << csv(Vector(e.witness()));
    std::cerr << "\n";
    return kPropertyFailure;
  }
  const PropertyReport pos = is_positive(*g, so, m.tol);
  std::cout << "alpha: " << num(a) << "\n";
  std::cout << "positive: " << to_string(pos.verdict) << " (" << (pos.exact ? "exact" : "sampled") << ")\n";
  if (pos.witness) std::cout << "witness: " << csv(*pos.witness) << "\n";
  try {
    std::cout << "operator_norm: " << num(operator_norm(*g, m.tol)) << "\n";
  } catch (const UnsupportedError&) {
    std::cout << "operator_norm: unsupported\n";
  }
  std::cout << "matrix:\n";
  for (std::size_t i = 0; i < g->matrix.rows(); ++i) std::cout << csv(g->matrix.row(i)) << "\n";
  return kOk;
}

int cmd_cstar(std::size_t n, std::size_t samples, std::uint64_t seed) {
  const PropertyReport r = check_cstar_unitization_agreement(n, samples, effective_seed(seed));
  std::cout << r.property << ": " << to_string(r.verdict) << " samples=" << r.samples << " seed=" << r.seed << "\n";
  std::cout << "detail: " << r.detail << "\n";
  if (r.witness) std::cout << "witness: " << csv(*r.witness) << "\n";
  if (r.verdict == Verdict::PreconditionFailed) return kParseError;
  return r.passed() ? kOk : kPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ovs: seminormed preordered vector spaces and their Archimedean order unitization"};
  app.require_subcommand(1);

  std::string space, point, element, out, suite = "golden", map, mode = "universal";
  std::size_t grid = 201, samples = 10'000, side = 2;
  double window = 2.0;
  std::uint64_t seed = 0;
  std::optional<double> alpha;
  bool decide = false;

  auto* dist = app.add_subcommand("dist", "distance from a point to the cone");
  dist->add_option("--space", space, "space spec (JSON)")->required();
  dist->add_option("--point", point, "comma-separated coordinates")->required();

  auto* unit = app.add_subcommand("unitize", "membership, norm and (alpha, omega) of (x + N, lambda)");
  unit->add_option("--space", space, "space spec (JSON)")->required();
  unit->add_option("--element", element, "x1,...,xn:lambda")->required();

  auto* cs = app.add_subcommand("crosssection", "z = 1 slice of the unitized cone over a 2D base");
  cs->add_option("--space", space, "space spec (JSON)")->required();
  cs->add_option("--grid", grid, "grid points per side");
  cs->add_option("--window", window, "half-width W of [-W, W]^2");
  cs->add_option("--out", out, "output file, .csv or .svg");
  cs->add_flag("--decide", decide, "decide polyhedrality and the lattice property");

  auto* ps = app.add_subcommand("propsuite", "run a property suite");
  ps->add_option("--suite", suite, "golden | random | broken")->check(CLI::IsMember({"golden", "random", "broken"}));
  ps->add_option("--seed", seed, "suite seed (OVS_SEED overrides)");
  ps->add_option("--out", out, "report file (TSV); stdout when omitted");

  auto* ext = app.add_subcommand("extend", "extend a positive map to the unitization of its domain");
  ext->add_option("--map", map, "map spec (JSON)")->required();
  ext->add_option("--mode", mode, "universal | norm-preserving | unitize");
  ext->add_option("--alpha", alpha, "build g_alpha for this alpha instead");
  ext->add_option("--samples", samples, "positivity samples");
  ext->add_option("--seed", seed, "sampling seed (OVS_SEED overrides)");

  auto* cv = app.add_subcommand("cstar-verify", "matrix unitization agreement");
  cv->add_option("--n", side, "matrix side")->required();
  cv->add_option("--samples", samples, "random matrices");
  cv->add_option("--seed", seed, "seed (OVS_SEED overrides)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*dist) return cmd_dist(space, point);
    if (*unit) return cmd_unitize(space, element);
    if (*cs) return cmd_crosssection(space, grid, window, out, decide);
    if (*ps) return cmd_propsuite(suite, seed, out);
    if (*ext) return cmd_extend(map, mode, alpha, samples, seed);
    if (*cv) return cmd_cstar(side, cv->count("--samples") ? samples : 1000, seed);
  } catch (const SpecError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return kParseError;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
  return kParseError;
}
