#include "ovs/cone.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "ovs/eigen.hpp"
#include "ovs/errors.hpp"
#include "ovs/lp.hpp"
#include "ovs/nnls.hpp"
#include "ovs/seminorm.hpp"
#include "ovs/svec.hpp"

namespace ovs {

const char* to_string(ConeKind k) {
  switch (k) {
    case ConeKind::Orthant: return "orthant";
    case ConeKind::VPoly: return "vpoly";
    case ConeKind::HPoly: return "hpoly";
    case ConeKind::IceCream: return "ice_cream";
    case ConeKind::Psd: return "psd";
    case ConeKind::Zero: return "zero";
    case ConeKind::Full: return "full";
    case ConeKind::DeclaredClosure: return "declared_closure";
  }
  return "?";
}

bool ConePredicate::holds(const Vector& x, double tol) const {
  const double scale = std::max(1.0, norm_inf(x));
  for (const auto& piece : pieces) {
    bool ok = true;
    for (const auto& h : piece.strict)
      if (!(dot(h, x) > 0.0)) ok = false;
    for (const auto& h : piece.weak)
      if (dot(h, x) < -tol * scale * std::max(1.0, norm2(h))) ok = false;
    for (const auto& h : piece.equal)
      if (std::fabs(dot(h, x)) > tol * scale * std::max(1.0, norm2(h))) ok = false;
    if (ok) return true;
  }
  return false;
}

struct Cone::Impl {
  ConeKind kind = ConeKind::Zero;
  std::size_t dim = 0;
  std::vector<Vector> data;
  std::size_t side = 0;
  std::shared_ptr<const Seminorm> ice;
  ConePredicate predicate;
  std::shared_ptr<const Cone> closure;

  mutable std::once_flag gen_once;
  mutable ConeGenerators gens;
  mutable std::once_flag normal_once;
  mutable std::vector<Vector> normals;
};

namespace {

void check_dims(const std::vector<Vector>& vs, std::size_t dim, const char* what) {
  for (const auto& v : vs) {
    if (v.size() != dim) throw DimensionError(std::string(what) + ": vector dimension mismatch");
    v.require_finite(what);
  }
}

// -g in cone(G)?
bool negation_in_cone(const std::vector<Vector>& gens, const Vector& g, const TolerancePolicy& tol) {
  const std::size_t d = g.size();
  LPProblem lp;
  lp.objective = Vector(gens.size());
  lp.constraints = DenseMatrix(d, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < d; ++i) lp.constraints(i, j) = gens[j][i];
  lp.kinds.assign(d, RowKind::Equal);
  lp.rhs = -g;
  return solve_lp(lp, tol).status == LpStatus::Optimal;
}

ConeGenerators vpoly_generators(const std::vector<Vector>& data, std::size_t dim, const TolerancePolicy& tol) {
  std::vector<Vector> lineal, others;
  for (const auto& g : data) {
    if (norm2(g) <= tol.abs_tol) continue;
    (negation_in_cone(data, g, tol) ? lineal : others).push_back(g);
  }
  ConeGenerators out;
  Subspace l(dim);
  if (!lineal.empty()) l = orthonormalize(lineal, dim, tol);
  out.lineality = l.basis();
  for (const auto& g : others) {
    Vector r = g - l.project(g);
    const double n = norm2(r);
    if (n <= tol.abs_tol) continue;
    r *= 1.0 / n;
    bool dup = false;
    for (const auto& s : out.rays) dup = dup || max_abs_diff(s, r) <= 1e-12;
    if (!dup) out.rays.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Cone Cone::orthant(std::size_t dim) {
  if (dim == 0) throw DimensionError("orthant: zero dimension");
  auto impl = std::make_shared<Impl>();
  impl->kind = ConeKind::Orthant;
  impl->dim = dim;
  return Cone(impl);
}

Cone Cone::vpoly(std::size_t dim, std::vector<Vector> generators) {
  if (dim == 0) throw DimensionError("vpoly: zero dimension");
  check_dims(generators, dim, "vpoly generator");
  auto impl = std::make_shared<Impl>();
  impl->kind = ConeKind::VPoly;
  impl->dim = dim;
  impl->data = std::move(generators);
  return Cone(impl);
}

Cone Cone::hpoly(std::size_t dim, std::vector<Vector> normals) {
  if (dim == 0) throw DimensionError("hpoly: zero dimension");
  check_dims(normals, dim, "hpoly normal");
  auto impl = std::make_shared<Impl>();
  impl->kind = ConeKind::HPoly;
  impl->dim = dim;
  impl->data = std::move(normals);
  return Cone(impl);
}

Cone Cone::ice_cream(const Seminorm& p) {
  auto impl = std::make_shared<Impl>();
  impl->kind = ConeKind::IceCream;
  impl->dim = p.dim() + 1;
  impl->ice = std::make_shared<const Seminorm>(p);
  return Cone(impl);
}

Cone Cone::psd(std::size_t side) {
  if (side == 0) throw DimensionError("psd: zero side");
  auto impl = std::make_shared<Impl>();
  impl->kind = ConeKind::Psd;
  impl->side = side;
  impl->dim = svec_dim(side);
  return Cone(impl);
}

Cone Cone::zero(std::size_t dim) {
  if (dim == 0) throw DimensionError("zero cone: zero dimension");
  auto impl = std::make_shared<Impl>();
  impl->kind = ConeKind::Zero;
  impl->dim = dim;
  return Cone(impl);
}

Cone Cone::full(std::size_t dim) {
  if (dim == 0) throw DimensionError("full cone: zero dimension");
  auto impl = std::make_shared<Impl>();
  impl->kind = ConeKind::Full;
  impl->dim = dim;
  return Cone(impl);
}

Cone Cone::declared_closure(ConePredicate predicate, Cone closure) {
  if (!closure.is_closed()) throw std::invalid_argument("declared_closure: the closure must be a closed cone");
  for (const auto& piece : predicate.pieces) {
    check_dims(piece.strict, closure.dim(), "declared_closure predicate");
    check_dims(piece.weak, closure.dim(), "declared_closure predicate");
    check_dims(piece.equal, closure.dim(), "declared_closure predicate");
  }
  // predicate => closure, on a deterministic sample
  const TolerancePolicy tol;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> g;
  for (int i = 0; i < 2000; ++i) {
    Vector x(closure.dim());
    for (auto& v : x) v = g(rng);
    if (i % 4 == 0) x = sample_cone(closure, rng);
    if (predicate.holds(x, tol.abs_tol) && !closure.contains(x, tol))
      throw PreconditionError("declared_closure: predicate admits a point outside the declared closure", x.values());
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = ConeKind::DeclaredClosure;
  impl->dim = closure.dim();
  impl->predicate = std::move(predicate);
  impl->closure = std::make_shared<const Cone>(std::move(closure));
  return Cone(impl);
}

ConeKind Cone::kind() const noexcept { return impl_->kind; }
std::size_t Cone::dim() const noexcept { return impl_->dim; }

bool Cone::is_polyhedral() const noexcept {
  switch (impl_->kind) {
    case ConeKind::Orthant:
    case ConeKind::VPoly:
    case ConeKind::HPoly:
    case ConeKind::Zero:
    case ConeKind::Full: return true;
    default: return false;
  }
}

bool Cone::contains(const Vector& x, const TolerancePolicy& tol) const {
  if (x.size() != impl_->dim) throw DimensionError("Cone::contains: dimension mismatch");
  const double scale = std::max(1.0, norm_inf(x));
  const double slack = tol.abs_tol * scale;
  switch (impl_->kind) {
    case ConeKind::Orthant:
      return *std::min_element(x.begin(), x.end()) >= -slack;
    case ConeKind::Zero:
      return norm_inf(x) <= tol.abs_tol;
    case ConeKind::Full:
      return true;
    case ConeKind::HPoly:
      for (const auto& h : impl_->data)
        if (dot(h, x) < -slack * norm2(h)) return false;
      return true;
    case ConeKind::VPoly: {
      if (impl_->data.empty()) return norm_inf(x) <= tol.abs_tol;
      const auto a = DenseMatrix::from_columns(impl_->data, impl_->dim);
      return solve_nnls(a, x, tol).residual_norm <= slack;
    }
    case ConeKind::IceCream: {
      const Vector head = slice(x, 0, impl_->dim - 1);
      const double t = x[impl_->dim - 1];
      return impl_->ice->eval(head) <= t + slack;
    }
    case ConeKind::Psd:
      return min_eigenvalue(smat(x)) >= -slack;
    case ConeKind::DeclaredClosure:
      return impl_->predicate.holds(x, tol.abs_tol);
  }
  return false;
}

const ConeGenerators& Cone::generators() const {
  if (!is_polyhedral())
    throw UnsupportedError(std::string("generators: cone kind ") + to_string(kind()) + " is not polyhedral");
  std::call_once(impl_->gen_once, [this] {
    const std::size_t d = impl_->dim;
    ConeGenerators g;
    switch (impl_->kind) {
      case ConeKind::Orthant:
        for (std::size_t i = 0; i < d; ++i) g.rays.push_back(Vector::unit(d, i));
        break;
      case ConeKind::Full:
        for (std::size_t i = 0; i < d; ++i) g.lineality.push_back(Vector::unit(d, i));
        break;
      case ConeKind::Zero: break;
      case ConeKind::VPoly: g = vpoly_generators(impl_->data, d, TolerancePolicy{}); break;
      case ConeKind::HPoly: g = dd_generators(impl_->data, d); break;
      default: break;
    }
    impl_->gens = std::move(g);
  });
  return impl_->gens;
}

std::vector<Vector> Cone::generator_list() const {
  const auto& g = generators();
  std::vector<Vector> out = g.rays;
  for (const auto& l : g.lineality) {
    out.push_back(l);
    out.push_back(-l);
  }
  return out;
}

const std::vector<Vector>& Cone::normals() const {
  if (!is_polyhedral())
    throw UnsupportedError(std::string("normals: cone kind ") + to_string(kind()) + " is not polyhedral");
  std::call_once(impl_->normal_once, [this] {
    const std::size_t d = impl_->dim;
    std::vector<Vector> n;
    switch (impl_->kind) {
      case ConeKind::Orthant:
        for (std::size_t i = 0; i < d; ++i) n.push_back(Vector::unit(d, i));
        break;
      case ConeKind::Zero:
        for (std::size_t i = 0; i < d; ++i) {
          n.push_back(Vector::unit(d, i));
          n.push_back(-Vector::unit(d, i));
        }
        break;
      case ConeKind::Full: break;
      case ConeKind::HPoly:
        for (const auto& h : impl_->data)
          if (norm2(h) > 0.0) n.push_back(h);
        break;
      case ConeKind::VPoly: {
        const auto& g = generators();
        n = dd_normals(g.rays, g.lineality, d);
        break;
      }
      default: break;
    }
    impl_->normals = std::move(n);
  });
  return impl_->normals;
}

const std::vector<Vector>& Cone::data() const { return impl_->data; }

std::size_t Cone::psd_side() const {
  if (impl_->kind != ConeKind::Psd) throw std::logic_error("psd_side: not a PSD cone");
  return impl_->side;
}

const Seminorm& Cone::ice_cream_seminorm() const {
  if (impl_->kind != ConeKind::IceCream) throw std::logic_error("ice_cream_seminorm: not an ice-cream cone");
  return *impl_->ice;
}

const ConePredicate& Cone::predicate() const {
  if (impl_->kind != ConeKind::DeclaredClosure) throw std::logic_error("predicate: not a declared-closure cone");
  return impl_->predicate;
}

const Cone& Cone::closure() const { return impl_->closure ? *impl_->closure : *this; }

std::string Cone::describe() const {
  std::ostringstream os;
  os << to_string(kind()) << "(";
  switch (kind()) {
    case ConeKind::VPoly:
    case ConeKind::HPoly:
      for (std::size_t i = 0; i < impl_->data.size(); ++i) os << (i ? "," : "") << to_string(impl_->data[i], 6);
      break;
    case ConeKind::IceCream: os << impl_->ice->describe(); break;
    case ConeKind::Psd: os << "side=" << impl_->side; break;
    case ConeKind::DeclaredClosure:
      os << impl_->predicate.description << "; closure=" << impl_->closure->describe();
      break;
    default: os << impl_->dim;
  }
  os << ")";
  return os.str();
}

Subspace lineality_space(const Cone& k, const TolerancePolicy& tol) {
  const std::size_t d = k.dim();
  switch (k.kind()) {
    case ConeKind::Orthant:
    case ConeKind::Psd:
    case ConeKind::Zero: return Subspace(d);
    case ConeKind::Full: return Subspace::full(d);
    case ConeKind::VPoly: {
      const auto& l = k.generators().lineality;
      return l.empty() ? Subspace(d) : orthonormalize(l, d, tol);
    }
    case ConeKind::HPoly: {
      if (k.data().empty()) return Subspace::full(d);
      return null_space(DenseMatrix::from_rows(k.data(), d), tol);
    }
    case ConeKind::IceCream: {
      const Subspace kern = seminorm_kernel(k.ice_cream_seminorm(), tol);
      std::vector<Vector> lifted;
      for (const auto& b : kern.basis()) lifted.push_back(concat(b, Vector{0.0}));
      return lifted.empty() ? Subspace(d) : orthonormalize(lifted, d, tol);
    }
    case ConeKind::DeclaredClosure: return lineality_space(k.closure(), tol);
  }
  throw UnsupportedError("lineality_space: unsupported cone");
}

bool is_proper(const Cone& k, const TolerancePolicy& tol) { return lineality_space(k, tol).is_zero(); }

ArchimedeanReport is_archimedean(const Cone& k, const TolerancePolicy& tol, std::uint64_t seed) {
  ArchimedeanReport r;
  if (k.kind() != ConeKind::DeclaredClosure) {
    r.archimedean = is_proper(k, tol);
    r.reason = r.archimedean ? "closed and proper" : "closed but not proper";
    return r;
  }
  const Cone& cl = k.closure();
  std::vector<Vector> candidates;
  if (cl.is_polyhedral()) {
    const auto gens = cl.generator_list();
    candidates = gens;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) candidates.push_back(gens[i] + gens[j]);
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 2000; ++i) candidates.push_back(sample_cone(cl, rng));
  for (const auto& c : candidates) {
    if (cl.contains(c, tol) && !k.contains(c, tol)) {
      r.archimedean = false;
      r.reason = "not algebraically closed: a point of the closure lies outside the cone";
      r.witness = c;
      return r;
    }
  }
  r.archimedean = is_proper(cl, tol);
  r.reason = r.archimedean ? "no closure point outside the cone was found and the closure is proper"
                           : "not proper";
  return r;
}

Cone dual_cone(const Cone& k) {
  switch (k.kind()) {
    case ConeKind::Orthant: return Cone::orthant(k.dim());
    case ConeKind::Full: return Cone::zero(k.dim());
    case ConeKind::Zero: return Cone::full(k.dim());
    case ConeKind::VPoly: return Cone::hpoly(k.dim(), k.data());
    case ConeKind::HPoly:
      if (k.data().empty()) return Cone::zero(k.dim());
      return Cone::vpoly(k.dim(), k.data());
    default:
      throw UnsupportedError(std::string("dual_cone: cone kind ") + to_string(k.kind()) + " is not polyhedral");
  }
}

Cone convert_representation(const Cone& k, const TolerancePolicy& tol) {
  if (k.dim() > kMaxConversionDim)
    throw UnsupportedError("convert_representation: dimension " + std::to_string(k.dim()) +
                           " exceeds the guard of " + std::to_string(kMaxConversionDim));
  (void)tol;
  switch (k.kind()) {
    case ConeKind::VPoly:
    case ConeKind::Orthant: return Cone::hpoly(k.dim(), k.normals());
    case ConeKind::HPoly: {
      auto gens = k.generator_list();
      return Cone::vpoly(k.dim(), std::move(gens));
    }
    default:
      throw UnsupportedError(std::string("convert_representation: cone kind ") + to_string(k.kind()) +
                             " has no V/H representation");
  }
}

Vector sample_cone(const Cone& k, std::mt19937_64& rng) {
  const std::size_t d = k.dim();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> gauss;
  switch (k.kind()) {
    case ConeKind::Psd: {
      const std::size_t n = k.psd_side();
      const std::size_t rank = 1 + static_cast<std::size_t>(unif(rng) * static_cast<double>(n)) % n;
      DenseMatrix b(n, rank);
      for (std::size_t i = 0; i < n * rank; ++i) b.data()[i] = gauss(rng);
      return svec(b * b.transpose());
    }
    case ConeKind::IceCream: {
      Vector x(d - 1);
      for (auto& v : x) v = gauss(rng);
      const double extra = unif(rng) < 0.3 ? 0.0 : expo(rng);
      return concat(x, Vector{k.ice_cream_seminorm().eval(x) + extra});
    }
    case ConeKind::DeclaredClosure: {
      const TolerancePolicy tol;
      for (int attempt = 0; attempt < 200; ++attempt) {
        Vector x = sample_cone(k.closure(), rng);
        if (k.contains(x, tol)) return x;
      }
      return Vector(d);
    }
    default: break;
  }
  const auto& g = k.generators();
  Vector x(d);
  const bool face = unif(rng) < 0.3;
  for (const auto& r : g.rays) {
    if (face && unif(rng) < 0.5) continue;
    x += expo(rng) * r;
  }
  for (const auto& l : g.lineality) x += gauss(rng) * l;
  return x;
}

}  // namespace ovs
