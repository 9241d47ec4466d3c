#include "slicereg/slice_function.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace slicereg {

CircularDomain::CircularDomain(double alpha_lo, double alpha_hi, double beta_lo,
                               double beta_hi)
    : a0_(alpha_lo), a1_(alpha_hi), b0_(beta_lo), b1_(beta_hi) {
  if (!(a0_ <= a1_) || !(b0_ <= b1_))
    throw std::invalid_argument("circular domain: empty rectangle");
  if (b0_ < 0.0)
    throw std::invalid_argument("circular domain: beta lower bound must be >= 0");
}

bool CircularDomain::contains(const Quaternion& x, double tol) const {
  const double a = x.re();
  const double b = x.im().norm();
  return a >= a0_ - tol && a <= a1_ + tol && b >= b0_ - tol && b <= b1_ + tol;
}

bool CircularDomain::contains_z(std::complex<double> z, double tol) const {
  const double a = z.real();
  const double b = std::abs(z.imag());
  return a >= a0_ - tol && a <= a1_ + tol && b >= b0_ - tol && b <= b1_ + tol;
}

namespace {

// Parity spot check for closure stems: F(conj z) must equal conj_bar(F(z)).
void check_closure_parity(const StemFunction& stem, const CircularDomain& dom) {
  std::mt19937_64 rng(0x5712c3u);
  std::uniform_real_distribution<double> ua(dom.alpha_lo(), dom.alpha_hi());
  const double blo = std::min(
      std::max({dom.beta_lo(), 1e-3 * (dom.beta_hi() - dom.beta_lo()), 1e-6}),
      dom.beta_hi());
  std::uniform_real_distribution<double> ub(blo, dom.beta_hi());
  for (int n = 0; n < 16; ++n) {
    const std::complex<double> z(ua(rng), ub(rng));
    const ComplexifiedQuaternion up = stem.value(z);
    const ComplexifiedQuaternion dn = stem.value(std::conj(z));
    const double scale = 1.0 + up.norm();
    if ((dn - up.conj_bar()).norm() > 1e-8 * scale)
      throw std::invalid_argument(
          "stem parity violated: F1 must be even and F2 odd in Im(z)");
  }
}

}  // namespace

SliceFunction::SliceFunction(StemFunction stem, CircularDomain domain)
    : stem_(std::move(stem)), domain_(domain) {
  if (stem_.kind() == StemFunction::Kind::two_slice && domain_.intersects_real())
    throw std::invalid_argument(
        "two-slice stems are defined off the real axis; beta lower bound must be > 0");
  if (stem_.kind() == StemFunction::Kind::closure)
    check_closure_parity(stem_, domain_);
}

Quaternion SliceFunction::operator()(const Quaternion& x) const {
  if (!domain_.contains(x))
    throw std::domain_error("slice function evaluated outside its domain");
  const Quaternion v = x.im();
  const double beta = v.norm();
  if (beta == 0.0) {
    if (!domain_.intersects_real())
      throw std::domain_error("slice function domain does not meet the real axis");
    // F2 vanishes on the axis by parity; f(alpha) = F1(alpha).
    return stem_.value(std::complex<double>(x.re(), 0.0)).p;
  }
  const ImaginaryUnit I(v / beta);
  return induce(stem_.value(std::complex<double>(x.re(), beta)), I);
}

Quaternion representation_reconstruct(const Quaternion& vj, const Quaternion& vk,
                                      const ImaginaryUnit& J, const ImaginaryUnit& K,
                                      const SliceCoordinates& target) {
  const Quaternion jq = J.value();
  const Quaternion kq = K.value();
  if ((jq - kq).norm() <= 1e-9)
    throw std::invalid_argument("representation formula requires two distinct units");
  const Quaternion iq = target.unit.value();
  const Quaternion m = inverse(jq - kq);
  return (iq - kq) * m * vj - (iq - jq) * m * vk;
}

SliceFunction slice_product(const SliceFunction& f, const SliceFunction& g) {
  if (!(f.domain() == g.domain()))
    throw std::invalid_argument("slice product requires equal domains");
  return SliceFunction(f.stem().multiply(g.stem()), f.domain());
}

SliceFunction conjugate(const SliceFunction& f) {
  return SliceFunction(f.stem().conjugated(), f.domain());
}

SliceFunction normal(const SliceFunction& f) {
  StemFunction n = f.stem().multiply(f.stem().conjugated());
  if (n.kind() == StemFunction::Kind::polynomial) {
    const QuatPoly& p = *n.poly();
    const double scale = std::max(1.0, p.coeff_norm());
    std::vector<Quaternion> realified(p.coeffs().size());
    for (std::size_t i = 0; i < realified.size(); ++i) {
      const Quaternion& c = p.coeffs()[i];
      if (c.im().norm() > 1e-10 * scale)
        throw std::logic_error("normal function produced a non-real coefficient");
      realified[i] = Quaternion::real(c.re());
    }
    n = StemFunction::polynomial(QuatPoly(std::move(realified)));
  }
  return SliceFunction(std::move(n), f.domain());
}

SliceFunction subtract_constant(const SliceFunction& f, const Quaternion& q) {
  return SliceFunction(f.stem().subtract_constant(q), f.domain());
}

namespace {

// Probe points shared by the pointwise predicates.
std::vector<std::complex<double>> probe_points(const CircularDomain& dom, int n) {
  std::mt19937_64 rng(0x9e3779b9u);
  std::uniform_real_distribution<double> ua(dom.alpha_lo(), dom.alpha_hi());
  const double blo = std::min(
      std::max({dom.beta_lo(), 1e-3 * (dom.beta_hi() - dom.beta_lo()), 1e-6}),
      dom.beta_hi());
  std::uniform_real_distribution<double> ub(blo, dom.beta_hi());
  std::vector<std::complex<double>> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.emplace_back(ua(rng), ub(rng));
  return out;
}

}  // namespace

bool is_real_function(const SliceFunction& f, double tol) {
  if (const QuatPoly* p = f.stem().poly()) return p->is_real(tol);
  for (const auto& z : probe_points(f.domain(), 64)) {
    const ComplexifiedQuaternion v = f.stem().value(z);
    if (!v.p.im().is_zero(tol) || !v.q.im().is_zero(tol)) return false;
  }
  return true;
}

bool is_slice_constant(const SliceFunction& f, double tol) {
  for (const auto& z : probe_points(f.domain(), 64)) {
    if (stem_dz(f.stem().jet(z)).norm() > tol) return false;
  }
  return true;
}

Splitting splitting_decompose(const SliceFunction& f, const ImaginaryUnit& J,
                              const ImaginaryUnit& K) {
  if (std::abs(dot(J.value(), K.value())) > 1e-9)
    throw std::invalid_argument("splitting requires orthogonal units J, K");
  const Quaternion jq = J.value();
  const Quaternion kq = K.value();
  const Quaternion jk = jq * kq;

  Splitting out;
  const SliceFunction fn = f;
  out.f1 = [fn, jq](std::complex<double> z) {
    const Quaternion x = Quaternion::real(z.real()) + jq * z.imag();
    const Quaternion v = fn(x);
    return std::complex<double>(dot(v, Quaternion::one()), dot(v, jq));
  };
  out.f2 = [fn, jq, kq, jk](std::complex<double> z) {
    const Quaternion x = Quaternion::real(z.real()) + jq * z.imag();
    const Quaternion v = fn(x);
    return std::complex<double>(dot(v, kq), dot(v, jk));
  };

  if (const QuatPoly* p = f.stem().poly()) {
    std::vector<std::complex<double>> c1(p->coeffs().size()), c2(p->coeffs().size());
    for (std::size_t n = 0; n < p->coeffs().size(); ++n) {
      const Quaternion& a = p->coeffs()[n];
      c1[n] = {dot(a, Quaternion::one()), dot(a, jq)};
      c2[n] = {dot(a, kq), dot(a, jk)};
    }
    out.p1 = ComplexPoly(std::move(c1));
    out.p2 = ComplexPoly(std::move(c2));
  }
  return out;
}

std::optional<double> prodcomp_residual(const SliceFunction& f, const SliceFunction& g,
                                        const Quaternion& x) {
  const Quaternion fx = f(x);
  if (fx.norm() <= 1e-12 * (1.0 + x.norm())) return std::nullopt;
  const Quaternion moved = inverse(fx) * x * fx;
  const Quaternion lhs = slice_product(f, g)(x);
  const Quaternion rhs = fx * g(moved);
  return (lhs - rhs).norm();
}

}  // namespace slicereg
