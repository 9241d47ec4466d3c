#include "slicereg/calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace slicereg {

namespace {

std::complex<double> base_point(const Quaternion& x) {
  return {x.re(), x.im().norm()};
}

void require_in_domain(const SliceFunction& f, const Quaternion& x) {
  if (!f.domain().contains(x))
    throw std::domain_error("point outside the function domain");
}

}  // namespace

Quaternion slice_derivative(const SliceFunction& f, const Quaternion& x) {
  require_in_domain(f, x);
  const ComplexifiedQuaternion d = stem_dz(f.stem().jet(base_point(x)));
  const Quaternion v = x.im();
  const double beta = v.norm();
  if (beta == 0.0) return d.p;  // F2 partials are odd/even so I(dF/dz) -> first component
  return induce(d, ImaginaryUnit(v / beta));
}

Quaternion conj_slice_derivative(const SliceFunction& f, const Quaternion& x) {
  require_in_domain(f, x);
  const ComplexifiedQuaternion d = stem_dzbar(f.stem().jet(base_point(x)));
  const Quaternion v = x.im();
  const double beta = v.norm();
  if (beta == 0.0) return d.p;
  return induce(d, ImaginaryUnit(v / beta));
}

Quaternion spherical_derivative(const SliceFunction& f, const Quaternion& x) {
  require_in_domain(f, x);
  const Quaternion v = x.im();
  if (v.norm() == 0.0) return slice_derivative(f, x);
  return 0.5 * (inverse(v) * (f(x) - f(x.conj())));
}

SliceFunction spherical_derivative_function(const SliceFunction& f) {
  return SliceFunction(f.stem().spherical_stem(), f.domain());
}

double mixed_derivative_identity_residual(const SliceFunction& f, const Quaternion& x) {
  const Quaternion ds = spherical_derivative(f, x);
  const Quaternion dds = slice_derivative(spherical_derivative_function(f), x);
  const Quaternion lhs = slice_derivative(f, x);
  return (lhs - 2.0 * (x.im() * dds) - ds).norm();
}

Quaternion spherical_monomial(const Quaternion& y, int n, const Quaternion& x) {
  if (n < 0) throw std::invalid_argument("spherical monomial index must be >= 0");
  const RealQuadratic delta = characteristic_poly(y);
  Quaternion pow = Quaternion::one();
  const Quaternion d = delta.eval(x);
  for (int m = 0; m < n / 2; ++m) pow = pow * d;
  if (n % 2 == 1) pow = pow * (x - y);
  return pow;
}

SphericalExpansion expansion_coefficients(const SliceFunction& f, const Quaternion& y,
                                          int order) {
  if (order < 0) throw std::invalid_argument("expansion order must be >= 0");
  if (y.im().is_zero(0.0))
    throw std::invalid_argument("spherical expansion center must be non-real");
  const QuatPoly* p = f.stem().poly();
  if (p == nullptr)
    throw std::invalid_argument("expansion coefficients require a polynomial stem");

  const RealQuadratic delta = characteristic_poly(y);
  SphericalExpansion e;
  e.center = y;
  e.coeffs.assign(order + 1, Quaternion::zero());
  QuatPoly cur = *p;
  for (int m = 0; 2 * m <= order; ++m) {
    const auto div = cur.divide_by_real_quadratic(delta);
    e.coeffs[2 * m] = div.r0 + y * div.r1;
    if (2 * m + 1 <= order) e.coeffs[2 * m + 1] = div.r1;
    cur = div.quotient;
    if (cur.is_zero()) break;
  }
  return e;
}

Quaternion evaluate_expansion(const SphericalExpansion& e, const Quaternion& x) {
  const RealQuadratic delta = characteristic_poly(e.center);
  const Quaternion d = delta.eval(x);
  const Quaternion shift = x - e.center;
  Quaternion pow = Quaternion::one();
  Quaternion acc = Quaternion::zero();
  for (std::size_t n = 0; n < e.coeffs.size(); ++n) {
    if (n % 2 == 0) {
      if (n > 0) pow = pow * d;
      acc += pow * e.coeffs[n];
    } else {
      acc += pow * shift * e.coeffs[n];
    }
  }
  return acc;
}

LocalCoefficients local_expansion_coefficients(const SliceFunction& f,
                                               const Quaternion& x) {
  const Quaternion v = x.im();
  if (v.is_zero(0.0))
    throw std::invalid_argument("local expansion coefficients need a non-real point");
  LocalCoefficients c;
  c.s1 = spherical_derivative(f, x);
  c.s2 = inverse(2.0 * v) * (slice_derivative(f, x) - c.s1);
  return c;
}

}  // namespace slicereg
