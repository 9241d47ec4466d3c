#pragma once

#include <algorithm>
#include <complex>
#include <optional>
#include <vector>

#include "slicereg/quaternion.hpp"

namespace slicereg {

// Polynomial f(x) = sum_n x^n a_n with quaternion coefficients kept on the
// right of the powers. The product convolves with left-factor coefficients on
// the left: c_n = sum_m a_m b_{n-m}.
class QuatPoly {
 public:
  QuatPoly() = default;
  explicit QuatPoly(std::vector<Quaternion> coeffs) : c_(std::move(coeffs)) { trim(); }
  static QuatPoly constant(const Quaternion& a) { return QuatPoly({a}); }
  static QuatPoly identity() { return QuatPoly({Quaternion::zero(), Quaternion::one()}); }

  const std::vector<Quaternion>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Quaternion coeff(std::size_t n) const {
    return n < c_.size() ? c_[n] : Quaternion::zero();
  }

  double coeff_norm() const {
    double m = 0.0;
    for (const auto& a : c_) m = std::max(m, a.norm());
    return m;
  }

  Quaternion eval(const Quaternion& x) const {
    Quaternion r = Quaternion::zero();
    for (std::size_t n = c_.size(); n-- > 0;) r = x * r + c_[n];
    return r;
  }

  // F(z) = sum z^n a_n as an element of the complexified algebra: the stem
  // value (F1, F2) = (sum Re(z^n) a_n, sum Im(z^n) a_n).
  ComplexifiedQuaternion eval_stem(std::complex<double> z) const {
    ComplexifiedQuaternion r;
    std::complex<double> zn = 1.0;
    for (const auto& a : c_) {
      r.p += zn.real() * a;
      r.q += zn.imag() * a;
      zn *= z;
    }
    return r;
  }

  QuatPoly derivative() const {
    if (c_.size() <= 1) return QuatPoly();
    std::vector<Quaternion> d(c_.size() - 1);
    for (std::size_t n = 1; n < c_.size(); ++n) d[n - 1] = static_cast<double>(n) * c_[n];
    return QuatPoly(std::move(d));
  }

  QuatPoly conj() const {
    std::vector<Quaternion> d(c_.size());
    for (std::size_t n = 0; n < c_.size(); ++n) d[n] = c_[n].conj();
    return QuatPoly(std::move(d));
  }

  bool is_real(double tol = kDefaultTol) const {
    for (const auto& a : c_)
      if (!a.im().is_zero(tol)) return false;
    return true;
  }

  friend QuatPoly operator+(const QuatPoly& a, const QuatPoly& b) {
    std::vector<Quaternion> d(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t n = 0; n < d.size(); ++n) d[n] = a.coeff(n) + b.coeff(n);
    return QuatPoly(std::move(d));
  }
  friend QuatPoly operator-(const QuatPoly& a, const QuatPoly& b) {
    std::vector<Quaternion> d(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t n = 0; n < d.size(); ++n) d[n] = a.coeff(n) - b.coeff(n);
    return QuatPoly(std::move(d));
  }
  friend QuatPoly operator*(const QuatPoly& a, const QuatPoly& b) {
    if (a.is_zero() || b.is_zero()) return QuatPoly();
    std::vector<Quaternion> d(a.c_.size() + b.c_.size() - 1);
    for (std::size_t m = 0; m < a.c_.size(); ++m)
      for (std::size_t n = 0; n < b.c_.size(); ++n) d[m + n] += a.c_[m] * b.c_[n];
    return QuatPoly(std::move(d));
  }
  // Right multiplication by a constant keeps the right-coefficient carrier.
  QuatPoly scaled_right(const Quaternion& c) const {
    std::vector<Quaternion> d(c_.size());
    for (std::size_t n = 0; n < c_.size(); ++n) d[n] = c_[n] * c;
    return QuatPoly(std::move(d));
  }

  struct DivisionResult;

  // Long division by a monic real quadratic: f = (r0 + x r1) + q(x) * Delta.
  // Valid with quaternion coefficients because Delta's coefficients are
  // central.
  DivisionResult divide_by_real_quadratic(const RealQuadratic& delta) const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().norm() == 0.0) c_.pop_back();
  }
  std::vector<Quaternion> c_;
};

struct QuatPoly::DivisionResult {
  QuatPoly quotient;
  Quaternion r0;  // remainder r(x) = r0 + x r1
  Quaternion r1;
};

inline QuatPoly::DivisionResult QuatPoly::divide_by_real_quadratic(
    const RealQuadratic& delta) const {
  std::vector<Quaternion> rem = c_;
  if (rem.size() < 3) {
    DivisionResult r;
    r.r0 = rem.size() > 0 ? rem[0] : Quaternion::zero();
    r.r1 = rem.size() > 1 ? rem[1] : Quaternion::zero();
    return r;
  }
  std::vector<Quaternion> quot(rem.size() - 2);
  for (std::size_t n = rem.size() - 1; n >= 2; --n) {
    const Quaternion q = rem[n];
    quot[n - 2] = q;
    rem[n - 1] -= delta.c1 * q;
    rem[n - 2] -= delta.c0 * q;
  }
  DivisionResult r;
  r.quotient = QuatPoly(std::move(quot));
  r.r0 = rem[0];
  r.r1 = rem[1];
  return r;
}

// Complex polynomial used for semislice restrictions and valence counting.
class ComplexPoly {
 public:
  using C = std::complex<double>;

  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
  static ComplexPoly constant(C a) { return ComplexPoly({a}); }

  const std::vector<C>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  double coeff_norm() const {
    double m = 0.0;
    for (const auto& a : c_) m = std::max(m, std::abs(a));
    return m;
  }

  C eval(C z) const {
    C r = 0.0;
    for (std::size_t n = c_.size(); n-- > 0;) r = z * r + c_[n];
    return r;
  }

  ComplexPoly derivative() const {
    if (c_.size() <= 1) return ComplexPoly();
    std::vector<C> d(c_.size() - 1);
    for (std::size_t n = 1; n < c_.size(); ++n) d[n - 1] = static_cast<double>(n) * c_[n];
    return ComplexPoly(std::move(d));
  }

  friend ComplexPoly operator-(const ComplexPoly& a, C b) {
    std::vector<C> d = a.c_;
    if (d.empty()) d.push_back(-b);
    else d[0] -= b;
    return ComplexPoly(std::move(d));
  }

 private:
  void trim() {
    while (!c_.empty() && std::abs(c_.back()) == 0.0) c_.pop_back();
  }
  std::vector<C> c_;
};

// Smallest k >= 1 with g^(k)(x) != 0 (derivative magnitude above tol);
// nullopt stands for the +infinity sentinel of a locally constant map.
std::optional<int> holomorphic_multiplicity(const ComplexPoly& g,
                                            std::complex<double> x,
                                            double tol = 1e-10);

// Multiplicity for a quaternion-coefficient semislice carrier evaluated on
// the slice of J.
std::optional<int> holomorphic_multiplicity(const QuatPoly& g,
                                            std::complex<double> x,
                                            const ImaginaryUnit& J,
                                            double tol = 1e-10);

struct DiscRegion {
  std::complex<double> center;
  double radius = 1.0;
  bool contains(std::complex<double> z) const { return std::abs(z - center) < radius; }
};

// Valence of g at w over the region: sum of multiplicities of the solutions
// of g(z) = w inside it; nullopt when g is constant equal to w. Roots are
// located by a grid scan with Newton refinement.
std::optional<int> valence(const ComplexPoly& g, std::complex<double> w,
                           const DiscRegion& region);

}  // namespace slicereg
