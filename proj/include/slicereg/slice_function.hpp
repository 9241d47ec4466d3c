#pragma once

#include <complex>
#include <functional>
#include <optional>

#include "slicereg/stem.hpp"

namespace slicereg {

// Rectangle D+ = [alpha_lo, alpha_hi] x [beta_lo, beta_hi] in the closed upper
// half-plane; D is its reflection closure and Omega_D the circularization.
// The domain meets the real axis exactly when beta_lo == 0.
class CircularDomain {
 public:
  CircularDomain(double alpha_lo, double alpha_hi, double beta_lo, double beta_hi);

  double alpha_lo() const { return a0_; }
  double alpha_hi() const { return a1_; }
  double beta_lo() const { return b0_; }
  double beta_hi() const { return b1_; }

  bool intersects_real() const { return b0_ == 0.0; }

  // Membership of x in Omega_D: (Re x, ||Im x||) in the rectangle.
  bool contains(const Quaternion& x, double tol = 1e-12) const;
  // Membership of z = alpha + i beta (either sign of beta) in D.
  bool contains_z(std::complex<double> z, double tol = 1e-12) const;

  friend bool operator==(const CircularDomain& a, const CircularDomain& b) {
    return a.a0_ == b.a0_ && a.a1_ == b.a1_ && a.b0_ == b.b0_ && a.b1_ == b.b1_;
  }

 private:
  double a0_, a1_, b0_, b1_;
};

// Slice function f = I(F): stem plus circular domain. Immutable; evaluation
// and all derived operations are pure, so values can be shared freely across
// threads.
class SliceFunction {
 public:
  SliceFunction(StemFunction stem, CircularDomain domain);

  static SliceFunction polynomial(QuatPoly p, CircularDomain domain) {
    return SliceFunction(StemFunction::polynomial(std::move(p)), domain);
  }

  const StemFunction& stem() const { return stem_; }
  const CircularDomain& domain() const { return domain_; }

  // f(alpha + J beta) = F1(alpha + i beta) + J F2(alpha + i beta); real points
  // are admitted only when the domain meets the axis.
  Quaternion operator()(const Quaternion& x) const;

 private:
  StemFunction stem_;
  CircularDomain domain_;
};

inline Quaternion evaluate(const SliceFunction& f, const Quaternion& x) { return f(x); }

// Reconstruction of f on a whole sphere from its values at two of its points:
//   f(alpha + I beta) = (I - K)(J - K)^{-1} v_J - (I - J)(J - K)^{-1} v_K.
Quaternion representation_reconstruct(const Quaternion& vj, const Quaternion& vk,
                                      const ImaginaryUnit& J, const ImaginaryUnit& K,
                                      const SliceCoordinates& target);

// Slice product f.g = I(FG). Requires equal domains.
SliceFunction slice_product(const SliceFunction& f, const SliceFunction& g);

// f^c, induced by the componentwise conjugated stem.
SliceFunction conjugate(const SliceFunction& f);

// Normal function N(f) = f . f^c. Polynomial carriers are checked to produce
// real coefficients and are realified exactly.
SliceFunction normal(const SliceFunction& f);

SliceFunction subtract_constant(const SliceFunction& f, const Quaternion& q);

bool is_real_function(const SliceFunction& f, double tol = kDefaultTol);
bool is_slice_constant(const SliceFunction& f, double tol = kDefaultTol);

// Splitting f_J = f1 + f2 K with f1, f2 : D_J -> C_J and K perpendicular to J.
// Complex values encode a + b J as (a, b). Polynomial stems also expose exact
// complex polynomial carriers.
struct Splitting {
  std::function<std::complex<double>(std::complex<double>)> f1;
  std::function<std::complex<double>(std::complex<double>)> f2;
  std::optional<ComplexPoly> p1;
  std::optional<ComplexPoly> p2;
};
Splitting splitting_decompose(const SliceFunction& f, const ImaginaryUnit& J,
                              const ImaginaryUnit& K);

// ||(f.g)(x) - f(x) g(f(x)^{-1} x f(x))||; nullopt when f(x) = 0 and the
// right-hand side is undefined.
std::optional<double> prodcomp_residual(const SliceFunction& f, const SliceFunction& g,
                                        const Quaternion& x);

}  // namespace slicereg
