#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>

#include "slicereg/polynomial.hpp"
#include "slicereg/quaternion.hpp"

namespace slicereg {

// Value of a stem function together with its first partial derivatives in
// (alpha, beta). Enough to induce slice, conjugate-slice and spherical
// derivatives without second-order data.
struct StemJet {
  ComplexifiedQuaternion value;
  ComplexifiedQuaternion d_alpha;
  ComplexifiedQuaternion d_beta;
};

// A stem function F = F1 + sqrt(-1) F2 on a reflection-symmetric D, with F1
// even and F2 odd in Im(z). Three carriers:
//   polynomial  F(z) = sum z^n a_n
//   two_slice   determined by polynomial semislice maps on two units J != K
//   closure     arbitrary evaluators (finite-difference partials unless a jet
//               evaluator is supplied)
// Immutable and cheaply copyable; safe to share across threads.
class StemFunction {
 public:
  enum class Kind { polynomial, two_slice, closure };

  using ValueFn = std::function<ComplexifiedQuaternion(std::complex<double>)>;
  using JetFn = std::function<StemJet(std::complex<double>)>;

  struct TwoSliceData {
    ImaginaryUnit J;
    QuatPoly on_j;  // semislice map z -> p(alpha + J beta) on C_J^+
    ImaginaryUnit K;
    QuatPoly on_k;
  };

  static StemFunction polynomial(QuatPoly p);
  static StemFunction constant(const Quaternion& a);
  static StemFunction two_slice(const ImaginaryUnit& J, const QuatPoly& on_j,
                                const ImaginaryUnit& K, const QuatPoly& on_k);
  static StemFunction closure(ValueFn value);
  static StemFunction closure_with_jet(JetFn jet);

  Kind kind() const;

  ComplexifiedQuaternion value(std::complex<double> z) const;
  StemJet jet(std::complex<double> z) const;

  // Non-null only for the corresponding carrier.
  const QuatPoly* poly() const;
  const TwoSliceData* two_slice_data() const;

  // Pointwise product in the complexified algebra; polynomial carriers
  // convolve exactly, everything else becomes a closure with jets derived by
  // the product rule.
  StemFunction multiply(const StemFunction& rhs) const;
  StemFunction add(const StemFunction& rhs) const;
  // Subtracting a constant keeps polynomial and two-slice carriers.
  StemFunction subtract_constant(const Quaternion& q) const;
  // Componentwise quaternionic conjugation F^c.
  StemFunction conjugated() const;
  // Stem of the spherical derivative: F2(z)/Im(z) (extended by d(F2)/d(beta)
  // on the real axis).
  StemFunction spherical_stem() const;

 private:
  struct Impl;
  explicit StemFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// d(F)/dz and d(F)/dz-bar evaluated from a jet.
inline ComplexifiedQuaternion stem_dz(const StemJet& j) {
  return (j.d_alpha - j.d_beta.scale(std::complex<double>(0, 1))) * 0.5;
}
inline ComplexifiedQuaternion stem_dzbar(const StemJet& j) {
  return (j.d_alpha + j.d_beta.scale(std::complex<double>(0, 1))) * 0.5;
}

}  // namespace slicereg
