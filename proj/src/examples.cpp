#include "slicereg/examples.hpp"

namespace slicereg::examples {

SliceFunction semislice_constants(const ImaginaryUnit& J, const Quaternion& c_plus,
                                  const Quaternion& c_minus, const CircularDomain& dom) {
  return SliceFunction(StemFunction::two_slice(J, QuatPoly::constant(c_plus), -J,
                                               QuatPoly::constant(c_minus)),
                       dom);
}

SliceFunction semislice_indicator(const ImaginaryUnit& J, const CircularDomain& dom) {
  return semislice_constants(J, Quaternion::real(2), Quaternion::zero(), dom);
}

SliceFunction shifted_indicator_product(const ImaginaryUnit& J,
                                        const CircularDomain& dom) {
  const ImaginaryUnit K = perpendicular_unit(J);
  const SliceFunction shift =
      SliceFunction::polynomial(QuatPoly({K.value(), Quaternion::one()}), dom);
  return slice_product(shift, semislice_indicator(J, dom));
}

SliceFunction linear_indicator_product(const ImaginaryUnit& J,
                                       const CircularDomain& dom) {
  const SliceFunction ident = SliceFunction::polynomial(QuatPoly::identity(), dom);
  return slice_product(ident, semislice_indicator(J, dom));
}

Quaternion shifted_indicator_surface_unit(const ImaginaryUnit& J,
                                          std::complex<double> z) {
  const double a = z.real(), b = z.imag();
  const Quaternion jq = J.value();
  const Quaternion kq = perpendicular_unit(J).value();
  const Quaternion jk = jq * kq;
  const double den = a * a + b * b + 1.0;
  return (-(a * a + b * b - 1.0) * jq - 2.0 * b * kq + 2.0 * a * jk) / den;
}

std::optional<Quaternion> shifted_indicator_product_inverse(const Quaternion& q,
                                                            const ImaginaryUnit& J) {
  const Quaternion jq = J.value();
  const Quaternion kq = perpendicular_unit(J).value();
  const Quaternion jk = jq * kq;

  const double q0 = dot(q, Quaternion::one());
  const double q1 = dot(q, jq);
  const double q2 = dot(q, kq);
  const double q3 = dot(q, jk);
  const double n2 = q.norm2();
  const double planar = q0 * q0 + q1 * q1;
  if (planar == 0.0) {
    // Either one of the non-unique constants (0 or 2K, preimages a whole
    // surface or semislice) or a point outside the image.
    return std::nullopt;
  }

  const double A = (q0 * q0 + q1 * q1 - q2 * q2 - q3 * q3) / n2;
  const double B = 2.0 * (q0 * q3 + q1 * q2) / n2;
  const double C = 2.0 * (q1 * q3 - q0 * q2) / n2;
  const double alpha = (q0 * n2 + 2.0 * (q1 * q3 - q0 * q2)) / (2.0 * planar);
  const double beta = (q1 * n2 - 2.0 * (q0 * q3 + q1 * q2)) / (2.0 * planar);
  if (!(beta > 0.0)) return std::nullopt;
  if (!(q1 > 2.0 * (q0 * q3 + q1 * q2) / n2)) return std::nullopt;

  const Quaternion unit = A * jq + B * kq + C * jk;
  return Quaternion::real(alpha) + unit * beta;
}

}  // namespace slicereg::examples
