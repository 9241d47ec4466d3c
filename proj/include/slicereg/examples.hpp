#pragma once

#include <optional>

#include "slicereg/slice_function.hpp"

namespace slicereg::examples {

// Slice-constant function taking the value c_plus on C_J^+ and c_minus on
// C_{-J}^+ (two-slice stem with constant carriers).
SliceFunction semislice_constants(const ImaginaryUnit& J, const Quaternion& c_plus,
                                  const Quaternion& c_minus, const CircularDomain& dom);

// The unit step of the theory: 2 on C_J^+, 0 on C_{-J}^+; evaluates to
// 1 - I J at alpha + I beta. Zero set: the semislice C_{-J}^+.
SliceFunction semislice_indicator(const ImaginaryUnit& J, const CircularDomain& dom);

// (x + K) . (1 - I J) with K the deterministic perpendicular of J. For J = i
// this is the function with spherical derivative 1 - (alpha/beta) i + k/beta,
// constant 2K on C_{-J}^+ and zero exactly on a bent surface of units.
SliceFunction shifted_indicator_product(const ImaginaryUnit& J,
                                        const CircularDomain& dom);

// x . (1 - I J): zero on C_{-J}^+, equal to 2x on C_J^+, injective off the
// vanishing semislice.
SliceFunction linear_indicator_product(const ImaginaryUnit& J,
                                       const CircularDomain& dom);

// Unit of the zero surface of shifted_indicator_product at base z, in the
// frame (J, K, JK):
//   ( -(a^2+b^2-1) J - 2 b K + 2 a JK ) / (a^2+b^2+1).
Quaternion shifted_indicator_surface_unit(const ImaginaryUnit& J,
                                          std::complex<double> z);

// Closed-form inverse of shifted_indicator_product: frame coordinates
// (q0, q1, q2, q3) of q along (1, J, K, JK) determine the unit components
//   A = (q0^2+q1^2-q2^2-q3^2)/||q||^2,  B = 2(q0 q3 + q1 q2)/||q||^2,
//   C = 2(q1 q3 - q0 q2)/||q||^2
// and the slice point
//   alpha = (q0 ||q||^2 + 2(q1 q3 - q0 q2)) / (2(q0^2+q1^2)),
//   beta  = (q1 ||q||^2 - 2(q0 q3 + q1 q2)) / (2(q0^2+q1^2)).
// Returns the preimage when q0^2 + q1^2 != 0 and beta > 0 (the image
// membership inequality q1 > 2(q0 q3 + q1 q2)/||q||^2); nullopt otherwise,
// including the non-unique constants 0 and 2K.
std::optional<Quaternion> shifted_indicator_product_inverse(const Quaternion& q,
                                                            const ImaginaryUnit& J);

}  // namespace slicereg::examples
