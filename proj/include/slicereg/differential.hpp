#pragma once

#include <array>

#include "slicereg/calculus.hpp"
#include "slicereg/slice_function.hpp"

namespace slicereg {

enum class RankClass { rank0 = 0, rank2 = 2, rank4 = 4 };

// The real differential of a slice regular function at a point, written in
// the adapted orthonormal basis (1, J, K, JK) with J the unit of the point
// and K its deterministic perpendicular. Column c of the matrix holds the
// standard (1, i, j, k) components of the image of basis[c]. The stored rank
// is the numerical SVD rank (singular values against 1e-8 * ||matrix||).
struct RealDifferential {
  Quaternion point;
  std::array<Quaternion, 4> basis;
  double matrix[4][4];
  int rank;
};

RealDifferential real_differential(const SliceFunction& f, const Quaternion& x);

// Matrix action on a tangent vector given in standard components.
Quaternion apply(const RealDifferential& d, const Quaternion& v);

// Closed-form rank of the differential, from the vanishing pattern of the
// slice and spherical derivatives and the C_J-perp membership test.
RankClass rank_classify(const SliceFunction& f, const Quaternion& x);

// True iff the differential is not invertible. Off the axis, when ds f != 0,
// the test is the anticommutation residual
//   || p Im(x) + Im(x) p ||,  p = (df/dx)(ds f)^{-1},
// which vanishes exactly when p lies in C_J-perp.
bool is_singular(const SliceFunction& f, const Quaternion& x);

double directional_derivative_residual(const SliceFunction& f, const Quaternion& x,
                                       const Quaternion& v);

// The slice/spherical decomposition of df at a non-real point.
struct SliceFormValue {
  Quaternion point;
  Quaternion d_dx;   // coefficient of d_sl x
  Quaternion d_dxc;  // coefficient of d_sl x^c
  Quaternion ds;     // coefficient of d_sp x

  // d_sl f applied to the slice direction d_alpha + I d_beta.
  Quaternion along_slice(double dalpha, double dbeta) const;
  // df applied to a sphere-tangent direction v2 in C_I-perp.
  Quaternion along_sphere(const Quaternion& v2) const { return v2 * ds; }
};

SliceFormValue slice_spherical_forms(const SliceFunction& f, const Quaternion& x);

}  // namespace slicereg
