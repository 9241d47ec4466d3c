#pragma once

#include <vector>

#include "slicereg/slice_function.hpp"

namespace slicereg {

// Slice derivative df/dx = I(dF/dz). For real x this is the continuous
// extension through the holomorphic stem.
Quaternion slice_derivative(const SliceFunction& f, const Quaternion& x);

// Conjugate slice derivative df/dx^c = I(dF/dz-bar); identically zero exactly
// for slice regular functions.
Quaternion conj_slice_derivative(const SliceFunction& f, const Quaternion& x);

// Spherical derivative (1/2) Im(x)^{-1} (f(x) - f(x^c)) off the axis; equals
// the slice derivative at real points.
Quaternion spherical_derivative(const SliceFunction& f, const Quaternion& x);

// The spherical derivative as a slice function (stem F2(z)/Im(z)), so it can
// be differentiated again.
SliceFunction spherical_derivative_function(const SliceFunction& f);

// || df/dx(x) - 2 Im(x) (d/dx ds f)(x) - ds f(x) ||.
double mixed_derivative_identity_residual(const SliceFunction& f, const Quaternion& x);

// S_{y,2m}(x) = Delta_y(x)^m, S_{y,2m+1}(x) = Delta_y(x)^m (x - y).
Quaternion spherical_monomial(const Quaternion& y, int n, const Quaternion& x);

// Truncated spherical expansion sum_n S_{y,n}(x) s_n around a non-real center.
struct SphericalExpansion {
  Quaternion center;
  std::vector<Quaternion> coeffs;  // s_0 .. s_N
};

// Coefficients by repeated right-coefficient division of the polynomial by
// the real quadratic Delta_y: at depth m the remainder c0 + x c1 yields
// s_{2m} = c0 + y c1 and s_{2m+1} = c1.
SphericalExpansion expansion_coefficients(const SliceFunction& f, const Quaternion& y,
                                          int order);

Quaternion evaluate_expansion(const SphericalExpansion& e, const Quaternion& x);

// First two spherical coefficients at a non-real point, valid for any stem:
// s1 = ds f(x) and s2 = (2 Im x)^{-1} (df/dx(x) - s1).
struct LocalCoefficients {
  Quaternion s1;
  Quaternion s2;
};
LocalCoefficients local_expansion_coefficients(const SliceFunction& f,
                                               const Quaternion& x);

}  // namespace slicereg
