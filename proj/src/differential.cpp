#include "slicereg/differential.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace slicereg {

namespace {

constexpr double kDegenerateDs = 1e-10;

void write_column(double m[4][4], int col, const Quaternion& q) {
  m[0][col] = q.w;
  m[1][col] = q.x;
  m[2][col] = q.y;
  m[3][col] = q.z;
}

int svd_rank(const double m[4][4]) {
  Eigen::Matrix4d a;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a(r, c) = m[r][c];
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(a);
  const auto& s = svd.singularValues();
  const double tol = 1e-8 * std::max(s(0), 1e-300);
  int rank = 0;
  for (int i = 0; i < 4; ++i)
    if (s(i) > tol) ++rank;
  return rank;
}

struct AdaptedFrame {
  Quaternion J, K, JK;
};

AdaptedFrame frame_at(const Quaternion& x) {
  const Quaternion v = x.im();
  const double beta = v.norm();
  const ImaginaryUnit J = beta == 0.0 ? ImaginaryUnit::i() : ImaginaryUnit(v / beta);
  const ImaginaryUnit K = perpendicular_unit(J);
  return {J.value(), K.value(), J.value() * K.value()};
}

}  // namespace

RealDifferential real_differential(const SliceFunction& f, const Quaternion& x) {
  if (!f.domain().contains(x))
    throw std::domain_error("point outside the function domain");
  const AdaptedFrame fr = frame_at(x);
  const Quaternion dx = slice_derivative(f, x);
  // ds f = df/dx at real points, so the real-axis differential is v -> v dx.
  const Quaternion ds = x.im().is_zero(0.0) ? dx : spherical_derivative(f, x);

  RealDifferential d;
  d.point = x;
  d.basis = {Quaternion::one(), fr.J, fr.K, fr.JK};
  write_column(d.matrix, 0, dx);
  write_column(d.matrix, 1, fr.J * dx);
  write_column(d.matrix, 2, fr.K * ds);
  write_column(d.matrix, 3, fr.JK * ds);
  d.rank = svd_rank(d.matrix);
  return d;
}

Quaternion apply(const RealDifferential& d, const Quaternion& v) {
  double out[4] = {0, 0, 0, 0};
  for (int c = 0; c < 4; ++c) {
    const double coord = dot(v, d.basis[c]);
    for (int r = 0; r < 4; ++r) out[r] += d.matrix[r][c] * coord;
  }
  return {out[0], out[1], out[2], out[3]};
}

namespace {

// |Re p| and |g(Im p, J)| against tol = 1e-8 (1 + ||p||).
bool in_cj_perp(const Quaternion& p, const Quaternion& j) {
  const double tol = 1e-8 * (1.0 + p.norm());
  return std::abs(p.re()) <= tol && std::abs(dot(p.im(), j)) <= tol;
}

}  // namespace

RankClass rank_classify(const SliceFunction& f, const Quaternion& x) {
  const Quaternion dx = slice_derivative(f, x);
  const Quaternion v = x.im();
  if (v.is_zero(0.0)) {
    // Real point: df(w) = w df/dx and ds f = df/dx there.
    return dx.norm() > kDegenerateDs ? RankClass::rank4 : RankClass::rank0;
  }
  const Quaternion ds = spherical_derivative(f, x);
  if (ds.norm() < kDegenerateDs)
    return dx.norm() > kDegenerateDs ? RankClass::rank2 : RankClass::rank0;
  const Quaternion p = dx * inverse(ds);
  return in_cj_perp(p, v / v.norm()) ? RankClass::rank2 : RankClass::rank4;
}

bool is_singular(const SliceFunction& f, const Quaternion& x) {
  const Quaternion v = x.im();
  if (v.is_zero(0.0)) return rank_classify(f, x) != RankClass::rank4;
  const Quaternion ds = spherical_derivative(f, x);
  if (ds.norm() < kDegenerateDs) return true;  // rank at most 2
  const Quaternion p = slice_derivative(f, x) * inverse(ds);
  const double residual = (p * v + v * p).norm();
  return residual <= 2.0 * v.norm() * 1e-8 * (1.0 + p.norm());
}

double directional_derivative_residual(const SliceFunction& f, const Quaternion& x,
                                       const Quaternion& v) {
  if (x.im().is_zero(0.0))
    throw std::invalid_argument("directional derivative formula needs a non-real point");
  const LocalCoefficients c = local_expansion_coefficients(f, x);
  const Quaternion formula = v * c.s1 + (x * v - v * x.conj()) * c.s2;
  const double t = 1e-6;
  const Quaternion fd = (f(x + t * v) - f(x)) / t;
  return (fd - formula).norm();
}

Quaternion SliceFormValue::along_slice(double dalpha, double dbeta) const {
  const Quaternion i_unit = point.im() / point.im().norm();
  const Quaternion dslx = Quaternion::real(dalpha) + i_unit * dbeta;
  const Quaternion dslxc = Quaternion::real(dalpha) - i_unit * dbeta;
  return dslx * d_dx + dslxc * d_dxc;
}

SliceFormValue slice_spherical_forms(const SliceFunction& f, const Quaternion& x) {
  if (x.im().is_zero(0.0))
    throw std::domain_error("slice and spherical forms live off the real axis");
  SliceFormValue out;
  out.point = x;
  out.d_dx = slice_derivative(f, x);
  out.d_dxc = conj_slice_derivative(f, x);
  out.ds = spherical_derivative(f, x);
  return out;
}

}  // namespace slicereg
