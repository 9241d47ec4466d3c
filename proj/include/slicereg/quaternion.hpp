#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace slicereg {

// Default absolute comparison tolerance used across the library unless an
// operation documents otherwise.
inline constexpr double kDefaultTol = 1e-9;

struct Quaternion {
  double w = 0.0;  // real part
  double x = 0.0;  // i component
  double y = 0.0;  // j component
  double z = 0.0;  // k component

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion zero() { return {}; }
  static constexpr Quaternion one() { return {1, 0, 0, 0}; }
  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }
  static constexpr Quaternion real(double r) { return {r, 0, 0, 0}; }

  constexpr double re() const { return w; }
  constexpr Quaternion im() const { return {0, x, y, z}; }
  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }

  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }

  bool is_zero(double tol = kDefaultTol) const { return norm() <= tol; }
  bool is_real(double tol = kDefaultTol) const {
    return std::sqrt(x * x + y * y + z * z) <= tol;
  }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  constexpr Quaternion& operator+=(const Quaternion& r) {
    w += r.w; x += r.x; y += r.y; z += r.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& r) {
    w -= r.w; x -= r.x; y -= r.y; z -= r.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  constexpr Quaternion& operator/=(double s) {
    w /= s; x /= s; y /= s; z /= s;
    return *this;
  }

  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
  friend constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
  friend constexpr Quaternion operator/(Quaternion a, double s) { return a /= s; }

  // Hamilton product, i*j = k convention.
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }

  friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

// Euclidean inner product of R^4 components (the scalar product g).
constexpr double dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double distance(const Quaternion& a, const Quaternion& b) {
  return (a - b).norm();
}

inline bool approx_equal(const Quaternion& a, const Quaternion& b,
                         double tol = kDefaultTol) {
  return distance(a, b) <= tol;
}

// p^{-1} = p^c / ||p||^2.
inline Quaternion inverse(const Quaternion& p) {
  const double n2 = p.norm2();
  if (n2 == 0.0) throw std::domain_error("quaternion inverse of zero");
  return p.conj() / n2;
}

// Unit imaginary quaternion (an element of the sphere S of square roots of -1).
class ImaginaryUnit {
 public:
  // Validates Re(u) ~ 0 and ||u|| ~ 1, then stores the exactly normalized
  // vector part so that downstream identities hold to machine precision.
  explicit ImaginaryUnit(const Quaternion& u, double tol = 1e-6) {
    if (std::abs(u.re()) > tol)
      throw std::invalid_argument("imaginary unit has nonzero real part");
    const Quaternion v = u.im();
    const double n = v.norm();
    if (std::abs(n - 1.0) > tol)
      throw std::invalid_argument("imaginary unit does not have norm 1");
    value_ = v / n;
  }

  static ImaginaryUnit i() { return ImaginaryUnit(Quaternion::i()); }
  static ImaginaryUnit j() { return ImaginaryUnit(Quaternion::j()); }
  static ImaginaryUnit k() { return ImaginaryUnit(Quaternion::k()); }

  // I(theta, phi) = (sin t cos p, sin t sin p, cos t) in (i, j, k).
  static ImaginaryUnit from_angles(double theta, double phi) {
    return ImaginaryUnit(Quaternion{0, std::sin(theta) * std::cos(phi),
                                    std::sin(theta) * std::sin(phi),
                                    std::cos(theta)});
  }

  const Quaternion& value() const { return value_; }

  ImaginaryUnit operator-() const { return ImaginaryUnit(-value_); }

  friend bool operator==(const ImaginaryUnit& a, const ImaginaryUnit& b) {
    return a.value_ == b.value_;
  }

 private:
  Quaternion value_;
};

// Deterministic completion of J to an orthonormal pair (J, K): take the first
// of {i, j, k} not parallel to J and Gram-Schmidt it against J.
inline ImaginaryUnit perpendicular_unit(const ImaginaryUnit& J) {
  const Quaternion j = J.value();
  const Quaternion axes[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
  for (const Quaternion& e : axes) {
    const double c = dot(e, j);
    if (std::abs(c) > 1.0 - 1e-9) continue;
    Quaternion k = e - c * j;
    return ImaginaryUnit(k / k.norm());
  }
  throw std::logic_error("unreachable: no axis perpendicular to unit");
}

// Element p + sqrt(-1) q of the complexified algebra H (x) C.
struct ComplexifiedQuaternion {
  Quaternion p;  // "F1" component
  Quaternion q;  // "F2" component

  constexpr ComplexifiedQuaternion() = default;
  constexpr ComplexifiedQuaternion(const Quaternion& p_, const Quaternion& q_)
      : p(p_), q(q_) {}

  // (x + sqrt(-1) y)(z + sqrt(-1) w) = xz - yw + sqrt(-1)(xw + yz)
  friend constexpr ComplexifiedQuaternion operator*(const ComplexifiedQuaternion& a,
                                                    const ComplexifiedQuaternion& b) {
    return {a.p * b.p - a.q * b.q, a.p * b.q + a.q * b.p};
  }
  friend constexpr ComplexifiedQuaternion operator+(const ComplexifiedQuaternion& a,
                                                    const ComplexifiedQuaternion& b) {
    return {a.p + b.p, a.q + b.q};
  }
  friend constexpr ComplexifiedQuaternion operator-(const ComplexifiedQuaternion& a,
                                                    const ComplexifiedQuaternion& b) {
    return {a.p - b.p, a.q - b.q};
  }
  friend constexpr ComplexifiedQuaternion operator*(const ComplexifiedQuaternion& a, double s) {
    return {a.p * s, a.q * s};
  }
  friend constexpr ComplexifiedQuaternion operator*(double s, const ComplexifiedQuaternion& a) {
    return {a.p * s, a.q * s};
  }
  constexpr ComplexifiedQuaternion operator-() const { return {-p, -q}; }

  // Componentwise quaternionic conjugation x^c.
  constexpr ComplexifiedQuaternion conj_c() const { return {p.conj(), q.conj()}; }
  // Complex conjugation x-bar.
  constexpr ComplexifiedQuaternion conj_bar() const { return {p, -q}; }

  // Multiplication by the central complex scalar a + b sqrt(-1).
  constexpr ComplexifiedQuaternion scale(std::complex<double> c) const {
    return {c.real() * p - c.imag() * q, c.real() * q + c.imag() * p};
  }

  double norm() const { return std::sqrt(p.norm2() + q.norm2()); }
};

// F1 + I F2: the value a stem element induces at imaginary unit I.
inline Quaternion induce(const ComplexifiedQuaternion& f, const ImaginaryUnit& I) {
  return f.p + I.value() * f.q;
}

// Thrown by to_slice_coords when the input lies on the real axis; callers
// decide the limit behavior.
struct RealAxisError : std::domain_error {
  RealAxisError() : std::domain_error("quaternion lies on the real axis") {}
};

// (alpha, beta, I) with beta > 0; negative-beta inputs are normalized by
// flipping (beta, I) -> (-beta, -I).
struct SliceCoordinates {
  double alpha;
  double beta;
  ImaginaryUnit unit;

  SliceCoordinates(double a, double b, const ImaginaryUnit& u)
      : alpha(a), beta(b), unit(b < 0 ? -u : u) {
    if (b == 0.0) throw RealAxisError();
    beta = std::abs(b);
  }
};

inline SliceCoordinates to_slice_coords(const Quaternion& p) {
  const Quaternion v = p.im();
  const double beta = v.norm();
  if (beta == 0.0) throw RealAxisError();
  return SliceCoordinates(p.re(), beta, ImaginaryUnit(v / beta));
}

inline Quaternion from_slice_coords(const SliceCoordinates& c) {
  return Quaternion::real(c.alpha) + c.unit.value() * c.beta;
}

// Monic quadratic x^2 + c1 x + c0 with real (hence central) coefficients.
struct RealQuadratic {
  double c0 = 0.0;
  double c1 = 0.0;

  Quaternion eval(const Quaternion& x) const {
    return x * x + x * c1 + Quaternion::real(c0);
  }
  std::complex<double> eval(std::complex<double> z) const {
    return z * z + c1 * z + c0;
  }
};

// Delta_y(x) = x^2 - x (y + y^c) + y y^c; vanishes exactly on the sphere S_y.
inline RealQuadratic characteristic_poly(const Quaternion& y) {
  return RealQuadratic{y.norm2(), -2.0 * y.re()};
}

// Cassini pseudometric u(x, y) = sqrt(||Delta_y(x)||).
inline double cassini_u(const Quaternion& x, const Quaternion& y) {
  return std::sqrt(characteristic_poly(y).eval(x).norm());
}

// Psi(x) = (x - x0)(x - x0^c)^{-1}: stereographic projection of the sphere
// through x0 onto C_J-perp from the pole x0^c.
inline Quaternion stereographic_project(const Quaternion& x, const Quaternion& x0) {
  const double scale = 1.0 + x0.norm();
  if (std::abs(x.re() - x0.re()) > 1e-6 * scale ||
      std::abs(x.im().norm() - x0.im().norm()) > 1e-6 * scale)
    throw std::invalid_argument("stereographic_project: x not on the sphere of x0");
  const Quaternion denom = x - x0.conj();
  if (denom.norm() <= 1e-12 * scale)
    throw std::domain_error("stereographic_project: x at the projection pole x0^c");
  return (x - x0) * inverse(denom);
}

}  // namespace slicereg
