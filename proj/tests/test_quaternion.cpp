#include <random>

#include "doctest.h"
#include "slicereg/quaternion.hpp"

using namespace slicereg;

namespace {

std::mt19937_64 rng(12345);

double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Quaternion random_quaternion(double scale = 2.0) {
  return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale),
          uniform(-scale, scale)};
}

ImaginaryUnit random_unit() {
  const double theta = std::acos(uniform(-1.0, 1.0));
  const double phi = uniform(0.0, 2.0 * M_PI);
  return ImaginaryUnit::from_angles(theta, phi);
}

}  // namespace

TEST_CASE("hamilton product defining relations") {
  CHECK(Quaternion::i() * Quaternion::j() == Quaternion::k());
  CHECK(Quaternion::j() * Quaternion::k() == Quaternion::i());
  CHECK(Quaternion::k() * Quaternion::i() == Quaternion::j());
  CHECK(Quaternion::i() * Quaternion::i() == -Quaternion::one());

  const Quaternion a = Quaternion::one() + Quaternion::i();
  const Quaternion b = Quaternion::one() + Quaternion::j();
  CHECK(approx_equal(a * b, {1, 1, 1, 1}, 0.0));

  const Quaternion p = Quaternion::real(2) + Quaternion::k();
  CHECK(approx_equal(p * inverse(p), Quaternion::one(), 1e-15));
}

TEST_CASE("inverse") {
  CHECK(approx_equal(inverse(Quaternion::i()), -Quaternion::i(), 0.0));
  CHECK(approx_equal(inverse(2.0 * Quaternion::j()), -0.5 * Quaternion::j(), 0.0));
  const Quaternion p{1, 1, 1, 1};
  CHECK(approx_equal(inverse(p), Quaternion{0.25, -0.25, -0.25, -0.25}, 1e-16));
  CHECK_THROWS_AS(inverse(Quaternion::zero()), std::domain_error);
}

TEST_CASE("norm is multiplicative") {
  for (int n = 0; n < 1000; ++n) {
    const Quaternion p = random_quaternion();
    const Quaternion q = random_quaternion();
    const double lhs = (p * q).norm();
    const double rhs = p.norm() * q.norm();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
  }
}

TEST_CASE("imaginary units square to minus one") {
  for (int n = 0; n < 1000; ++n) {
    const Quaternion u = random_unit().value();
    CHECK(approx_equal(u * u, -Quaternion::one(), 1e-12));
  }
  CHECK_THROWS_AS(ImaginaryUnit(Quaternion{1, 1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(ImaginaryUnit(2.0 * Quaternion::i()), std::invalid_argument);
}

TEST_CASE("complexified product and commuting antiinvolutions") {
  // (x + sqrt(-1) y)(z + sqrt(-1) w) = xz - yw + sqrt(-1)(xw + yz)
  for (int n = 0; n < 200; ++n) {
    const ComplexifiedQuaternion a{random_quaternion(), random_quaternion()};
    const ComplexifiedQuaternion b{random_quaternion(), random_quaternion()};
    const ComplexifiedQuaternion ab = a * b;
    CHECK(approx_equal(ab.p, a.p * b.p - a.q * b.q, 1e-12));
    CHECK(approx_equal(ab.q, a.p * b.q + a.q * b.p, 1e-12));

    const ComplexifiedQuaternion lhs = a.conj_c().conj_bar();
    const ComplexifiedQuaternion rhs = a.conj_bar().conj_c();
    CHECK(approx_equal(lhs.p, rhs.p, 0.0));
    CHECK(approx_equal(lhs.q, rhs.q, 0.0));

    // complex bilinearity: scaling either factor by a central scalar
    const std::complex<double> c(uniform(-1, 1), uniform(-1, 1));
    const ComplexifiedQuaternion s1 = (a.scale(c)) * b;
    const ComplexifiedQuaternion s2 = (a * b).scale(c);
    CHECK((s1 - s2).norm() <= 1e-12 * (1.0 + s2.norm()));
  }
}

TEST_CASE("slice coordinates") {
  const SliceCoordinates ci = to_slice_coords(Quaternion::i());
  CHECK(ci.alpha == 0.0);
  CHECK(ci.beta == 1.0);
  CHECK(approx_equal(ci.unit.value(), Quaternion::i(), 0.0));

  const SliceCoordinates c2 = to_slice_coords(Quaternion::real(3) - 4.0 * Quaternion::k());
  CHECK(c2.alpha == 3.0);
  CHECK(c2.beta == doctest::Approx(4.0));
  CHECK(approx_equal(c2.unit.value(), -Quaternion::k(), 1e-15));

  CHECK_THROWS_AS(to_slice_coords(Quaternion::real(5)), RealAxisError);

  // negative beta normalizes by flipping the unit
  const SliceCoordinates flipped(1.0, -2.0, ImaginaryUnit::j());
  CHECK(flipped.beta == 2.0);
  CHECK(approx_equal(flipped.unit.value(), -Quaternion::j(), 0.0));

  for (int n = 0; n < 10000; ++n) {
    Quaternion p = random_quaternion();
    if (p.im().norm() < 1e-9) continue;
    const Quaternion back = from_slice_coords(to_slice_coords(p));
    CHECK(approx_equal(back, p, 1e-12 * (1.0 + p.norm())));
  }
}

TEST_CASE("characteristic polynomial") {
  const RealQuadratic di = characteristic_poly(Quaternion::i());
  CHECK(di.c1 == 0.0);
  CHECK(di.c0 == 1.0);

  const RealQuadratic dy = characteristic_poly(Quaternion::one() + 2.0 * Quaternion::j());
  CHECK(dy.c1 == -2.0);
  CHECK(dy.c0 == 5.0);

  // same sphere, same polynomial
  const RealQuadratic dj = characteristic_poly(Quaternion::j());
  const RealQuadratic dk = characteristic_poly(Quaternion::k());
  CHECK(dj.c0 == dk.c0);
  CHECK(dj.c1 == dk.c1);

  for (int n = 0; n < 500; ++n) {
    const Quaternion y = random_quaternion();
    if (y.im().norm() < 1e-6) continue;
    const SliceCoordinates c = to_slice_coords(y);
    const Quaternion on_sphere =
        Quaternion::real(c.alpha) + random_unit().value() * c.beta;
    CHECK(characteristic_poly(y).eval(on_sphere).norm() <= 1e-10 * (1.0 + y.norm2()));
  }
}

TEST_CASE("cassini pseudometric") {
  CHECK(cassini_u(Quaternion::j(), Quaternion::i()) == doctest::Approx(0.0));
  CHECK(cassini_u(2.0 * Quaternion::i(), Quaternion::i()) ==
        doctest::Approx(std::sqrt(3.0)));
  CHECK(cassini_u(Quaternion::zero(), Quaternion::i()) == doctest::Approx(1.0));
}

TEST_CASE("stereographic projection") {
  const Quaternion x0 = Quaternion::i();
  CHECK(stereographic_project(x0, x0).norm() == 0.0);
  CHECK(approx_equal(stereographic_project(Quaternion::j(), x0), Quaternion::k(), 1e-15));
  CHECK(approx_equal(stereographic_project(Quaternion::k(), x0), -Quaternion::j(), 1e-15));
  CHECK_THROWS_AS(stereographic_project(-Quaternion::i(), x0), std::domain_error);

  // image lies in C_J-perp: zero real part, zero J-component
  for (int n = 0; n < 1000; ++n) {
    const double alpha = uniform(-2, 2);
    const double beta = uniform(0.1, 2);
    const ImaginaryUnit J = random_unit();
    const Quaternion base = Quaternion::real(alpha) + J.value() * beta;
    const Quaternion x = Quaternion::real(alpha) + random_unit().value() * beta;
    if ((x - base.conj()).norm() < 1e-3) continue;
    const Quaternion psi = stereographic_project(x, base);
    CHECK(std::abs(psi.re()) <= 1e-10 * (1.0 + psi.norm()));
    CHECK(std::abs(dot(psi, J.value())) <= 1e-10 * (1.0 + psi.norm()));
  }
}

TEST_CASE("perpendicular unit is deterministic and orthogonal") {
  CHECK(approx_equal(perpendicular_unit(ImaginaryUnit::i()).value(), Quaternion::j(), 0.0));
  CHECK(approx_equal(perpendicular_unit(ImaginaryUnit::j()).value(), Quaternion::i(), 0.0));
  for (int n = 0; n < 200; ++n) {
    const ImaginaryUnit J = random_unit();
    const ImaginaryUnit K = perpendicular_unit(J);
    CHECK(std::abs(dot(J.value(), K.value())) <= 1e-12);
    CHECK(K.value().norm() == doctest::Approx(1.0));
  }
}
