#include <random>

#include "doctest.h"
#include "slicereg/polynomial.hpp"

using namespace slicereg;

namespace {

std::mt19937_64 rng(777);

Quaternion rq() {
  std::uniform_real_distribution<double> u(-1, 1);
  return {u(rng), u(rng), u(rng), u(rng)};
}

QuatPoly random_poly(int degree) {
  std::vector<Quaternion> c(degree + 1);
  for (auto& q : c) q = rq();
  return QuatPoly(std::move(c));
}

}  // namespace

TEST_CASE("evaluation keeps coefficients on the right") {
  // f(x) = x j with x = i must give i j = k, not j i.
  const QuatPoly f({Quaternion::zero(), Quaternion::j()});
  CHECK(approx_equal(f.eval(Quaternion::i()), Quaternion::k(), 0.0));
}

TEST_CASE("product is convolution with left coefficients on the left") {
  const QuatPoly a({Quaternion::i()});
  const QuatPoly b({Quaternion::j()});
  CHECK(approx_equal((a * b).coeff(0), Quaternion::k(), 0.0));
  CHECK(approx_equal((b * a).coeff(0), -Quaternion::k(), 0.0));

  // associativity and unit on random cubics
  const QuatPoly one = QuatPoly::constant(Quaternion::one());
  for (int n = 0; n < 50; ++n) {
    const QuatPoly p = random_poly(3), q = random_poly(3), r = random_poly(3);
    CHECK(((p * q) * r - p * (q * r)).coeff_norm() <= 1e-12);
    CHECK((p * one - p).coeff_norm() == 0.0);
    CHECK((one * p - p).coeff_norm() == 0.0);
  }
}

TEST_CASE("stem evaluation matches slice evaluation") {
  for (int n = 0; n < 100; ++n) {
    const QuatPoly p = random_poly(4);
    std::uniform_real_distribution<double> u(-2, 2);
    const double a = u(rng);
    const double b = std::abs(u(rng)) + 0.1;
    const ComplexifiedQuaternion f = p.eval_stem({a, b});
    // F1 + i F2 must equal the direct evaluation at alpha + i beta
    const Quaternion direct = p.eval(Quaternion::real(a) + Quaternion::i() * b);
    CHECK(approx_equal(f.p + Quaternion::i() * f.q, direct, 1e-12 * (1 + direct.norm())));
  }
}

TEST_CASE("division by a real quadratic reconstructs the polynomial") {
  const RealQuadratic delta{5.0, -2.0};  // x^2 - 2x + 5
  for (int n = 0; n < 100; ++n) {
    const QuatPoly p = random_poly(5);
    const auto d = p.divide_by_real_quadratic(delta);
    // p == remainder + Delta * quotient
    const QuatPoly delta_poly(
        {Quaternion::real(delta.c0), Quaternion::real(delta.c1), Quaternion::one()});
    const QuatPoly rebuilt =
        QuatPoly({d.r0, d.r1}) + delta_poly * d.quotient;
    CHECK((rebuilt - p).coeff_norm() <= 1e-12);
  }
}

TEST_CASE("holomorphic multiplicity") {
  const ComplexPoly z2({0.0, 0.0, 1.0});
  CHECK(holomorphic_multiplicity(z2, 0.0) == 2);
  CHECK(holomorphic_multiplicity(z2, 1.0) == 1);

  const ComplexPoly ident({0.0, 1.0});
  CHECK(holomorphic_multiplicity(ident, 3.7) == 1);

  // (z-1)^3 + 5 at z = 1
  const ComplexPoly g({4.0, 3.0, -3.0, 1.0});
  CHECK(holomorphic_multiplicity(g, 1.0) == 3);

  CHECK(!holomorphic_multiplicity(ComplexPoly::constant(5.0), 0.0).has_value());
}

TEST_CASE("valence") {
  const ComplexPoly z2({0.0, 0.0, 1.0});
  const DiscRegion disc{0.0, 2.0};
  CHECK(valence(z2, 1.0, disc) == 2);   // roots +-1, simple
  CHECK(valence(z2, 0.0, disc) == 2);   // one double root
  CHECK(valence(z2, 100.0, disc) == 0); // outside the image of the closure
  CHECK(!valence(ComplexPoly::constant(3.0), 3.0, disc).has_value());
  CHECK(valence(ComplexPoly::constant(3.0), 4.0, disc) == 0);
}
