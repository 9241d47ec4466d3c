#include <random>

#include "doctest.h"
#include "slicereg/differential.hpp"
#include "slicereg/examples.hpp"

using namespace slicereg;

namespace {

std::mt19937_64 rng(90210);

double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

ImaginaryUnit random_unit() {
  return ImaginaryUnit::from_angles(std::acos(uniform(-1, 1)), uniform(0, 2 * M_PI));
}

CircularDomain offaxis() { return CircularDomain(-2, 2, 0.5, 1.5); }
CircularDomain with_axis() { return CircularDomain(-2, 2, 0.0, 2.0); }

Quaternion rq() { return {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)}; }

QuatPoly random_poly(int degree) {
  std::vector<Quaternion> c(degree + 1);
  for (auto& q : c) q = rq();
  return QuatPoly(std::move(c));
}

Quaternion random_point(const CircularDomain& d, double margin = 1e-2) {
  const double a = uniform(d.alpha_lo() + margin, d.alpha_hi() - margin);
  const double b = uniform(std::max(d.beta_lo(), margin) + margin, d.beta_hi() - margin);
  return Quaternion::real(a) + random_unit().value() * b;
}

Quaternion fd_directional(const SliceFunction& f, const Quaternion& x,
                          const Quaternion& v, double h) {
  return (f(x + h * v) - f(x - h * v)) / (2 * h);
}

std::vector<SliceFunction> test_functions() {
  return {
      SliceFunction::polynomial(QuatPoly({{}, {}, Quaternion::one()}), with_axis()),
      SliceFunction::polynomial(
          QuatPoly({{}, Quaternion::k(), {}, Quaternion::one()}), with_axis()),
      SliceFunction::polynomial(random_poly(3), with_axis()),
      examples::shifted_indicator_product(ImaginaryUnit::i(), offaxis()),
      examples::linear_indicator_product(ImaginaryUnit::j(), offaxis()),
  };
}

}  // namespace

TEST_CASE("real differential basics") {
  const SliceFunction ident =
      SliceFunction::polynomial(QuatPoly::identity(), with_axis());
  const RealDifferential d = real_differential(ident, rq());
  CHECK(d.rank == 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      // columns are standard components of the images of the adapted basis
      const double want = dot(d.basis[c], Quaternion{r == 0 ? 1.0 : 0.0,
                                                     r == 1 ? 1.0 : 0.0,
                                                     r == 2 ? 1.0 : 0.0,
                                                     r == 3 ? 1.0 : 0.0});
      CHECK(d.matrix[r][c] == doctest::Approx(want).epsilon(1e-12));
    }
  for (int n = 0; n < 20; ++n) {
    const Quaternion v = rq();
    CHECK(approx_equal(apply(d, v), v, 1e-12));
  }

  const SliceFunction cst(StemFunction::constant(rq()), with_axis());
  CHECK(real_differential(cst, rq()).rank == 0);
}

TEST_CASE("matrix agrees with finite differences") {
  for (const SliceFunction& f : test_functions()) {
    for (int n = 0; n < 200; ++n) {
      const Quaternion x = random_point(f.domain());
      const RealDifferential d = real_differential(f, x);
      for (const Quaternion& b : d.basis) {
        const Quaternion fd = fd_directional(f, x, b, 1e-6);
        CHECK((apply(d, b) - fd).norm() <= 1e-5 * (1.0 + fd.norm()));
      }
    }
  }
}

TEST_CASE("rank is even and classification matches the SVD") {
  for (const SliceFunction& f : test_functions()) {
    for (int n = 0; n < 300; ++n) {
      const Quaternion x = random_point(f.domain());
      const RealDifferential d = real_differential(f, x);
      CHECK((d.rank == 0 || d.rank == 2 || d.rank == 4));
      CHECK(static_cast<int>(rank_classify(f, x)) == d.rank);
      CHECK(is_singular(f, x) == (d.rank != 4));
    }
  }
}

TEST_CASE("rank classification fixtures") {
  const SliceFunction ident =
      SliceFunction::polynomial(QuatPoly::identity(), with_axis());
  for (int n = 0; n < 50; ++n)
    CHECK(rank_classify(ident, random_point(with_axis())) == RankClass::rank4);

  // the shifted product drops to rank 2 on the semislice of -i
  const SliceFunction h =
      examples::shifted_indicator_product(ImaginaryUnit::i(), offaxis());
  for (int n = 0; n < 50; ++n) {
    const double a = uniform(-1.9, 1.9), b = uniform(0.55, 1.45);
    const Quaternion x = Quaternion::real(a) - Quaternion::i() * b;
    CHECK(rank_classify(h, x) == RankClass::rank2);
    CHECK(is_singular(h, x));
    const RealDifferential d = real_differential(h, x);
    CHECK(d.rank == 2);
  }

  // characteristic polynomial of i at j: degenerate sphere, rank 2
  const SliceFunction delta = SliceFunction::polynomial(
      QuatPoly({Quaternion::one(), {}, Quaternion::one()}), with_axis());
  CHECK(rank_classify(delta, Quaternion::j()) == RankClass::rank2);
  CHECK(real_differential(delta, Quaternion::j()).rank == 2);

  // constants collapse to rank 0
  const SliceFunction cst(StemFunction::constant(rq()), with_axis());
  CHECK(rank_classify(cst, random_point(with_axis())) == RankClass::rank0);

  // real points: rank 4 iff the slice derivative survives
  const SliceFunction sq =
      SliceFunction::polynomial(QuatPoly({{}, {}, Quaternion::one()}), with_axis());
  CHECK(rank_classify(sq, Quaternion::real(1.0)) == RankClass::rank4);
  CHECK(rank_classify(sq, Quaternion::real(0.0)) == RankClass::rank0);
  CHECK(real_differential(sq, Quaternion::real(1.0)).rank == 4);
  CHECK(real_differential(sq, Quaternion::real(0.0)).rank == 0);
}

TEST_CASE("directional derivative formula") {
  const SliceFunction ident =
      SliceFunction::polynomial(QuatPoly::identity(), with_axis());
  for (int n = 0; n < 20; ++n) {
    const Quaternion v = random_unit().value();
    CHECK(directional_derivative_residual(ident, random_point(with_axis()), v) <= 1e-9);
  }

  // f = x^2 at i, v = j: s1 = 0, s2 = 1 against the forward difference
  const SliceFunction sq =
      SliceFunction::polynomial(QuatPoly({{}, {}, Quaternion::one()}), with_axis());
  CHECK(directional_derivative_residual(sq, Quaternion::i(), Quaternion::j()) <= 1e-5);

  const SliceFunction h =
      examples::shifted_indicator_product(ImaginaryUnit::i(), offaxis());
  for (int n = 0; n < 20; ++n) {
    Quaternion v = rq();
    v = v / v.norm();
    CHECK(directional_derivative_residual(h, random_point(h.domain()), v) <= 1e-5);
  }
}

TEST_CASE("directional formula against finite differences on pairs") {
  for (const SliceFunction& f : test_functions()) {
    for (int n = 0; n < 250; ++n) {
      const Quaternion x = random_point(f.domain());
      Quaternion v = rq();
      if (v.norm() < 1e-3) continue;
      v = v / v.norm();
      CHECK(directional_derivative_residual(f, x, v) <= 1e-5);
    }
  }
}

TEST_CASE("slice and spherical forms") {
  // slice regular: conjugate coefficient vanishes, d_sl f = d_sl x df/dx
  const SliceFunction h =
      examples::shifted_indicator_product(ImaginaryUnit::i(), offaxis());
  for (int n = 0; n < 100; ++n) {
    const Quaternion x = random_point(h.domain());
    const SliceFormValue forms = slice_spherical_forms(h, x);
    CHECK(forms.d_dxc.norm() <= 1e-9);
    const SliceCoordinates c = to_slice_coords(x);
    const Quaternion iq = c.unit.value();
    // along (dalpha, dbeta) the slice differential is (dalpha + I dbeta) df/dx
    const double da = uniform(-1, 1), db = uniform(-1, 1);
    const Quaternion want = (Quaternion::real(da) + iq * db) * forms.d_dx;
    CHECK((forms.along_slice(da, db) - want).norm() <= 1e-9);
    // sphere-tangent directions scale by the spherical derivative
    const Quaternion k_perp = perpendicular_unit(c.unit).value();
    CHECK((forms.along_sphere(k_perp) - k_perp * forms.ds).norm() <= 1e-12);
  }

  // antiholomorphic stem: d_sl f along dalpha is 1, along dbeta is -J
  auto zbar = [](std::complex<double> z) {
    return ComplexifiedQuaternion{Quaternion::real(z.real()), Quaternion::real(-z.imag())};
  };
  const SliceFunction anti(StemFunction::closure(zbar), with_axis());
  const Quaternion x = Quaternion::i();
  const SliceFormValue forms = slice_spherical_forms(anti, x);
  CHECK((forms.along_slice(1, 0) - Quaternion::one()).norm() <= 1e-9);
  CHECK((forms.along_slice(0, 1) + Quaternion::i()).norm() <= 1e-9);

  CHECK_THROWS_AS(slice_spherical_forms(anti, Quaternion::real(1)), std::domain_error);
}

TEST_CASE("spherical direction decomposition of the differential") {
  // FD along theta and phi equals (dI) beta ds f
  const SliceFunction h =
      examples::shifted_indicator_product(ImaginaryUnit::i(), offaxis());
  for (int n = 0; n < 200; ++n) {
    const double alpha = uniform(-1.8, 1.8);
    const double beta = uniform(0.6, 1.4);
    const double theta = uniform(0.2, M_PI - 0.2);
    const double phi = uniform(0, 2 * M_PI);
    auto at = [&](double t, double p) {
      return Quaternion::real(alpha) + ImaginaryUnit::from_angles(t, p).value() * beta;
    };
    const Quaternion x = at(theta, phi);
    const Quaternion ds = spherical_derivative(h, x);
    const double step = 1e-6;
    const Quaternion fd_theta = (h(at(theta + step, phi)) - h(at(theta - step, phi))) /
                                (2 * step);
    const Quaternion di_theta{0, std::cos(theta) * std::cos(phi),
                              std::cos(theta) * std::sin(phi), -std::sin(theta)};
    CHECK((fd_theta - di_theta * beta * ds).norm() <= 1e-5 * (1 + fd_theta.norm()));
    const Quaternion fd_phi = (h(at(theta, phi + step)) - h(at(theta, phi - step))) /
                              (2 * step);
    const Quaternion di_phi{0, -std::sin(theta) * std::sin(phi),
                            std::sin(theta) * std::cos(phi), 0};
    CHECK((fd_phi - di_phi * beta * ds).norm() <= 1e-5 * (1 + fd_phi.norm()));
  }
}
