#include <random>

#include "doctest.h"
#include "slicereg/examples.hpp"
#include "slicereg/slice_function.hpp"

using namespace slicereg;

namespace {

std::mt19937_64 rng(2024);

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

Quaternion random_point(const CircularDomain& d) {
  const double a = uniform(d.alpha_lo() + 1e-3, d.alpha_hi() - 1e-3);
  const double b = uniform(std::max(d.beta_lo(), 1e-2), d.beta_hi() - 1e-3);
  return Quaternion::real(a) + random_unit().value() * b;
}

}  // namespace

TEST_CASE("circular domain membership") {
  const CircularDomain d(-1, 1, 0.5, 2);
  CHECK(!d.intersects_real());
  CHECK(d.contains(Quaternion::i()));
  CHECK(!d.contains(Quaternion::real(0.2)));
  CHECK(!d.contains(Quaternion::real(0) + 3.0 * Quaternion::j()));
  CHECK(CircularDomain(-1, 1, 0, 1).intersects_real());
  CHECK_THROWS_AS(CircularDomain(1, -1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(CircularDomain(-1, 1, -0.5, 1), std::invalid_argument);
}

TEST_CASE("two-slice step evaluates to 1 - I i") {
  const SliceFunction f = examples::semislice_indicator(ImaginaryUnit::i(), offaxis());
  for (int n = 0; n < 200; ++n) {
    const Quaternion x = random_point(offaxis());
    const SliceCoordinates c = to_slice_coords(x);
    const Quaternion expected = Quaternion::one() - c.unit.value() * Quaternion::i();
    CHECK(approx_equal(f(x), expected, 1e-13));
  }
  // vanishes on the opposite semislice
  CHECK(f(Quaternion::real(1) - Quaternion::i()).norm() <= 1e-15);
  // constant 2 on the defining semislice
  CHECK(approx_equal(f(Quaternion::real(1) + Quaternion::i()), Quaternion::real(2), 1e-15));
}

TEST_CASE("constant stem evaluates to its value") {
  const Quaternion c = Quaternion::one() + Quaternion::k();
  const SliceFunction f(StemFunction::constant(c), with_axis());
  CHECK(approx_equal(f(rq()), c, 0.0));
  CHECK(approx_equal(f(Quaternion::real(0.5)), c, 0.0));
}

TEST_CASE("domain errors") {
  const SliceFunction f = examples::semislice_indicator(ImaginaryUnit::i(), offaxis());
  CHECK_THROWS_AS(f(Quaternion::real(0) + 5.0 * Quaternion::i()), std::domain_error);
  CHECK_THROWS_AS(f(Quaternion::real(1)), std::domain_error);  // axis excluded
  // two-slice stems reject axis-touching domains
  CHECK_THROWS_AS(
      SliceFunction(StemFunction::two_slice(ImaginaryUnit::i(), QuatPoly::constant(rq()),
                                            -ImaginaryUnit::i(), QuatPoly::constant(rq())),
                    with_axis()),
      std::invalid_argument);
}

TEST_CASE("representation formula") {
  // reconstruct the step function from its two constant values
  for (int n = 0; n < 100; ++n) {
    const Quaternion x = random_point(offaxis());
    const SliceCoordinates c = to_slice_coords(x);
    const Quaternion rec = representation_reconstruct(
        Quaternion::real(2), Quaternion::zero(), ImaginaryUnit::i(), -ImaginaryUnit::i(), c);
    CHECK(approx_equal(rec, Quaternion::one() - c.unit.value() * Quaternion::i(), 1e-13));
  }

  // target unit equal to J returns v_J; equal constants return the constant
  const ImaginaryUnit J = random_unit();
  const ImaginaryUnit K = random_unit();
  const Quaternion vj = rq(), c0 = rq();
  if ((J.value() - K.value()).norm() > 1e-6) {
    const SliceCoordinates at_j(0.3, 0.7, J);
    CHECK(approx_equal(representation_reconstruct(vj, rq(), J, K, at_j), vj, 1e-10));
    const SliceCoordinates anywhere(0.1, 1.2, random_unit());
    CHECK(approx_equal(representation_reconstruct(c0, c0, J, K, anywhere), c0, 1e-10));
  }
  CHECK_THROWS_AS(representation_reconstruct(vj, vj, J, J, SliceCoordinates(0, 1, J)),
                  std::invalid_argument);

  // consistency against evaluation, general pair and the antipodal form
  const SliceFunction f = SliceFunction::polynomial(random_poly(3), with_axis());
  for (int n = 0; n < 1000; ++n) {
    const Quaternion x = random_point(with_axis());
    const SliceCoordinates c = to_slice_coords(x);
    const ImaginaryUnit Ja = random_unit();
    ImaginaryUnit Kb = random_unit();
    if ((Ja.value() - Kb.value()).norm() < 1e-3) continue;
    const Quaternion vja = f(Quaternion::real(c.alpha) + Ja.value() * c.beta);
    const Quaternion vkb = f(Quaternion::real(c.alpha) + Kb.value() * c.beta);
    CHECK((representation_reconstruct(vja, vkb, Ja, Kb, c) - f(x)).norm() <=
          1e-10 * (1 + f(x).norm()));

    const Quaternion vmj = f(Quaternion::real(c.alpha) - Ja.value() * c.beta);
    const Quaternion iq = c.unit.value();
    const Quaternion special =
        0.5 * (vja + vmj - iq * Ja.value() * (vja - vmj));
    CHECK((representation_reconstruct(vja, vmj, Ja, -Ja, c) - special).norm() <= 1e-12);
  }
}

TEST_CASE("well-definedness of stem induction") {
  const SliceFunction f = examples::shifted_indicator_product(ImaginaryUnit::i(), offaxis());
  for (int n = 0; n < 1000; ++n) {
    const double a = uniform(-2, 2);
    const double b = uniform(0.5, 1.5);
    const std::complex<double> z(a, b);
    const ImaginaryUnit I = random_unit();
    const ComplexifiedQuaternion up = f.stem().value(z);
    const ComplexifiedQuaternion dn = f.stem().value(std::conj(z));
    // f(alpha + I beta) computed from z and from (conj z, -I) agree
    const Quaternion v1 = up.p + I.value() * up.q;
    const Quaternion v2 = dn.p + (-I.value()) * dn.q;
    CHECK(approx_equal(v1, v2, 1e-12 * (1 + v1.norm())));
  }
}

TEST_CASE("slice product closed form of the shifted step product") {
  const SliceFunction f = examples::semislice_indicator(ImaginaryUnit::i(), offaxis());
  const SliceFunction g =
      SliceFunction::polynomial(QuatPoly({Quaternion::j(), Quaternion::one()}), offaxis());
  const SliceFunction h = slice_product(g, f);
  for (int n = 0; n < 500; ++n) {
    const Quaternion x = random_point(offaxis());
    const SliceCoordinates c = to_slice_coords(x);
    const Quaternion I = c.unit.value();
    const Quaternion expected =
        Quaternion::real(c.alpha) + c.beta * Quaternion::i() + Quaternion::j() +
        I * (Quaternion::real(c.beta) - c.alpha * Quaternion::i() + Quaternion::k());
    CHECK(approx_equal(h(x), expected, 1e-12 * (1 + expected.norm())));
  }
  CHECK(h(-Quaternion::j()).norm() <= 1e-14);

  // agreement with the direct two-slice carrier of the same function
  const SliceFunction direct(
      StemFunction::two_slice(ImaginaryUnit::i(),
                              QuatPoly({Quaternion::zero(), Quaternion::real(2)}),
                              -ImaginaryUnit::i(),
                              QuatPoly::constant(2.0 * Quaternion::j())),
      offaxis());
  for (int n = 0; n < 200; ++n) {
    const Quaternion x = random_point(offaxis());
    CHECK(approx_equal(h(x), direct(x), 1e-12 * (1 + h(x).norm())));
  }
}

TEST_CASE("slice product unit and real-factor pointwise rule") {
  const SliceFunction one(StemFunction::constant(Quaternion::one()), with_axis());
  const SliceFunction f = SliceFunction::polynomial(random_poly(3), with_axis());
  const QuatPoly diff = (*slice_product(f, one).stem().poly()) - (*f.stem().poly());
  CHECK(diff.coeff_norm() == 0.0);

  // real slice function times g acts pointwise
  std::vector<Quaternion> rc(3);
  for (auto& c : rc) c = Quaternion::real(uniform(-1, 1));
  const SliceFunction r = SliceFunction::polynomial(QuatPoly(rc), with_axis());
  const SliceFunction g = SliceFunction::polynomial(random_poly(3), with_axis());
  const SliceFunction rg = slice_product(r, g);
  CHECK(is_real_function(r));
  for (int n = 0; n < 100; ++n) {
    const Quaternion x = random_point(with_axis());
    CHECK((rg(x) - r(x) * g(x)).norm() <= 1e-12 * (1 + rg(x).norm()));
  }

  CHECK_THROWS_AS(slice_product(f, SliceFunction::polynomial(random_poly(2), offaxis())),
                  std::invalid_argument);
}

TEST_CASE("conjugate") {
  // f(x) = x + j -> x - j
  const SliceFunction f =
      SliceFunction::polynomial(QuatPoly({Quaternion::j(), Quaternion::one()}), with_axis());
  const QuatPoly fc_val = *conjugate(f).stem().poly();
  const QuatPoly* fc = &fc_val;
  CHECK(approx_equal(fc->coeff(0), -Quaternion::j(), 0.0));
  CHECK(approx_equal(fc->coeff(1), Quaternion::one(), 0.0));

  // real functions are fixed
  std::vector<Quaternion> rc = {Quaternion::real(2), Quaternion::real(-1)};
  const SliceFunction r = SliceFunction::polynomial(QuatPoly(rc), with_axis());
  CHECK((conjugate(r).stem().poly()->coeffs()[0] - rc[0]).norm() == 0.0);

  // (f.g)^c = g^c . f^c coefficientwise on random cubics
  for (int n = 0; n < 50; ++n) {
    const SliceFunction a = SliceFunction::polynomial(random_poly(3), with_axis());
    const SliceFunction b = SliceFunction::polynomial(random_poly(3), with_axis());
    const QuatPoly lhs = *conjugate(slice_product(a, b)).stem().poly();
    const QuatPoly rhs = *conjugate(b).stem().poly() * *conjugate(a).stem().poly();
    CHECK((lhs - rhs).coeff_norm() <= 1e-10);
  }
}

TEST_CASE("normal function") {
  // N(x - i) = x^2 + 1
  const SliceFunction f =
      SliceFunction::polynomial(QuatPoly({-Quaternion::i(), Quaternion::one()}), with_axis());
  const QuatPoly nf_val = *normal(f).stem().poly();
  const QuatPoly* nf = &nf_val;
  CHECK(approx_equal(nf->coeff(0), Quaternion::one(), 0.0));
  CHECK(approx_equal(nf->coeff(1), Quaternion::zero(), 0.0));
  CHECK(approx_equal(nf->coeff(2), Quaternion::one(), 0.0));

  // the step function has identically vanishing normal
  const SliceFunction step = examples::semislice_indicator(ImaginaryUnit::i(), offaxis());
  const SliceFunction ns = normal(step);
  for (int n = 0; n < 100; ++n)
    CHECK(ns(random_point(offaxis())).norm() <= 1e-13);
  // oracle: expand the stem components by hand, F = (1, -i):
  // F1 F1^c - F2 F2^c = 1 - (-i)(i) = 0 and F1 F2^c + F2 F1^c = i - i = 0.
  const ComplexifiedQuaternion F{Quaternion::one(), -Quaternion::i()};
  const ComplexifiedQuaternion N = F * F.conj_c();
  CHECK(N.norm() == 0.0);

  // N(f.g) = N(f) N(g) and N(f)^c = N(f) on random quadratics
  for (int n = 0; n < 50; ++n) {
    const SliceFunction a = SliceFunction::polynomial(random_poly(2), with_axis());
    const SliceFunction b = SliceFunction::polynomial(random_poly(2), with_axis());
    const QuatPoly lhs = *normal(slice_product(a, b)).stem().poly();
    const QuatPoly rhs = *normal(a).stem().poly() * *normal(b).stem().poly();
    CHECK((lhs - rhs).coeff_norm() <= 1e-10);
    const QuatPoly na = *normal(a).stem().poly();
    CHECK((na.conj() - na).coeff_norm() == 0.0);
  }
}

TEST_CASE("splitting lemma") {
  // f(x) = x with J = i, K = j: f1(z) = z, f2 = 0
  const SliceFunction ident = SliceFunction::polynomial(QuatPoly::identity(), with_axis());
  const Splitting s1 = splitting_decompose(ident, ImaginaryUnit::i(), ImaginaryUnit::j());
  CHECK(std::abs(s1.f1({0.3, 0.8}) - std::complex<double>(0.3, 0.8)) <= 1e-14);
  CHECK(std::abs(s1.f2({0.3, 0.8})) <= 1e-14);
  CHECK(s1.p1.has_value());
  CHECK(s1.p2->is_zero());

  // f(x) = x j: f1 = 0, f2(z) = z
  const SliceFunction xj = SliceFunction::polynomial(
      QuatPoly({Quaternion::zero(), Quaternion::j()}), with_axis());
  const Splitting s2 = splitting_decompose(xj, ImaginaryUnit::i(), ImaginaryUnit::j());
  CHECK(std::abs(s2.f1({-0.4, 1.2})) <= 1e-14);
  CHECK(std::abs(s2.f2({-0.4, 1.2}) - std::complex<double>(-0.4, 1.2)) <= 1e-14);

  CHECK_THROWS_AS(splitting_decompose(ident, ImaginaryUnit::i(), ImaginaryUnit::i()),
                  std::invalid_argument);

  // shifted product: split components recompose the slice values and satisfy
  // the Cauchy-Riemann equations numerically
  const SliceFunction h = examples::shifted_indicator_product(ImaginaryUnit::i(), offaxis());
  const Splitting sh = splitting_decompose(h, ImaginaryUnit::i(), ImaginaryUnit::j());
  const double step = 1e-6;
  double cr = 0.0, recompose = 0.0;
  for (int n = 0; n < 100; ++n) {
    const std::complex<double> z(uniform(-1.8, 1.8), uniform(0.6, 1.4));
    // recomposition f_J = f1 + f2 K
    const std::complex<double> v1 = sh.f1(z), v2 = sh.f2(z);
    const Quaternion val = Quaternion::real(v1.real()) + Quaternion::i() * v1.imag() +
                           (Quaternion::real(v2.real()) + Quaternion::i() * v2.imag()) *
                               Quaternion::j();
    const Quaternion x = Quaternion::real(z.real()) + Quaternion::i() * z.imag();
    recompose = std::max(recompose, (val - h(x)).norm());
    for (const auto& fn : {sh.f1, sh.f2}) {
      const std::complex<double> da = (fn(z + step) - fn(z - step)) / (2 * step);
      const std::complex<double> db =
          (fn(z + std::complex<double>(0, step)) - fn(z - std::complex<double>(0, step))) /
          (2 * step);
      // holomorphy: d/dbeta f = i d/dalpha f
      cr = std::max(cr, std::abs(db - std::complex<double>(0, 1) * da));
    }
  }
  CHECK(recompose <= 1e-12);
  CHECK(cr <= 1e-6);

  // oracle-derived split of the product on C_i: 2z on the upper half,
  // the constant decomposition of 2j on the lower half
  CHECK(std::abs(sh.f1({0.5, 1.0}) - std::complex<double>(1.0, 2.0)) <= 1e-13);
  CHECK(std::abs(sh.f2({0.5, 1.0})) <= 1e-13);
  CHECK(std::abs(sh.f1({0.5, -1.0})) <= 1e-13);
  CHECK(std::abs(sh.f2({0.5, -1.0}) - 2.0) <= 1e-13);
}

TEST_CASE("product composition identity") {
  const CircularDomain d = with_axis();
  // f = x, g = x + k at x = 1 + i: exact identity
  const SliceFunction f = SliceFunction::polynomial(QuatPoly::identity(), d);
  const SliceFunction g =
      SliceFunction::polynomial(QuatPoly({Quaternion::k(), Quaternion::one()}), d);
  const Quaternion x = Quaternion::one() + Quaternion::i();
  CHECK(prodcomp_residual(f, g, x).value() <= 1e-12);

  // real f: conjugation is trivial
  const SliceFunction r = SliceFunction::polynomial(
      QuatPoly({Quaternion::real(0.5), Quaternion::real(2)}), d);
  for (int n = 0; n < 50; ++n) {
    const auto res = prodcomp_residual(r, g, random_point(d));
    if (res) CHECK(*res <= 1e-12);
  }

  // vanishing first factor signals not-applicable
  const SliceFunction zero(StemFunction::constant(Quaternion::zero()), d);
  CHECK(!prodcomp_residual(zero, g, x).has_value());
}

TEST_CASE("closure stems are parity checked") {
  // F(z) = z-bar as a closure stem: F1 = alpha, F2 = -beta (valid parity)
  auto zbar = [](std::complex<double> z) {
    return ComplexifiedQuaternion{Quaternion::real(z.real()),
                                  Quaternion::real(-z.imag())};
  };
  CHECK_NOTHROW(SliceFunction(StemFunction::closure(zbar), with_axis()));

  // F1 odd violates parity and must be rejected
  auto bad = [](std::complex<double> z) {
    return ComplexifiedQuaternion{Quaternion::real(z.imag()), Quaternion::zero()};
  };
  CHECK_THROWS_AS(SliceFunction(StemFunction::closure(bad), with_axis()),
                  std::invalid_argument);
}

TEST_CASE("slice constant predicate") {
  const SliceFunction step = examples::semislice_indicator(ImaginaryUnit::i(), offaxis());
  CHECK(is_slice_constant(step));
  const SliceFunction ident = SliceFunction::polynomial(QuatPoly::identity(), with_axis());
  CHECK(!is_slice_constant(ident));
  CHECK(!is_real_function(step));
}
