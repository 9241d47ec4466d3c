#include "slicereg/stem.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace slicereg {

namespace {

constexpr double kAxisEps = 1e-12;

double fd_step(std::complex<double> z) { return 1e-6 * std::max(1.0, std::abs(z)); }

}  // namespace

struct StemFunction::Impl {
  Kind kind;

  // polynomial carrier
  QuatPoly poly;

  // two-slice carrier, with cached derivative polynomials and unit algebra
  std::optional<TwoSliceData> ts;
  QuatPoly on_j_d, on_k_d;
  Quaternion Jq, Kq, jmk_inv;

  // closure carrier
  ValueFn value_fn;
  JetFn jet_fn;
};

StemFunction StemFunction::polynomial(QuatPoly p) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::polynomial;
  impl->poly = std::move(p);
  return StemFunction(std::move(impl));
}

StemFunction StemFunction::constant(const Quaternion& a) {
  return polynomial(QuatPoly::constant(a));
}

StemFunction StemFunction::two_slice(const ImaginaryUnit& J, const QuatPoly& on_j,
                                     const ImaginaryUnit& K, const QuatPoly& on_k) {
  if ((J.value() - K.value()).norm() <= 1e-9)
    throw std::invalid_argument("two-slice stem requires two distinct units");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::two_slice;
  impl->ts = TwoSliceData{J, on_j, K, on_k};
  impl->on_j_d = on_j.derivative();
  impl->on_k_d = on_k.derivative();
  impl->Jq = J.value();
  impl->Kq = K.value();
  impl->jmk_inv = inverse(impl->Jq - impl->Kq);
  return StemFunction(std::move(impl));
}

StemFunction StemFunction::closure(ValueFn value) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::closure;
  impl->value_fn = std::move(value);
  return StemFunction(std::move(impl));
}

StemFunction StemFunction::closure_with_jet(JetFn jet) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::closure;
  impl->jet_fn = std::move(jet);
  return StemFunction(std::move(impl));
}

StemFunction::Kind StemFunction::kind() const { return impl_->kind; }

const QuatPoly* StemFunction::poly() const {
  return impl_->kind == Kind::polynomial ? &impl_->poly : nullptr;
}

const StemFunction::TwoSliceData* StemFunction::two_slice_data() const {
  return impl_->ts ? &*impl_->ts : nullptr;
}

namespace {

// Upper half-plane (beta > 0) value and jet of a two-slice stem:
//   F2 = (J - K)^{-1} (g_J - g_K),  F1 = g_J - J F2,
// with the carriers evaluated at alpha + J beta and alpha + K beta.
StemJet two_slice_jet_upper_impl(const QuatPoly& on_j, const QuatPoly& on_k,
                                 const QuatPoly& on_j_d, const QuatPoly& on_k_d,
                                 const Quaternion& J, const Quaternion& K,
                                 const Quaternion& jmk_inv,
                                 std::complex<double> z) {
  const double a = z.real(), b = z.imag();
  const Quaternion xj = Quaternion::real(a) + J * b;
  const Quaternion xk = Quaternion::real(a) + K * b;
  const Quaternion gj = on_j.eval(xj);
  const Quaternion gk = on_k.eval(xk);
  const Quaternion dgj = on_j_d.eval(xj);
  const Quaternion dgk = on_k_d.eval(xk);

  const Quaternion f2 = jmk_inv * (gj - gk);
  const Quaternion f1 = gj - J * f2;
  const Quaternion f2a = jmk_inv * (dgj - dgk);
  const Quaternion f2b = jmk_inv * (J * dgj - K * dgk);
  const Quaternion f1a = dgj - J * f2a;
  const Quaternion f1b = J * dgj - J * f2b;

  StemJet jet;
  jet.value = {f1, f2};
  jet.d_alpha = {f1a, f2a};
  jet.d_beta = {f1b, f2b};
  return jet;
}

StemJet polynomial_jet(const QuatPoly& p, std::complex<double> z) {
  const QuatPoly d = p.derivative();
  StemJet jet;
  jet.value = p.eval_stem(z);
  jet.d_alpha = d.eval_stem(z);
  jet.d_beta = jet.d_alpha.scale(std::complex<double>(0, 1));
  return jet;
}

}  // namespace

ComplexifiedQuaternion StemFunction::value(std::complex<double> z) const {
  const Impl& im = *impl_;
  switch (im.kind) {
    case Kind::polynomial:
      return im.poly.eval_stem(z);
    case Kind::two_slice: {
      const double b = z.imag();
      if (b == 0.0)
        throw std::domain_error("two-slice stem evaluated on the real axis");
      if (b > 0.0)
        return two_slice_jet_upper_impl(im.ts->on_j, im.ts->on_k, im.on_j_d,
                                        im.on_k_d, im.Jq, im.Kq, im.jmk_inv, z)
            .value;
      const ComplexifiedQuaternion up =
          two_slice_jet_upper_impl(im.ts->on_j, im.ts->on_k, im.on_j_d, im.on_k_d,
                                   im.Jq, im.Kq, im.jmk_inv, std::conj(z))
              .value;
      return up.conj_bar();  // parity: F1 even, F2 odd
    }
    case Kind::closure:
      if (im.value_fn) return im.value_fn(z);
      return im.jet_fn(z).value;
  }
  throw std::logic_error("unreachable stem kind");
}

StemJet StemFunction::jet(std::complex<double> z) const {
  const Impl& im = *impl_;
  switch (im.kind) {
    case Kind::polynomial:
      return polynomial_jet(im.poly, z);
    case Kind::two_slice: {
      const double b = z.imag();
      if (b == 0.0)
        throw std::domain_error("two-slice stem evaluated on the real axis");
      if (b > 0.0)
        return two_slice_jet_upper_impl(im.ts->on_j, im.ts->on_k, im.on_j_d,
                                        im.on_k_d, im.Jq, im.Kq, im.jmk_inv, z);
      StemJet up = two_slice_jet_upper_impl(im.ts->on_j, im.ts->on_k, im.on_j_d,
                                            im.on_k_d, im.Jq, im.Kq, im.jmk_inv,
                                            std::conj(z));
      StemJet jet;
      jet.value = up.value.conj_bar();
      jet.d_alpha = up.d_alpha.conj_bar();
      jet.d_beta = -up.d_beta.conj_bar();
      return jet;
    }
    case Kind::closure: {
      if (im.jet_fn) return im.jet_fn(z);
      const double h = fd_step(z);
      StemJet jet;
      jet.value = im.value_fn(z);
      jet.d_alpha =
          (im.value_fn(z + h) - im.value_fn(z - h)) * (0.5 / h);
      jet.d_beta = (im.value_fn(z + std::complex<double>(0, h)) -
                    im.value_fn(z - std::complex<double>(0, h))) *
                   (0.5 / h);
      return jet;
    }
  }
  throw std::logic_error("unreachable stem kind");
}

StemFunction StemFunction::multiply(const StemFunction& rhs) const {
  if (kind() == Kind::polynomial && rhs.kind() == Kind::polynomial)
    return polynomial(*poly() * *rhs.poly());
  const StemFunction lhs = *this;
  const StemFunction r = rhs;
  return closure_with_jet([lhs, r](std::complex<double> z) {
    const StemJet a = lhs.jet(z);
    const StemJet b = r.jet(z);
    StemJet jet;
    jet.value = a.value * b.value;
    jet.d_alpha = a.d_alpha * b.value + a.value * b.d_alpha;
    jet.d_beta = a.d_beta * b.value + a.value * b.d_beta;
    return jet;
  });
}

StemFunction StemFunction::add(const StemFunction& rhs) const {
  if (kind() == Kind::polynomial && rhs.kind() == Kind::polynomial)
    return polynomial(*poly() + *rhs.poly());
  // A polynomial restricted to a semislice is its own carrier, so sums with
  // two-slice stems stay two-slice.
  if (kind() == Kind::polynomial && rhs.kind() == Kind::two_slice) return rhs.add(*this);
  if (kind() == Kind::two_slice && rhs.kind() == Kind::polynomial) {
    const TwoSliceData& d = *two_slice_data();
    return two_slice(d.J, d.on_j + *rhs.poly(), d.K, d.on_k + *rhs.poly());
  }
  if (kind() == Kind::two_slice && rhs.kind() == Kind::two_slice) {
    const TwoSliceData& a = *two_slice_data();
    const TwoSliceData& b = *rhs.two_slice_data();
    if (a.J == b.J && a.K == b.K)
      return two_slice(a.J, a.on_j + b.on_j, a.K, a.on_k + b.on_k);
  }
  const StemFunction lhs = *this;
  const StemFunction r = rhs;
  return closure_with_jet([lhs, r](std::complex<double> z) {
    const StemJet a = lhs.jet(z);
    const StemJet b = r.jet(z);
    return StemJet{a.value + b.value, a.d_alpha + b.d_alpha, a.d_beta + b.d_beta};
  });
}

StemFunction StemFunction::subtract_constant(const Quaternion& q) const {
  switch (kind()) {
    case Kind::polynomial: {
      std::vector<Quaternion> c = poly()->coeffs();
      if (c.empty()) c.push_back(-q);
      else c[0] -= q;
      return polynomial(QuatPoly(std::move(c)));
    }
    case Kind::two_slice: {
      const TwoSliceData& d = *two_slice_data();
      const QuatPoly qc = QuatPoly::constant(q);
      return two_slice(d.J, d.on_j - qc, d.K, d.on_k - qc);
    }
    case Kind::closure: {
      const StemFunction self = *this;
      return closure_with_jet([self, q](std::complex<double> z) {
        StemJet jet = self.jet(z);
        jet.value.p -= q;
        return jet;
      });
    }
  }
  throw std::logic_error("unreachable stem kind");
}

StemFunction StemFunction::conjugated() const {
  if (kind() == Kind::polynomial) return polynomial(poly()->conj());
  const StemFunction self = *this;
  return closure_with_jet([self](std::complex<double> z) {
    const StemJet a = self.jet(z);
    return StemJet{a.value.conj_c(), a.d_alpha.conj_c(), a.d_beta.conj_c()};
  });
}

StemFunction StemFunction::spherical_stem() const {
  const StemFunction self = *this;
  // Value map first; partials below reuse it near the axis.
  auto value = [self](std::complex<double> z) -> ComplexifiedQuaternion {
    const double b = z.imag();
    if (std::abs(b) > kAxisEps) {
      return ComplexifiedQuaternion{self.value(z).q / b, Quaternion::zero()};
    }
    return ComplexifiedQuaternion{self.jet(z).d_beta.q, Quaternion::zero()};
  };
  return closure_with_jet([self, value](std::complex<double> z) {
    const double b = z.imag();
    StemJet out;
    if (std::abs(b) > kAxisEps) {
      const StemJet a = self.jet(z);
      out.value = {a.value.q / b, Quaternion::zero()};
      out.d_alpha = {a.d_alpha.q / b, Quaternion::zero()};
      out.d_beta = {a.d_beta.q / b - a.value.q / (b * b), Quaternion::zero()};
      return out;
    }
    const double h = fd_step(z);
    out.value = value(z);
    out.d_alpha = (value(z + h) - value(z - h)) * (0.5 / h);
    out.d_beta = (value(z + std::complex<double>(0, h)) -
                  value(z - std::complex<double>(0, h))) *
                 (0.5 / h);
    return out;
  });
}

}  // namespace slicereg
