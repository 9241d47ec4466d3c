#include "slicereg/polynomial.hpp"

#include <cmath>
#include <vector>

namespace slicereg {

std::optional<int> holomorphic_multiplicity(const ComplexPoly& g,
                                            std::complex<double> x, double tol) {
  ComplexPoly d = g.derivative();
  for (int k = 1; !d.is_zero(); ++k, d = d.derivative()) {
    if (std::abs(d.eval(x)) > tol) return k;
  }
  return std::nullopt;  // locally constant
}

std::optional<int> holomorphic_multiplicity(const QuatPoly& g,
                                            std::complex<double> x,
                                            const ImaginaryUnit& J, double tol) {
  const Quaternion xj = Quaternion::real(x.real()) + J.value() * x.imag();
  QuatPoly d = g.derivative();
  for (int k = 1; !d.is_zero(); ++k, d = d.derivative()) {
    if (d.eval(xj).norm() > tol) return k;
  }
  return std::nullopt;
}

namespace {

constexpr int kValenceGrid = 64;
constexpr int kNewtonSteps = 50;

}  // namespace

std::optional<int> valence(const ComplexPoly& g, std::complex<double> w,
                           const DiscRegion& region) {
  using C = std::complex<double>;
  const ComplexPoly h = g - w;
  const double scale = std::max(1.0, h.coeff_norm());
  if (h.is_zero()) return std::nullopt;  // constant equal to w: infinite valence
  if (h.degree() == 0) return 0;         // constant != w

  const ComplexPoly hp = h.derivative();
  std::vector<C> roots;
  const double lo_r = -region.radius, hi_r = region.radius;
  const double step = (hi_r - lo_r) / kValenceGrid;
  for (int iy = 0; iy <= kValenceGrid; ++iy) {
    for (int ix = 0; ix <= kValenceGrid; ++ix) {
      C z = region.center + C(lo_r + ix * step, lo_r + iy * step);
      bool ok = false;
      for (int it = 0; it < kNewtonSteps; ++it) {
        const C hv = h.eval(z);
        const C dv = hp.eval(z);
        if (std::abs(dv) < 1e-300) {
          ok = std::abs(hv) < 1e-12 * scale;
          break;
        }
        const C dz = hv / dv;
        z -= dz;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) break;
        // step-size convergence keeps multiple roots sharp enough for the
        // derivative-based multiplicity test afterwards
        if (std::abs(dz) < 1e-14 * (1.0 + std::abs(z))) {
          ok = true;
          break;
        }
      }
      if (!ok || std::abs(h.eval(z)) > 1e-10 * scale || !region.contains(z)) continue;
      bool dup = false;
      for (const C& r : roots)
        if (std::abs(r - z) < 1e-6 * std::max(1.0, std::abs(r))) {
          dup = true;
          break;
        }
      if (!dup) roots.push_back(z);
    }
  }

  int total = 0;
  for (const C& r : roots) {
    const auto m = holomorphic_multiplicity(g, r, 1e-10 * scale);
    total += m.value_or(0);
  }
  return total;
}

}  // namespace slicereg
