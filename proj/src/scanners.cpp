#include "slicereg/scanners.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace slicereg {

namespace {

constexpr double kDegenerateDs = 1e-10;

int scan_thread_count() {
  if (const char* env = std::getenv("SLICEREG_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Deterministic fork/join over [0, n): workers own disjoint chunks, results
// are merged in chunk order by the caller.
template <typename Fn>
void parallel_chunks(int n, const Fn& fn) {
  const int threads = std::min(scan_thread_count(), std::max(1, n));
  if (threads == 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  const int chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, t, lo, hi] { fn(t, lo, hi); });
  }
  for (auto& th : pool) th.join();
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> v(steps + 1);
  for (int i = 0; i <= steps; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / steps;
  return v;
}

struct SphereSamples {
  std::vector<Quaternion> units;
  int theta_rows = 0;
  int phi_cols = 0;
};

SphereSamples sphere_samples(const GridSpec& grid) {
  SphereSamples s;
  s.theta_rows = grid.theta_steps + 1;
  s.phi_cols = grid.phi_steps;
  s.units.reserve(static_cast<std::size_t>(s.theta_rows) * s.phi_cols);
  for (int it = 0; it < s.theta_rows; ++it) {
    const double theta = M_PI * it / grid.theta_steps;
    for (int ip = 0; ip < s.phi_cols; ++ip) {
      const double phi = 2.0 * M_PI * ip / grid.phi_steps;
      s.units.push_back(ImaginaryUnit::from_angles(theta, phi).value());
    }
  }
  return s;
}

// Refine the minimizer of obj inside the cell centered at z by repeated 3x3
// stencil bisection, clamped to the domain rectangle.
template <typename Obj>
std::complex<double> refine_minimum(const Obj& obj, std::complex<double> z,
                                    double half_a, double half_b,
                                    const CircularDomain& dom, double target) {
  const double beta_floor = dom.intersects_real() ? 0.0 : dom.beta_lo();
  double ca = z.real(), cb = z.imag();
  double best = obj({ca, cb});
  for (int iter = 0; iter < 48 && best > target; ++iter) {
    double na = ca, nb = cb;
    for (int da = -1; da <= 1; ++da) {
      for (int db = -1; db <= 1; ++db) {
        if (da == 0 && db == 0) continue;
        const double a = std::clamp(ca + da * half_a, dom.alpha_lo(), dom.alpha_hi());
        const double b = std::clamp(cb + db * half_b, beta_floor, dom.beta_hi());
        const double val = obj({a, b});
        if (val < best) {
          best = val;
          na = a;
          nb = b;
        }
      }
    }
    ca = na;
    cb = nb;
    half_a *= 0.5;
    half_b *= 0.5;
  }
  return {ca, cb};
}

double sphere_candidate_error(const ComplexifiedQuaternion& f) {
  return std::max(f.p.norm(), f.q.norm());
}

// Deviation of the isolated-zero candidate -F1 F2^{-1} from the unit sphere;
// +inf when the candidate is undefined.
double isolated_candidate_error(const ComplexifiedQuaternion& f, double tol) {
  const double scale = std::max(1.0, f.norm());
  if (f.q.norm() <= tol * scale) return std::numeric_limits<double>::infinity();
  const Quaternion cand = -(f.p * inverse(f.q));
  return std::max(std::abs(cand.norm() - 1.0), std::abs(cand.re()));
}

Quaternion isolated_candidate_unit(const ComplexifiedQuaternion& f) {
  const Quaternion cand = -(f.p * inverse(f.q));
  const Quaternion v = cand.im();
  return v / v.norm();
}

bool is_local_min(const std::vector<double>& vals, int na, int nb, int ia, int ib) {
  const double v = vals[static_cast<std::size_t>(ib) * (na + 1) + ia];
  if (!std::isfinite(v)) return false;
  bool strictly_below_one = false;
  for (int da = -1; da <= 1; ++da) {
    for (int db = -1; db <= 1; ++db) {
      if (da == 0 && db == 0) continue;
      const int a = ia + da, b = ib + db;
      if (a < 0 || a > na || b < 0 || b > nb) continue;
      const double w = vals[static_cast<std::size_t>(b) * (na + 1) + a];
      if (v > w) return false;
      if (v < w) strictly_below_one = true;
    }
  }
  return strictly_below_one;
}

}  // namespace

void GridSpec::validate() const {
  if (alpha_steps < 2 || beta_steps < 2 || theta_steps < 2 || phi_steps < 2)
    throw std::invalid_argument("grid spec: all step counts must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("grid spec: tolerance must be > 0");
}

std::vector<ZeroRecord> scan_zeros(const SliceFunction& f, const GridSpec& grid) {
  grid.validate();
  const CircularDomain& dom = f.domain();
  const StemFunction& stem = f.stem();
  const auto alphas = linspace(dom.alpha_lo(), dom.alpha_hi(), grid.alpha_steps);
  const auto betas = linspace(dom.beta_lo(), dom.beta_hi(), grid.beta_steps);
  const int na = grid.alpha_steps, nb = grid.beta_steps;
  const double cell_a = (dom.alpha_hi() - dom.alpha_lo()) / na;
  const double cell_b = (dom.beta_hi() - dom.beta_lo()) / nb;
  const double tol = grid.tol;

  const std::size_t n_nodes = alphas.size() * betas.size();
  std::vector<double> obj_sph(n_nodes, std::numeric_limits<double>::infinity());
  std::vector<double> obj_iso(n_nodes, std::numeric_limits<double>::infinity());
  std::vector<std::vector<ZeroRecord>> chunk_out(betas.size());

  parallel_chunks(static_cast<int>(betas.size()), [&](int, int lo, int hi) {
    for (int ib = lo; ib < hi; ++ib) {
      const double beta = betas[ib];
      auto& out = chunk_out[ib];
      for (std::size_t ia = 0; ia < alphas.size(); ++ia) {
        const std::complex<double> z(alphas[ia], beta);
        if (beta == 0.0) {
          const Quaternion f1 = stem.value(z).p;
          obj_sph[static_cast<std::size_t>(ib) * (na + 1) + ia] = f1.norm();
          if (f1.norm() <= tol)
            out.push_back({z, Quaternion::real(z.real()), Quaternion::zero(),
                           ZeroKind::real_zero});
          continue;
        }
        const ComplexifiedQuaternion v = stem.value(z);
        const double es = sphere_candidate_error(v);
        const double ei = isolated_candidate_error(v, tol);
        obj_sph[static_cast<std::size_t>(ib) * (na + 1) + ia] = es;
        obj_iso[static_cast<std::size_t>(ib) * (na + 1) + ia] = ei;
        if (es <= tol) {
          out.push_back({z,
                         Quaternion::real(z.real()) + Quaternion::i() * beta,
                         Quaternion::zero(), ZeroKind::spherical});
        } else if (ei <= tol) {
          const Quaternion u = isolated_candidate_unit(v);
          out.push_back({z, Quaternion::real(z.real()) + u * beta, u,
                         ZeroKind::s_isolated});
        }
      }
    }
  });

  std::vector<ZeroRecord> records;
  for (auto& c : chunk_out)
    records.insert(records.end(), c.begin(), c.end());

  // Refinement pass: descend from grid-local minima that did not already pass.
  std::vector<ZeroRecord> refined;
  auto sph_obj = [&stem](std::complex<double> z) {
    if (z.imag() == 0.0) return stem.value(z).p.norm();
    return sphere_candidate_error(stem.value(z));
  };
  auto iso_obj = [&stem, tol](std::complex<double> z) {
    if (z.imag() == 0.0) return std::numeric_limits<double>::infinity();
    return isolated_candidate_error(stem.value(z), tol);
  };
  for (int ib = 0; ib <= nb; ++ib) {
    for (int ia = 0; ia <= na; ++ia) {
      const std::size_t idx = static_cast<std::size_t>(ib) * (na + 1) + ia;
      const std::complex<double> z(alphas[ia], betas[ib]);
      if (obj_sph[idx] > tol && is_local_min(obj_sph, na, nb, ia, ib)) {
        const auto zr = refine_minimum(sph_obj, z, cell_a, cell_b, dom, 0.1 * tol);
        if (sph_obj(zr) <= tol) {
          if (zr.imag() <= tol) {
            refined.push_back({{zr.real(), 0.0}, Quaternion::real(zr.real()),
                               Quaternion::zero(), ZeroKind::real_zero});
          } else {
            refined.push_back({zr,
                               Quaternion::real(zr.real()) + Quaternion::i() * zr.imag(),
                               Quaternion::zero(), ZeroKind::spherical});
          }
        }
      }
      if (std::isfinite(obj_iso[idx]) && obj_iso[idx] > tol &&
          is_local_min(obj_iso, na, nb, ia, ib)) {
        const auto zr = refine_minimum(iso_obj, z, cell_a, cell_b, dom, 0.1 * tol);
        if (iso_obj(zr) <= tol) {
          const Quaternion u = isolated_candidate_unit(stem.value(zr));
          refined.push_back({zr, Quaternion::real(zr.real()) + u * zr.imag(), u,
                             ZeroKind::s_isolated});
        }
      }
    }
  }

  // Deduplicate refined hits against each other and the direct hits.
  const double dedupe = std::max(20.0 * tol, 1e-9);
  for (const auto& r : refined) {
    bool dup = false;
    for (const auto& e : records) {
      if (std::abs(e.z - r.z) < dedupe && (e.unit - r.unit).norm() < 1e-3 &&
          e.kind == r.kind) {
        dup = true;
        break;
      }
    }
    if (!dup) records.push_back(r);
  }

  std::sort(records.begin(), records.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
    return std::make_tuple(a.z.real(), a.z.imag(), a.unit.x, a.unit.y, a.unit.z) <
           std::make_tuple(b.z.real(), b.z.imag(), b.unit.x, b.unit.y, b.unit.z);
  });
  return records;
}

SphereClassification classify_sphere(const SliceFunction& f, std::complex<double> z,
                                     const GridSpec& grid) {
  grid.validate();
  if (z.imag() <= 0.0)
    throw std::invalid_argument("classify_sphere requires beta > 0");
  const ComplexifiedQuaternion v = f.stem().value(z);
  SphereClassification out{SphereClassification::Kind::empty, Quaternion::zero()};
  if (sphere_candidate_error(v) <= grid.tol) {
    out.kind = SphereClassification::Kind::whole_sphere;
    return out;
  }
  if (isolated_candidate_error(v, grid.tol) <= grid.tol) {
    out.kind = SphereClassification::Kind::single_point;
    out.unit = isolated_candidate_unit(v);
  }
  return out;
}

ConstantSurfaceResult constant_surface_extract(const SliceFunction& f,
                                               const Quaternion& q,
                                               const GridSpec& grid) {
  const SliceFunction g = subtract_constant(f, q);
  const auto records = scan_zeros(g, grid);

  ConstantSurfaceResult result;
  result.cloud.provenance = SurfaceCloud::Provenance::zero_surface;
  result.cloud.grid = grid;

  for (const auto& r : records) {
    SurfacePoint p;
    p.z = r.z;
    p.unit = r.unit;
    p.whole_sphere = r.kind != ZeroKind::s_isolated;
    if (r.kind == ZeroKind::s_isolated || r.kind == ZeroKind::spherical) {
      const ComplexifiedQuaternion v = g.stem().value(r.z);
      const double r1 = std::abs(dot(v.p, v.p) - dot(v.q, v.q));
      const double r2 = std::abs(dot(v.p, v.q));
      p.residual = std::max(r1, r2);
      result.max_surfzero_residual = std::max(result.max_surfzero_residual, p.residual);
    }
    result.cloud.points.push_back(p);
  }

  // Semislice constancy: all spheres carry the zero at (numerically) the same
  // unit; the candidate is then verified pointwise over the whole grid.
  const std::size_t sphere_nodes =
      static_cast<std::size_t>(grid.alpha_steps + 1) *
      (grid.beta_steps + 1 - (f.domain().intersects_real() ? 1 : 0));
  std::vector<const ZeroRecord*> isolated;
  for (const auto& r : records)
    if (r.kind == ZeroKind::s_isolated) isolated.push_back(&r);
  if (!isolated.empty() && 10 * isolated.size() >= 9 * sphere_nodes) {
    Quaternion mean = Quaternion::zero();
    for (const auto* r : isolated) mean += r->unit;
    mean /= static_cast<double>(isolated.size());
    if (mean.norm() > 0.5) {
      const Quaternion u = mean / mean.norm();
      bool coherent = true;
      for (const auto* r : isolated)
        if ((r->unit - u).norm() > 1e-3) {
          coherent = false;
          break;
        }
      if (coherent) {
        const auto alphas =
            linspace(f.domain().alpha_lo(), f.domain().alpha_hi(), grid.alpha_steps);
        const auto betas =
            linspace(f.domain().beta_lo(), f.domain().beta_hi(), grid.beta_steps);
        bool constant = true;
        for (double b : betas) {
          if (b == 0.0) continue;
          for (double a : alphas) {
            const Quaternion x = Quaternion::real(a) + u * b;
            if ((f(x) - q).norm() > 10.0 * grid.tol) {
              constant = false;
              break;
            }
          }
          if (!constant) break;
        }
        if (constant) result.semislice_units.push_back(u);
      }
    }
  }
  return result;
}

std::optional<int> total_multiplicity(const SliceFunction& f, const Quaternion& x0) {
  const QuatPoly* p = f.stem().poly();
  if (p == nullptr)
    throw std::invalid_argument("total multiplicity requires a polynomial stem");
  const double scale = std::max(1.0, p->coeff_norm());
  const SliceFunction nf = normal(f);
  const QuatPoly* n = nf.stem().poly();
  if (n->is_zero() || n->coeff_norm() <= 1e-12 * scale * scale)
    return std::nullopt;  // N(f) vanishes identically: multiplicity undefined
  if (f(x0).norm() > kDefaultTol * scale) return 0;

  const RealQuadratic delta = characteristic_poly(x0);
  const double div_tol = 1e-8 * n->coeff_norm();
  QuatPoly cur = *n;
  int count = 0;
  while (!cur.is_zero()) {
    const auto d = cur.divide_by_real_quadratic(delta);
    if (std::max(d.r0.norm(), d.r1.norm()) > div_tol) break;
    ++count;
    cur = d.quotient;
  }
  return count;
}

namespace {

// Singular units on the sphere over z solve the linear system
//   <I, Im b> = Re a,  <I, Im a> = -Re b,  ||I|| = 1,
// with a = P1 G^{-1}, b = P2 G^{-1} built from the slice-derivative stem
// (P1, P2) and the spherical derivative G.
struct SphereSystem {
  Quaternion n1, n2;  // plane normals (pure quaternions)
  double c1 = 0.0, c2 = 0.0;
  bool whole_sphere = false;
  bool empty = false;
};

SphereSystem sphere_singular_system(const ComplexifiedQuaternion& dz,
                                    const Quaternion& g) {
  SphereSystem s;
  const Quaternion ginv = inverse(g);
  const Quaternion a = dz.p * ginv;
  const Quaternion b = dz.q * ginv;
  s.n1 = b.im();
  s.c1 = a.re();
  s.n2 = a.im();
  s.c2 = -b.re();
  return s;
}

std::vector<Quaternion> solve_sphere_system(const SphereSystem& s, int circle_samples) {
  std::vector<Quaternion> out;
  const Quaternion cross{0, s.n1.y * s.n2.z - s.n1.z * s.n2.y,
                         s.n1.z * s.n2.x - s.n1.x * s.n2.z,
                         s.n1.x * s.n2.y - s.n1.y * s.n2.x};
  const double n1n = s.n1.norm(), n2n = s.n2.norm();
  const double eps = 1e-12;

  if (cross.norm() > 1e-10 * std::max(n1n * n2n, eps)) {
    // Two independent planes: particular solution in span{n1, n2}.
    const double g11 = dot(s.n1, s.n1), g12 = dot(s.n1, s.n2), g22 = dot(s.n2, s.n2);
    const double det = g11 * g22 - g12 * g12;
    const double u = (s.c1 * g22 - s.c2 * g12) / det;
    const double v = (s.c2 * g11 - s.c1 * g12) / det;
    const Quaternion p0 = u * s.n1 + v * s.n2;
    const double rem = 1.0 - p0.norm2();
    if (rem < -1e-9) return out;
    const double t = std::sqrt(std::max(rem, 0.0));
    const Quaternion dir = cross / cross.norm();
    out.push_back(p0 + t * dir);
    if (t > 1e-12) out.push_back(p0 - t * dir);
    return out;
  }

  if (n1n <= eps && n2n <= eps) {
    // No constraint left: either the whole sphere or nothing.
    return out;  // handled by the caller via whole-sphere checks
  }

  // Effectively one plane; check the two constraints are consistent.
  const bool use1 = n1n >= n2n;
  const Quaternion n = use1 ? s.n1 : s.n2;
  const double c = use1 ? s.c1 : s.c2;
  const Quaternion m = use1 ? s.n2 : s.n1;
  const double cm = use1 ? s.c2 : s.c1;
  const double ratio = dot(m, n) / dot(n, n);
  if (std::abs(cm - ratio * c) > 1e-8 * (1.0 + std::abs(c))) return out;  // inconsistent

  const double d = c / n.norm();
  if (std::abs(d) > 1.0 + 1e-12) return out;
  const Quaternion center = (c / n.norm2()) * n;
  const double radius = std::sqrt(std::max(1.0 - d * d, 0.0));
  if (radius <= 1e-6) {
    out.push_back(center);  // tangency: the circle collapses to a point
    return out;
  }
  const ImaginaryUnit axis{n / n.norm()};
  const ImaginaryUnit e1 = perpendicular_unit(axis);
  const Quaternion e2 = axis.value() * e1.value();
  for (int i = 0; i < circle_samples; ++i) {
    const double phi = 2.0 * M_PI * i / circle_samples;
    out.push_back(center + radius * (std::cos(phi) * e1.value() + std::sin(phi) * e2));
  }
  return out;
}

}  // namespace

SurfaceCloud singular_scan(const SliceFunction& f, const GridSpec& grid) {
  grid.validate();
  const CircularDomain& dom = f.domain();
  const auto alphas = linspace(dom.alpha_lo(), dom.alpha_hi(), grid.alpha_steps);
  const auto betas = linspace(dom.beta_lo(), dom.beta_hi(), grid.beta_steps);
  const SphereSamples sphere = sphere_samples(grid);

  SurfaceCloud cloud;
  cloud.provenance = SurfaceCloud::Provenance::singular_set;
  cloud.grid = grid;

  const std::size_t n_units = sphere.units.size();
  std::vector<std::vector<SurfacePoint>> chunk_out(betas.size());
  std::vector<char> sweep_singular(alphas.size() * betas.size() * n_units, 0);
  std::vector<char> warn(betas.size(), 0);

  parallel_chunks(static_cast<int>(betas.size()), [&](int, int lo, int hi) {
    for (int ib = lo; ib < hi; ++ib) {
      const double beta = betas[ib];
      auto& out = chunk_out[ib];
      for (std::size_t ia = 0; ia < alphas.size(); ++ia) {
        const std::complex<double> z(alphas[ia], beta);
        if (beta == 0.0) {
          // Collapsed sphere on the axis: singular iff the slice derivative
          // vanishes there.
          const Quaternion x = Quaternion::real(alphas[ia]);
          if (is_singular(f, x))
            out.push_back({z, Quaternion::zero(), true, 0.0});
          continue;
        }
        const StemJet jet = f.stem().jet(z);
        const Quaternion g = jet.value.q / beta;
        const ComplexifiedQuaternion dz = stem_dz(jet);
        if (g.norm() < kDegenerateDs) {
          if (g.norm() > 0.0) warn[ib] = 1;
          out.push_back({z, Quaternion::zero(), true, g.norm()});
          continue;
        }
        const SphereSystem sys = sphere_singular_system(dz, g);
        // Slice derivative vanishing on the whole sphere: every unit is
        // singular there (slice-constant behavior).
        if (sys.n1.norm() <= 1e-8 && sys.n2.norm() <= 1e-8 &&
            std::abs(sys.c1) <= 1e-8 && std::abs(sys.c2) <= 1e-8) {
          out.push_back({z, Quaternion::zero(), true, 0.0});
          for (std::size_t iu = 0; iu < n_units; ++iu)
            sweep_singular[(static_cast<std::size_t>(ib) * alphas.size() + ia) *
                               n_units +
                           iu] = 1;
          continue;
        }
        for (const Quaternion& u : solve_sphere_system(sys, grid.phi_steps)) {
          const Quaternion v = u.im().norm() > 0 ? u.im() / u.im().norm() : u;
          const Quaternion x = Quaternion::real(alphas[ia]) + v * beta;
          if (!is_singular(f, x)) continue;
          const Quaternion p = slice_derivative(f, x) * inverse(g);
          const double res = (p * x.im() + x.im() * p).norm();
          out.push_back({z, v, false, res});
        }
        // Grid-unit sweep; exact hits merge with the solved candidates later.
        for (std::size_t iu = 0; iu < n_units; ++iu) {
          const Quaternion x = Quaternion::real(alphas[ia]) + sphere.units[iu] * beta;
          const bool sing = is_singular(f, x);
          sweep_singular[(static_cast<std::size_t>(ib) * alphas.size() + ia) * n_units +
                         iu] = sing ? 1 : 0;
          if (sing) out.push_back({z, sphere.units[iu], false, 0.0});
        }
      }
    }
  });

  for (int ib = 0; ib < static_cast<int>(betas.size()); ++ib) {
    cloud.conditioning_warning = cloud.conditioning_warning || warn[ib];
    for (const auto& p : chunk_out[ib]) {
      bool dup = false;
      for (auto it = cloud.points.rbegin(); it != cloud.points.rend(); ++it) {
        if (std::abs(it->z - p.z) > 1e-12) break;  // only points on this sphere
        if (it->whole_sphere == p.whole_sphere && (it->unit - p.unit).norm() < 0.05) {
          dup = true;
          break;
        }
      }
      if (!dup) cloud.points.push_back(p);
    }
  }

  // Empty-interior heuristic: fraction of 4D grid cells with every corner
  // singular (phi wraps around).
  std::size_t full = 0, cells = 0;
  const int nbets = static_cast<int>(betas.size());
  const int nalph = static_cast<int>(alphas.size());
  auto swept = [&](int ib, int ia, int it, int ip) {
    const std::size_t iu =
        static_cast<std::size_t>(it) * sphere.phi_cols + (ip % sphere.phi_cols);
    return sweep_singular[(static_cast<std::size_t>(ib) * nalph + ia) * n_units + iu] != 0;
  };
  for (int ib = 0; ib + 1 < nbets; ++ib) {
    if (betas[ib] == 0.0) continue;
    for (int ia = 0; ia + 1 < nalph; ++ia) {
      for (int it = 0; it + 1 < sphere.theta_rows; ++it) {
        for (int ip = 0; ip < sphere.phi_cols; ++ip) {
          ++cells;
          bool all = true;
          for (int d = 0; d < 16 && all; ++d)
            all = swept(ib + (d & 1), ia + ((d >> 1) & 1), it + ((d >> 2) & 1),
                        ip + ((d >> 3) & 1));
          if (all) ++full;
        }
      }
    }
  }
  cloud.cell_occupancy = cells == 0 ? 0.0 : static_cast<double>(full) / cells;

  std::sort(cloud.points.begin(), cloud.points.end(),
            [](const SurfacePoint& a, const SurfacePoint& b) {
              return std::make_tuple(a.z.real(), a.z.imag(), a.unit.x, a.unit.y,
                                     a.unit.z) <
                     std::make_tuple(b.z.real(), b.z.imag(), b.unit.x, b.unit.y,
                                     b.unit.z);
            });
  return cloud;
}

SurfaceCloud degenerate_scan(const SliceFunction& f, const GridSpec& grid) {
  grid.validate();
  const CircularDomain& dom = f.domain();
  const auto alphas = linspace(dom.alpha_lo(), dom.alpha_hi(), grid.alpha_steps);
  const auto betas = linspace(dom.beta_lo(), dom.beta_hi(), grid.beta_steps);
  const int na = grid.alpha_steps, nb = grid.beta_steps;

  SurfaceCloud cloud;
  cloud.provenance = SurfaceCloud::Provenance::degenerate_set;
  cloud.grid = grid;

  auto ds_norm = [&f](std::complex<double> z) {
    if (z.imag() == 0.0) return std::numeric_limits<double>::infinity();
    return (f.stem().value(z).q / z.imag()).norm();
  };

  std::vector<double> vals(alphas.size() * betas.size(),
                           std::numeric_limits<double>::infinity());
  for (int ib = 0; ib <= nb; ++ib) {
    if (betas[ib] == 0.0) continue;
    for (int ia = 0; ia <= na; ++ia) {
      const std::complex<double> z(alphas[ia], betas[ib]);
      const double v = ds_norm(z);
      vals[static_cast<std::size_t>(ib) * (na + 1) + ia] = v;
      if (v <= grid.tol) cloud.points.push_back({z, Quaternion::zero(), true, v});
    }
  }

  const double cell_a = (dom.alpha_hi() - dom.alpha_lo()) / na;
  const double cell_b = (dom.beta_hi() - dom.beta_lo()) / nb;
  std::vector<SurfacePoint> refined;
  for (int ib = 0; ib <= nb; ++ib) {
    if (betas[ib] == 0.0) continue;
    for (int ia = 0; ia <= na; ++ia) {
      const std::size_t idx = static_cast<std::size_t>(ib) * (na + 1) + ia;
      if (vals[idx] <= grid.tol || !is_local_min(vals, na, nb, ia, ib)) continue;
      const std::complex<double> z(alphas[ia], betas[ib]);
      const auto zr = refine_minimum(ds_norm, z, cell_a, cell_b, dom, 0.1 * grid.tol);
      if (ds_norm(zr) <= grid.tol)
        refined.push_back({zr, Quaternion::zero(), true, ds_norm(zr)});
    }
  }
  const double dedupe = std::max(20.0 * grid.tol, 1e-9);
  for (const auto& r : refined) {
    bool dup = false;
    for (const auto& e : cloud.points)
      if (std::abs(e.z - r.z) < dedupe) {
        dup = true;
        break;
      }
    if (!dup) cloud.points.push_back(r);
  }

  std::sort(cloud.points.begin(), cloud.points.end(),
            [](const SurfacePoint& a, const SurfacePoint& b) {
              return std::make_tuple(a.z.real(), a.z.imag()) <
                     std::make_tuple(b.z.real(), b.z.imag());
            });
  return cloud;
}

std::optional<int> window_zero_multiplicity(const SliceFunction& f, const Quaternion& q,
                                            const CircularDomain& window,
                                            const GridSpec& grid) {
  const SliceFunction g = subtract_constant(f, q);
  const auto records = scan_zeros(g, grid);
  int total = 0;
  for (const auto& r : records) {
    if (!window.contains_z(r.z)) continue;
    if (r.kind == ZeroKind::spherical) return std::nullopt;  // whole degenerate sphere
    if (is_singular(f, r.point)) return std::nullopt;  // multiplicity >= 2
    ++total;
  }
  return total;
}

SampleRegion SampleRegion::box(const CircularDomain& domain) {
  SampleRegion r;
  r.domain = domain;
  return r;
}

SampleRegion SampleRegion::box_excluding(const CircularDomain& domain,
                                         const ImaginaryUnit& excluded, double margin) {
  SampleRegion r;
  r.domain = domain;
  r.excluded_unit = excluded.value();
  r.exclusion_margin = margin;
  return r;
}

SampleRegion SampleRegion::point_set(std::vector<Quaternion> points) {
  SampleRegion r;
  r.points = std::move(points);
  return r;
}

namespace {

double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  for (std::uint64_t i = index + 1; i > 0; i /= base) {
    f /= base;
    r += f * static_cast<double>(i % base);
  }
  return r;
}

struct BucketKey {
  std::int64_t a, b, c, d;
  bool operator==(const BucketKey& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
};

struct BucketHash {
  std::size_t operator()(const BucketKey& k) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (std::int64_t v : {k.a, k.b, k.c, k.d}) {
      h ^= static_cast<std::size_t>(v);
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

}  // namespace

InjectivityReport injectivity_sample(const SliceFunction& f, const SampleRegion& region,
                                     std::size_t n_samples, std::uint64_t seed) {
  constexpr double kCell = 1e-6;
  constexpr double kImageTol = 1e-8;
  constexpr double kPreimageTol = 1e-4;
  constexpr std::size_t kMaxPartnerChecks = 256;
  constexpr std::size_t kMaxStoredCollisions = 64;

  std::vector<Quaternion> samples;
  samples.reserve(n_samples);
  if (!region.points.empty()) {
    for (std::size_t i = 0; i < region.points.size() && samples.size() < n_samples; ++i)
      samples.push_back(region.points[i]);
  } else {
    if (!region.domain)
      throw std::invalid_argument("sample region needs a domain box or points");
    const CircularDomain& dom = *region.domain;
    std::uint64_t idx = seed;
    while (samples.size() < n_samples) {
      const double a =
          dom.alpha_lo() + halton(idx, 2) * (dom.alpha_hi() - dom.alpha_lo());
      const double b = dom.beta_lo() + halton(idx, 3) * (dom.beta_hi() - dom.beta_lo());
      const double theta = std::acos(1.0 - 2.0 * halton(idx, 5));
      const double phi = 2.0 * M_PI * halton(idx, 7);
      ++idx;
      if (b == 0.0) continue;
      const Quaternion u = ImaginaryUnit::from_angles(theta, phi).value();
      if (region.excluded_unit &&
          dot(u, *region.excluded_unit) > 1.0 - region.exclusion_margin)
        continue;
      samples.push_back(Quaternion::real(a) + u * b);
    }
  }

  InjectivityReport report;
  report.n_samples = samples.size();

  std::vector<Quaternion> images(samples.size());
  parallel_chunks(static_cast<int>(samples.size()), [&](int, int lo, int hi) {
    for (int i = lo; i < hi; ++i) images[i] = f(samples[i]);
  });

  std::unordered_map<BucketKey, std::vector<std::size_t>, BucketHash> buckets;
  auto key_of = [&](const Quaternion& q) {
    return BucketKey{static_cast<std::int64_t>(std::floor(q.w / kCell)),
                     static_cast<std::int64_t>(std::floor(q.x / kCell)),
                     static_cast<std::int64_t>(std::floor(q.y / kCell)),
                     static_cast<std::int64_t>(std::floor(q.z / kCell))};
  };

  double min_sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const BucketKey k = key_of(images[i]);
    std::size_t checked = 0;
    for (std::int64_t da = -1; da <= 1 && checked < kMaxPartnerChecks; ++da)
      for (std::int64_t db = -1; db <= 1 && checked < kMaxPartnerChecks; ++db)
        for (std::int64_t dc = -1; dc <= 1 && checked < kMaxPartnerChecks; ++dc)
          for (std::int64_t dd = -1; dd <= 1 && checked < kMaxPartnerChecks; ++dd) {
            const auto it = buckets.find({k.a + da, k.b + db, k.c + dc, k.d + dd});
            if (it == buckets.end()) continue;
            for (std::size_t jdx : it->second) {
              if (++checked > kMaxPartnerChecks) {
                report.enumeration_capped = true;
                break;
              }
              const double img = distance(images[i], images[jdx]);
              const double pre = distance(samples[i], samples[jdx]);
              if (pre > kPreimageTol) {
                min_sep = std::min(min_sep, img);
                if (img < kImageTol) {
                  ++report.collision_count;
                  if (report.collisions.size() < kMaxStoredCollisions)
                    report.collisions.push_back({samples[i], samples[jdx]});
                }
              }
            }
          }
    buckets[k].push_back(i);
  }
  if (std::isfinite(min_sep)) report.min_image_separation = min_sep;
  return report;
}

}  // namespace slicereg
