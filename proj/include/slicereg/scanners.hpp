#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "slicereg/differential.hpp"
#include "slicereg/slice_function.hpp"

namespace slicereg {

// Grid resolution for the scanners: step counts over the domain rectangle
// (endpoints included, so alpha_steps intervals mean alpha_steps + 1 nodes),
// theta rows over [0, pi] and phi columns over [0, 2 pi), and the acceptance
// tolerance applied after refinement.
struct GridSpec {
  int alpha_steps = 64;
  int beta_steps = 64;
  int theta_steps = 32;
  int phi_steps = 64;
  double tol = 1e-6;

  void validate() const;
};

enum class ZeroKind { real_zero, spherical, s_isolated, surface_member };

struct ZeroRecord {
  std::complex<double> z;  // sphere base alpha + i beta
  Quaternion point;        // the zero (representative alpha + i beta for spherical)
  Quaternion unit;         // unit of the zero; zero vector for real/spherical
  ZeroKind kind;
};

// Zero-set recovery over the grid. Per sphere: both stem components below
// tol give a spherical zero; otherwise the candidate unit -F1 F2^{-1} is
// accepted when it lies on S within tol. Grid misses are recovered by a
// bisection-descent refinement pass started from local minima of the zero
// objectives.
std::vector<ZeroRecord> scan_zeros(const SliceFunction& f, const GridSpec& grid);

struct SphereClassification {
  enum class Kind { empty, whole_sphere, single_point };
  Kind kind;
  Quaternion unit;  // meaningful for single_point
};
SphereClassification classify_sphere(const SliceFunction& f, std::complex<double> z,
                                     const GridSpec& grid);

struct SurfacePoint {
  std::complex<double> z;
  Quaternion unit;  // zero vector for whole-sphere and real-axis records
  bool whole_sphere = false;
  double residual = 0.0;
};

struct SurfaceCloud {
  enum class Provenance { zero_surface, singular_set, degenerate_set };
  Provenance provenance = Provenance::zero_surface;
  GridSpec grid;
  std::vector<SurfacePoint> points;
  bool conditioning_warning = false;
  // Fraction of 4D grid cells whose corners are all singular; heuristic
  // companion to the empty-interior statement, reported not asserted.
  double cell_occupancy = 0.0;
};

struct ConstantSurfaceResult {
  SurfaceCloud cloud;
  std::vector<Quaternion> semislice_units;  // semislices D_I^+ where f == q
  double max_surfzero_residual = 0.0;
};

// Level sets: scans the zeros of f - q, verifies the two scalar residuals of
// the zero-surface system g(F1,F1) - g(F2,F2) and g(F1,F2) on reported
// points, and flags semislices on which f is identically q.
ConstantSurfaceResult constant_surface_extract(const SliceFunction& f,
                                               const Quaternion& q,
                                               const GridSpec& grid);

// Largest n with Delta_{x0}^n dividing N(f) (remainder norm relative to the
// coefficient scale). Requires a polynomial stem; nullopt when N(f) vanishes
// identically, 0 when x0 is not a zero of f.
std::optional<int> total_multiplicity(const SliceFunction& f, const Quaternion& x0);

// Singular set N_f: degenerate spheres where ds f = 0, plus the per-sphere
// solutions of the two-equation linear system expressing membership of
// (df/dx)(ds f)^{-1} in C_I-perp, plus every swept grid unit where the
// differential test fires.
SurfaceCloud singular_scan(const SliceFunction& f, const GridSpec& grid);

// Degenerate set D_f = V(ds f): spheres where the spherical derivative
// vanishes within tol.
SurfaceCloud degenerate_scan(const SliceFunction& f, const GridSpec& grid);

// Sum of the total multiplicities of the zeros of f - q whose sphere base
// falls inside the window: each located zero counts 1 when the differential
// of f is invertible there, and the result is nullopt when some zero is
// singular (multiplicity at least 2, not resolved further for non-polynomial
// carriers).
std::optional<int> window_zero_multiplicity(const SliceFunction& f, const Quaternion& q,
                                            const CircularDomain& window,
                                            const GridSpec& grid);

// Sampling region for the injectivity check: either quasi-random points over
// a domain box (optionally excluding a cap around one imaginary unit) or an
// explicit point set, e.g. a recovered surface cloud.
struct SampleRegion {
  static SampleRegion box(const CircularDomain& domain);
  static SampleRegion box_excluding(const CircularDomain& domain,
                                    const ImaginaryUnit& excluded,
                                    double margin = 1e-6);
  static SampleRegion point_set(std::vector<Quaternion> points);

  std::optional<CircularDomain> domain;
  std::optional<Quaternion> excluded_unit;
  double exclusion_margin = 1e-6;
  std::vector<Quaternion> points;
};

struct CollisionPair {
  Quaternion a, b;
};

struct InjectivityReport {
  std::size_t n_samples = 0;
  std::size_t collision_count = 0;
  bool enumeration_capped = false;
  std::vector<CollisionPair> collisions;  // capped selection
  // Smallest image distance among sample pairs with preimage distance above
  // 1e-4; exact when below the 1e-6 bucket cell, otherwise absent (all pairs
  // further apart than the cell).
  std::optional<double> min_image_separation;
};

// Images bucketed on a 1e-6 quantization; candidate pairs are verified as
// collisions when the preimages are further than 1e-4 apart but the images
// agree within 1e-8.
InjectivityReport injectivity_sample(const SliceFunction& f, const SampleRegion& region,
                                     std::size_t n_samples, std::uint64_t seed);

}  // namespace slicereg
