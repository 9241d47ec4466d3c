#pragma once

#include <string>
#include <vector>

#include "slicereg/scanners.hpp"

namespace slicereg {

struct VerifyCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double threshold = 0.0;
  bool informational = false;  // reported, never failing
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.informational && !c.pass) return false;
    return true;
  }
};

// Runs the complete worked-example fixture suite: the slice-constant step
// function, the shifted product with its zero surface and singular set, the
// derivative identity, expansion coefficient relations, the injective
// rotation example with its closed-form inverse, and the algebraic identity
// battery.
VerifyReport verify_worked_examples();

// The zero-surface recovery check on its own so sensitivity tests can run it
// against perturbed functions. Compares scan_zeros units of h against the
// closed-form surface unit for the frame of J; writes the maximum deviation.
bool surface_match_check(const SliceFunction& h, const ImaginaryUnit& J,
                         const GridSpec& grid, double tol, double* max_deviation);

std::string verify_report_to_json(const VerifyReport& report);
std::string verify_report_to_text(const VerifyReport& report);

}  // namespace slicereg
