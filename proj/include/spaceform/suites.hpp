#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spaceform/catalog.hpp"
#include "spaceform/frame_flow.hpp"
#include "spaceform/report.hpp"

// Verification suites: per-surface check bundles used by the CLI `verify`
// command, and the acceptance criteria aggregating them at pinned
// tolerances.

namespace spaceform {

std::vector<Check> suite_veronese(std::uint64_t seed);
std::vector<Check> suite_clifford_polar(std::uint64_t seed);
std::vector<Check> suite_rot_polar(int c, std::uint64_t seed);
std::vector<Check> suite_sphere_chart(std::uint64_t seed);
std::vector<Check> suite_rot_hyper(int c, std::uint64_t seed);
std::vector<Check> suite_clifford_hyper(std::uint64_t seed);
std::vector<Check> suite_cartan(std::uint64_t seed);
std::vector<Check> suite_h5(std::uint64_t seed);
std::vector<Check> suite_leafspace(std::uint64_t seed);
std::vector<Check> suite_flow(std::uint64_t seed);
/// Oracle checks against an already-integrated patch.
std::vector<Check> verify_generated(const GeneratedSurface& gs);
std::vector<Check> suite_generated(int c, double R, std::uint64_t seed, int n = 30);

/// Suite for one surface id (c where applicable).
std::vector<Check> suite_for(Immersion id, int c, std::uint64_t seed);

/// All suites.  tol_scale in (0,1] tightens every tolerance.
Report run_verify_all(std::uint64_t seed, double tol_scale = 1.0);
Report run_verify_surface(const std::string& name, int c, std::uint64_t seed,
                          double tol_scale = 1.0);

struct CriterionResult {
  int index = 0;
  std::string title;
  bool pass = false;
  std::vector<Check> checks;
};

/// The acceptance gate: every criterion with its pinned tolerances.
std::vector<CriterionResult> acceptance_criteria(std::uint64_t seed);

}  // namespace spaceform
