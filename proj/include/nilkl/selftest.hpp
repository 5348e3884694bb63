#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// The acceptance suite: ten numbered checks covering the normal-form
// families, negative controls, the curvature/torsion equivalence sweeps over
// a seeded random population, the forms engine, curvature invariants,
// normal-form round trips, and CLI determinism. Each check prints one
// PASS/FAIL line; run_acceptance returns true only if all pass.

namespace nilkl::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// quick = reduced population sizes (used by interactive runs; the shipped
// thresholds and populations are the full ones)
std::vector<CriterionResult> run_all(bool quick = false);

bool run_acceptance(std::ostream& out, bool quick = false);

}  // namespace nilkl::selftest
