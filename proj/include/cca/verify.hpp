#pragma once

#include <string>
#include <vector>

namespace cca {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // failure explanation or short stats
  double seconds = 0.0;
};

// Named verification suites runnable from tests and the command line:
//   paper_replays  exact closed-form replays of the five hard families
//   oracles        solver-vs-brute-force equivalences
//   facts          audit cleanliness over seeded random runs
//   bounds         the revenue-or-welfare guarantee on the random sweep
//   determinism    byte-identical reruns
//   all            everything, in criterion order
// Unknown names throw InputError.
std::vector<CriterionResult> run_suite(const std::string& suite);

}  // namespace cca
