#include <cstdio>

#include "cca/verify.hpp"

int main() {
  auto results = cca::run_suite("all");
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.detail.empty() ? "" : " -- ", r.detail.c_str());
  }
  std::fflush(stdout);
  return all ? 0 : 1;
}
