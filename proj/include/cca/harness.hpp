#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cca/generators.hpp"
#include "cca/mechanism.hpp"

namespace cca {

struct AuditCheck {
  std::string name;
  bool passed = true;
  std::string witness;  // first violation, empty when passed
};

struct AuditReport {
  std::vector<AuditCheck> checks;

  bool clean() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  std::string first_violation() const {
    for (const auto& c : checks)
      if (!c.passed) return c.name + ": " + c.witness;
    return {};
  }
};

// Re-derives every recorded quantity of a finished run and checks the clock
// invariants against it: price monotonicity, increment correctness, recorded
// utilities, the monotone-maximum-utility property, the value-vs-utility
// property of each bid, the final-round guarantee of the conflict-free rule,
// and allocation feasibility. Maximum utilities are recomputed by full subset
// enumeration when the instance is small enough (m <= 12) and by the exact
// per-variant maximization otherwise.
AuditReport audit_trace(const Instance& instance, const AuctionConfig& config,
                        const AuctionResult& result);

// All bids of a run in round order.
std::vector<Bid> bid_history(const AuctionTrace& trace);

// OPT / achieved welfare; nullopt means infinite (zero welfare against
// positive OPT). Throws if the exact optimum is unavailable within the budget.
std::optional<Money> welfare_ratio(const Instance& instance, const AuctionResult& result,
                                   long node_budget = 20'000'000);

struct BoundVerdict {
  Money revenue;
  Money welfare;
  Money opt;
  Money revenue_threshold;  // OPT / (480 C^2 log2(n) log2(m)^2)
  Money welfare_threshold;  // OPT / (24 log2(n))
  bool disjunction_holds = false;
};

// Checks the revenue-or-welfare guarantee with integer ceil(log2) arguments
// clamped to >= 2, keeping everything in exact arithmetic. Requires every bid
// of the run to have cardinality at most cap.
BoundVerdict bound_check(const Instance& instance, const AuctionResult& result, int cap,
                                 long node_budget = 20'000'000);

// The greedy thresholds worth reporting against: the trivial ones, n^2, and
// the bucket-derived v*/(8 log2 m) and v*/(8 cap log2 m).
std::vector<Money> greedy_thresholds(const Instance& instance, const OptResult& opt);

struct SweepRecord {
  std::string family;
  std::map<std::string, long> params;
  int num_bidders = 0;
  int num_items = 0;
  int rounds = 0;
  std::string reason;
  Money welfare;
  Money revenue;
  std::optional<Money> opt;
  std::optional<Money> ratio;
  bool audit_clean = false;
  bool welfare_ge_revenue = false;
  bool greedy_dominated = false;  // WD revenue >= every greedy preset's revenue
  std::optional<bool> bound_holds;
  std::string error;  // non-empty when the cell failed outright
};

// Runs generator + auction + audits + metrics over the cross product of the
// grid, in grid-index order. Cell failures are recorded, not thrown. The seed
// offsets the per-cell randomness of the random families.
std::vector<SweepRecord> sweep(const std::string& family,
                               const std::map<std::string, std::vector<long>>& grid,
                               std::uint64_t seed);

// Instance + config for one sweep cell; shared by sweep() and the CLI.
struct FamilyCell {
  Instance instance;
  AuctionConfig config;
};
FamilyCell build_family_cell(const std::string& family, const std::map<std::string, long>& params,
                             std::uint64_t seed);

}  // namespace cca
