#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cca/allocation.hpp"
#include "cca/valuation.hpp"

namespace cca {

struct IncrementPolicy {
  enum class Kind { kDemandProportional, kFixedOnExcess };
  Kind kind = Kind::kDemandProportional;
  Money epsilon = 1;

  static IncrementPolicy demand_proportional(Money eps) {
    return {Kind::kDemandProportional, eps};
  }
  static IncrementPolicy fixed_on_excess(Money eps) { return {Kind::kFixedOnExcess, eps}; }
};

enum class StoppingRule { kPorterConflictFree, kDisjointOnly };

enum class Termination { kPorterStop, kDisjointStop, kAllDropped, kTruncated };

std::string termination_name(Termination t);

struct AuctionConfig {
  IncrementPolicy policy;
  StoppingRule stop = StoppingRule::kPorterConflictFree;
  int max_rounds = 100000;
};

// One bidder's round record: the bid she made and her true utility for it at
// the round's prices.
struct RoundRecord {
  Prices prices;  // prices the round's bids were made at
  std::vector<Bid> bids;
  std::vector<Money> utilities;  // aligned with bids
  std::vector<int> active;       // bidders still in after this round's dropouts
};

struct AuctionTrace {
  std::vector<RoundRecord> rounds;
  Prices final_prices;  // after the last round's increments
  Termination reason = Termination::kAllDropped;
  int final_round = -1;
};

struct AuctionResult {
  Allocation allocation;
  Prices final_prices;
  AuctionTrace trace;
  int rounds = 0;
  Termination reason = Termination::kAllDropped;
};

// One simultaneous bidding step: queries every active bidder at the given
// prices, removing those that drop out. Returns the bids made this round.
std::vector<Bid> collect_bids(const Instance& instance, const Prices& prices, int round,
                              std::vector<int>& active);

// Applies one round of price increments for the given bids.
Prices apply_increments(const Prices& prices, const std::vector<Bid>& bids,
                        const IncrementPolicy& policy);

// Evaluates the stopping rule on the current round's bids and the full bid
// history. Returns the final allocation when the rule fires.
std::optional<Allocation> check_stop(const std::vector<Bid>& round_bids,
                                     const std::vector<Bid>& history, StoppingRule rule);

// Runs the full clock auction from all-zero prices. Hitting max_rounds is
// reported as a truncated result, never silently.
AuctionResult run_cca(const Instance& instance, const AuctionConfig& config);

}  // namespace cca
