#include "cca/mechanism.hpp"

#include <algorithm>

namespace cca {

std::string termination_name(Termination t) {
  switch (t) {
    case Termination::kPorterStop:
      return "porter_stop";
    case Termination::kDisjointStop:
      return "disjoint_stop";
    case Termination::kAllDropped:
      return "all_dropped";
    case Termination::kTruncated:
      return "truncated";
  }
  return "unknown";
}

std::vector<Bid> collect_bids(const Instance& instance, const Prices& prices, int round,
                              std::vector<int>& active) {
  std::vector<Bid> bids;
  std::vector<int> still_active;
  still_active.reserve(active.size());
  for (int bidder : active) {
    const Valuation& val = instance.valuations[static_cast<std::size_t>(bidder)];
    std::optional<Bundle> choice = demand_query(val, prices);
    if (!choice) continue;  // dropped out
    bids.push_back({bidder, *choice, price_of(*choice, prices), round});
    still_active.push_back(bidder);
  }
  active = std::move(still_active);
  return bids;
}

Prices apply_increments(const Prices& prices, const std::vector<Bid>& bids,
                        const IncrementPolicy& policy) {
  if (!policy.epsilon.is_positive()) throw InputError("price increment must be positive");
  std::vector<int> demand(prices.size(), 0);
  for (const Bid& b : bids) {
    for (int j : b.bundle.items()) ++demand[static_cast<std::size_t>(j)];
  }
  Prices next = prices;
  for (std::size_t j = 0; j < next.size(); ++j) {
    if (policy.kind == IncrementPolicy::Kind::kDemandProportional) {
      if (demand[j] > 0) next[j] += policy.epsilon * Money(demand[j]);
    } else {
      if (demand[j] >= 2) next[j] += policy.epsilon;
    }
  }
  return next;
}

namespace {

bool pairwise_disjoint(const std::vector<Bid>& bids) {
  for (std::size_t a = 0; a < bids.size(); ++a) {
    for (std::size_t b = a + 1; b < bids.size(); ++b) {
      if (bids[a].bundle.intersects(bids[b].bundle)) return false;
    }
  }
  return true;
}

// Porter condition: the revenue-optimal allocation must not hand any item of a
// currently bid set to a different bidder.
bool conflict_free(const std::vector<Bid>& round_bids, const Allocation& alloc) {
  for (const Bid& bid : round_bids) {
    for (const auto& [winner, assignment] : alloc.assignments) {
      if (winner == bid.bidder) continue;
      if (assignment.bundle.intersects(bid.bundle)) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<Allocation> check_stop(const std::vector<Bid>& round_bids,
                                     const std::vector<Bid>& history, StoppingRule rule) {
  if (!pairwise_disjoint(round_bids)) return std::nullopt;
  Allocation alloc = winner_determination(history);
  if (rule == StoppingRule::kPorterConflictFree && !conflict_free(round_bids, alloc)) {
    return std::nullopt;
  }
  return alloc;
}

AuctionResult run_cca(const Instance& instance, const AuctionConfig& config) {
  instance.validate();
  if (config.max_rounds < 1) throw InputError("max_rounds must be at least 1");

  Prices prices(static_cast<std::size_t>(instance.num_items), Money(0));
  std::vector<int> active(static_cast<std::size_t>(instance.num_bidders));
  for (int i = 0; i < instance.num_bidders; ++i) active[static_cast<std::size_t>(i)] = i;
  std::vector<Bid> history;

  AuctionResult result;
  AuctionTrace& trace = result.trace;

  for (int round = 0;; ++round) {
    std::vector<Bid> bids = collect_bids(instance, prices, round, active);
    history.insert(history.end(), bids.begin(), bids.end());

    RoundRecord record;
    record.prices = prices;
    record.bids = bids;
    record.utilities.reserve(bids.size());
    for (const Bid& b : bids) {
      record.utilities.push_back(
          utility(instance.valuations[static_cast<std::size_t>(b.bidder)], b.bundle, prices));
    }
    record.active = active;
    trace.rounds.push_back(std::move(record));

    if (active.empty()) {
      // Universal dropout: the stopping condition holds trivially; allocate
      // over everything ever bid.
      result.allocation = winner_determination(history);
      result.reason = Termination::kAllDropped;
      trace.final_prices = prices;
      trace.final_round = round;
      break;
    }

    prices = apply_increments(prices, bids, config.policy);

    if (std::optional<Allocation> alloc = check_stop(bids, history, config.stop)) {
      result.allocation = std::move(*alloc);
      result.reason = config.stop == StoppingRule::kPorterConflictFree
                          ? Termination::kPorterStop
                          : Termination::kDisjointStop;
      trace.final_prices = prices;
      trace.final_round = round;
      break;
    }

    if (round + 1 >= config.max_rounds) {
      result.reason = Termination::kTruncated;
      trace.final_prices = prices;
      trace.final_round = round;
      break;
    }
  }

  trace.reason = result.reason;
  result.final_prices = trace.final_prices;
  result.rounds = trace.final_round + 1;
  return result;
}

}  // namespace cca
