#pragma once

#include <map>
#include <vector>

#include "cca/bundle.hpp"
#include "cca/valuation.hpp"

namespace cca {

// One accepted package bid: who gets which set at which payment.
struct Assignment {
  Bundle bundle;
  Money payment;
};

// Disjoint bidder -> bundle map with per-bidder payments.
struct Allocation {
  std::map<int, Assignment> assignments;

  Money revenue() const {
    Money total = 0;
    for (const auto& [bidder, a] : assignments) total += a.payment;
    return total;
  }

  Money welfare(const Instance& instance) const {
    Money total = 0;
    for (const auto& [bidder, a] : assignments) {
      total += value_of(instance.valuations[static_cast<std::size_t>(bidder)], a.bundle,
                        instance.num_items);
    }
    return total;
  }

  bool disjoint() const {
    std::vector<bool> seen;
    for (const auto& [bidder, a] : assignments) {
      for (int j : a.bundle.items()) {
        if (static_cast<std::size_t>(j) >= seen.size()) seen.resize(static_cast<std::size_t>(j) + 1);
        if (seen[static_cast<std::size_t>(j)]) return false;
        seen[static_cast<std::size_t>(j)] = true;
      }
    }
    return true;
  }
};

struct Bid {
  int bidder = 0;
  Bundle bundle;
  Money price;  // sum of the item prices at the round the bid was made
  int round = 0;
};

// Exact revenue-maximizing selection of pairwise-disjoint bids, at most one
// per bidder. Branch and bound over the bids sorted by price; a dominance
// pre-pass keeps only the highest-price bid per (bidder, bundle). Among
// revenue ties the result prefers more accepted bids, then the
// lexicographically smallest index set in the canonical bid order, so the
// output is deterministic and zero-price bids are still allocated when they
// block nothing.
Allocation winner_determination(const std::vector<Bid>& bids);

struct OptResult {
  bool exact = true;  // false: the node budget tripped and value is only a lower bound
  Money value;
  Allocation allocation;
};

// Exact maximum social welfare over per-bidder candidate bundles, by branch
// and bound with bidder- and item-based upper bounds. The node budget guards
// against blowup; when it trips the result is flagged inexact rather than
// silently wrong.
OptResult optimal_welfare(const Instance& instance, long node_budget = 20'000'000);

// Highest-bid-first allocation for singleton bids: repeatedly accept the
// highest-price bid at or above the threshold, then discard the winner's other
// bids and all bids on the won item. Ties go to the lowest bidder, then the
// lowest item. Throws on a non-singleton bid.
Allocation greedy_unit(const std::vector<Bid>& bids, const Money& threshold);

// Same loop for package bids: acceptance discards every bid whose bundle
// intersects the accepted one.
Allocation greedy_general(const std::vector<Bid>& bids, const Money& threshold);

struct ValueBuckets {
  std::vector<int> bidders;  // the selected bucket
  Money total;
  Money v_star;  // bucket holds winner values in (v_star, 2*v_star]
};

// Doubling buckets over the optimal allocation's per-winner values: bucket i
// holds values in (OPT/2^i, OPT/2^(i-1)] for i = 1..2*ceil(log2 n), plus a
// remainder bucket. Returns the bucket with the largest total, which carries
// at least OPT / (3*ceil(log2 n)).
ValueBuckets value_buckets(const OptResult& opt, const Instance& instance, int n);

// ceil(log2(max(x, 2))); the integer log used by all threshold formulas so
// that every comparison stays in exact arithmetic.
int ceil_log2_clamped(long x);

}  // namespace cca
