#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "cca/bundle.hpp"
#include "cca/rational.hpp"

namespace cca {

// Deterministic preference among equally attractive bids. Every rule induces a
// strict total order over any candidate set; the canonical bundle order is the
// final fallback.
enum class TieBreakKind {
  kLowestIndexFirst,
  kLowestValueFirst,
  kHighestValueFirst,
  kExplicitPriority,
};

struct TieBreakRule {
  TieBreakKind kind = TieBreakKind::kLowestIndexFirst;
  // For kExplicitPriority: item ids (unit-demand/additive) or entry ids
  // (bundle lists), most preferred first. Ids not listed rank after all
  // listed ones, in canonical order.
  std::vector<int> priority;

  static TieBreakRule lowest_index() { return {TieBreakKind::kLowestIndexFirst, {}}; }
  static TieBreakRule lowest_value() { return {TieBreakKind::kLowestValueFirst, {}}; }
  static TieBreakRule highest_value() { return {TieBreakKind::kHighestValueFirst, {}}; }
  static TieBreakRule explicit_priority(std::vector<int> ids) {
    return {TieBreakKind::kExplicitPriority, std::move(ids)};
  }

  friend bool operator==(const TieBreakRule&, const TieBreakRule&) = default;
};

// Value of a set is the best single item inside it.
struct UnitDemand {
  std::vector<Money> item_values;  // one per item, zero = unvalued
};

// Value of a set is the sum of its demand_cap highest-valued items
// (all of them when demand_cap is unset).
struct Additive {
  std::vector<Money> item_values;
  std::optional<int> demand_cap;
};

// One XOR entry. `bid_value`, when set, replaces `value` in the bidding
// decision only; allocations, welfare and audits always use `value`.
// `allow_zero_utility`, when set, overrides the valuation-wide flag for this
// entry. Both knobs exist to express the scripted bidders of the hard
// instances; plain truthful bidders leave them unset.
struct BundleEntry {
  Bundle bundle;
  Money value;
  std::optional<Money> bid_value;
  std::optional<bool> allow_zero_utility;

  const Money& effective_bid_value() const { return bid_value ? *bid_value : value; }
};

struct BundleList {
  std::vector<BundleEntry> entries;
};

struct Valuation {
  std::variant<UnitDemand, Additive, BundleList> kind;
  TieBreakRule tie_break;
  // Whether the bidder keeps bidding on a bundle of exactly zero utility
  // instead of dropping out.
  bool bid_at_zero_utility = false;

  bool is_unit_demand() const { return std::holds_alternative<UnitDemand>(kind); }
  bool is_additive() const { return std::holds_alternative<Additive>(kind); }
  bool is_bundle_list() const { return std::holds_alternative<BundleList>(kind); }

  // True when any bidding path of this valuation may bid at zero utility.
  bool any_zero_utility_bidding() const;
};

struct Instance {
  int num_items = 0;
  int num_bidders = 0;
  std::vector<Valuation> valuations;
  int cap = 1;  // max cardinality any bidder ever demands
  std::optional<std::int64_t> value_scale;

  void validate() const;
};

// v_i(s) under the variant semantics; value of the empty set is 0.
Money value_of(const Valuation& val, const Bundle& s, int num_items);

// value_of(s) minus the price of s.
Money utility(const Valuation& val, const Bundle& s, const Prices& prices);

// The utility-maximizing bid at the given prices, ties resolved by the
// valuation's rule, or nothing when the bidder drops out. Bundle-list entries
// with a bid_value are ranked by that adjusted value; everything recorded
// about the returned bundle (true utility, welfare) uses real values.
std::optional<Bundle> demand_query(const Valuation& val, const Prices& prices);

// Maximum true utility over the valuation's support, clamped at 0 (the empty
// set is always available). Exact for all three variants at any item count.
Money max_utility(const Valuation& val, const Prices& prices);

}  // namespace cca
