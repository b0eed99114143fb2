#include "doctest.h"

#include "cca/generators.hpp"
#include "cca/valuation.hpp"

using namespace cca;

namespace {

Valuation unit(std::vector<Money> values, TieBreakRule tie = TieBreakRule::lowest_index(),
               bool zero = false) {
  return {UnitDemand{std::move(values)}, tie, zero};
}

// Exhaustive reference for small instances: best utility over every subset.
std::pair<Money, Bundle> subset_argmax(const Valuation& val, const Prices& prices) {
  int m = static_cast<int>(prices.size());
  Money best = Money(-1);
  Bundle arg;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> items;
    for (int j = 0; j < m; ++j) {
      if (mask & (1u << j)) items.push_back(j);
    }
    Bundle s(std::move(items));
    Money u = value_of(val, s, m) - price_of(s, prices);
    if (best < u) {
      best = u;
      arg = s;
    }
  }
  return {best, arg};
}

}  // namespace

TEST_CASE("value_of per variant") {
  Valuation ud = unit({Money(5), Money(3)});
  CHECK(value_of(ud, Bundle{0, 1}, 2) == Money(5));
  CHECK(value_of(ud, Bundle{}, 2) == Money(0));
  CHECK(value_of(ud, Bundle{1}, 2) == Money(3));

  Valuation bl{BundleList{{{Bundle{0, 1}, Money(7), std::nullopt, std::nullopt}}},
               TieBreakRule::lowest_index(), false};
  CHECK(value_of(bl, Bundle{0}, 2) == Money(0));
  CHECK(value_of(bl, Bundle{0, 1}, 2) == Money(7));

  Valuation add{Additive{{Money(4), Money(2), Money(6)}, 2}, TieBreakRule::lowest_index(), false};
  CHECK(value_of(add, Bundle{0, 1, 2}, 3) == Money(10));  // top two of 4, 2, 6
  CHECK(value_of(add, Bundle{1}, 3) == Money(2));

  CHECK_THROWS_AS(value_of(ud, Bundle{5}, 2), InputError);
}

TEST_CASE("value_of is monotone under inclusion") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    RandomParams rp;
    rp.kind = trial % 2 == 0 ? RandomParams::Kind::kUnit : RandomParams::Kind::kXor;
    rp.n = 2;
    rp.m = 6;
    rp.cap = 3;
    rp.seed = 100 + static_cast<std::uint64_t>(trial);
    Instance inst = gen_random(rp);
    for (const Valuation& val : inst.valuations) {
      std::vector<int> items;
      for (int j = 0; j < inst.num_items; ++j) {
        if (rng.coin()) items.push_back(j);
      }
      Bundle big(items);
      std::vector<int> fewer;
      for (int j : big.items()) {
        if (rng.coin()) fewer.push_back(j);
      }
      Bundle small(fewer);
      CHECK(value_of(val, small, inst.num_items) <= value_of(val, big, inst.num_items));
    }
  }
}

TEST_CASE("utility subtracts bundle price") {
  Valuation ud = unit({Money(5), Money(3)});
  CHECK(utility(ud, Bundle{0}, {Money(2), Money(1)}) == Money(3));
  CHECK(utility(ud, Bundle{}, {Money(2), Money(1)}) == Money(0));
  CHECK(utility(ud, Bundle{1}, {Money(5), Money(1)}) == Money(2));
  CHECK_THROWS_AS(utility(ud, Bundle{0}, {Money(1)}), InputError);
  CHECK_THROWS_AS(utility(ud, Bundle{0}, {Money(-1), Money(0)}), InputError);
}

TEST_CASE("demand query picks the best bundle or drops out") {
  Valuation ud = unit({Money(5), Money(3)});
  CHECK(demand_query(ud, {Money(5), Money(1)}) == Bundle{1});  // utility 2 beats 0
  CHECK(demand_query(ud, {Money(6), Money(4)}) == std::nullopt);
  CHECK(demand_query(ud, {Money(5), Money(3)}) == std::nullopt);  // zero utility, flag off

  Valuation ud_zero = unit({Money(5), Money(3)}, TieBreakRule::lowest_index(), true);
  CHECK(demand_query(ud_zero, {Money(5), Money(3)}) == Bundle{0});
}

TEST_CASE("equal-utility ties follow the configured rule") {
  // Items valued 4 and 7, priced so both have utility 3.
  Prices prices{Money(1), Money(4)};
  CHECK(demand_query(unit({Money(4), Money(7)}, TieBreakRule::lowest_value()), prices) ==
        Bundle{0});
  CHECK(demand_query(unit({Money(4), Money(7)}, TieBreakRule::highest_value()), prices) ==
        Bundle{1});
  CHECK(demand_query(unit({Money(4), Money(4)}, TieBreakRule::lowest_index()),
                     {Money(1), Money(1)}) == Bundle{0});
  CHECK(demand_query(unit({Money(4), Money(7)}, TieBreakRule::explicit_priority({1, 0})), prices) ==
        Bundle{1});
}

TEST_CASE("additive demand takes the top items within the cap") {
  Valuation add{Additive{{Money(6), Money(5), Money(4)}, 2}, TieBreakRule::lowest_index(), false};
  CHECK(demand_query(add, {Money(0), Money(0), Money(0)}) == Bundle{0, 1});
  CHECK(demand_query(add, {Money(5), Money(1), Money(1)}) == Bundle{1, 2});  // margins 1, 4, 3
  // Zero-margin items join only when zero-utility bidding is on.
  Valuation add_zero{Additive{{Money(6), Money(5), Money(4)}, std::nullopt},
                     TieBreakRule::lowest_index(), true};
  CHECK(demand_query(add_zero, {Money(6), Money(5), Money(4)}) == Bundle{0, 1, 2});
  Valuation add_strict{Additive{{Money(6), Money(5), Money(4)}, std::nullopt},
                       TieBreakRule::lowest_index(), false};
  CHECK(demand_query(add_strict, {Money(6), Money(5), Money(3)}) == Bundle{2});
}

TEST_CASE("bundle list demand bids exact entries and honors per-entry flags") {
  BundleList bl;
  bl.entries.push_back({Bundle{0, 1}, Money(6), std::nullopt, std::nullopt});
  bl.entries.push_back({Bundle{2}, Money(1), std::nullopt, true});
  Valuation val{bl, TieBreakRule::lowest_value(), false};

  CHECK(demand_query(val, {Money(0), Money(0), Money(0)}) == Bundle{0, 1});
  // First entry at utility zero is barred (flag off), second allowed by its override.
  CHECK(demand_query(val, {Money(3), Money(3), Money(1)}) == Bundle{2});
  CHECK(demand_query(val, {Money(3), Money(4), Money(2)}) == std::nullopt);

  // A bid value below the true value steers bidding without touching utility.
  BundleList adjusted;
  adjusted.entries.push_back({Bundle{0}, Money(6), Money(4), std::nullopt});
  adjusted.entries.push_back({Bundle{1}, Money(5), std::nullopt, std::nullopt});
  Valuation aval{adjusted, TieBreakRule::lowest_index(), false};
  // True values would pick item 0 (6-1=5 vs 5-1=4); the bid value flips it.
  CHECK(demand_query(aval, {Money(1), Money(1)}) == Bundle{1});
  CHECK(utility(aval, Bundle{0}, {Money(1), Money(1)}) == Money(5));
}

TEST_CASE("demand query matches the exhaustive argmax utility") {
  for (int trial = 0; trial < 60; ++trial) {
    RandomParams rp;
    rp.kind = trial % 2 == 0 ? RandomParams::Kind::kUnit : RandomParams::Kind::kXor;
    rp.n = 3;
    rp.m = 5;
    rp.cap = 3;
    rp.seed = 7000 + static_cast<std::uint64_t>(trial);
    Instance inst = gen_random(rp);
    SplitMix64 rng(rp.seed ^ 0xF00Du);
    std::int64_t w = *inst.value_scale;
    Prices prices;
    for (int j = 0; j < inst.num_items; ++j)
      prices.push_back(Money(static_cast<std::int64_t>(rng.below(5)) * w / 2));
    for (const Valuation& val : inst.valuations) {
      auto [best, arg] = subset_argmax(val, prices);
      auto choice = demand_query(val, prices);
      if (best.is_positive()) {
        REQUIRE(choice.has_value());
        CHECK(utility(val, *choice, prices) == best);
      } else {
        CHECK(!choice.has_value());
      }
      // Determinism: identical inputs give identical outputs.
      CHECK(demand_query(val, prices) == choice);
    }
  }
}

TEST_CASE("instance validation rejects malformed data") {
  Instance inst;
  inst.num_items = 2;
  inst.num_bidders = 1;
  inst.cap = 2;
  inst.valuations.push_back(unit({Money(1), Money(2)}));
  CHECK_NOTHROW(inst.validate());

  Instance bad = inst;
  bad.cap = 3;
  CHECK_THROWS_AS(bad.validate(), InputError);

  bad = inst;
  bad.valuations[0] = unit({Money(-1), Money(2)});
  CHECK_THROWS_AS(bad.validate(), InputError);

  bad = inst;
  bad.valuations[0] = Valuation{
      BundleList{{{Bundle{0}, Money(2), Money(3), std::nullopt}}},  // bid above value
      TieBreakRule::lowest_index(), false};
  CHECK_THROWS_AS(bad.validate(), InputError);

  bad = inst;
  bad.cap = 1;
  bad.valuations[0] = Valuation{BundleList{{{Bundle{0, 1}, Money(2), std::nullopt, std::nullopt}}},
                                TieBreakRule::lowest_index(), false};
  CHECK_THROWS_AS(bad.validate(), InputError);

  bad = inst;
  bad.value_scale = 2;
  bad.valuations[0] = unit({Money(2), Money(3)});
  CHECK_THROWS_AS(bad.validate(), InputError);
  bad.valuations[0] = unit({Money(2), Money(4)});
  CHECK_NOTHROW(bad.validate());
}
