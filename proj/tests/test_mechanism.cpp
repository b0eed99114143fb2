#include "doctest.h"

#include "cca/generators.hpp"
#include "cca/harness.hpp"
#include "cca/io.hpp"
#include "cca/mechanism.hpp"

using namespace cca;

namespace {

Instance single_bidder_single_item(std::int64_t value) {
  Instance inst;
  inst.num_items = 1;
  inst.num_bidders = 1;
  inst.cap = 1;
  inst.valuations.push_back(
      {UnitDemand{{Money(value)}}, TieBreakRule::lowest_index(), false});
  return inst;
}

}  // namespace

TEST_CASE("collect_bids removes bidders with nothing worth bidding") {
  Instance inst = single_bidder_single_item(5);
  std::vector<int> active{0};
  auto bids = collect_bids(inst, {Money(6)}, 0, active);
  CHECK(bids.empty());
  CHECK(active.empty());
}

TEST_CASE("identical bidders bid identical bundles") {
  Instance inst;
  inst.num_items = 3;
  inst.num_bidders = 2;
  inst.cap = 1;
  Valuation val{UnitDemand{{Money(4), Money(6), Money(2)}}, TieBreakRule::lowest_index(), false};
  inst.valuations = {val, val};
  std::vector<int> active{0, 1};
  auto bids = collect_bids(inst, {Money(1), Money(1), Money(0)}, 3, active);
  REQUIRE(bids.size() == 2);
  CHECK(bids[0].bundle == bids[1].bundle);
  CHECK(bids[0].round == 3);
  CHECK(bids[0].price == Money(1));
}

TEST_CASE("first-round bids of the stopping-rule example") {
  SmraStopInstance g = gen_smra_stop(10, 100);
  std::vector<int> active{0, 1, 2};
  Prices zero(4, Money(0));
  auto bids = collect_bids(g.instance, zero, 0, active);
  REQUIRE(bids.size() == 3);
  CHECK(bids[0].bundle == Bundle{0, 1});
  CHECK(bids[1].bundle == Bundle{2, 3});
  CHECK(bids[2].bundle == Bundle{1, 2});
}

TEST_CASE("price increments per policy") {
  Prices prices{Money(1), Money(0)};
  std::vector<Bid> bids{{0, Bundle{0}, Money(1), 0}, {1, Bundle{0}, Money(1), 0},
                        {2, Bundle{0}, Money(1), 0}};
  Prices proportional = apply_increments(prices, bids, IncrementPolicy::demand_proportional(Money(1)));
  CHECK(proportional[0] == Money(4));  // three bids, one unit each
  CHECK(proportional[1] == Money(0));
  Prices fixed = apply_increments(prices, bids, IncrementPolicy::fixed_on_excess(Money(1)));
  CHECK(fixed[0] == Money(2));
  CHECK(fixed[1] == Money(0));
  // A single bid moves proportional prices but not fixed ones.
  std::vector<Bid> solo{{0, Bundle{1}, Money(0), 0}};
  CHECK(apply_increments(prices, solo, IncrementPolicy::demand_proportional(Money(1, 2)))[1] ==
        Money(1, 2));
  CHECK(apply_increments(prices, solo, IncrementPolicy::fixed_on_excess(Money(1)))[1] == Money(0));
  CHECK_THROWS_AS(apply_increments(prices, bids, IncrementPolicy::demand_proportional(Money(0))),
                  InputError);
}

TEST_CASE("check_stop needs disjoint bids and a conflict-free winner set") {
  std::vector<Bid> overlapping{{0, Bundle{0, 1}, Money(2), 1}, {1, Bundle{1}, Money(1), 1}};
  CHECK(!check_stop(overlapping, overlapping, StoppingRule::kDisjointOnly));

  // One remaining bidder whose live bid avoids the other winners.
  std::vector<Bid> history{{0, Bundle{0}, Money(5), 0}, {1, Bundle{1}, Money(3), 0},
                           {1, Bundle{1}, Money(4), 1}};
  std::vector<Bid> live{{1, Bundle{1}, Money(4), 1}};
  auto alloc = check_stop(live, history, StoppingRule::kPorterConflictFree);
  REQUIRE(alloc.has_value());
  CHECK(alloc->revenue() == Money(9));

  // A live bid overlapping another bidder's winning set blocks the stop.
  std::vector<Bid> contested{{0, Bundle{0}, Money(5), 0}, {1, Bundle{0}, Money(1), 1}};
  std::vector<Bid> live2{{1, Bundle{0}, Money(1), 1}};
  CHECK(!check_stop(live2, contested, StoppingRule::kPorterConflictFree));
  CHECK(check_stop(live2, contested, StoppingRule::kDisjointOnly).has_value());
}

TEST_CASE("a lone bidder wins immediately at zero price") {
  Instance inst = single_bidder_single_item(5);
  AuctionConfig config{IncrementPolicy::demand_proportional(Money(1)),
                       StoppingRule::kPorterConflictFree, 100};
  AuctionResult result = run_cca(inst, config);
  CHECK(result.rounds == 1);
  CHECK(result.reason == Termination::kPorterStop);
  CHECK(result.allocation.assignments.at(0).bundle == Bundle{0});
  CHECK(result.allocation.assignments.at(0).payment == Money(0));
  CHECK(result.allocation.welfare(inst) == Money(5));
}

TEST_CASE("price war between copies ends in universal dropout") {
  Instance inst;
  inst.num_items = 1;
  inst.num_bidders = 2;
  inst.cap = 1;
  Valuation val{UnitDemand{{Money(5)}}, TieBreakRule::lowest_index(), false};
  inst.valuations = {val, val};
  AuctionConfig config{IncrementPolicy::demand_proportional(Money(1)),
                       StoppingRule::kPorterConflictFree, 100};
  AuctionResult result = run_cca(inst, config);
  CHECK(result.reason == Termination::kAllDropped);
  // Two bids per round push the price by 2; the last positive-utility bid
  // lands at price 4, and one copy wins it.
  CHECK(result.allocation.revenue() == Money(4));
  CHECK(result.allocation.welfare(inst) == Money(5));
  // Dropout happens once the price passes the common value.
  CHECK(result.final_prices[0] == Money(6));
  for (std::size_t r = 1; r < result.trace.rounds.size(); ++r) {
    CHECK(result.trace.rounds[r - 1].prices[0] <= result.trace.rounds[r].prices[0]);
  }
}

TEST_CASE("hitting the round cap reports truncation") {
  Instance inst;
  inst.num_items = 1;
  inst.num_bidders = 2;
  inst.cap = 1;
  Valuation val{UnitDemand{{Money(1000)}}, TieBreakRule::lowest_index(), false};
  inst.valuations = {val, val};
  AuctionConfig config{IncrementPolicy::demand_proportional(Money(1)),
                       StoppingRule::kPorterConflictFree, 3};
  AuctionResult result = run_cca(inst, config);
  CHECK(result.reason == Termination::kTruncated);
  CHECK(result.rounds == 3);
}

TEST_CASE("proportional increments with strict bidders terminate within the value bound") {
  for (int trial = 0; trial < 25; ++trial) {
    RandomParams rp;
    rp.kind = trial % 2 == 0 ? RandomParams::Kind::kUnit : RandomParams::Kind::kXor;
    rp.n = 2 + trial % 4;
    rp.m = 3 + trial % 4;
    rp.cap = 2;
    rp.seed = 0x7E57 + static_cast<std::uint64_t>(trial);
    Instance inst = gen_random(rp);
    Money epsilon(*inst.value_scale, 2);
    AuctionConfig config{IncrementPolicy::demand_proportional(epsilon),
                         StoppingRule::kPorterConflictFree, 1'000'000};
    AuctionResult result = run_cca(inst, config);
    REQUIRE(result.reason != Termination::kTruncated);
    Money total_value = 0;
    Prices zero(static_cast<std::size_t>(inst.num_items), Money(0));
    for (const Valuation& val : inst.valuations) total_value += max_utility(val, zero);
    Money bound = total_value / epsilon + Money(inst.num_bidders + 2);
    CHECK(Money(result.rounds) <= bound);
  }
}

TEST_CASE("identical runs produce identical traces") {
  UnitLbInstance g = gen_unit_demand_lb(2, 3);
  AuctionResult a = run_cca(g.instance, g.config);
  AuctionResult b = run_cca(g.instance, g.config);
  CHECK(trace_to_csv(a.trace) == trace_to_csv(b.trace));
}

TEST_CASE("bid prices in the trace equal the recorded round prices") {
  SmraStopInstance g = gen_smra_stop(5, 40);
  AuctionResult result = run_cca(g.instance, g.config);
  for (const RoundRecord& round : result.trace.rounds) {
    for (const Bid& b : round.bids) {
      CHECK(b.price == price_of(b.bundle, round.prices));
    }
  }
}
