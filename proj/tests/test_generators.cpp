#include "doctest.h"

#include <numeric>
#include <set>

#include "cca/generators.hpp"
#include "cca/io.hpp"

using namespace cca;

TEST_CASE("growth sequences") {
  CHECK(growth_sequence(3, 4) == std::vector<long>{1, 4, 16, 64});
  CHECK(growth_sequence(2, 4) == std::vector<long>{1, 3, 9, 27});
  // Gadget step k*(C-1)/2 with k=2, C=3 gives 2.
  CHECK(growth_sequence(2, 3) == std::vector<long>{1, 3, 9});
  CHECK_THROWS_AS(growth_sequence(0, 3), InputError);
}

TEST_CASE("unit-demand family shape") {
  UnitLbInstance g = gen_unit_demand_lb(3, 2);
  CHECK(g.instance.num_items == 16);  // 3 * (1 + 4) + 1
  CHECK(g.instance.num_bidders == 8);
  CHECK(g.instance.cap == 1);
  CHECK(g.u == std::vector<long>{1, 4});
  CHECK(g.block_bidders.size() == 6);

  // Every class holds the scheduled number of items, and the level-(v-1)
  // classes of one block match the union of all classes at v and above.
  for (int l : {2, 3, 4}) {
    UnitLbInstance h = gen_unit_demand_lb(2, l);
    for (int v = 2; v <= l; ++v) {
      std::size_t upper = 1;  // the special item
      for (int w = v; w <= l; ++w) {
        for (int block = 1; block <= 2; ++block)
          upper += h.class_items[static_cast<std::size_t>(block - 1)][static_cast<std::size_t>(w - 1)]
                       .size();
      }
      CHECK(h.class_items[0][static_cast<std::size_t>(v - 2)].size() == upper);
    }
  }

  CHECK_THROWS_AS(gen_unit_demand_lb(1, 2), InputError);
  CHECK_THROWS_AS(gen_unit_demand_lb(2, 1), InputError);
}

TEST_CASE("unit-demand family constructive allocation") {
  for (int k : {2, 3}) {
    for (int l : {2, 3}) {
      UnitLbInstance g = gen_unit_demand_lb(k, l);
      Allocation alloc = g.constructive_allocation();
      CHECK(alloc.disjoint());
      CHECK(alloc.welfare(g.instance) == g.opt_lower_bound_closed_form());
    }
  }
}

TEST_CASE("unit-demand family exhibits the laddered price profile") {
  UnitLbInstance g = gen_unit_demand_lb(2, 3);
  AuctionResult result = run_cca(g.instance, g.config);
  // For every level v there is a round where items at level v+p cost exactly
  // p+1 while everything below v is still free.
  for (int v = 1; v <= g.levels; ++v) {
    bool found = false;
    for (const RoundRecord& round : result.trace.rounds) {
      bool match = true;
      for (int j = 0; j < g.instance.num_items && match; ++j) {
        int level = g.item_class[static_cast<std::size_t>(j)];
        Money want = level >= v ? Money(level - v + 1) : Money(0);
        match = round.prices[static_cast<std::size_t>(j)] == want;
      }
      if (match) {
        found = true;
        break;
      }
    }
    CHECK_MESSAGE(found, "no ladder round for level ", v);
  }
}

TEST_CASE("gadget family shape and geometry") {
  GadgetLbInstance g = gen_gadget_lb(2, 2, 3);
  CHECK(g.instance.num_items == 34);  // 24 gadget items + 3 fresh + 6 + 1 reserved
  CHECK(g.instance.num_bidders == 8);
  CHECK(g.instance.cap == 3);
  CHECK(g.u == std::vector<long>{1, 3});
  CHECK(g.gadgets.size() == 8);  // per block: one top gadget + three lower ones

  for (const auto& gadget : g.gadgets) {
    // Vertex bundles pairwise intersect and cover each item exactly twice.
    std::map<int, int> coverage;
    for (int a = 0; a < g.clique; ++a) {
      Bundle ba = g.vertex_bundle(gadget, a);
      CHECK(static_cast<int>(ba.size()) == g.clique - 1);
      for (int j : ba.items()) coverage[j]++;
      for (int b = a + 1; b < g.clique; ++b) {
        CHECK(ba.intersects(g.vertex_bundle(gadget, b)));
      }
    }
    CHECK(coverage.size() == static_cast<std::size_t>(g.clique * (g.clique - 1) / 2));
    for (const auto& [item, count] : coverage) CHECK(count == 2);

    // Cycle classes partition the gadget into C-item sets.
    std::set<int> seen;
    for (int diff = 1; diff <= (g.clique - 1) / 2; ++diff) {
      Bundle cls = g.cycle_class(gadget, diff);
      CHECK(static_cast<int>(cls.size()) == g.clique);
      for (int j : cls.items()) CHECK(seen.insert(j).second);
    }
    CHECK(seen.size() == static_cast<std::size_t>(g.clique * (g.clique - 1) / 2));
  }

  CHECK_THROWS_AS(gen_gadget_lb(2, 2, 4), InputError);  // even C
  CHECK_THROWS_AS(gen_gadget_lb(1, 2, 3), InputError);
}

TEST_CASE("gadget family counting identity") {
  // Gadgets one level down match the item mass of all levels above, in
  // C-item units, which is what keeps the two bidder groups in lockstep.
  for (int l : {2, 3}) {
    GadgetLbInstance g = gen_gadget_lb(2, l, 3);
    for (int v = 2; v <= l; ++v) {
      long lower_gadgets = 0;
      long upper_items = static_cast<long>(g.new_items.size());
      for (const auto& gadget : g.gadgets) {
        if (gadget.block == 1 && gadget.level == v - 1) ++lower_gadgets;
        if (gadget.level >= v) upper_items += g.clique * (g.clique - 1) / 2;
      }
      CHECK(lower_gadgets == upper_items / g.clique);
    }
  }
}

TEST_CASE("wider unit-demand family keeps the claim") {
  UnitLbInstance g = gen_unit_demand_lb(4, 3);
  AuctionResult result = run_cca(g.instance, g.config);
  CHECK(result.allocation.welfare(g.instance) == g.cca_welfare_closed_form());  // 14
  std::set<int> blocks(g.block_bidders.begin(), g.block_bidders.end());
  for (const RoundRecord& round : result.trace.rounds) {
    for (const Bid& bid : round.bids) {
      if (!blocks.count(bid.bidder)) continue;
      CHECK(bid.price < Money(2));
      if (bid.price == Money(1)) {
        CHECK(g.item_class[static_cast<std::size_t>(bid.bundle.items()[0])] == 1);
      }
    }
  }
}

TEST_CASE("gadget family constructive allocation") {
  GadgetLbInstance g = gen_gadget_lb(2, 2, 3);
  Allocation alloc = g.constructive_allocation();
  CHECK(alloc.disjoint());
  CHECK(alloc.welfare(g.instance) == Money(24));
}

TEST_CASE("gadget family replays at a wider clique") {
  GadgetLbInstance g = gen_gadget_lb(2, 2, 5);
  AuctionResult result = run_cca(g.instance, g.config);
  CHECK(result.reason != Termination::kTruncated);
  CHECK(result.allocation.welfare(g.instance) == g.cca_welfare_closed_form());  // 25
  // Block bidders still only pay for their reserved items.
  std::set<int> specials(g.block_specials.begin(), g.block_specials.end());
  std::set<int> blocks(g.block_bidders.begin(), g.block_bidders.end());
  for (const RoundRecord& round : result.trace.rounds) {
    for (const Bid& bid : round.bids) {
      if (!blocks.count(bid.bidder) || !bid.price.is_positive()) continue;
      CHECK(bid.price == Money(1, 2));
      CHECK(bid.bundle.size() == 1);
      CHECK(specials.count(bid.bundle.items()[0]) == 1);
    }
  }
}

TEST_CASE("fixed-increment families validate their parameters") {
  CHECK_THROWS_AS(gen_fixed_increment_unit(15, 100), InputError);  // not a square
  CHECK_THROWS_AS(gen_fixed_increment_unit(1, 100), InputError);
  CHECK_THROWS_AS(gen_fixed_increment_pairs(1, 100), InputError);
  CHECK_THROWS_AS(gen_smra_stop(2, 100), InputError);
  CHECK_THROWS_AS(gen_smra_stop(10, 5), InputError);

  FixedUnitInstance g = gen_fixed_increment_unit(4, 50);
  CHECK(g.instance.num_items == 5);
  CHECK(g.instance.num_bidders == 8);
  // Smallest square: the clock welfare matches the optimum exactly.
  CHECK(g.cca_welfare_closed_form() == g.opt_closed_form());
  AuctionResult result = run_cca(g.instance, g.config);
  CHECK(result.allocation.welfare(g.instance) == g.cca_welfare_closed_form());
}

TEST_CASE("pairs family bids always include the hub item") {
  FixedPairsInstance g = gen_fixed_increment_pairs(4, 30);
  AuctionResult result = run_cca(g.instance, g.config);
  CHECK(result.allocation.welfare(g.instance) == Money(60));
  for (const RoundRecord& round : result.trace.rounds) {
    for (const Bid& bid : round.bids) CHECK(bid.bundle.contains(0));
  }
}

TEST_CASE("random instances are reproducible and respect their shape") {
  RandomParams rp;
  rp.kind = RandomParams::Kind::kXor;
  rp.n = 4;
  rp.m = 6;
  rp.cap = 3;
  rp.seed = 99;
  Instance a = gen_random(rp);
  Instance b = gen_random(rp);
  CHECK(serialize_instance({a, std::nullopt}) == serialize_instance({b, std::nullopt}));
  for (const Valuation& val : a.valuations) {
    for (const auto& e : std::get<BundleList>(val.kind).entries) {
      CHECK(e.bundle.size() <= 3);
      CHECK((e.value / Money(*a.value_scale)).is_integer());
    }
  }
  rp.seed = 100;
  CHECK(serialize_instance({a, std::nullopt}) !=
        serialize_instance({gen_random(rp), std::nullopt}));

  rp.kind = RandomParams::Kind::kUnit;
  Instance u = gen_random(rp);
  CHECK(u.cap == 1);
  for (const Valuation& val : u.valuations) CHECK(val.is_unit_demand());
}
