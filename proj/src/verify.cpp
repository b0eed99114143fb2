#include "cca/verify.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "cca/harness.hpp"
#include "cca/io.hpp"

namespace cca {

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail << what;
    }
  }
};

// Shared by most criteria: the achieved welfare covers the revenue, and no
// single-pass greedy selection out-earns the exact winner determination.
void check_revenue_properties(Checker& c, const Instance& instance, const AuctionResult& result,
                              const OptResult& opt) {
  Money welfare = result.allocation.welfare(instance);
  Money revenue = result.allocation.revenue();
  c.expect(revenue <= welfare, "revenue exceeds welfare");
  std::vector<Bid> history = bid_history(result.trace);
  Money wd_revenue = winner_determination(history).revenue();
  for (const Money& b : greedy_thresholds(instance, opt)) {
    c.expect(greedy_general(history, b).revenue() <= wd_revenue,
             "greedy beats winner determination at threshold " + b.str());
  }
}

// ---------------------------------------------------------------------------
// The 500-run random suite shared by the facts/bounds/determinism criteria.

struct RandomRun {
  Instance instance;
  AuctionConfig config;
  AuctionResult result;
};

const std::vector<RandomRun>& random_suite() {
  static const std::vector<RandomRun> runs = [] {
    std::vector<RandomRun> out;
    out.reserve(500);
    for (int i = 0; i < 500; ++i) {
      RandomParams rp;
      rp.kind = i % 2 == 0 ? RandomParams::Kind::kUnit : RandomParams::Kind::kXor;
      rp.n = 2 + i % 5;             // 2..6 bidders
      rp.m = 3 + (i / 2) % 5;       // 3..7 items
      rp.cap = 1 + i % 3;           // 1..3 for xor entries
      rp.value_min = 1;
      rp.value_max = 4;
      rp.seed = 0xABCDEF00u + static_cast<std::uint64_t>(i);
      RandomRun run;
      run.instance = gen_random(rp);
      Money w(*run.instance.value_scale);
      run.config.policy = (i / 4) % 2 == 0 ? IncrementPolicy::demand_proportional(w)
                                           : IncrementPolicy::fixed_on_excess(w);
      run.config.stop =
          (i / 8) % 2 == 0 ? StoppingRule::kPorterConflictFree : StoppingRule::kDisjointOnly;
      run.config.max_rounds = 300;
      run.result = run_cca(run.instance, run.config);
      out.push_back(std::move(run));
    }
    return out;
  }();
  return runs;
}

// ---------------------------------------------------------------------------
// Criterion 1: unit-demand hard family replays.

CriterionResult criterion_unit_demand_replay() {
  Checker c;
  for (int k = 2; k <= 3; ++k) {
    std::vector<Money> ratios;
    for (int l = 2; l <= 4; ++l) {
      UnitLbInstance g = gen_unit_demand_lb(k, l);
      AuctionResult result = run_cca(g.instance, g.config);
      std::string tag = " (k=" + std::to_string(k) + ", l=" + std::to_string(l) + ")";
      c.expect(result.reason != Termination::kTruncated, "run truncated" + tag);
      c.expect(result.allocation.welfare(g.instance) == g.cca_welfare_closed_form(),
               "welfare mismatch" + tag);

      // Block bidders never bid above price 1, and their price-1 bids all sit
      // on bottom-value items.
      std::vector<bool> is_block(static_cast<std::size_t>(g.instance.num_bidders), false);
      for (int b : g.block_bidders) is_block[static_cast<std::size_t>(b)] = true;
      for (const RoundRecord& round : result.trace.rounds) {
        for (const Bid& bid : round.bids) {
          if (!is_block[static_cast<std::size_t>(bid.bidder)]) continue;
          c.expect(bid.price < Money(2), "block bidder bid at price >= 2" + tag);
          if (bid.price == Money(1)) {
            for (int j : bid.bundle.items()) {
              c.expect(g.item_class[static_cast<std::size_t>(j)] == 1,
                       "price-1 bid off the bottom class" + tag);
            }
          }
        }
      }

      Allocation constructive = g.constructive_allocation();
      c.expect(constructive.disjoint(), "constructive allocation overlaps" + tag);
      c.expect(constructive.welfare(g.instance) == g.opt_lower_bound_closed_form(),
               "constructive value mismatch" + tag);
      if (l >= 3) {
        c.expect(g.cca_welfare_closed_form() < g.opt_lower_bound_closed_form(),
                 "lower bound does not exceed the clock welfare" + tag);
      }
      ratios.push_back(g.opt_lower_bound_closed_form() / g.cca_welfare_closed_form());

      OptResult opt = optimal_welfare(g.instance, l == 2 ? 4'000'000 : 0);
      check_revenue_properties(c, g.instance, result, opt);
    }
    for (std::size_t i = 1; i < ratios.size(); ++i) {
      c.expect(ratios[i - 1] < ratios[i], "ratio not increasing in l at k=" + std::to_string(k));
    }
  }
  return {1, "unit-demand hard family replay", c.ok, c.detail.str(), 0};
}

// ---------------------------------------------------------------------------
// Criterion 2: gadget hard family replay.

CriterionResult criterion_gadget_replay() {
  Checker c;
  GadgetLbInstance g = gen_gadget_lb(2, 2, 3);
  AuctionResult result = run_cca(g.instance, g.config);
  c.expect(result.reason != Termination::kTruncated, "run truncated");
  c.expect(g.cca_welfare_closed_form() == Money(15), "closed form sanity");
  c.expect(result.allocation.welfare(g.instance) == Money(15), "welfare mismatch");

  std::vector<bool> is_block(static_cast<std::size_t>(g.instance.num_bidders), false);
  std::vector<bool> is_special(static_cast<std::size_t>(g.instance.num_items), false);
  for (int b : g.block_bidders) is_block[static_cast<std::size_t>(b)] = true;
  for (int s : g.block_specials) is_special[static_cast<std::size_t>(s)] = true;
  for (const RoundRecord& round : result.trace.rounds) {
    for (const Bid& bid : round.bids) {
      if (!is_block[static_cast<std::size_t>(bid.bidder)]) continue;
      if (bid.price.is_positive()) {
        c.expect(bid.price == Money(1, 2), "positive block bid away from 1/2");
        c.expect(bid.bundle.size() == 1 && is_special[static_cast<std::size_t>(bid.bundle.items()[0])],
                 "positive block bid off the reserved item");
      }
    }
  }

  Allocation constructive = g.constructive_allocation();
  c.expect(constructive.disjoint(), "constructive allocation overlaps");
  c.expect(g.constructive_value_closed_form() == Money(24), "constructive closed form sanity");
  c.expect(constructive.welfare(g.instance) == Money(24), "constructive value mismatch");

  OptResult opt = optimal_welfare(g.instance, 4'000'000);
  check_revenue_properties(c, g.instance, result, opt);
  return {2, "gadget hard family replay", c.ok, c.detail.str(), 0};
}

// ---------------------------------------------------------------------------
// Criteria 3-4: fixed-increment families.

CriterionResult criterion_fixed_unit() {
  Checker c;
  FixedUnitInstance g = gen_fixed_increment_unit(16, 100);
  AuctionResult result = run_cca(g.instance, g.config);
  c.expect(result.reason != Termination::kTruncated, "run truncated");
  c.expect(result.allocation.welfare(g.instance) == Money(1300), "welfare mismatch");
  OptResult opt = optimal_welfare(g.instance);
  c.expect(opt.exact, "optimum not exact");
  c.expect(opt.value == Money(2100), "optimum mismatch");
  auto ratio = welfare_ratio(g.instance, result);
  c.expect(ratio && *ratio == Money(2100) / Money(1300), "ratio mismatch");
  check_revenue_properties(c, g.instance, result, opt);
  return {3, "fixed-increment unit-demand family", c.ok, c.detail.str(), 0};
}

CriterionResult criterion_fixed_pairs() {
  Checker c;
  FixedPairsInstance g = gen_fixed_increment_pairs(8, 100);
  AuctionResult result = run_cca(g.instance, g.config);
  c.expect(result.reason != Termination::kTruncated, "run truncated");
  c.expect(result.allocation.welfare(g.instance) == Money(200), "welfare mismatch");
  OptResult opt = optimal_welfare(g.instance);
  c.expect(opt.exact, "optimum not exact");
  c.expect(opt.value == Money(900), "optimum mismatch");
  auto ratio = welfare_ratio(g.instance, result);
  c.expect(ratio && *ratio == Money(9, 2), "ratio mismatch");
  // Every bid includes the shared hub item.
  for (const RoundRecord& round : result.trace.rounds) {
    for (const Bid& bid : round.bids) c.expect(bid.bundle.contains(0), "bid without the hub item");
  }
  check_revenue_properties(c, g.instance, result, opt);
  return {4, "fixed-increment pairs family", c.ok, c.detail.str(), 0};
}

// ---------------------------------------------------------------------------
// Criterion 5: stopping-rule comparison.

CriterionResult criterion_smra_stop() {
  Checker c;
  SmraStopInstance g = gen_smra_stop(10, 100);
  AuctionResult disjoint = run_cca(g.instance, g.config);
  c.expect(disjoint.reason == Termination::kDisjointStop, "disjoint run did not stop on the rule");
  c.expect(disjoint.allocation.welfare(g.instance) == Money(600), "disjoint welfare mismatch");
  OptResult opt = optimal_welfare(g.instance);
  c.expect(opt.exact && opt.value == Money(2200), "optimum mismatch");

  long stop_round = disjoint.trace.final_round;
  c.expect(stop_round == 101, "disjoint stop not at round V+1");

  // The same instance under the conflict-free rule must ride past that round:
  // the remaining high bidder's live bid overlaps both would-be winners.
  AuctionConfig porter = g.config;
  porter.stop = StoppingRule::kPorterConflictFree;
  AuctionResult pr = run_cca(g.instance, porter);
  c.expect(pr.trace.final_round > stop_round, "conflict-free run stopped at the disjoint round");

  const RoundRecord& round_v1 = pr.trace.rounds.at(static_cast<std::size_t>(stop_round));
  std::vector<Bid> history;
  for (long r = 0; r <= stop_round; ++r) {
    const auto& bids = pr.trace.rounds[static_cast<std::size_t>(r)].bids;
    history.insert(history.end(), bids.begin(), bids.end());
  }
  c.expect(!check_stop(round_v1.bids, history, StoppingRule::kPorterConflictFree).has_value(),
           "conflict-free check unexpectedly fired at round V+1");
  auto bad = check_stop(round_v1.bids, history, StoppingRule::kDisjointOnly);
  c.expect(bad.has_value() && bad->revenue() == Money(600),
           "disjoint check at round V+1 did not yield the 6V allocation");
  // And the reason is a genuine conflict: the live bid intersects a winner.
  if (bad) {
    bool intersects = false;
    for (const Bid& bid : round_v1.bids) {
      for (const auto& [winner, a] : bad->assignments) {
        if (winner != bid.bidder && a.bundle.intersects(bid.bundle)) intersects = true;
      }
    }
    c.expect(intersects, "no conflict between the live bid and the winners");
  }
  check_revenue_properties(c, g.instance, disjoint, opt);
  check_revenue_properties(c, g.instance, pr, opt);
  return {5, "stopping-rule comparison", c.ok, c.detail.str(), 0};
}

// ---------------------------------------------------------------------------
// Criterion 6: oracle equivalences.

// Exhaustive winner determination: max revenue, then max accepted count.
Money brute_force_wd_revenue(const std::vector<Bid>& bids) {
  std::size_t n = bids.size();
  Money best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Money revenue = 0;
    bool feasible = true;
    std::vector<int> chosen;
    for (std::size_t i = 0; i < n && feasible; ++i) {
      if (!(mask & (1u << i))) continue;
      for (int prev : chosen) {
        if (bids[static_cast<std::size_t>(prev)].bidder == bids[i].bidder ||
            bids[static_cast<std::size_t>(prev)].bundle.intersects(bids[i].bundle)) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        chosen.push_back(static_cast<int>(i));
        revenue += bids[i].price;
      }
    }
    if (feasible && best < revenue) best = revenue;
  }
  return best;
}

// Exhaustive matching value for unit-demand instances: every bidder takes an
// unused item or nothing.
Money brute_force_unit_opt(const Instance& instance) {
  Money best = 0;
  std::vector<bool> used(static_cast<std::size_t>(instance.num_items), false);
  std::function<void(int, Money)> rec = [&](int bidder, Money acc) {
    if (bidder == instance.num_bidders) {
      best = std::max(best, acc);
      return;
    }
    rec(bidder + 1, acc);
    const auto& u = std::get<UnitDemand>(instance.valuations[static_cast<std::size_t>(bidder)].kind);
    for (int j = 0; j < instance.num_items; ++j) {
      if (used[static_cast<std::size_t>(j)] || !u.item_values[static_cast<std::size_t>(j)].is_positive())
        continue;
      used[static_cast<std::size_t>(j)] = true;
      rec(bidder + 1, acc + u.item_values[static_cast<std::size_t>(j)]);
      used[static_cast<std::size_t>(j)] = false;
    }
  };
  rec(0, Money(0));
  return best;
}

CriterionResult criterion_oracles() {
  Checker c;
  SplitMix64 rng(0x5EED0001u);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng.below(4));  // bidders <= 5
    int m = 2 + static_cast<int>(rng.below(5));  // items <= 6
    int count = 1 + static_cast<int>(rng.below(14));
    std::vector<Bid> bids;
    for (int b = 0; b < count; ++b) {
      int size = 1 + static_cast<int>(rng.below(3));
      std::vector<int> items;
      for (int s = 0; s < size; ++s) items.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(m))));
      bids.push_back({static_cast<int>(rng.below(static_cast<std::uint64_t>(n))),
                      Bundle(std::move(items)), Money(static_cast<std::int64_t>(rng.below(21))), b});
    }
    Allocation alloc = winner_determination(bids);
    c.expect(alloc.disjoint(), "winner determination produced overlapping bundles");
    if (alloc.revenue() != brute_force_wd_revenue(bids)) {
      c.expect(false, "winner determination revenue differs from brute force, trial " +
                          std::to_string(trial));
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    RandomParams rp;
    rp.kind = RandomParams::Kind::kUnit;
    rp.n = 2 + static_cast<int>(rng.below(6));  // <= 7
    rp.m = 2 + static_cast<int>(rng.below(6));
    rp.seed = 0xFACE0000u + static_cast<std::uint64_t>(trial);
    Instance instance = gen_random(rp);
    OptResult opt = optimal_welfare(instance);
    c.expect(opt.exact, "optimum not exact, trial " + std::to_string(trial));
    if (opt.value != brute_force_unit_opt(instance)) {
      c.expect(false, "optimum differs from injection brute force, trial " + std::to_string(trial));
    }
  }
  return {6, "solver oracle equivalence", c.ok, c.detail.str(), 0};
}

// ---------------------------------------------------------------------------
// Criteria 7-9 over the shared random suite.

CriterionResult criterion_fact_audits() {
  Checker c;
  int porter_stops = 0;
  for (std::size_t i = 0; i < random_suite().size(); ++i) {
    const RandomRun& run = random_suite()[i];
    AuditReport report = audit_trace(run.instance, run.config, run.result);
    if (!report.clean()) {
      c.expect(false, "audit violation in run " + std::to_string(i) + ": " + report.first_violation());
      break;
    }
    if (run.result.reason == Termination::kPorterStop) ++porter_stops;
  }
  c.expect(porter_stops > 50, "too few conflict-free stops to be meaningful");
  return {7, "fact audits on 500 random runs", c.ok, c.detail.str(), 0};
}

CriterionResult criterion_bound_disjunction() {
  Checker c;
  int verdicts = 0;
  for (std::size_t i = 0; i < random_suite().size(); ++i) {
    const RandomRun& run = random_suite()[i];
    if (run.config.stop != StoppingRule::kPorterConflictFree) continue;
    if (run.result.reason == Termination::kTruncated) continue;
    BoundVerdict verdict = bound_check(run.instance, run.result, run.instance.cap);
    ++verdicts;
    if (!verdict.disjunction_holds) {
      c.expect(false, "disjunction failed in run " + std::to_string(i));
      break;
    }
  }
  c.expect(verdicts > 100, "too few verdicts to be meaningful");
  return {8, "revenue-or-welfare disjunction on the random sweep", c.ok,
          c.detail.str() + (c.ok ? std::to_string(verdicts) + " verdicts" : ""), 0};
}

CriterionResult criterion_dominance() {
  Checker c;
  for (std::size_t i = 0; i < random_suite().size() && c.ok; ++i) {
    const RandomRun& run = random_suite()[i];
    OptResult opt = optimal_welfare(run.instance, 4'000'000);
    check_revenue_properties(c, run.instance, run.result, opt);
    if (!c.ok) c.detail << " (run " << i << ")";
  }
  return {9, "revenue dominance and welfare >= revenue", c.ok, c.detail.str(), 0};
}

// ---------------------------------------------------------------------------
// Criterion 10: byte-identical reruns.

CriterionResult criterion_determinism() {
  Checker c;
  auto run_trace = [](int k, int l) {
    UnitLbInstance g = gen_unit_demand_lb(k, l);
    return trace_to_csv(run_cca(g.instance, g.config).trace);
  };
  c.expect(run_trace(2, 3) == run_trace(2, 3), "unit-demand trace differs between reruns");

  std::map<std::string, std::vector<long>> grid{{"k", {2, 3}}, {"l", {2, 3}}};
  c.expect(sweep_to_csv(sweep("thm41", grid, 7)) == sweep_to_csv(sweep("thm41", grid, 7)),
           "family sweep differs between reruns");

  std::map<std::string, std::vector<long>> random_grid{
      {"idx", [] {
         std::vector<long> v;
         for (long i = 0; i < 30; ++i) v.push_back(i);
         return v;
       }()},
      {"n", {3, 5}},
      {"policy", {0}},
      {"stop", {0, 1}}};
  c.expect(sweep_to_csv(sweep("random_xor", random_grid, 99)) ==
               sweep_to_csv(sweep("random_xor", random_grid, 99)),
           "random sweep differs between reruns");
  return {10, "byte-identical reruns", c.ok, c.detail.str(), 0};
}

CriterionResult timed(CriterionResult (*fn)(), double limit_seconds) {
  auto start = Clock::now();
  CriterionResult result = fn();
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (result.passed && result.seconds > limit_seconds) {
    result.passed = false;
    result.detail = "runtime " + std::to_string(result.seconds) + "s exceeds " +
                    std::to_string(limit_seconds) + "s";
  }
  return result;
}

}  // namespace

std::vector<CriterionResult> run_suite(const std::string& suite) {
  std::vector<CriterionResult> out;
  auto want = [&](const std::string& name) { return suite == "all" || suite == name; };
  bool known = suite == "all";

  if (want("paper_replays")) {
    known = true;
    out.push_back(timed(criterion_unit_demand_replay, 30));
    out.push_back(timed(criterion_gadget_replay, 30));
    out.push_back(timed(criterion_fixed_unit, 10));
    out.push_back(timed(criterion_fixed_pairs, 5));
    out.push_back(timed(criterion_smra_stop, 30));
  }
  if (want("oracles")) {
    known = true;
    out.push_back(timed(criterion_oracles, 60));
  }
  if (want("facts")) {
    known = true;
    out.push_back(timed(criterion_fact_audits, 240));
  }
  if (want("bounds")) {
    known = true;
    out.push_back(timed(criterion_bound_disjunction, 240));
    out.push_back(timed(criterion_dominance, 240));
  }
  if (want("determinism")) {
    known = true;
    out.push_back(timed(criterion_determinism, 120));
  }
  if (!known) throw InputError("unknown suite: " + suite);
  return out;
}

}  // namespace cca
