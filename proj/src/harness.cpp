#include "cca/harness.hpp"

#include <algorithm>
#include <sstream>

namespace cca {

namespace {

std::string spot(int round, const std::string& what, long id) {
  std::ostringstream os;
  os << "round " << round << ", " << what << " " << id;
  return os.str();
}

// Exact maximum utility, by full enumeration on small instances and by the
// structured per-variant maximum otherwise.
Money recomputed_max_utility(const Valuation& val, const Prices& prices, int num_items) {
  if (num_items <= 12) {
    Money best = 0;
    for (unsigned mask = 1; mask < (1u << num_items); ++mask) {
      std::vector<int> items;
      for (int j = 0; j < num_items; ++j) {
        if (mask & (1u << j)) items.push_back(j);
      }
      Bundle s(std::move(items));
      best = std::max(best, value_of(val, s, num_items) - price_of(s, prices));
    }
    return best;
  }
  return max_utility(val, prices);
}

}  // namespace

std::vector<Bid> bid_history(const AuctionTrace& trace) {
  std::vector<Bid> all;
  for (const RoundRecord& r : trace.rounds) all.insert(all.end(), r.bids.begin(), r.bids.end());
  return all;
}

AuditReport audit_trace(const Instance& instance, const AuctionConfig& config,
                        const AuctionResult& result) {
  const AuctionTrace& trace = result.trace;
  for (const RoundRecord& r : trace.rounds) {
    if (static_cast<int>(r.prices.size()) != instance.num_items)
      throw InputError("trace does not match the instance item count");
    for (const Bid& b : r.bids) {
      if (b.bidder < 0 || b.bidder >= instance.num_bidders)
        throw InputError("trace does not match the instance bidder count");
    }
  }

  AuditReport report;
  auto check = [&](const std::string& name) -> AuditCheck& {
    report.checks.push_back({name, true, {}});
    return report.checks.back();
  };
  auto fail_once = [](AuditCheck& c, const std::string& witness) {
    if (c.passed) {
      c.passed = false;
      c.witness = witness;
    }
  };

  // Price monotonicity across rounds and into the final prices.
  {
    AuditCheck& c = check("price_monotonicity");
    for (std::size_t r = 0; r + 1 < trace.rounds.size(); ++r) {
      for (int j = 0; j < instance.num_items; ++j) {
        if (trace.rounds[r + 1].prices[static_cast<std::size_t>(j)] <
            trace.rounds[r].prices[static_cast<std::size_t>(j)]) {
          fail_once(c, spot(static_cast<int>(r + 1), "item", j));
        }
      }
    }
    if (!trace.rounds.empty()) {
      for (int j = 0; j < instance.num_items; ++j) {
        if (trace.final_prices[static_cast<std::size_t>(j)] <
            trace.rounds.back().prices[static_cast<std::size_t>(j)]) {
          fail_once(c, spot(trace.final_round, "item", j));
        }
      }
    }
  }

  // Increment correctness: every consecutive price vector must equal the
  // policy applied to the previous round's bids.
  {
    AuditCheck& c = check("increment_correctness");
    for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
      const Prices expected = apply_increments(trace.rounds[r].prices, trace.rounds[r].bids,
                                               config.policy);
      const Prices& actual =
          r + 1 < trace.rounds.size() ? trace.rounds[r + 1].prices : trace.final_prices;
      // A terminal round with no active bidders leaves prices untouched.
      if (r + 1 == trace.rounds.size() && trace.rounds[r].active.empty()) continue;
      for (int j = 0; j < instance.num_items; ++j) {
        if (actual[static_cast<std::size_t>(j)] != expected[static_cast<std::size_t>(j)]) {
          fail_once(c, spot(static_cast<int>(r), "item", j));
        }
      }
    }
  }

  // Recorded utilities must be the true utilities of the chosen bundles.
  {
    AuditCheck& c = check("recorded_utilities");
    for (const RoundRecord& r : trace.rounds) {
      for (std::size_t i = 0; i < r.bids.size(); ++i) {
        const Bid& b = r.bids[i];
        Money expect = utility(instance.valuations[static_cast<std::size_t>(b.bidder)], b.bundle,
                               r.prices);
        if (r.utilities[i] != expect || b.price != price_of(b.bundle, r.prices)) {
          fail_once(c, spot(b.round, "bidder", b.bidder));
        }
      }
    }
  }

  // Maximum utilities never increase.
  {
    AuditCheck& c = check("fact1_monotone_max_utility");
    for (int bidder = 0; bidder < instance.num_bidders; ++bidder) {
      const Valuation& val = instance.valuations[static_cast<std::size_t>(bidder)];
      Money prev;
      for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
        Money u = recomputed_max_utility(val, trace.rounds[r].prices, instance.num_items);
        if (r > 0 && prev < u) fail_once(c, spot(static_cast<int>(r), "bidder", bidder));
        prev = u;
      }
    }
  }

  // A bid's value covers its recorded utility, strictly when it costs
  // anything, and bidders that never bid at zero utility stayed positive.
  {
    AuditCheck& c = check("fact2_value_covers_utility");
    for (const RoundRecord& r : trace.rounds) {
      for (std::size_t i = 0; i < r.bids.size(); ++i) {
        const Bid& b = r.bids[i];
        const Valuation& val = instance.valuations[static_cast<std::size_t>(b.bidder)];
        Money v = value_of(val, b.bundle, instance.num_items);
        const Money& u = r.utilities[i];
        if (v < u) fail_once(c, spot(b.round, "bidder", b.bidder));
        if (b.price.is_positive() && !(u < v)) fail_once(c, spot(b.round, "bidder", b.bidder));
        if (val.any_zero_utility_bidding() ? u.is_negative() : !u.is_positive()) {
          fail_once(c, spot(b.round, "bidder", b.bidder));
        }
      }
    }
  }

  // Conflict-free stops only: every bidder still active in the final round
  // ends up with at least her final-round utility in value.
  {
    AuditCheck& c = check("fact3_final_round_value");
    if (result.reason == Termination::kPorterStop && !trace.rounds.empty()) {
      const RoundRecord& last = trace.rounds.back();
      for (std::size_t i = 0; i < last.bids.size(); ++i) {
        int bidder = last.bids[i].bidder;
        Money granted = 0;
        auto it = result.allocation.assignments.find(bidder);
        if (it != result.allocation.assignments.end()) {
          granted = value_of(instance.valuations[static_cast<std::size_t>(bidder)],
                             it->second.bundle, instance.num_items);
        }
        if (granted < last.utilities[i]) fail_once(c, spot(last.bids[i].round, "bidder", bidder));
      }
    }
  }

  // The allocation is feasible and every payment matches a recorded bid.
  {
    AuditCheck& c = check("allocation_feasibility");
    if (!result.allocation.disjoint()) fail_once(c, "overlapping winning bundles");
    if (result.reason != Termination::kTruncated) {
      std::vector<Bid> history = bid_history(trace);
      for (const auto& [bidder, a] : result.allocation.assignments) {
        bool matched = false;
        for (const Bid& b : history) {
          if (b.bidder == bidder && b.bundle == a.bundle && b.price == a.payment) {
            matched = true;
            break;
          }
        }
        if (!matched) fail_once(c, "payment without matching bid, bidder " + std::to_string(bidder));
      }
    }
  }

  return report;
}

std::optional<Money> welfare_ratio(const Instance& instance, const AuctionResult& result,
                                   long node_budget) {
  OptResult opt = optimal_welfare(instance, node_budget);
  if (!opt.exact) throw InputError("exact optimum unavailable within the node budget");
  Money achieved = result.allocation.welfare(instance);
  if (achieved.is_zero()) {
    if (opt.value.is_zero()) return Money(1);
    return std::nullopt;  // infinite
  }
  return opt.value / achieved;
}

BoundVerdict bound_check(const Instance& instance, const AuctionResult& result, int cap,
                                 long node_budget) {
  for (const RoundRecord& r : result.trace.rounds) {
    for (const Bid& b : r.bids) {
      if (static_cast<int>(b.bundle.size()) > cap)
        throw InputError("bid cardinality exceeds the declared cap");
    }
  }
  OptResult opt = optimal_welfare(instance, node_budget);
  if (!opt.exact) throw InputError("exact optimum unavailable within the node budget");

  BoundVerdict verdict;
  verdict.revenue = result.allocation.revenue();
  verdict.welfare = result.allocation.welfare(instance);
  verdict.opt = opt.value;
  Money log_n(ceil_log2_clamped(instance.num_bidders));
  Money log_m(ceil_log2_clamped(instance.num_items));
  verdict.revenue_threshold =
      verdict.opt / (Money(480) * Money(static_cast<std::int64_t>(cap) * cap) * log_n * log_m * log_m);
  verdict.welfare_threshold = verdict.opt / (Money(24) * log_n);
  verdict.disjunction_holds = verdict.opt.is_zero() ||
                              verdict.revenue >= verdict.revenue_threshold ||
                              verdict.welfare >= verdict.welfare_threshold;
  return verdict;
}

std::vector<Money> greedy_thresholds(const Instance& instance, const OptResult& opt) {
  std::vector<Money> out;
  out.push_back(Money(0));
  out.push_back(Money(1));
  out.push_back(Money(static_cast<std::int64_t>(instance.num_bidders) * instance.num_bidders));
  if (instance.num_bidders >= 2 && opt.exact && opt.value.is_positive()) {
    ValueBuckets buckets = value_buckets(opt, instance, instance.num_bidders);
    Money log_m(ceil_log2_clamped(instance.num_items));
    out.push_back(buckets.v_star / (Money(8) * log_m));
    out.push_back(buckets.v_star / (Money(8) * Money(instance.cap) * log_m));
  }
  return out;
}

FamilyCell build_family_cell(const std::string& family, const std::map<std::string, long>& params,
                             std::uint64_t seed) {
  auto get = [&](const std::string& key, long fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  auto require = [&](const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw InputError("missing grid parameter: " + key);
    return it->second;
  };

  if (family == "thm41") {
    auto g = gen_unit_demand_lb(static_cast<int>(require("k")), static_cast<int>(require("l")));
    return {g.instance, g.config};
  }
  if (family == "thm42") {
    auto g = gen_gadget_lb(static_cast<int>(require("k")), static_cast<int>(require("l")),
                           static_cast<int>(get("C", 3)));
    return {g.instance, g.config};
  }
  if (family == "fixed_unit") {
    auto g = gen_fixed_increment_unit(static_cast<int>(require("n")), require("V"));
    return {g.instance, g.config};
  }
  if (family == "fixed_pairs") {
    auto g = gen_fixed_increment_pairs(static_cast<int>(require("n")), require("V"));
    return {g.instance, g.config};
  }
  if (family == "smra_stop") {
    auto g = gen_smra_stop(require("c"), require("V"));
    return {g.instance, g.config};
  }
  if (family == "random_unit" || family == "random_xor") {
    RandomParams rp;
    rp.kind = family == "random_unit" ? RandomParams::Kind::kUnit : RandomParams::Kind::kXor;
    rp.n = static_cast<int>(get("n", 4));
    rp.m = static_cast<int>(get("m", 5));
    rp.cap = static_cast<int>(get("C", std::min(3L, static_cast<long>(rp.m))));
    rp.value_min = get("vmin", 1);
    rp.value_max = get("vmax", 4);
    rp.seed = seed + static_cast<std::uint64_t>(get("idx", 0)) * 0x9e3779b97f4a7c15ull;
    FamilyCell cell;
    cell.instance = gen_random(rp);
    cell.config.policy =
        get("policy", 0) == 0
            ? IncrementPolicy::demand_proportional(Money(*cell.instance.value_scale))
            : IncrementPolicy::fixed_on_excess(Money(*cell.instance.value_scale));
    cell.config.stop =
        get("stop", 0) == 0 ? StoppingRule::kPorterConflictFree : StoppingRule::kDisjointOnly;
    cell.config.max_rounds = static_cast<int>(get("rounds", 400));
    return cell;
  }
  throw InputError("unknown family: " + family);
}

std::vector<SweepRecord> sweep(const std::string& family,
                               const std::map<std::string, std::vector<long>>& grid,
                               std::uint64_t seed) {
  static const std::vector<std::string> known_families{
      "thm41", "thm42", "fixed_unit", "fixed_pairs", "smra_stop", "random_unit", "random_xor"};
  if (std::find(known_families.begin(), known_families.end(), family) == known_families.end())
    throw InputError("unknown family: " + family);

  // Cross product in sorted-key, row-major order.
  if (grid.empty()) return {};
  std::vector<std::string> keys;
  for (const auto& [key, values] : grid) {
    keys.push_back(key);
    if (values.empty()) return {};
  }
  long cells = 1;
  for (const auto& [key, values] : grid) cells *= static_cast<long>(values.size());

  std::vector<SweepRecord> records;
  for (long index = 0; index < cells; ++index) {
    std::map<std::string, long> params;
    long rest = index;
    for (auto it = keys.rbegin(); it != keys.rend(); ++it) {
      const auto& values = grid.at(*it);
      params[*it] = values[static_cast<std::size_t>(rest % static_cast<long>(values.size()))];
      rest /= static_cast<long>(values.size());
    }
    SweepRecord rec;
    rec.family = family;
    rec.params = params;
    try {
      FamilyCell cell = build_family_cell(family, params, seed);
      AuctionResult result = run_cca(cell.instance, cell.config);
      rec.num_bidders = cell.instance.num_bidders;
      rec.num_items = cell.instance.num_items;
      rec.rounds = result.rounds;
      rec.reason = termination_name(result.reason);
      rec.welfare = result.allocation.welfare(cell.instance);
      rec.revenue = result.allocation.revenue();
      rec.audit_clean = audit_trace(cell.instance, cell.config, result).clean();
      rec.welfare_ge_revenue = rec.welfare >= rec.revenue;

      OptResult opt = optimal_welfare(cell.instance, 200'000);
      if (opt.exact) {
        rec.opt = opt.value;
        if (rec.welfare.is_zero()) {
          if (opt.value.is_zero()) rec.ratio = Money(1);
        } else {
          rec.ratio = opt.value / rec.welfare;
        }
      }

      std::vector<Bid> history = bid_history(result.trace);
      Money wd_revenue = winner_determination(history).revenue();
      rec.greedy_dominated = true;
      for (const Money& b : greedy_thresholds(cell.instance, opt)) {
        if (wd_revenue < greedy_general(history, b).revenue()) rec.greedy_dominated = false;
      }

      if (opt.exact && cell.instance.value_scale &&
          cell.config.stop == StoppingRule::kPorterConflictFree &&
          result.reason != Termination::kTruncated) {
        rec.bound_holds =
            bound_check(cell.instance, result, cell.instance.cap).disjunction_holds;
      }
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace cca
