#include "cca/allocation.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>

namespace cca {

namespace {

// Fixed-width item mask for fast disjointness tests during search.
struct ItemMask {
  std::vector<std::uint64_t> words;

  explicit ItemMask(int num_items) : words((static_cast<std::size_t>(num_items) + 63) / 64, 0) {}

  static ItemMask of(const Bundle& b, int num_items) {
    ItemMask m(num_items);
    for (int j : b.items()) m.words[static_cast<std::size_t>(j) / 64] |= 1ull << (j % 64);
    return m;
  }

  bool intersects(const ItemMask& o) const {
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (words[w] & o.words[w]) return true;
    }
    return false;
  }

  void add(const ItemMask& o) {
    for (std::size_t w = 0; w < words.size(); ++w) words[w] |= o.words[w];
  }

  void remove(const ItemMask& o) {
    for (std::size_t w = 0; w < words.size(); ++w) words[w] &= ~o.words[w];
  }
};

int max_item_over(const std::vector<Bid>& bids) {
  int m = 0;
  for (const Bid& b : bids) m = std::max(m, b.bundle.max_item() + 1);
  return m;
}

// Keep only the highest-price bid per (bidder, bundle); earlier rounds win
// equal-price duplicates. Output in canonical search order: price descending,
// then bidder, bundle, round ascending.
std::vector<Bid> dominance_prepass(const std::vector<Bid>& bids) {
  std::map<std::pair<int, Bundle>, Bid> best;
  for (const Bid& b : bids) {
    if (b.bundle.empty()) continue;
    auto key = std::make_pair(b.bidder, b.bundle);
    auto it = best.find(key);
    if (it == best.end() || it->second.price < b.price) best.insert_or_assign(it, key, b);
  }
  std::vector<Bid> out;
  out.reserve(best.size());
  for (auto& [key, bid] : best) out.push_back(std::move(bid));
  std::sort(out.begin(), out.end(), [](const Bid& a, const Bid& b) {
    if (a.price != b.price) return b.price < a.price;
    if (a.bidder != b.bidder) return a.bidder < b.bidder;
    if (a.bundle != b.bundle) return a.bundle < b.bundle;
    return a.round < b.round;
  });
  return out;
}

struct WdSearch {
  const std::vector<Bid>& bids;
  std::vector<ItemMask> masks;
  std::vector<char> bidder_used;
  int unused_bidders = 0;
  ItemMask used_items;
  // suffix_bidder_max[i][b]: best price bidder b still offers at or after bid i.
  // Stored flat as suffix sums of per-bidder maxima for an admissible bound.
  std::vector<Money> suffix_bound;

  Money best_revenue = -1;
  int best_count = -1;
  std::vector<int> best_set;

  std::vector<int> current;
  Money current_revenue = 0;

  explicit WdSearch(const std::vector<Bid>& sorted, int num_items)
      : bids(sorted), used_items(num_items) {
    masks.reserve(sorted.size());
    int max_bidder = 0;
    for (const Bid& b : sorted) {
      masks.push_back(ItemMask::of(b.bundle, num_items));
      max_bidder = std::max(max_bidder, b.bidder + 1);
    }
    bidder_used.assign(static_cast<std::size_t>(max_bidder), 0);
    std::vector<char> has_bid(static_cast<std::size_t>(max_bidder), 0);
    for (const Bid& b : sorted) has_bid[static_cast<std::size_t>(b.bidder)] = 1;
    for (char h : has_bid) unused_bidders += h;
    // Admissible revenue bound: sum, over bidders, of the best price that
    // bidder offers in the suffix (each bidder wins at most one bid).
    suffix_bound.assign(sorted.size() + 1, Money(0));
    std::vector<char> seen(static_cast<std::size_t>(max_bidder), 0);
    for (std::size_t i = sorted.size(); i-- > 0;) {
      // Rebuilding per position keeps this O(n^2) worst case, fine at our sizes.
      std::fill(seen.begin(), seen.end(), 0);
      Money bound = 0;
      for (std::size_t j = i; j < sorted.size(); ++j) {
        auto b = static_cast<std::size_t>(sorted[j].bidder);
        if (!seen[b]) {
          seen[b] = 1;
          bound += sorted[j].price;  // sorted by price: first hit is the max
        }
      }
      suffix_bound[i] = bound;
    }
  }

  void record_if_better() {
    int count = static_cast<int>(current.size());
    if (best_revenue < current_revenue ||
        (best_revenue == current_revenue && best_count < count)) {
      best_revenue = current_revenue;
      best_count = count;
      best_set = current;
    }
  }

  void dfs(std::size_t i) {
    if (i == bids.size()) {
      record_if_better();
      return;
    }
    Money optimistic = current_revenue + suffix_bound[i];
    if (optimistic < best_revenue) return;
    long count_bound = static_cast<long>(current.size()) +
                       std::min(static_cast<long>(bids.size() - i), static_cast<long>(unused_bidders));
    if (optimistic == best_revenue && count_bound <= best_count) return;
    const Bid& b = bids[i];
    auto bidder = static_cast<std::size_t>(b.bidder);
    if (!bidder_used[bidder] && !used_items.intersects(masks[i])) {
      bidder_used[bidder] = 1;
      --unused_bidders;
      used_items.add(masks[i]);
      current.push_back(static_cast<int>(i));
      current_revenue += b.price;
      dfs(i + 1);
      current_revenue -= b.price;
      current.pop_back();
      used_items.remove(masks[i]);
      ++unused_bidders;
      bidder_used[bidder] = 0;
    }
    dfs(i + 1);
  }
};

// Candidate bundles per bidder for the welfare search.
std::vector<std::vector<Assignment>> welfare_candidates(const Instance& instance,
                                                        long enumeration_budget,
                                                        bool* truncated) {
  std::vector<std::vector<Assignment>> out(static_cast<std::size_t>(instance.num_bidders));
  for (int i = 0; i < instance.num_bidders; ++i) {
    const Valuation& val = instance.valuations[static_cast<std::size_t>(i)];
    auto& cands = out[static_cast<std::size_t>(i)];
    if (const auto* u = std::get_if<UnitDemand>(&val.kind)) {
      for (std::size_t j = 0; j < u->item_values.size(); ++j) {
        if (u->item_values[j].is_positive())
          cands.push_back({Bundle::single(static_cast<int>(j)), u->item_values[j]});
      }
    } else if (const auto* a = std::get_if<Additive>(&val.kind)) {
      std::vector<int> support;
      for (std::size_t j = 0; j < a->item_values.size(); ++j) {
        if (a->item_values[j].is_positive()) support.push_back(static_cast<int>(j));
      }
      int cap = a->demand_cap ? std::min<int>(*a->demand_cap, static_cast<int>(support.size()))
                              : static_cast<int>(support.size());
      // Enumerate all support subsets up to the cap; bail to the budget path
      // when the support is too wide for exact enumeration.
      std::vector<int> chosen;
      long emitted = 0;
      bool over = false;
      auto rec = [&](auto&& self, std::size_t from) -> void {
        if (over) return;
        if (!chosen.empty()) {
          if (++emitted > enumeration_budget) {
            over = true;
            return;
          }
          Bundle b(chosen);
          Money v = 0;
          for (int j : chosen) v += a->item_values[static_cast<std::size_t>(j)];
          cands.push_back({b, v});
        }
        if (static_cast<int>(chosen.size()) == cap) return;
        for (std::size_t s = from; s < support.size(); ++s) {
          chosen.push_back(support[s]);
          self(self, s + 1);
          chosen.pop_back();
        }
      };
      rec(rec, 0);
      if (over) {
        *truncated = true;
        cands.clear();
        // Fall back to the single top-cap greedy set as a feasible candidate.
        auto best = *a;
        Prices zero(static_cast<std::size_t>(instance.num_items), Money(0));
        auto q = demand_query({best, TieBreakRule::lowest_index(), false}, zero);
        if (q) cands.push_back({*q, value_of(val, *q, instance.num_items)});
      }
    } else {
      for (const auto& e : std::get<BundleList>(val.kind).entries) {
        if (e.value.is_positive()) cands.push_back({e.bundle, e.value});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Assignment& x, const Assignment& y) {
      if (x.payment != y.payment) return y.payment < x.payment;  // payment reused as value here
      return x.bundle < y.bundle;
    });
  }
  return out;
}

struct OptSearch {
  const Instance& instance;
  const std::vector<std::vector<Assignment>>& cands;  // Assignment.payment = bundle value
  std::vector<int> bidder_order;
  std::vector<Money> suffix_best;     // sum of per-bidder max values from position k on
  std::vector<Money> item_density;    // per item: max value/size over all candidates touching it
  ItemMask used_items;
  std::vector<std::vector<ItemMask>> masks;

  long budget;
  bool exhausted = false;

  Money best_value = -1;
  std::vector<int> best_choice;  // candidate index per order position, -1 = none
  std::vector<int> choice;
  Money current_value = 0;

  OptSearch(const Instance& inst, const std::vector<std::vector<Assignment>>& c, long node_budget)
      : instance(inst), cands(c), used_items(inst.num_items), budget(node_budget) {
    bidder_order.resize(static_cast<std::size_t>(inst.num_bidders));
    for (int i = 0; i < inst.num_bidders; ++i) bidder_order[static_cast<std::size_t>(i)] = i;
    auto max_value = [&](int bidder) {
      const auto& list = c[static_cast<std::size_t>(bidder)];
      return list.empty() ? Money(0) : list.front().payment;
    };
    std::sort(bidder_order.begin(), bidder_order.end(), [&](int a, int b) {
      Money va = max_value(a), vb = max_value(b);
      if (va != vb) return vb < va;
      return a < b;
    });
    suffix_best.assign(bidder_order.size() + 1, Money(0));
    for (std::size_t k = bidder_order.size(); k-- > 0;) {
      suffix_best[k] = suffix_best[k + 1] + max_value(bidder_order[k]);
    }
    item_density.assign(static_cast<std::size_t>(inst.num_items), Money(0));
    masks.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      masks[i].reserve(c[i].size());
      for (const auto& a : c[i]) {
        masks[i].push_back(ItemMask::of(a.bundle, inst.num_items));
        Money density = a.payment / Money(static_cast<std::int64_t>(a.bundle.size()));
        for (int j : a.bundle.items()) {
          auto ju = static_cast<std::size_t>(j);
          item_density[ju] = std::max(item_density[ju], density);
        }
      }
    }
    choice.assign(bidder_order.size(), -1);
  }

  Money item_bound() const {
    Money total = 0;
    for (std::size_t j = 0; j < item_density.size(); ++j) {
      std::size_t w = j / 64;
      if (!(used_items.words[w] & (1ull << (j % 64)))) total += item_density[j];
    }
    return total;
  }

  void record_if_better() {
    if (best_value < current_value) {
      best_value = current_value;
      best_choice = choice;
    }
  }

  void dfs(std::size_t k) {
    if (--budget < 0) {
      exhausted = true;
      return;
    }
    if (k == bidder_order.size()) {
      record_if_better();
      return;
    }
    // Cheap bidder bound first; the per-item bound only when it might matter.
    if (current_value + suffix_best[k] <= best_value) return;
    if (current_value + item_bound() <= best_value) return;
    int bidder = bidder_order[k];
    const auto& list = cands[static_cast<std::size_t>(bidder)];
    for (std::size_t c = 0; c < list.size() && !exhausted; ++c) {
      if (used_items.intersects(masks[static_cast<std::size_t>(bidder)][c])) continue;
      used_items.add(masks[static_cast<std::size_t>(bidder)][c]);
      choice[k] = static_cast<int>(c);
      current_value += list[c].payment;
      dfs(k + 1);
      current_value -= list[c].payment;
      choice[k] = -1;
      used_items.remove(masks[static_cast<std::size_t>(bidder)][c]);
    }
    if (!exhausted) dfs(k + 1);  // assign nothing to this bidder
  }
};

}  // namespace

Allocation winner_determination(const std::vector<Bid>& bids) {
  Allocation alloc;
  if (bids.empty()) return alloc;
  std::vector<Bid> sorted = dominance_prepass(bids);
  if (sorted.empty()) return alloc;
  WdSearch search(sorted, max_item_over(sorted));
  search.dfs(0);
  for (int idx : search.best_set) {
    const Bid& b = sorted[static_cast<std::size_t>(idx)];
    alloc.assignments[b.bidder] = {b.bundle, b.price};
  }
  return alloc;
}

OptResult optimal_welfare(const Instance& instance, long node_budget) {
  instance.validate();
  bool truncated = false;
  auto cands = welfare_candidates(instance, 4096, &truncated);
  OptSearch search(instance, cands, node_budget);
  search.dfs(0);
  OptResult result;
  result.exact = !search.exhausted && !truncated;
  result.value = std::max(search.best_value, Money(0));
  for (std::size_t k = 0; k < search.best_choice.size(); ++k) {
    int c = search.best_choice[k];
    if (c < 0) continue;
    int bidder = search.bidder_order[k];
    const Assignment& a = cands[static_cast<std::size_t>(bidder)][static_cast<std::size_t>(c)];
    result.allocation.assignments[bidder] = {a.bundle, Money(0)};
  }
  return result;
}

Allocation greedy_unit(const std::vector<Bid>& bids, const Money& threshold) {
  for (const Bid& b : bids) {
    if (b.bundle.size() != 1) throw InputError("greedy_unit requires singleton bids");
  }
  return greedy_general(bids, threshold);
}

Allocation greedy_general(const std::vector<Bid>& bids, const Money& threshold) {
  std::vector<Bid> pool = dominance_prepass(bids);
  Allocation alloc;
  std::size_t next = 0;
  while (next < pool.size()) {
    // Pool is sorted by price desc, bidder asc, bundle asc: the front is the
    // max-price bid with the fixed tie-break.
    const Bid accepted = pool[next];
    if (accepted.price < threshold) break;
    alloc.assignments[accepted.bidder] = {accepted.bundle, accepted.price};
    std::vector<Bid> rest;
    rest.reserve(pool.size() - next);
    for (std::size_t i = next + 1; i < pool.size(); ++i) {
      const Bid& b = pool[i];
      if (b.bidder == accepted.bidder || b.bundle.intersects(accepted.bundle)) continue;
      rest.push_back(b);
    }
    pool = std::move(rest);
    next = 0;
  }
  return alloc;
}

ValueBuckets value_buckets(const OptResult& opt, const Instance& instance, int n) {
  if (n < 2) throw InputError("value bucketing needs at least two bidders");
  int bins = 2 * ceil_log2_clamped(n);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(bins) + 1);
  std::vector<Money> totals(static_cast<std::size_t>(bins) + 1, Money(0));
  Money opt_value = opt.value;
  for (const auto& [bidder, a] : opt.allocation.assignments) {
    Money v = value_of(instance.valuations[static_cast<std::size_t>(bidder)], a.bundle,
                       instance.num_items);
    if (!v.is_positive()) continue;
    int bin = bins;  // remainder bucket
    Money upper = opt_value;
    Money half(1, 2);
    for (int i = 1; i <= bins; ++i) {
      Money lower = upper * half;
      if (lower < v && v <= upper) {
        bin = i - 1;
        break;
      }
      upper = lower;
    }
    members[static_cast<std::size_t>(bin)].push_back(bidder);
    totals[static_cast<std::size_t>(bin)] += v;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < totals.size(); ++i) {
    if (totals[best] < totals[i]) best = i;
  }
  ValueBuckets out;
  out.bidders = members[best];
  out.total = totals[best];
  Money v_star = opt_value;
  for (std::size_t i = 0; i <= best; ++i) v_star *= Money(1, 2);
  out.v_star = v_star;
  return out;
}

int ceil_log2_clamped(long x) {
  if (x < 2) x = 2;
  int log = 0;
  long v = 1;
  while (v < x) {
    v *= 2;
    ++log;
  }
  return log;
}

}  // namespace cca
