#include "cca/valuation.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace cca {

namespace {

void check_prices(const Valuation& val, const Prices& prices) {
  if (const auto* u = std::get_if<UnitDemand>(&val.kind)) {
    if (prices.size() != u->item_values.size()) throw InputError("price vector has wrong dimension");
  } else if (const auto* a = std::get_if<Additive>(&val.kind)) {
    if (prices.size() != a->item_values.size()) throw InputError("price vector has wrong dimension");
  } else {
    for (const auto& e : std::get<BundleList>(val.kind).entries) {
      if (e.bundle.max_item() >= static_cast<int>(prices.size()))
        throw InputError("price vector has wrong dimension");
    }
  }
  for (const Money& p : prices) {
    if (p.is_negative()) throw InputError("negative price");
  }
}

// Rank of an id under an explicit priority list; unlisted ids come last.
int priority_rank(const std::vector<int>& priority, int id) {
  for (std::size_t i = 0; i < priority.size(); ++i) {
    if (priority[i] == id) return static_cast<int>(i);
  }
  return std::numeric_limits<int>::max();
}

// Strictly-before relation among equally good candidates. `id` is the item id
// (singleton variants) or the entry id (bundle lists).
bool tie_prefers(const TieBreakRule& rule, const Money& value_a, int id_a, const Bundle& a,
                 const Money& value_b, int id_b, const Bundle& b) {
  switch (rule.kind) {
    case TieBreakKind::kLowestIndexFirst:
      break;
    case TieBreakKind::kLowestValueFirst:
      if (value_a != value_b) return value_a < value_b;
      break;
    case TieBreakKind::kHighestValueFirst:
      if (value_a != value_b) return value_b < value_a;
      break;
    case TieBreakKind::kExplicitPriority: {
      int ra = priority_rank(rule.priority, id_a);
      int rb = priority_rank(rule.priority, id_b);
      if (ra != rb) return ra < rb;
      break;
    }
  }
  return a < b;
}

struct SingletonCandidate {
  int item;
  Money margin;  // value minus price
  Money value;
};

// Candidate items of a singleton-style search: positive margin always
// qualifies, zero margin only for valued items when zero-utility bidding is
// on.
std::vector<SingletonCandidate> singleton_candidates(const std::vector<Money>& values,
                                                     const Prices& prices,
                                                     bool allow_zero) {
  std::vector<SingletonCandidate> out;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!values[j].is_positive()) continue;
    Money margin = values[j] - prices[j];
    if (margin.is_positive() || (allow_zero && margin.is_zero())) {
      out.push_back({static_cast<int>(j), margin, values[j]});
    }
  }
  return out;
}

std::optional<Bundle> unit_demand_query(const UnitDemand& u, const TieBreakRule& rule,
                                        bool allow_zero, const Prices& prices) {
  auto cands = singleton_candidates(u.item_values, prices, allow_zero);
  const SingletonCandidate* best = nullptr;
  for (const auto& c : cands) {
    if (best == nullptr || best->margin < c.margin ||
        (best->margin == c.margin &&
         tie_prefers(rule, c.value, c.item, Bundle::single(c.item), best->value, best->item,
                     Bundle::single(best->item)))) {
      best = &c;
    }
  }
  if (best == nullptr) return std::nullopt;
  return Bundle::single(best->item);
}

std::optional<Bundle> additive_demand_query(const Additive& a, const TieBreakRule& rule,
                                            bool allow_zero, const Prices& prices) {
  auto cands = singleton_candidates(a.item_values, prices, allow_zero);
  if (cands.empty()) return std::nullopt;
  std::sort(cands.begin(), cands.end(), [&](const SingletonCandidate& x, const SingletonCandidate& y) {
    if (x.margin != y.margin) return y.margin < x.margin;
    return tie_prefers(rule, x.value, x.item, Bundle::single(x.item), y.value, y.item,
                       Bundle::single(y.item));
  });
  std::size_t take = cands.size();
  if (a.demand_cap) take = std::min<std::size_t>(take, static_cast<std::size_t>(*a.demand_cap));
  std::vector<int> items;
  items.reserve(take);
  for (std::size_t i = 0; i < take; ++i) items.push_back(cands[i].item);
  return Bundle(std::move(items));
}

std::optional<Bundle> bundle_list_demand_query(const BundleList& bl, const TieBreakRule& rule,
                                               bool valuation_zero_flag, const Prices& prices) {
  const BundleEntry* best = nullptr;
  Money best_margin = 0;
  int best_id = -1;
  for (std::size_t e = 0; e < bl.entries.size(); ++e) {
    const BundleEntry& entry = bl.entries[e];
    Money margin = entry.effective_bid_value() - price_of(entry.bundle, prices);
    bool allow_zero = entry.allow_zero_utility.value_or(valuation_zero_flag);
    if (!(margin.is_positive() || (allow_zero && margin.is_zero()))) continue;
    int id = static_cast<int>(e);
    if (best == nullptr || best_margin < margin ||
        (margin == best_margin && tie_prefers(rule, entry.value, id, entry.bundle, best->value,
                                              best_id, best->bundle))) {
      best = &entry;
      best_margin = margin;
      best_id = id;
    }
  }
  if (best == nullptr) return std::nullopt;
  return best->bundle;
}

}  // namespace

bool Valuation::any_zero_utility_bidding() const {
  if (bid_at_zero_utility) return true;
  if (const auto* bl = std::get_if<BundleList>(&kind)) {
    for (const auto& e : bl->entries) {
      if (e.allow_zero_utility.value_or(false)) return true;
    }
  }
  return false;
}

void Instance::validate() const {
  if (num_bidders < 1 || num_items < 1) throw InputError("instance needs at least one bidder and one item");
  if (cap < 1 || cap > num_items) throw InputError("bundle cardinality cap out of range");
  if (static_cast<int>(valuations.size()) != num_bidders)
    throw InputError("instance bidder count does not match valuation count");
  for (const Valuation& val : valuations) {
    if (const auto* u = std::get_if<UnitDemand>(&val.kind)) {
      if (static_cast<int>(u->item_values.size()) != num_items)
        throw InputError("unit-demand value vector has wrong length");
      for (const Money& v : u->item_values)
        if (v.is_negative()) throw InputError("negative item value");
    } else if (const auto* a = std::get_if<Additive>(&val.kind)) {
      if (static_cast<int>(a->item_values.size()) != num_items)
        throw InputError("additive value vector has wrong length");
      if (a->demand_cap && *a->demand_cap < 1) throw InputError("additive demand cap must be positive");
      for (const Money& v : a->item_values)
        if (v.is_negative()) throw InputError("negative item value");
    } else {
      for (const auto& e : std::get<BundleList>(val.kind).entries) {
        if (e.bundle.empty()) throw InputError("empty bundle entry");
        if (e.bundle.max_item() >= num_items) throw InputError("bundle entry item out of range");
        if (static_cast<int>(e.bundle.size()) > cap)
          throw InputError("bundle entry larger than the cardinality cap");
        if (e.value.is_negative()) throw InputError("negative bundle value");
        if (e.bid_value && *e.bid_value > e.value)
          throw InputError("bid value may not exceed the true value");
      }
    }
    if (val.tie_break.kind == TieBreakKind::kExplicitPriority && val.tie_break.priority.empty())
      throw InputError("explicit tie-break priority list is empty");
  }
  if (value_scale) {
    if (*value_scale < 1) throw InputError("value scale must be positive");
    Money w(*value_scale);
    auto check_multiple = [&](const Money& v) {
      if (!(v / w).is_integer()) throw InputError("value is not a multiple of the declared scale");
    };
    for (const Valuation& val : valuations) {
      if (const auto* u = std::get_if<UnitDemand>(&val.kind)) {
        for (const Money& v : u->item_values) check_multiple(v);
      } else if (const auto* a = std::get_if<Additive>(&val.kind)) {
        for (const Money& v : a->item_values) check_multiple(v);
      } else {
        for (const auto& e : std::get<BundleList>(val.kind).entries) check_multiple(e.value);
      }
    }
  }
}

Money value_of(const Valuation& val, const Bundle& s, int num_items) {
  if (s.max_item() >= num_items) throw InputError("bundle item out of range");
  if (const auto* u = std::get_if<UnitDemand>(&val.kind)) {
    Money best = 0;
    for (int j : s.items()) {
      best = std::max(best, u->item_values[static_cast<std::size_t>(j)]);
    }
    return best;
  }
  if (const auto* a = std::get_if<Additive>(&val.kind)) {
    std::vector<Money> vals;
    vals.reserve(s.size());
    for (int j : s.items()) vals.push_back(a->item_values[static_cast<std::size_t>(j)]);
    std::sort(vals.begin(), vals.end(), [](const Money& x, const Money& y) { return y < x; });
    std::size_t take = vals.size();
    if (a->demand_cap) take = std::min<std::size_t>(take, static_cast<std::size_t>(*a->demand_cap));
    Money total = 0;
    for (std::size_t i = 0; i < take; ++i) total += vals[i];
    return total;
  }
  Money best = 0;
  for (const auto& e : std::get<BundleList>(val.kind).entries) {
    if (e.bundle.subset_of(s)) best = std::max(best, e.value);
  }
  return best;
}

Money utility(const Valuation& val, const Bundle& s, const Prices& prices) {
  check_prices(val, prices);
  return value_of(val, s, static_cast<int>(prices.size())) - price_of(s, prices);
}

std::optional<Bundle> demand_query(const Valuation& val, const Prices& prices) {
  check_prices(val, prices);
  if (const auto* u = std::get_if<UnitDemand>(&val.kind)) {
    return unit_demand_query(*u, val.tie_break, val.bid_at_zero_utility, prices);
  }
  if (const auto* a = std::get_if<Additive>(&val.kind)) {
    return additive_demand_query(*a, val.tie_break, val.bid_at_zero_utility, prices);
  }
  return bundle_list_demand_query(std::get<BundleList>(val.kind), val.tie_break,
                                  val.bid_at_zero_utility, prices);
}

Money max_utility(const Valuation& val, const Prices& prices) {
  Money best = 0;
  if (const auto* u = std::get_if<UnitDemand>(&val.kind)) {
    for (std::size_t j = 0; j < u->item_values.size(); ++j) {
      if (u->item_values[j].is_positive()) best = std::max(best, u->item_values[j] - prices[j]);
    }
    return best;
  }
  if (const auto* a = std::get_if<Additive>(&val.kind)) {
    std::vector<Money> margins;
    for (std::size_t j = 0; j < a->item_values.size(); ++j) {
      Money margin = a->item_values[j] - prices[j];
      if (a->item_values[j].is_positive() && margin.is_positive()) margins.push_back(margin);
    }
    std::sort(margins.begin(), margins.end(), [](const Money& x, const Money& y) { return y < x; });
    std::size_t take = margins.size();
    if (a->demand_cap) take = std::min<std::size_t>(take, static_cast<std::size_t>(*a->demand_cap));
    Money total = 0;
    for (std::size_t i = 0; i < take; ++i) total += margins[i];
    return total;
  }
  for (const auto& e : std::get<BundleList>(val.kind).entries) {
    best = std::max(best, e.value - price_of(e.bundle, prices));
  }
  return std::max(best, Money(0));
}

}  // namespace cca
