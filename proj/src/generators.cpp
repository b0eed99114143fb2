#include "cca/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cca {

std::vector<long> growth_sequence(long step, int terms) {
  if (step < 1 || terms < 1) throw InputError("growth sequence needs positive step and length");
  std::vector<long> u;
  u.reserve(static_cast<std::size_t>(terms));
  u.push_back(1);
  long sum = 1;
  for (int p = 1; p < terms; ++p) {
    long next = step * sum + 1;
    if (next < 0 || next > (1L << 40)) throw InputError("growth sequence exceeds supported size");
    u.push_back(next);
    sum += next;
  }
  return u;
}

// --------------------------------------------------------------------------
// Family A

UnitLbInstance gen_unit_demand_lb(int k, int levels) {
  if (k < 2) throw InputError("unit-demand family needs k >= 2");
  if (levels < 2) throw InputError("unit-demand family needs l >= 2");
  UnitLbInstance out;
  out.k = k;
  out.levels = levels;
  out.u = growth_sequence(k, levels);

  long per_block = std::accumulate(out.u.begin(), out.u.end(), 0L);
  long m = static_cast<long>(k) * per_block + 1;
  if (m > 2'000'000) throw InputError("unit-demand family instance too large");

  out.instance.num_items = static_cast<int>(m);
  out.instance.num_bidders = 2 * k + 2;
  out.instance.cap = 1;

  // Item 0 is the special copy of the top value level; then classes from the
  // top level down, block by block, so that ascending item index means
  // descending value. The top bidders' highest-value-first rule with the
  // lowest-index fallback then prefers the special item first and sweeps each
  // level in a fixed order shared with their copy.
  out.special_item = 0;
  out.item_class.assign(static_cast<std::size_t>(m), 0);
  out.item_block.assign(static_cast<std::size_t>(m), 0);
  out.class_items.assign(static_cast<std::size_t>(k),
                         std::vector<std::vector<int>>(static_cast<std::size_t>(levels)));
  out.item_class[0] = levels;
  int next_item = 1;
  for (int v = levels; v >= 1; --v) {
    for (int block = 1; block <= k; ++block) {
      long count = out.u[static_cast<std::size_t>(levels - v)];
      for (long c = 0; c < count; ++c) {
        out.item_class[static_cast<std::size_t>(next_item)] = v;
        out.item_block[static_cast<std::size_t>(next_item)] = block;
        out.class_items[static_cast<std::size_t>(block - 1)][static_cast<std::size_t>(v - 1)]
            .push_back(next_item);
        ++next_item;
      }
    }
  }

  // Bidders: the top pair first, then the per-block pairs.
  std::vector<Money> top_values(static_cast<std::size_t>(m));
  for (long j = 0; j < m; ++j)
    top_values[static_cast<std::size_t>(j)] = Money(out.item_class[static_cast<std::size_t>(j)]);
  Valuation top{UnitDemand{top_values}, TieBreakRule::highest_value(), true};
  out.instance.valuations.push_back(top);
  out.instance.valuations.push_back(top);

  for (int block = 1; block <= k; ++block) {
    std::vector<Money> values(static_cast<std::size_t>(m), Money(0));
    for (long j = 1; j < m; ++j) {
      if (out.item_block[static_cast<std::size_t>(j)] == block)
        values[static_cast<std::size_t>(j)] = Money(out.item_class[static_cast<std::size_t>(j)]);
    }
    Valuation val{UnitDemand{std::move(values)}, TieBreakRule::lowest_value(), true};
    out.instance.valuations.push_back(val);
    out.instance.valuations.push_back(out.instance.valuations.back());
    out.block_bidders.push_back(2 * block);
    out.block_bidders.push_back(2 * block + 1);
  }

  out.config.policy = IncrementPolicy::demand_proportional(Money(1, 2));
  out.config.stop = StoppingRule::kPorterConflictFree;
  out.config.max_rounds = static_cast<int>(4 * m + 64);
  out.instance.validate();
  return out;
}

Allocation UnitLbInstance::constructive_allocation() const {
  // The top pair takes the special and one second-level item; each block pair
  // takes its top item and a second-level item.
  Allocation alloc;
  alloc.assignments[0] = {Bundle::single(special_item), Money(0)};
  const auto& second = class_items[0][static_cast<std::size_t>(levels - 2)];
  alloc.assignments[1] = {Bundle::single(second.at(1)), Money(0)};
  for (int block = 1; block <= k; ++block) {
    const auto& blk = class_items[static_cast<std::size_t>(block - 1)];
    alloc.assignments[2 * block] = {
        Bundle::single(blk[static_cast<std::size_t>(levels - 1)].at(0)), Money(0)};
    alloc.assignments[2 * block + 1] = {
        Bundle::single(blk[static_cast<std::size_t>(levels - 2)].at(0)), Money(0)};
  }
  return alloc;
}

// --------------------------------------------------------------------------
// Family B

Bundle GadgetLbInstance::vertex_bundle(const Gadget& g, int vertex) const {
  std::vector<int> items;
  int offset = 0;
  for (int a = 0; a < clique; ++a) {
    for (int b = a + 1; b < clique; ++b, ++offset) {
      if (a == vertex || b == vertex) items.push_back(g.base + offset);
    }
  }
  return Bundle(std::move(items));
}

Bundle GadgetLbInstance::cycle_class(const Gadget& g, int diff) const {
  // Edges at circular distance `diff`; for odd C the classes diff=1..(C-1)/2
  // partition the clique edges into C-item sets.
  std::vector<int> items;
  auto edge_offset = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    // Index of (a,b), a<b, in lexicographic edge order.
    return a * clique - a * (a + 1) / 2 + (b - a - 1);
  };
  for (int i = 0; i < clique; ++i) {
    items.push_back(g.base + edge_offset(i, (i + diff) % clique));
  }
  return Bundle(std::move(items));
}

GadgetLbInstance gen_gadget_lb(int k, int levels, int clique) {
  if (k < 2) throw InputError("gadget family needs k >= 2");
  if (levels < 2) throw InputError("gadget family needs l >= 2");
  if (clique < 3 || clique % 2 == 0) throw InputError("gadget family needs odd C >= 3");

  GadgetLbInstance out;
  out.k = k;
  out.levels = levels;
  out.clique = clique;
  long half_step = static_cast<long>(k) * (clique - 1) / 2;
  out.u = growth_sequence(half_step, levels);

  long edges = static_cast<long>(clique) * (clique - 1) / 2;
  long gadget_count = 0;
  for (long c : out.u) gadget_count += k * c;
  long m = gadget_count * edges          // gadget items
           + clique                      // fresh top-level items
           + static_cast<long>(k) * clique  // block specials
           + 1;                          // the top pair's reserved item
  if (m > 2'000'000) throw InputError("gadget family instance too large");

  out.instance.num_items = static_cast<int>(m);
  out.instance.num_bidders = k * clique + 2;
  out.instance.cap = clique;
  out.item_level.assign(static_cast<std::size_t>(m), 0);

  // Fresh items first so the top bidders' canonical fallback prefers them
  // among top-level ties, then gadgets from the top level down.
  for (int j = 0; j < clique; ++j) {
    out.new_items.push_back(j);
    out.item_level[static_cast<std::size_t>(j)] = levels;
  }
  int next_item = clique;
  for (int v = levels; v >= 1; --v) {
    for (int block = 1; block <= k; ++block) {
      long count = out.u[static_cast<std::size_t>(levels - v)];
      for (long c = 0; c < count; ++c) {
        out.gadgets.push_back({next_item, block, v});
        for (long e = 0; e < edges; ++e)
          out.item_level[static_cast<std::size_t>(next_item + e)] = v;
        next_item += static_cast<int>(edges);
      }
    }
  }
  for (int block = 1; block <= k; ++block) {
    for (int vtx = 0; vtx < clique; ++vtx) out.block_specials.push_back(next_item++);
  }
  out.top_special = next_item++;
  if (next_item != m) throw InputError("gadget item layout mismatch");

  // Top bidders: the fresh set, every cycle class of every gadget, and their
  // reserved fallback item.
  BundleList top;
  top.entries.push_back({Bundle(out.new_items), Money(static_cast<std::int64_t>(clique) * levels),
                         std::nullopt, std::nullopt});
  for (const auto& g : out.gadgets) {
    for (int diff = 1; diff <= (clique - 1) / 2; ++diff) {
      top.entries.push_back({out.cycle_class(g, diff),
                             Money(static_cast<std::int64_t>(clique) * g.level), std::nullopt,
                             std::nullopt});
    }
  }
  top.entries.push_back({Bundle::single(out.top_special), Money(1, 2), std::nullopt, std::nullopt});
  Valuation top_val{top, TieBreakRule::highest_value(), false};
  out.instance.valuations.push_back(top_val);
  out.instance.valuations.push_back(top_val);

  // Block bidders. The bid value (C-1)*v puts their round-by-round utilities
  // in exact ties along the price frontier, so the lowest-value preference
  // walks them down the levels without ever re-bidding a risen gadget; the
  // true value C*v is what allocations and audits see.
  for (int block = 1; block <= k; ++block) {
    for (int vtx = 0; vtx < clique; ++vtx) {
      BundleList bl;
      for (const auto& g : out.gadgets) {
        if (g.block != block) continue;
        bl.entries.push_back({out.vertex_bundle(g, vtx),
                              Money(static_cast<std::int64_t>(clique) * g.level),
                              Money(static_cast<std::int64_t>(clique - 1) * g.level), false});
      }
      int special = out.block_specials[static_cast<std::size_t>((block - 1) * clique + vtx)];
      bl.entries.push_back({Bundle::single(special), Money(1, 2), std::nullopt, true});
      Valuation val{std::move(bl), TieBreakRule::lowest_value(), false};
      out.block_bidders.push_back(static_cast<int>(out.instance.valuations.size()));
      out.instance.valuations.push_back(std::move(val));
    }
  }

  out.config.policy = IncrementPolicy::demand_proportional(Money(1, 2));
  out.config.stop = StoppingRule::kPorterConflictFree;
  out.config.max_rounds = static_cast<int>(8 * gadget_count + 64);
  out.instance.validate();
  return out;
}

Allocation GadgetLbInstance::constructive_allocation() const {
  // Per block: the first bidder takes her top-gadget bundle, the other C-1
  // each take their bundle in a distinct second-level gadget.
  Allocation alloc;
  for (int block = 1; block <= k; ++block) {
    const Gadget* top = nullptr;
    std::vector<const Gadget*> second;
    for (const auto& g : gadgets) {
      if (g.block != block) continue;
      if (g.level == levels && top == nullptr) top = &g;
      if (g.level == levels - 1) second.push_back(&g);
    }
    int first_bidder = 2 + (block - 1) * clique;
    alloc.assignments[first_bidder] = {vertex_bundle(*top, 0), Money(0)};
    for (int vtx = 1; vtx < clique; ++vtx) {
      alloc.assignments[first_bidder + vtx] = {
          vertex_bundle(*second.at(static_cast<std::size_t>(vtx - 1)), vtx), Money(0)};
    }
  }
  return alloc;
}

// --------------------------------------------------------------------------
// Family C

FixedUnitInstance gen_fixed_increment_unit(int n, std::int64_t v) {
  int root = 0;
  while ((root + 1) * (root + 1) <= n) ++root;
  if (root < 2 || root * root != n) throw InputError("family needs n a perfect square with sqrt(n) >= 2");
  if (v < 1) throw InputError("value must be positive");

  FixedUnitInstance out;
  out.n = n;
  out.root = root;
  out.v = v;
  out.instance.num_items = n + 1;
  out.instance.num_bidders = n + 2 * root;
  out.instance.cap = 1;

  for (int i = 1; i <= n; ++i) {
    std::vector<Money> values(static_cast<std::size_t>(n + 1), Money(0));
    values[0] = Money(static_cast<std::int64_t>(root + 1) * v);
    values[static_cast<std::size_t>(i)] = Money(v);
    out.instance.valuations.push_back(
        {UnitDemand{std::move(values)}, TieBreakRule::lowest_index(), false});
  }
  for (int seg = 0; seg < root; ++seg) {
    std::vector<Money> values(static_cast<std::size_t>(n + 1), Money(0));
    for (int off = 1; off <= root; ++off)
      values[static_cast<std::size_t>(seg * root + off)] = Money(v);
    Valuation val{UnitDemand{std::move(values)}, TieBreakRule::lowest_index(), false};
    out.instance.valuations.push_back(val);
    out.instance.valuations.push_back(val);
  }

  out.config.policy = IncrementPolicy::fixed_on_excess(Money(1));
  out.config.stop = StoppingRule::kPorterConflictFree;
  out.config.max_rounds = static_cast<int>((root + 1) * v + n + 64);
  out.instance.validate();
  return out;
}

// --------------------------------------------------------------------------
// Family D

FixedPairsInstance gen_fixed_increment_pairs(int n, std::int64_t v) {
  if (n < 2) throw InputError("family needs n >= 2");
  if (v < 1) throw InputError("value must be positive");
  FixedPairsInstance out;
  out.n = n;
  out.v = v;
  out.instance.num_items = n + 1;
  out.instance.num_bidders = 2 * n;
  out.instance.cap = 2;
  for (int i = 1; i <= n; ++i) {
    std::vector<Money> values(static_cast<std::size_t>(n + 1), Money(0));
    values[0] = Money(v);
    values[static_cast<std::size_t>(i)] = Money(v);
    Valuation val{Additive{std::move(values), 2}, TieBreakRule::lowest_index(), true};
    out.instance.valuations.push_back(val);
    out.instance.valuations.push_back(val);
  }
  out.config.policy = IncrementPolicy::fixed_on_excess(Money(1));
  out.config.stop = StoppingRule::kPorterConflictFree;
  out.config.max_rounds = static_cast<int>(v + 64);
  out.instance.validate();
  return out;
}

// --------------------------------------------------------------------------
// Family E

SmraStopInstance gen_smra_stop(std::int64_t c, std::int64_t v) {
  if (c <= 2) throw InputError("family needs c > 2");
  if (v <= c) throw InputError("family needs V > c");
  SmraStopInstance out;
  out.c = c;
  out.v = v;
  out.instance.num_items = 4;
  out.instance.num_bidders = 3;
  out.instance.cap = 2;

  auto additive = [&](std::vector<Money> values) {
    return Valuation{Additive{std::move(values), std::nullopt}, TieBreakRule::lowest_index(), true};
  };
  out.instance.valuations.push_back(additive({Money(v), Money(2 * v), Money(0), Money(0)}));
  out.instance.valuations.push_back(additive({Money(0), Money(0), Money(2 * v), Money(v)}));
  out.instance.valuations.push_back(additive({Money(0), Money(c * v), Money(c * v), Money(0)}));

  out.config.policy = IncrementPolicy::demand_proportional(Money(1));
  out.config.stop = StoppingRule::kDisjointOnly;
  out.config.max_rounds = static_cast<int>(c * v + 64);
  out.instance.validate();
  return out;
}

// --------------------------------------------------------------------------
// Random instances

Instance gen_random(const RandomParams& params) {
  if (params.n < 1 || params.m < 1) throw InputError("random instance needs n, m >= 1");
  if (params.cap < 1 || params.cap > params.m) throw InputError("random instance cap out of range");
  if (params.value_min < 1 || params.value_max < params.value_min)
    throw InputError("random instance value range invalid");

  SplitMix64 rng(params.seed);
  std::int64_t w = static_cast<std::int64_t>(params.n) * params.n * params.n *
                   params.m * params.m;
  auto draw_value = [&]() {
    std::int64_t mult =
        params.value_min +
        static_cast<std::int64_t>(rng.below(
            static_cast<std::uint64_t>(params.value_max - params.value_min + 1)));
    return Money(mult * w);
  };

  Instance inst;
  inst.num_items = params.m;
  inst.num_bidders = params.n;
  inst.cap = params.kind == RandomParams::Kind::kUnit ? 1 : params.cap;
  inst.value_scale = w;

  for (int i = 0; i < params.n; ++i) {
    if (params.kind == RandomParams::Kind::kUnit) {
      std::vector<Money> values(static_cast<std::size_t>(params.m), Money(0));
      bool any = false;
      for (int j = 0; j < params.m; ++j) {
        if (rng.coin()) {
          values[static_cast<std::size_t>(j)] = draw_value();
          any = true;
        }
      }
      if (!any) values[rng.below(static_cast<std::uint64_t>(params.m))] = draw_value();
      inst.valuations.push_back(
          {UnitDemand{std::move(values)}, TieBreakRule::lowest_index(), false});
    } else {
      BundleList bl;
      int entries = 1 + static_cast<int>(rng.below(3));
      std::set<Bundle> seen;
      for (int e = 0; e < entries; ++e) {
        int size = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(inst.cap)));
        std::set<int> items;
        while (static_cast<int>(items.size()) < size)
          items.insert(static_cast<int>(rng.below(static_cast<std::uint64_t>(params.m))));
        Bundle b(std::vector<int>(items.begin(), items.end()));
        if (!seen.insert(b).second) continue;
        bl.entries.push_back({std::move(b), draw_value(), std::nullopt, std::nullopt});
      }
      inst.valuations.push_back({std::move(bl), TieBreakRule::lowest_index(), false});
    }
  }
  inst.validate();
  return inst;
}

}  // namespace cca
