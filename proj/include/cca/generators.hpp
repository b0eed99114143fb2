#pragma once

#include <cstdint>
#include <vector>

#include "cca/mechanism.hpp"

namespace cca {

// Deterministic 64-bit generator (splitmix64). Sequences are reproducible
// across platforms, unlike the distributions in <random>.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) without modulo bias worth caring about here.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  bool coin() { return next() & 1; }

 private:
  std::uint64_t state_;
};

// Item-count schedule shared by the two hard families. Each entry is one more
// than `step` times the sum of all previous entries, which makes the number of
// sets a bidder group must sweep at one value level exactly match the number
// of sets the top bidders sweep across all higher levels.
std::vector<long> growth_sequence(long step, int terms);

// ---------------------------------------------------------------------------
// Family A: unit-demand hard instances (demand-proportional increments).
// 2k+2 bidders; blocks of geometrically growing item classes steer the block
// bidders into winning only value-1 items.
struct UnitLbInstance {
  Instance instance;
  AuctionConfig config;
  int k = 0;
  int levels = 0;                         // the parameter l
  std::vector<long> u;                    // u[p] = |X_{l-p}^i|
  int special_item = 0;                   // extra top-value item the top pair prefers first
  std::vector<int> item_class;            // per item: its value class v
  std::vector<int> item_block;            // per item: owning block 1..k, 0 for the special
  std::vector<int> block_bidders;         // ids of s_1, s_1', ..., s_k, s_k'
  std::vector<std::vector<std::vector<int>>> class_items;  // [block-1][v-1] -> item ids

  Money cca_welfare_closed_form() const { return Money(2 * levels + 2 * k); }
  Money opt_lower_bound_closed_form() const { return Money((k + 1) * (2L * levels - 1)); }
  Allocation constructive_allocation() const;
};

UnitLbInstance gen_unit_demand_lb(int k, int levels);

// ---------------------------------------------------------------------------
// Family B: bounded-bundle hard instances built from clique gadgets.
// k*C+2 bidders; C odd. Each gadget is the edge set of a C-clique; block
// bidder j wants the edges at her vertex, the two top bidders want the
// gadget's Hamiltonian-cycle classes.
struct GadgetLbInstance {
  struct Gadget {
    int base = 0;   // first item id; items are the C*(C-1)/2 clique edges
    int block = 0;  // 1..k
    int level = 0;  // value class v
  };

  Instance instance;
  AuctionConfig config;
  int k = 0;
  int levels = 0;
  int clique = 0;  // the parameter C
  std::vector<long> u;
  std::vector<int> new_items;                     // C fresh items, only the top bidders want them
  int top_special = 0;                            // the item only the top pair falls back to
  std::vector<int> block_specials;                // one reserved item per block bidder
  std::vector<int> block_bidders;                 // all s_j^i ids
  std::vector<Gadget> gadgets;                    // all gadgets, canonical order
  std::vector<int> item_level;                    // per item: value class, 0 for specials

  Bundle vertex_bundle(const Gadget& g, int vertex) const;
  Bundle cycle_class(const Gadget& g, int diff) const;  // diff in 1..(C-1)/2

  Money cca_welfare_closed_form() const {
    return Money(2L * clique * levels) + Money(static_cast<std::int64_t>(k) * clique, 2);
  }
  Money constructive_value_closed_form() const {
    return Money(static_cast<std::int64_t>(k) *
                 (static_cast<long>(clique) * levels +
                  static_cast<long>(clique - 1) * clique * (levels - 1)));
  }
  Allocation constructive_allocation() const;
};

GadgetLbInstance gen_gadget_lb(int k, int levels, int clique);

// ---------------------------------------------------------------------------
// Family C: fixed price increments, unit-demand bidders. A hub item wanted by
// everyone soaks up the rounds while block pairs crawl across their segments.
struct FixedUnitInstance {
  Instance instance;
  AuctionConfig config;
  int n = 0;
  int root = 0;  // sqrt(n)
  std::int64_t v = 0;

  Money cca_welfare_closed_form() const { return Money((3L * root + 1) * v); }
  Money opt_closed_form() const { return Money((static_cast<long>(n) + root + 1) * v); }
};

FixedUnitInstance gen_fixed_increment_unit(int n, std::int64_t v);

// Family D: fixed increments, two-item additive bidders all sharing item 0.
struct FixedPairsInstance {
  Instance instance;
  AuctionConfig config;
  int n = 0;
  std::int64_t v = 0;

  Money cca_welfare_closed_form() const { return Money(2 * v); }
  Money opt_closed_form() const { return Money((static_cast<long>(n) + 1) * v); }
};

FixedPairsInstance gen_fixed_increment_pairs(int n, std::int64_t v);

// Family E: three additive bidders on four items where stopping on disjoint
// bids alone locks in a bad allocation.
struct SmraStopInstance {
  Instance instance;
  AuctionConfig config;  // disjoint-only stopping
  std::int64_t c = 0;
  std::int64_t v = 0;

  Money cca_welfare_closed_form() const { return Money(6 * v); }
  Money opt_closed_form() const { return Money(2 * (c + 1) * v); }
};

SmraStopInstance gen_smra_stop(std::int64_t c, std::int64_t v);

// ---------------------------------------------------------------------------
// Seeded random instances. Values are multiples of the scale W = n^3 * m^2.
struct RandomParams {
  enum class Kind { kUnit, kXor };
  Kind kind = Kind::kUnit;
  int n = 3;
  int m = 4;
  int cap = 2;               // max entry cardinality for kXor
  std::int64_t value_min = 1;  // in units of W
  std::int64_t value_max = 4;
  std::uint64_t seed = 1;
};

Instance gen_random(const RandomParams& params);

}  // namespace cca
