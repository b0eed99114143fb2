#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "cca/harness.hpp"
#include "cca/mechanism.hpp"

namespace cca {

struct InstanceFile {
  Instance instance;
  std::optional<AuctionConfig> config;
};

// Line-oriented instance format; serialize(parse(x)) is the identity on
// canonical files and parse(serialize(i)) reproduces the instance exactly.
std::string serialize_instance(const InstanceFile& file);
InstanceFile parse_instance(const std::string& text);
InstanceFile load_instance(const std::string& path);
void save_instance(const InstanceFile& file, const std::string& path);

// Trace CSV: one row per event with columns
//   round,event,bidder,item_or_bundle,amount
// where event is price | bid | utility | stop, bundles are semicolon-joined
// item ids, and amounts are exact rationals.
std::string trace_to_csv(const AuctionTrace& trace);

// Result summary as JSON (allocation, payments, welfare, revenue, rounds).
std::string result_to_json(const Instance& instance, const AuctionResult& result);

std::string sweep_to_csv(const std::vector<SweepRecord>& records);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace cca
