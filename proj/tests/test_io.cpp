#include "doctest.h"

#include "json.hpp"

#include "cca/io.hpp"

using namespace cca;

TEST_CASE("instance files round-trip every generator family") {
  std::vector<InstanceFile> files;
  {
    UnitLbInstance g = gen_unit_demand_lb(2, 2);
    files.push_back({g.instance, g.config});
  }
  {
    GadgetLbInstance g = gen_gadget_lb(2, 2, 3);
    files.push_back({g.instance, g.config});
  }
  {
    FixedUnitInstance g = gen_fixed_increment_unit(4, 20);
    files.push_back({g.instance, g.config});
  }
  {
    FixedPairsInstance g = gen_fixed_increment_pairs(3, 10);
    files.push_back({g.instance, g.config});
  }
  {
    SmraStopInstance g = gen_smra_stop(4, 50);
    files.push_back({g.instance, g.config});
  }
  {
    RandomParams rp;
    rp.kind = RandomParams::Kind::kXor;
    rp.n = 3;
    rp.m = 5;
    rp.cap = 2;
    rp.seed = 17;
    files.push_back({gen_random(rp), std::nullopt});
  }
  for (const InstanceFile& file : files) {
    std::string text = serialize_instance(file);
    InstanceFile parsed = parse_instance(text);
    CHECK(serialize_instance(parsed) == text);
    CHECK(parsed.instance.num_items == file.instance.num_items);
    CHECK(parsed.instance.num_bidders == file.instance.num_bidders);
    CHECK(parsed.config.has_value() == file.config.has_value());
    if (file.config) {
      CHECK(parsed.config->policy.epsilon == file.config->policy.epsilon);
      CHECK(parsed.config->policy.kind == file.config->policy.kind);
      CHECK(parsed.config->stop == file.config->stop);
      CHECK(parsed.config->max_rounds == file.config->max_rounds);
    }
    // Parsed instances behave identically.
    if (file.config) {
      AuctionResult a = run_cca(file.instance, *file.config);
      AuctionResult b = run_cca(parsed.instance, *parsed.config);
      CHECK(trace_to_csv(a.trace) == trace_to_csv(b.trace));
    }
  }
}

TEST_CASE("instance parser rejects malformed input") {
  CHECK_THROWS_AS(parse_instance(""), InputError);
  CHECK_THROWS_AS(parse_instance("items 3\n"), InputError);  // missing header
  CHECK_THROWS_AS(parse_instance("cca v1\nwhatever 3\n"), InputError);
  CHECK_THROWS_AS(parse_instance("cca v1\nitems 2\ncap 1\nbidder 0 kind unit tie lowest_index "
                                 "zero off\n  value 5 1\nend\n"),
                  InputError);  // item out of range
  CHECK_THROWS_AS(parse_instance("cca v1\nitems 1\ncap 1\nbidder 0 kind unit tie lowest_index "
                                 "zero off\n  value 0 1\n"),
                  InputError);  // unterminated bidder
  CHECK_THROWS_AS(parse_instance("cca v1\nitems 1\ncap 1\nbidder 0 kind bundles tie lowest_index "
                                 "zero off\n  entry 5 bundle\nend\n"),
                  InputError);  // dangling attribute
}

TEST_CASE("trace CSV carries prices, bids, utilities and the stop row") {
  SmraStopInstance g = gen_smra_stop(4, 20);
  AuctionResult result = run_cca(g.instance, g.config);
  std::string csv = trace_to_csv(result.trace);
  CHECK(csv.rfind("round,event,bidder,item_or_bundle,amount\n", 0) == 0);
  CHECK(csv.find("0,price,,0,0\n") != std::string::npos);
  CHECK(csv.find("0,bid,0,0;1,0\n") != std::string::npos);
  CHECK(csv.find(",stop,,disjoint_stop,") != std::string::npos);
  // Amounts stay exact: the two-bidder items rise by 2 per round.
  CHECK(csv.find("1,price,,1,2\n") != std::string::npos);
}

TEST_CASE("result JSON carries the allocation with exact rationals") {
  GadgetLbInstance g = gen_gadget_lb(2, 2, 3);
  AuctionResult result = run_cca(g.instance, g.config);
  auto parsed = nlohmann::json::parse(result_to_json(g.instance, result));
  CHECK(parsed["welfare"] == "15");
  CHECK(parsed["reason"] == "porter_stop");
  CHECK(parsed["allocation"].size() == 8);
  bool found_half = false;
  for (const auto& entry : parsed["allocation"]) {
    if (entry["payment"] == "1/2") found_half = true;
  }
  CHECK(found_half);
}

TEST_CASE("sweep CSV has a stable header and exact cells") {
  auto records = sweep("thm41", {{"k", {2}}, {"l", {2}}}, 1);
  std::string csv = sweep_to_csv(records);
  CHECK(csv.rfind("family,params,bidders,items,rounds,reason,welfare,revenue,opt,ratio,"
                  "audit_clean,welfare_ge_revenue,greedy_dominated,bound_holds,error\n",
                  0) == 0);
  CHECK(csv.find("thm41,k=2 l=2,6,9,") != std::string::npos);
  CHECK(sweep_to_csv({}).find("family,") == 0);
}
