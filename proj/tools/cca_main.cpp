#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cca/io.hpp"
#include "cca/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitTruncated = 3;
constexpr int kExitAuditViolation = 4;

std::map<std::string, std::vector<long>> parse_grid(const std::string& spec) {
  std::map<std::string, std::vector<long>> grid;
  if (spec.empty()) return grid;
  std::stringstream ss(spec);
  std::string dimension;
  while (std::getline(ss, dimension, ';')) {
    if (dimension.empty()) continue;
    auto eq = dimension.find('=');
    if (eq == std::string::npos) throw cca::InputError("grid dimension without '=': " + dimension);
    std::string key = dimension.substr(0, eq);
    std::string values = dimension.substr(eq + 1);
    std::vector<long>& list = grid[key];
    std::stringstream vs(values);
    std::string value;
    while (std::getline(vs, value, ',')) {
      auto dots = value.find("..");
      if (dots == std::string::npos) {
        list.push_back(std::stol(value));
      } else {
        long lo = std::stol(value.substr(0, dots));
        long hi = std::stol(value.substr(dots + 2));
        for (long v = lo; v <= hi; ++v) list.push_back(v);
      }
    }
  }
  return grid;
}

struct GenerateOptions {
  std::string family;
  long k = 2, l = 2, clique = 3, n = 4, c = 3, v = 100, m = 5;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_generate(const GenerateOptions& opt) {
  cca::InstanceFile file;
  std::string expected;
  if (opt.family == "thm41") {
    auto g = cca::gen_unit_demand_lb(static_cast<int>(opt.k), static_cast<int>(opt.l));
    file = {g.instance, g.config};
    expected = g.cca_welfare_closed_form().str();
  } else if (opt.family == "thm42") {
    auto g = cca::gen_gadget_lb(static_cast<int>(opt.k), static_cast<int>(opt.l),
                                static_cast<int>(opt.clique));
    file = {g.instance, g.config};
    expected = g.cca_welfare_closed_form().str();
  } else if (opt.family == "fixed_unit") {
    auto g = cca::gen_fixed_increment_unit(static_cast<int>(opt.n), opt.v);
    file = {g.instance, g.config};
    expected = g.cca_welfare_closed_form().str();
  } else if (opt.family == "fixed_pairs") {
    auto g = cca::gen_fixed_increment_pairs(static_cast<int>(opt.n), opt.v);
    file = {g.instance, g.config};
    expected = g.cca_welfare_closed_form().str();
  } else if (opt.family == "smra_stop") {
    auto g = cca::gen_smra_stop(opt.c, opt.v);
    file = {g.instance, g.config};
    expected = g.cca_welfare_closed_form().str();
  } else if (opt.family == "random_unit" || opt.family == "random_xor") {
    cca::RandomParams rp;
    rp.kind = opt.family == "random_unit" ? cca::RandomParams::Kind::kUnit
                                          : cca::RandomParams::Kind::kXor;
    rp.n = static_cast<int>(opt.n);
    rp.m = static_cast<int>(opt.m);
    rp.cap = static_cast<int>(opt.clique);
    rp.seed = opt.seed;
    file.instance = cca::gen_random(rp);
  } else {
    throw cca::InputError("unknown family: " + opt.family);
  }
  cca::save_instance(file, opt.out);
  std::cout << "items " << file.instance.num_items << "\n"
            << "bidders " << file.instance.num_bidders << "\n";
  if (!expected.empty()) std::cout << "expected_clock_welfare " << expected << "\n";
  std::cout << "wrote " << opt.out << "\n";
  return kExitOk;
}

struct RunOptions {
  std::string instance_path;
  std::string epsilon;
  std::string policy;
  std::string stop;
  int max_rounds = 0;
  std::string trace_out;
  std::string result_out;
};

int cmd_run(const RunOptions& opt) {
  cca::InstanceFile file = cca::load_instance(opt.instance_path);
  cca::AuctionConfig config = file.config.value_or(cca::AuctionConfig{});
  if (!opt.epsilon.empty()) config.policy.epsilon = cca::Money::parse(opt.epsilon);
  if (!opt.policy.empty()) {
    if (opt.policy == "proportional") {
      config.policy.kind = cca::IncrementPolicy::Kind::kDemandProportional;
    } else if (opt.policy == "fixed") {
      config.policy.kind = cca::IncrementPolicy::Kind::kFixedOnExcess;
    } else {
      throw cca::InputError("unknown policy: " + opt.policy);
    }
  }
  if (!opt.stop.empty()) {
    if (opt.stop == "porter") {
      config.stop = cca::StoppingRule::kPorterConflictFree;
    } else if (opt.stop == "disjoint") {
      config.stop = cca::StoppingRule::kDisjointOnly;
    } else {
      throw cca::InputError("unknown stopping rule: " + opt.stop);
    }
  }
  if (opt.max_rounds > 0) config.max_rounds = opt.max_rounds;

  cca::AuctionResult result = cca::run_cca(file.instance, config);
  if (!opt.trace_out.empty()) cca::write_file(opt.trace_out, cca::trace_to_csv(result.trace));
  if (!opt.result_out.empty())
    cca::write_file(opt.result_out, cca::result_to_json(file.instance, result));

  cca::AuditReport report = cca::audit_trace(file.instance, config, result);
  std::cout << "rounds " << result.rounds << "\n"
            << "reason " << cca::termination_name(result.reason) << "\n"
            << "welfare " << result.allocation.welfare(file.instance).str() << "\n"
            << "revenue " << result.allocation.revenue().str() << "\n"
            << "audit " << (report.clean() ? "clean" : report.first_violation()) << "\n";
  if (result.reason == cca::Termination::kTruncated) return kExitTruncated;
  if (!report.clean()) return kExitAuditViolation;
  return kExitOk;
}

int cmd_sweep(const std::string& family, const std::string& grid_spec, std::uint64_t seed,
              const std::string& out) {
  auto grid = parse_grid(grid_spec);
  auto records = cca::sweep(family, grid, seed);
  std::string csv = cca::sweep_to_csv(records);
  if (out.empty()) {
    std::cout << csv;
  } else {
    cca::write_file(out, csv);
    std::cout << "cells " << records.size() << "\nwrote " << out << "\n";
  }
  // Aggregate per-cell failures: bad cells, then audit violations, then
  // truncations, mirroring the run subcommand's codes.
  int exit = kExitOk;
  for (const auto& r : records) {
    if (!r.error.empty()) return kExitUsage;
    if (!r.audit_clean) exit = kExitAuditViolation;
    if (exit == kExitOk && r.reason == "truncated") exit = kExitTruncated;
  }
  return exit;
}

int cmd_verify(const std::string& suite) {
  auto results = cca::run_suite(suite);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    std::printf("[%s] %d: %s (%.2fs)%s%s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.detail.empty() ? "" : " -- ", r.detail.c_str());
  }
  return all ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"combinatorial clock auction simulator"};
  app.require_subcommand(1);

  GenerateOptions gen;
  CLI::App* generate = app.add_subcommand("generate", "write an instance file for a named family");
  generate->add_option("--family", gen.family, "family name")->required();
  generate->add_option("--k", gen.k, "block count");
  generate->add_option("--l", gen.l, "value levels");
  generate->add_option("--C", gen.clique, "bundle cardinality parameter");
  generate->add_option("--n", gen.n, "size parameter");
  generate->add_option("--c", gen.c, "value multiplier parameter");
  generate->add_option("--V", gen.v, "base value");
  generate->add_option("--m", gen.m, "item count (random families)");
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("--out", gen.out, "output path")->required();

  RunOptions run;
  CLI::App* runc = app.add_subcommand("run", "run the auction on an instance file");
  runc->add_option("instance", run.instance_path, "instance file")->required();
  runc->add_option("--epsilon", run.epsilon, "price increment override (rational)");
  runc->add_option("--policy", run.policy, "proportional | fixed");
  runc->add_option("--stop", run.stop, "porter | disjoint");
  runc->add_option("--max-rounds", run.max_rounds, "round cap override");
  runc->add_option("--trace", run.trace_out, "trace CSV output path");
  runc->add_option("--out", run.result_out, "result JSON output path");

  std::string sweep_family, sweep_grid, sweep_out;
  std::uint64_t sweep_seed = 1;
  CLI::App* sweepc = app.add_subcommand("sweep", "run a parameter grid and emit CSV");
  sweepc->add_option("--family", sweep_family, "family name")->required();
  sweepc->add_option("--grid", sweep_grid, "grid, e.g. k=2,3;l=2..4");
  sweepc->add_option("--seed", sweep_seed, "sweep seed");
  sweepc->add_option("--out", sweep_out, "CSV output path");

  std::string suite = "all";
  CLI::App* verifyc = app.add_subcommand("verify", "run a verification suite");
  verifyc->add_option("--suite", suite, "paper_replays | oracles | facts | bounds | determinism | all");

  try {
    app.parse(argc, argv);
    if (generate->parsed()) return cmd_generate(gen);
    if (runc->parsed()) return cmd_run(run);
    if (sweepc->parsed()) return cmd_sweep(sweep_family, sweep_grid, sweep_seed, sweep_out);
    if (verifyc->parsed()) return cmd_verify(suite);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
