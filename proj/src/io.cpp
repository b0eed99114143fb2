#include "cca/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cca {

namespace {

std::string tie_break_to_string(const TieBreakRule& rule) {
  switch (rule.kind) {
    case TieBreakKind::kLowestIndexFirst:
      return "lowest_index";
    case TieBreakKind::kLowestValueFirst:
      return "lowest_value";
    case TieBreakKind::kHighestValueFirst:
      return "highest_value";
    case TieBreakKind::kExplicitPriority: {
      std::string out = "priority:";
      for (std::size_t i = 0; i < rule.priority.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(rule.priority[i]);
      }
      return out;
    }
  }
  throw InputError("unknown tie-break rule");
}

TieBreakRule tie_break_from_string(const std::string& text) {
  if (text == "lowest_index") return TieBreakRule::lowest_index();
  if (text == "lowest_value") return TieBreakRule::lowest_value();
  if (text == "highest_value") return TieBreakRule::highest_value();
  if (text.rfind("priority:", 0) == 0) {
    std::vector<int> ids;
    std::stringstream ss(text.substr(9));
    std::string part;
    while (std::getline(ss, part, ',')) ids.push_back(std::stoi(part));
    return TieBreakRule::explicit_priority(std::move(ids));
  }
  throw InputError("unknown tie-break rule: " + text);
}

std::string join_items(const Bundle& b) {
  std::string out;
  for (std::size_t i = 0; i < b.items().size(); ++i) {
    if (i) out += ';';
    out += std::to_string(b.items()[i]);
  }
  return out;
}

Bundle split_items(const std::string& text, char sep) {
  std::vector<int> items;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) {
    if (!part.empty()) items.push_back(std::stoi(part));
  }
  return Bundle(std::move(items));
}

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

}  // namespace

std::string serialize_instance(const InstanceFile& file) {
  const Instance& inst = file.instance;
  std::ostringstream os;
  os << "cca v1\n";
  os << "items " << inst.num_items << "\n";
  os << "cap " << inst.cap << "\n";
  os << "scale " << (inst.value_scale ? std::to_string(*inst.value_scale) : "none") << "\n";
  for (int i = 0; i < inst.num_bidders; ++i) {
    const Valuation& val = inst.valuations[static_cast<std::size_t>(i)];
    os << "bidder " << i;
    if (const auto* u = std::get_if<UnitDemand>(&val.kind)) {
      os << " kind unit";
      os << " tie " << tie_break_to_string(val.tie_break);
      os << " zero " << (val.bid_at_zero_utility ? "on" : "off") << "\n";
      for (std::size_t j = 0; j < u->item_values.size(); ++j) {
        if (!u->item_values[j].is_zero()) os << "  value " << j << " " << u->item_values[j].str() << "\n";
      }
    } else if (const auto* a = std::get_if<Additive>(&val.kind)) {
      os << " kind additive";
      if (a->demand_cap) os << " demand_cap " << *a->demand_cap;
      os << " tie " << tie_break_to_string(val.tie_break);
      os << " zero " << (val.bid_at_zero_utility ? "on" : "off") << "\n";
      for (std::size_t j = 0; j < a->item_values.size(); ++j) {
        if (!a->item_values[j].is_zero()) os << "  value " << j << " " << a->item_values[j].str() << "\n";
      }
    } else {
      os << " kind bundles";
      os << " tie " << tie_break_to_string(val.tie_break);
      os << " zero " << (val.bid_at_zero_utility ? "on" : "off") << "\n";
      for (const auto& e : std::get<BundleList>(val.kind).entries) {
        os << "  entry " << e.value.str();
        if (e.bid_value) os << " bid " << e.bid_value->str();
        if (e.allow_zero_utility) os << " zero " << (*e.allow_zero_utility ? "on" : "off");
        os << " bundle " << join_items(e.bundle) << "\n";
      }
    }
    os << "end\n";
  }
  if (file.config) {
    const AuctionConfig& cfg = *file.config;
    os << "config epsilon " << cfg.policy.epsilon.str() << " policy "
       << (cfg.policy.kind == IncrementPolicy::Kind::kDemandProportional ? "proportional" : "fixed")
       << " stop " << (cfg.stop == StoppingRule::kPorterConflictFree ? "porter" : "disjoint")
       << " rounds " << cfg.max_rounds << "\n";
  }
  return os.str();
}

InstanceFile parse_instance(const std::string& text) {
  InstanceFile file;
  Instance& inst = file.instance;
  inst.num_items = -1;

  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) -> InputError {
    return InputError("line " + std::to_string(line_no) + ": " + why);
  };

  bool have_header = false;
  std::optional<int> current_bidder;
  std::optional<Valuation> current;

  auto finish_bidder = [&]() {
    if (!current) return;
    inst.valuations.push_back(std::move(*current));
    current.reset();
    current_bidder.reset();
  };

  while (std::getline(is, line)) {
    ++line_no;
    auto toks = tokens(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    if (!have_header) {
      if (head != "cca" || toks.size() < 2 || toks[1] != "v1") throw fail("missing 'cca v1' header");
      have_header = true;
      continue;
    }
    if (head == "items") {
      if (toks.size() != 2) throw fail("items wants one argument");
      inst.num_items = std::stoi(toks[1]);
    } else if (head == "cap") {
      if (toks.size() != 2) throw fail("cap wants one argument");
      inst.cap = std::stoi(toks[1]);
    } else if (head == "scale") {
      if (toks.size() != 2) throw fail("scale wants one argument");
      if (toks[1] != "none") inst.value_scale = std::stoll(toks[1]);
    } else if (head == "bidder") {
      if (current) throw fail("previous bidder not closed with 'end'");
      if (inst.num_items < 0) throw fail("bidder before items count");
      if (toks.size() < 4) throw fail("bidder header too short");
      int id = std::stoi(toks[1]);
      if (id != static_cast<int>(inst.valuations.size())) throw fail("bidders must appear in order");
      Valuation val;
      std::string kind;
      std::optional<int> demand_cap;
      for (std::size_t t = 2; t + 1 < toks.size(); t += 2) {
        const std::string& key = toks[t];
        const std::string& value = toks[t + 1];
        if (key == "kind") {
          kind = value;
        } else if (key == "tie") {
          val.tie_break = tie_break_from_string(value);
        } else if (key == "zero") {
          val.bid_at_zero_utility = value == "on";
        } else if (key == "demand_cap") {
          demand_cap = std::stoi(value);
        } else {
          throw fail("unknown bidder attribute: " + key);
        }
      }
      if (kind == "unit") {
        val.kind = UnitDemand{std::vector<Money>(static_cast<std::size_t>(inst.num_items), Money(0))};
      } else if (kind == "additive") {
        val.kind = Additive{std::vector<Money>(static_cast<std::size_t>(inst.num_items), Money(0)),
                            demand_cap};
      } else if (kind == "bundles") {
        val.kind = BundleList{};
      } else {
        throw fail("unknown valuation kind: " + kind);
      }
      current = std::move(val);
      current_bidder = id;
    } else if (head == "value") {
      if (!current) throw fail("value outside a bidder block");
      if (toks.size() != 3) throw fail("value wants item and amount");
      int item = std::stoi(toks[1]);
      if (item < 0 || item >= inst.num_items) throw fail("value item out of range");
      Money amount = Money::parse(toks[2]);
      if (auto* u = std::get_if<UnitDemand>(&current->kind)) {
        u->item_values[static_cast<std::size_t>(item)] = amount;
      } else if (auto* a = std::get_if<Additive>(&current->kind)) {
        a->item_values[static_cast<std::size_t>(item)] = amount;
      } else {
        throw fail("value line in a bundle-list bidder");
      }
    } else if (head == "entry") {
      if (!current) throw fail("entry outside a bidder block");
      auto* bl = std::get_if<BundleList>(&current->kind);
      if (!bl) throw fail("entry line in a non-bundle bidder");
      BundleEntry entry;
      entry.value = Money::parse(toks.at(1));
      std::size_t t = 2;
      bool have_bundle = false;
      while (t < toks.size()) {
        if (t + 1 >= toks.size()) throw fail("dangling entry attribute");
        const std::string& key = toks[t];
        if (key == "bid") {
          entry.bid_value = Money::parse(toks.at(t + 1));
          t += 2;
        } else if (key == "zero") {
          entry.allow_zero_utility = toks.at(t + 1) == "on";
          t += 2;
        } else if (key == "bundle") {
          entry.bundle = split_items(toks.at(t + 1), ';');
          have_bundle = true;
          t += 2;
        } else {
          throw fail("unknown entry attribute: " + key);
        }
      }
      if (!have_bundle) throw fail("entry without a bundle");
      bl->entries.push_back(std::move(entry));
    } else if (head == "end") {
      if (!current) throw fail("'end' outside a bidder block");
      finish_bidder();
    } else if (head == "config") {
      AuctionConfig cfg;
      for (std::size_t t = 1; t + 1 < toks.size(); t += 2) {
        const std::string& key = toks[t];
        const std::string& value = toks[t + 1];
        if (key == "epsilon") {
          cfg.policy.epsilon = Money::parse(value);
        } else if (key == "policy") {
          if (value == "proportional") {
            cfg.policy.kind = IncrementPolicy::Kind::kDemandProportional;
          } else if (value == "fixed") {
            cfg.policy.kind = IncrementPolicy::Kind::kFixedOnExcess;
          } else {
            throw fail("unknown increment policy: " + value);
          }
        } else if (key == "stop") {
          if (value == "porter") {
            cfg.stop = StoppingRule::kPorterConflictFree;
          } else if (value == "disjoint") {
            cfg.stop = StoppingRule::kDisjointOnly;
          } else {
            throw fail("unknown stopping rule: " + value);
          }
        } else if (key == "rounds") {
          cfg.max_rounds = std::stoi(value);
        } else {
          throw fail("unknown config attribute: " + key);
        }
      }
      file.config = cfg;
    } else {
      throw fail("unknown directive: " + head);
    }
  }
  if (current) throw InputError("unterminated bidder block at end of file");
  if (!have_header) throw InputError("empty instance file");
  inst.num_bidders = static_cast<int>(inst.valuations.size());
  inst.validate();
  return file;
}

InstanceFile load_instance(const std::string& path) { return parse_instance(read_file(path)); }

void save_instance(const InstanceFile& file, const std::string& path) {
  write_file(path, serialize_instance(file));
}

std::string trace_to_csv(const AuctionTrace& trace) {
  std::ostringstream os;
  os << "round,event,bidder,item_or_bundle,amount\n";
  for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
    const RoundRecord& round = trace.rounds[r];
    for (std::size_t j = 0; j < round.prices.size(); ++j) {
      os << r << ",price,," << j << "," << round.prices[j].str() << "\n";
    }
    for (std::size_t i = 0; i < round.bids.size(); ++i) {
      const Bid& b = round.bids[i];
      os << r << ",bid," << b.bidder << "," << join_items(b.bundle) << "," << b.price.str() << "\n";
      os << r << ",utility," << b.bidder << "," << join_items(b.bundle) << ","
         << round.utilities[i].str() << "\n";
    }
  }
  os << trace.final_round << ",stop,," << termination_name(trace.reason) << ",\n";
  return os.str();
}

std::string result_to_json(const Instance& instance, const AuctionResult& result) {
  nlohmann::json j;
  j["rounds"] = result.rounds;
  j["reason"] = termination_name(result.reason);
  j["revenue"] = result.allocation.revenue().str();
  j["welfare"] = result.allocation.welfare(instance).str();
  nlohmann::json assignments = nlohmann::json::array();
  for (const auto& [bidder, a] : result.allocation.assignments) {
    nlohmann::json entry;
    entry["bidder"] = bidder;
    entry["items"] = a.bundle.items();
    entry["payment"] = a.payment.str();
    assignments.push_back(entry);
  }
  j["allocation"] = assignments;
  nlohmann::json prices = nlohmann::json::array();
  for (const Money& p : result.final_prices) prices.push_back(p.str());
  j["final_prices"] = prices;
  return j.dump(2) + "\n";
}

std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  os << "family,params,bidders,items,rounds,reason,welfare,revenue,opt,ratio,audit_clean,"
        "welfare_ge_revenue,greedy_dominated,bound_holds,error\n";
  for (const SweepRecord& r : records) {
    os << r.family << ",";
    std::string params;
    for (const auto& [key, value] : r.params) {
      if (!params.empty()) params += ' ';
      params += key + "=" + std::to_string(value);
    }
    os << params << "," << r.num_bidders << "," << r.num_items << "," << r.rounds << ","
       << r.reason << ",";
    if (r.error.empty()) {
      os << r.welfare.str() << "," << r.revenue.str() << ","
         << (r.opt ? r.opt->str() : std::string()) << "," << (r.ratio ? r.ratio->str() : std::string())
         << "," << (r.audit_clean ? "yes" : "no") << "," << (r.welfare_ge_revenue ? "yes" : "no")
         << "," << (r.greedy_dominated ? "yes" : "no") << ","
         << (r.bound_holds ? (*r.bound_holds ? "yes" : "no") : std::string()) << ",";
    } else {
      os << ",,,,,,,,";
    }
    std::string error = r.error;
    for (char& c : error) {
      if (c == ',' || c == '\n') c = ';';
    }
    os << error << "\n";
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open for writing: " + path);
  out << content;
  if (!out) throw InputError("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cca
