// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bfm/errors.hpp"
#include "bfm/generate.hpp"
#include "bfm/instance_io.hpp"
#include "bfm/mechanisms.hpp"
#include "bfm/oracle.hpp"
#include "bfm/parallel.hpp"
#include "bfm/payments.hpp"

namespace bfm::cli {
namespace {

using Json = nlohmann::ordered_json;

struct GenFlags {
  std::string family;
  int size = -1;
  int elements = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct RunFlags {
  std::vector<std::string> positional;
  std::string mechanism;
  std::string instance;
  std::optional<std::uint64_t> seed;
  bool oracle = false;
  std::string out;
};

struct AuditFlags {
  std::vector<std::string> positional;
  std::string mechanism;
  std::string instance;
  std::string family;
  int trials = 100;
  int size = 8;
  std::optional<std::uint64_t> seed;
  int grid = 16;
  std::string csv;
};

struct BenchFlags {
  std::string family;
  std::vector<std::string> mechanisms;
  int trials = 100;
  int size = 8;
  std::uint64_t seed = 0;
  std::string csv;
};

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw InputError("cannot write " + path);
  file << text;
}

std::string fixed(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << x;
  return os.str();
}

std::string ratio_cell(const Ratio& r) { return r.infinite ? "inf" : fixed(r.to_double()); }

// Positional words are either a mechanism name or an instance path.
void split_positional(const std::vector<std::string>& words, std::string& mechanism, std::string& instance) {
  for (const std::string& w : words) {
    bool is_mechanism = true;
    try {
      parse_mechanism_kind(w);
    } catch (const InputError&) {
      is_mechanism = false;
    }
    std::string& slot = is_mechanism ? mechanism : instance;
    if (!slot.empty() && slot != w) throw InputError("unexpected argument \"" + w + "\"");
    slot = w;
  }
}

Mechanism make_mechanism(const std::string& name, std::optional<std::uint64_t> seed) {
  if (name.empty()) throw InputError("a mechanism is required");
  MechanismKind kind = parse_mechanism_kind(name);
  if (kind == MechanismKind::kRandIsk && !seed) throw InputError("rand-isk requires --seed");
  return Mechanism(kind, seed.value_or(0));
}

int cmd_gen(const GenFlags& f, std::ostream& out) {
  if (f.size < 0) throw InputError("--agents (or --edges) is required");
  Instance instance = generate_instance(GenerateOptions{f.family, f.size, f.seed, f.elements});
  write_text(serialize_instance(instance), f.out, out);
  return kExitOk;
}

Json set_json(const AgentSet& set) {
  Json out = Json::array();
  for (AgentId a : set) out.push_back(a);
  return out;
}

int cmd_run(RunFlags f, std::ostream& out) {
  split_positional(f.positional, f.mechanism, f.instance);
  if (f.instance.empty()) throw InputError("an instance file is required");
  Instance instance = load_instance(f.instance);
  Mechanism mechanism = make_mechanism(f.mechanism, f.seed);
  mechanism.check_supports(instance);
  BidProfile bids = instance.truthful_bids();
  Outcome outcome = run_with_payments(mechanism, instance, bids);

  Json report = Json::object();
  report["mechanism"] = mechanism.name();
  if (f.seed) report["seed"] = *f.seed;
  report["family"] = family_name(instance.valuation);
  report["instance_digest"] = instance_digest(instance);
  report["winners"] = set_json(outcome.winners);
  Json payments = Json::object();
  for (const Agent& a : instance.agents) {
    payments[std::to_string(a.id)] = outcome.payments[static_cast<std::size_t>(a.id)].to_string();
  }
  report["payments"] = payments;
  report["value"] = outcome.value.to_string();
  report["total_payment"] = outcome.total_payment().to_string();
  report["budget"] = instance.budget.to_string();
  report["budget_feasible"] = outcome.total_payment() <= instance.budget;
  report["payments_exact"] = outcome.exact_payments;
  if (f.oracle) {
    OptResult opt = brute_force_opt(instance, bids);
    Ratio ratio = make_ratio(opt.value, outcome.value);
    report["oracle"] = Json{{"opt", opt.value.to_string()},
                            {"opt_set", set_json(opt.set)},
                            {"ratio", ratio.to_string()}};
  }
  write_text(report.dump(2) + "\n", f.out, out);
  return kExitOk;
}

struct AuditRow {
  std::string seed;
  AuditReport report;
  std::string value;
  std::string opt;
  std::string ratio;
};

AuditRow audit_one(const Mechanism& mechanism, const Instance& instance, int grid, std::string seed_label,
                   bool with_ratio) {
  AuditRow row;
  row.seed = std::move(seed_label);
  row.report = audit(mechanism, instance, grid);
  if (with_ratio) {
    BidProfile bids = instance.truthful_bids();
    Rational value = evaluate(instance.valuation, mechanism.allocate(instance, bids).winners);
    Rational opt = brute_force_opt(instance, bids).value;
    row.value = value.to_string();
    row.opt = opt.to_string();
    row.ratio = ratio_cell(make_ratio(opt, value));
  }
  return row;
}

int cmd_audit(AuditFlags f, std::ostream& out) {
  split_positional(f.positional, f.mechanism, f.instance);
  if (f.grid < 1) throw InputError("--grid must be positive");
  const bool with_ratio = !f.csv.empty();
  std::vector<AuditRow> rows;
  if (!f.instance.empty()) {
    if (!f.family.empty()) throw InputError("give either an instance file or --family, not both");
    Instance instance = load_instance(f.instance);
    Mechanism mechanism = make_mechanism(f.mechanism, f.seed);
    mechanism.check_supports(instance);
    rows.push_back(audit_one(mechanism, instance, f.grid, f.seed ? std::to_string(*f.seed) : "", with_ratio));
  } else {
    if (f.family.empty()) throw InputError("audit needs an instance file or --family");
    if (f.trials < 0) throw InputError("--trials must be nonnegative");
    if (f.size < 1) throw InputError("--agents must be positive");
    const std::uint64_t base = f.seed.value_or(0);
    make_mechanism(f.mechanism, base);
    // Sizes cycle through 1..size so small corner cases are covered too.
    Instance probe = generate_instance(GenerateOptions{f.family, 1, base, 0});
    Mechanism(parse_mechanism_kind(f.mechanism)).check_supports(probe);
    rows = parallel_map(static_cast<std::size_t>(f.trials), [&](std::size_t t) {
      const std::uint64_t seed = base + t;
      const int size = 1 + static_cast<int>(t % static_cast<std::size_t>(f.size));
      Instance instance = generate_instance(GenerateOptions{f.family, size, seed, 0});
      Mechanism mechanism(parse_mechanism_kind(f.mechanism), seed);
      return audit_one(mechanism, instance, f.grid, std::to_string(seed), with_ratio);
    });
  }

  int failures = 0;
  for (const AuditRow& row : rows) {
    for (const AuditCheck& check : row.report.checks) {
      if (check.passed) continue;
      ++failures;
      out << "FAIL " << row.report.mechanism << " instance " << row.report.instance_digest;
      if (!row.seed.empty()) out << " (seed " << row.seed << ")";
      out << " " << check.property << ": " << check.counterexample << "\n";
    }
  }
  out << "audited " << rows.size() << " instance(s) with " << f.mechanism << ": "
      << (failures == 0 ? std::string("all checks passed") : std::to_string(failures) + " failure(s)") << "\n";

  if (with_ratio) {
    std::ostringstream csv;
    csv << "seed,instance_digest,value,opt,ratio,total_payment,budget,passed\n";
    for (const AuditRow& row : rows) {
      csv << row.seed << ',' << row.report.instance_digest << ',' << row.value << ',' << row.opt << ','
          << row.ratio << ',' << row.report.payment_total << ',' << row.report.budget << ','
          << (row.report.passed() ? "true" : "false") << "\n";
    }
    write_text(csv.str(), f.csv, out);
  }
  return failures == 0 ? kExitOk : kExitViolation;
}

struct BenchCell {
  Rational value;
  Rational opt;
  Ratio ratio;
  Rational payment;
  Rational budget;
};

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  if (f.mechanisms.empty()) throw InputError("--mechanisms needs at least one mechanism");
  if (f.trials < 0) throw InputError("--trials must be nonnegative");
  if (f.size < 0) throw InputError("--agents must be nonnegative");
  std::vector<MechanismKind> kinds;
  for (const std::string& name : f.mechanisms) kinds.push_back(parse_mechanism_kind(name));
  Instance probe = generate_instance(GenerateOptions{f.family, 1, f.seed, 0});
  for (MechanismKind kind : kinds) Mechanism(kind).check_supports(probe);

  auto table = parallel_map(static_cast<std::size_t>(f.trials), [&](std::size_t t) {
    const std::uint64_t seed = f.seed + t;
    Instance instance = generate_instance(GenerateOptions{f.family, f.size, seed, 0});
    BidProfile bids = instance.truthful_bids();
    Rational opt = brute_force_opt(instance, bids).value;
    std::vector<BenchCell> cells;
    for (MechanismKind kind : kinds) {
      Outcome outcome = run_with_payments(Mechanism(kind, seed), instance, bids);
      cells.push_back(BenchCell{outcome.value, opt, make_ratio(opt, outcome.value), outcome.total_payment(),
                                instance.budget});
    }
    return cells;
  });

  std::ostringstream csv;
  csv << "seed,mechanism,value,opt,ratio,total_payment,budget\n";
  for (std::size_t t = 0; t < table.size(); ++t) {
    for (std::size_t m = 0; m < kinds.size(); ++m) {
      const BenchCell& c = table[t][m];
      csv << f.seed + t << ',' << to_string(kinds[m]) << ',' << c.value << ',' << c.opt << ','
          << ratio_cell(c.ratio) << ',' << c.payment << ',' << c.budget << "\n";
    }
  }
  if (!table.empty()) {
    for (std::size_t m = 0; m < kinds.size(); ++m) {
      double worst = 0.0;
      double sum = 0.0;
      bool infinite = false;
      for (const auto& row : table) {
        infinite = infinite || row[m].ratio.infinite;
        if (row[m].ratio.infinite) continue;
        worst = std::max(worst, row[m].ratio.to_double());
        sum += row[m].ratio.to_double();
      }
      const std::string name = to_string(kinds[m]);
      csv << "max," << name << ",,," << (infinite ? std::string("inf") : fixed(worst)) << ",,\n";
      csv << "mean," << name << ",,," << (infinite ? std::string("inf") : fixed(sum / table.size())) << ",,\n";
    }
  }
  write_text(csv.str(), f.csv, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Budget-feasible procurement mechanisms: generate, run, audit, bench", "bfm"};
  app.require_subcommand(1);

  GenFlags gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--family", gen.family, "Valuation family")->required();
  gen_cmd->add_option("--agents,--edges,--size", gen.size, "Number of agents");
  gen_cmd->add_option("--elements", gen.elements, "Coverage ground elements");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");

  RunFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a mechanism with threshold payments");
  run_cmd->add_option("args", run_flags.positional, "MECHANISM INSTANCE");
  run_cmd->add_option("--mechanism", run_flags.mechanism, "Mechanism name");
  run_cmd->add_option("--instance", run_flags.instance, "Instance file");
  run_cmd->add_option("--seed", run_flags.seed, "Coin seed (required for rand-isk)");
  run_cmd->add_flag("--oracle", run_flags.oracle, "Also report the brute-force optimum and ratio");
  run_cmd->add_option("--out", run_flags.out, "Output path (default stdout)");

  AuditFlags audit_flags;
  CLI::App* audit_cmd = app.add_subcommand("audit", "Audit truthfulness, IR and budget feasibility");
  audit_cmd->add_option("args", audit_flags.positional, "MECHANISM [INSTANCE]");
  audit_cmd->add_option("--mechanism", audit_flags.mechanism, "Mechanism name");
  audit_cmd->add_option("--instance", audit_flags.instance, "Instance file");
  audit_cmd->add_option("--family", audit_flags.family, "Generate instances of this family");
  audit_cmd->add_option("--trials", audit_flags.trials, "Generated instances");
  audit_cmd->add_option("--agents,--edges,--size", audit_flags.size, "Largest generated size");
  audit_cmd->add_option("--seed", audit_flags.seed, "First seed");
  audit_cmd->add_option("--grid", audit_flags.grid, "Even grid steps per agent");
  audit_cmd->add_option("--csv", audit_flags.csv, "Per-instance ratio CSV path");

  BenchFlags bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Approximation ratio table against brute force");
  bench_cmd->add_option("--family", bench.family, "Valuation family")->required();
  bench_cmd->add_option("--mechanisms,--mechanism", bench.mechanisms, "Comma-separated mechanisms")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--trials", bench.trials, "Generated instances");
  bench_cmd->add_option("--agents,--edges,--size", bench.size, "Instance size");
  bench_cmd->add_option("--seed", bench.seed, "First seed");
  bench_cmd->add_option("--csv,--out", bench.csv, "CSV path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*run_cmd) return cmd_run(run_flags, out);
    if (*audit_cmd) return cmd_audit(audit_flags, out);
    return cmd_bench(bench, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MonotonicityViolation& e) {
    err << "violation: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitViolation;
  }
}

}  // namespace bfm::cli
