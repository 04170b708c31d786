// Copyright 2026 The debatelab Authors.
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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "debatelab/analysis.hpp"
#include "debatelab/harness.hpp"
#include "debatelab/search.hpp"
#include "debatelab/verifier.hpp"

using namespace debatelab;

namespace {

void write_out(const std::string& path, const nlohmann::ordered_json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

struct SimulateArgs {
  std::string machine;
  std::vector<std::string> inputs;
  std::string mode = "zero-info";
  std::vector<std::string> p1{"honest"};
  std::vector<std::string> p0{"honest"};
  unsigned l = 4, r = 2, m = 0;
  std::string regime = "auto";
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::uint64_t max_steps = 1'000'000;
  std::string out;
  unsigned jobs = 1;
  bool wilson = false;
  bool live = false;
  bool trace = false;
};

int simulate(const SimulateArgs& a) {
  ExperimentConfig c;
  c.machine_path = a.machine;
  c.spec = load_machine(a.machine);
  const auto mode = parse_mode(a.mode);
  if (!mode) throw ContractViolation("unknown mode " + a.mode);
  const auto regime = parse_regime(a.regime);
  if (!regime) throw ContractViolation("unknown regime " + a.regime);
  c.params.mode = *mode;
  c.params.l = a.l;
  c.params.r = a.r;
  c.params.m = a.m;
  c.params.regime = *regime;
  c.params.max_steps = a.max_steps;
  c.trials = a.trials;
  c.seed = a.seed;
  c.jobs = a.jobs;
  c.live = a.live;
  c.interval = a.wilson ? IntervalMethod::kWilson : IntervalMethod::kNormal;
  for (const std::string& w : a.inputs)
    for (const std::string& p1 : a.p1)
      for (const std::string& p0 : a.p0) c.scenarios.push_back({w, p1, p0});

  if (a.trace) {
    if (c.scenarios.size() != 1)
      throw ContractViolation("--trace needs exactly one scenario");
    const Scenario& s = c.scenarios.front();
    const DebateSetup setup{&c.spec, s.input, c.params.mode};
    auto p1 = make_p1(setup, parse_strategy_spec(s.p1));
    auto p0 = make_p0(setup, parse_strategy_spec(s.p0), *p1);
    RandomSource rng = RandomSource::for_trial(cell_seed(c.seed, 0), 0);
    const Outcome o = run_protocol(c.spec, c.params, s.input, *p1, *p0, rng,
                                   [&](const TraceRecord& r) {
                                     std::cout << format_trace(c.spec, r) << "\n";
                                   });
    std::cout << to_string(o.verdict) << " (" << to_string(o.reason) << ") after "
              << o.steps << " steps\n";
    return 0;
  }
  const TrialReport report = run_experiment(c);
  std::cout << to_table(report);
  write_out(a.out, to_json(report));
  return 0;
}

int verify_bounds(unsigned l_max, unsigned jk_max, const std::string& out) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  bool ok = true;
  std::printf("%2s %2s %2s %14s %14s %6s %12s %12s %5s\n", "l", "j", "k",
              "Pr[A] oracle", "Pr[T] oracle", "eq", "A/T", "required", "ok");
  for (unsigned l = 1; l <= l_max; ++l)
    for (unsigned j = 1; j <= jk_max; ++j)
      for (unsigned k = 1; k <= jk_max; ++k) {
        const ClaimDistribution d = claim_distribution_exact(l, j, k);
        const bool eq = d.pr_accept == pr_accept_closed(l, j, k) &&
                        d.pr_test == pr_test_closed(l, j, k);
        const bool bound = j == k ? check_aligned_bound(l, j)
                                  : check_misaligned_bound(l, j, k);
        const double ratio = to_double(d.pr_accept) / to_double(d.pr_test);
        // Aligned claims need T/A > 2^{l-2}; misaligned ones need A/T > 2^{l-1}.
        const double required = j == k ? 1.0 / std::ldexp(1.0, int(l) - 2)
                                       : std::ldexp(1.0, int(l) - 1);
        ok = ok && eq && bound;
        std::printf("%2u %2u %2u %14.6e %14.6e %6s %12.4e %12s %5s\n", l, j, k,
                    to_double(d.pr_accept), to_double(d.pr_test),
                    eq ? "yes" : "NO", ratio,
                    ((j == k ? "< " : "> ") + std::to_string(required)).c_str(),
                    bound ? "yes" : "NO");
        rows.push_back({{"l", l}, {"j", j}, {"k", k},
                        {"pr_accept", to_string(d.pr_accept)},
                        {"pr_test", to_string(d.pr_test)},
                        {"pr_continue", to_string(d.pr_continue)},
                        {"closed_form_equal", eq},
                        {"bound_holds", bound}});
      }
  nlohmann::ordered_json j;
  j["schema"] = "debatelab.bounds";
  j["schema_version"] = kReportSchemaVersion;
  j["rows"] = std::move(rows);
  j["all_hold"] = ok;
  write_out(out, j);
  std::printf("%s\n", ok ? "all checks hold" : "SOME CHECKS FAILED");
  return ok ? 0 : 1;
}

int machines_list(const std::string& dir) {
  for (const CorpusEntry& e : corpus(dir)) {
    const MachineSpec spec = load_machine(e.path);
    std::printf("%-20s %-16s %-18s states=%zu members=%zu non-members=%zu\n",
                e.file.c_str(), spec.name.c_str(),
                std::string(to_string(spec.kind)).c_str(), spec.states.size(),
                e.members.size(), e.non_members.size());
  }
  return 0;
}

int machines_validate(std::vector<std::string> files, const std::string& dir) {
  if (files.empty())
    for (const CorpusEntry& e : corpus(dir)) files.push_back(e.path);
  int bad = 0;
  for (const std::string& f : files) {
    const MachineSpec spec = load_machine(f);
    const auto diags = validate_machine(spec);
    std::printf("%s: %s\n", f.c_str(), diags.empty() ? "ok" : "INVALID");
    for (const Diagnostic& d : diags)
      std::printf("  %s: %s\n", d.rule.c_str(), d.detail.c_str());
    bad += !diags.empty();
  }
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-prover debate simulator"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "run end-to-end debates");
  s->add_option("--machine", sim.machine, "machine file")->required();
  s->add_option("--input", sim.inputs, "input word (repeatable)")->required();
  s->add_option("--mode", sim.mode, "zero-info, partial-info or cips");
  s->add_option("--p1", sim.p1, "P1 strategy (repeatable)");
  s->add_option("--p0", sim.p0, "P0 strategy (repeatable)");
  s->add_option("--l", sim.l, "coin multiplier")->check(CLI::PositiveNumber);
  s->add_option("--r", sim.r, "infinity-check coin rate")->check(CLI::PositiveNumber);
  s->add_option("--m", sim.m, "ruler multiplier (0: smallest valid)");
  s->add_option("--regime", sim.regime, "auto, linear or superlinear");
  s->add_option("--trials", sim.trials, "trials per scenario");
  s->add_option("--seed", sim.seed, "master seed")->required();
  s->add_option("--max-steps", sim.max_steps, "step cap per trial");
  s->add_option("--out", sim.out, "JSON report path");
  s->add_option("--jobs", sim.jobs, "worker threads")->check(CLI::PositiveNumber);
  s->add_flag("--wilson", sim.wilson, "Wilson intervals instead of normal");
  s->add_flag("--live", sim.live, "step the verifier instead of replaying tapes");
  s->add_flag("--trace", sim.trace, "print one JSON line per step of trial 0");

  unsigned cl = 1, cj = 1, ck = 1;
  std::uint64_t ctrials = 100000, cseed = 0;
  std::string cout_path;
  bool cwilson = false;
  auto* c = app.add_subcommand("claim-stats", "the claim sub-protocol alone");
  c->add_option("--l", cl)->check(CLI::PositiveNumber);
  c->add_option("--j", cj)->check(CLI::PositiveNumber);
  c->add_option("--k", ck)->check(CLI::PositiveNumber);
  c->add_option("--trials", ctrials);
  c->add_option("--seed", cseed)->required();
  c->add_option("--out", cout_path);
  c->add_flag("--wilson", cwilson);

  unsigned bl = 4, bjk = 8;
  std::string bout;
  auto* b = app.add_subcommand("verify-bounds", "exact claim bounds on a grid");
  b->add_option("--l-max", bl)->check(CLI::Range(1, 4));
  b->add_option("--jk-max", bjk)->check(CLI::Range(1, 16));
  b->add_option("--out", bout);

  std::string dir = DEBATELAB_MACHINES_DIR;
  std::vector<std::string> vfiles;
  auto* m = app.add_subcommand("machines", "shipped machine corpus");
  m->require_subcommand(1);
  m->add_option("--dir", dir, "corpus directory");
  auto* ml = m->add_subcommand("list", "list shipped machines");
  auto* mv = m->add_subcommand("validate", "validate machine files");
  mv->add_option("files", vfiles, "machine files (default: corpus)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*s) return simulate(sim);
    if (*c) {
      const ClaimStatsReport r = claim_stats(
          cl, cj, ck, ctrials, cseed,
          cwilson ? IntervalMethod::kWilson : IntervalMethod::kNormal);
      std::cout << to_table(r);
      write_out(cout_path, to_json(r));
      return 0;
    }
    if (*b) return verify_bounds(bl, bjk, bout);
    if (*ml) return machines_list(dir);
    if (*mv) return machines_validate(vfiles, dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
