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

#include "debatelab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "debatelab/random.hpp"
#include "debatelab/search.hpp"
#include "debatelab/tape.hpp"

namespace debatelab {

void ExperimentConfig::validate() const {
  if (trials == 0) throw ContractViolation("trials must be at least 1");
  if (scenarios.empty()) throw ContractViolation("no scenarios to run");
  if (jobs == 0) throw ContractViolation("jobs must be at least 1");
  for (std::uint64_t h : horizons)
    if (h > params.max_steps)
      throw ContractViolation("horizon above the step cap");
}

Estimate estimate(std::uint64_t hits, std::uint64_t n, IntervalMethod method) {
  Estimate e;
  if (n == 0) return e;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  e.value = p;
  e.se = std::sqrt(p * (1 - p) / nn);
  constexpr double z = 3.0;
  if (method == IntervalMethod::kNormal) {
    e.lo = std::max(0.0, p - z * e.se);
    e.hi = std::min(1.0, p + z * e.se);
  } else {
    const double z2 = z * z;
    const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
    const double half =
        z / (1 + z2 / nn) * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn));
    e.lo = std::max(0.0, centre - half);
    e.hi = std::min(1.0, centre + half);
  }
  return e;
}

std::uint64_t cell_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index + 1) * 0xd1b54a32d192ed03ULL);
}

namespace {

struct Strategies {
  DebateSetup setup;
  std::unique_ptr<ProverStrategy> p1, p0;
};

Strategies build(const ExperimentConfig& config, const Scenario& s) {
  Strategies out{{&config.spec, s.input, config.params.mode}, nullptr, nullptr};
  out.p1 = make_p1(out.setup, parse_strategy_spec(s.p1));
  out.p0 = make_p0(out.setup, parse_strategy_spec(s.p0), *out.p1);
  return out;
}

Outcome budget_outcome() {
  Outcome o;
  o.verdict = Verdict::kUndecided;
  o.reason = Reason::kNone;
  return o;
}

void run_chunk(const ExperimentConfig& config, const Strategies& st,
               std::uint64_t seed, std::uint64_t begin, std::uint64_t end,
               std::vector<Outcome>& out) {
  if (config.live) {
    for (std::uint64_t t = begin; t < end; ++t) {
      RandomSource rng = RandomSource::for_trial(seed, t);
      try {
        out[t] = run_protocol(config.spec, config.params, st.setup.input,
                              *st.p1, *st.p0, rng);
      } catch (const BudgetExhausted&) {
        out[t] = budget_outcome();
      }
    }
    return;
  }
  DebateTape tape(config.spec, config.params, st.setup.input, *st.p1, *st.p0);
  for (std::uint64_t t = begin; t < end; ++t) {
    RandomSource rng = RandomSource::for_trial(seed, t);
    try {
      out[t] = replay(tape, rng);
    } catch (const BudgetExhausted&) {
      out[t] = budget_outcome();
    }
  }
}

CellReport aggregate(const Scenario& s, std::uint64_t seed,
                     const std::vector<Outcome>& outcomes,
                     const std::vector<std::uint64_t>& horizons) {
  CellReport c;
  for (std::uint64_t h : horizons) {
    std::uint64_t& u = c.undecided_at[h];
    for (const Outcome& o : outcomes)
      u += o.verdict == Verdict::kUndecided || o.steps > h;
  }
  c.scenario = s;
  c.seed = seed;
  c.trials = outcomes.size();
  std::vector<std::uint64_t> steps;
  steps.reserve(outcomes.size());
  long double total = 0;
  for (const Outcome& o : outcomes) {
    switch (o.verdict) {
      case Verdict::kAccept: ++c.accepts; break;
      case Verdict::kReject: ++c.rejects; break;
      case Verdict::kUndecided: ++c.undecided; break;
    }
    ++c.reasons[std::string(to_string(o.reason))];
    c.tallies += o.tallies;
    steps.push_back(o.steps);
    total += o.steps;
  }
  std::sort(steps.begin(), steps.end());
  const auto pct = [&](double q) {
    const auto i = static_cast<std::size_t>(q * static_cast<double>(steps.size() - 1));
    return steps[i];
  };
  c.mean_steps = static_cast<double>(total / steps.size());
  c.p50_steps = pct(0.5);
  c.p90_steps = pct(0.9);
  c.max_steps = steps.back();
  return c;
}

}  // namespace

TrialReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  TrialReport report;
  report.config = config;
  report.config.params =
      resolve_params(config.spec, config.params,
                     config.scenarios.front().input.size());
  for (std::size_t c = 0; c < config.scenarios.size(); ++c) {
    const Scenario& s = config.scenarios[c];
    // Validates the parameters for this input length.
    resolve_params(config.spec, config.params, s.input.size());
    const Strategies st = build(config, s);
    const std::uint64_t seed = cell_seed(config.seed, c);
    std::vector<Outcome> outcomes(config.trials);
    const std::uint64_t jobs = std::min<std::uint64_t>(config.jobs, config.trials);
    if (jobs <= 1) {
      run_chunk(config, st, seed, 0, config.trials, outcomes);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(jobs);
      for (std::uint64_t k = 0; k < jobs; ++k) {
        const std::uint64_t b = config.trials * k / jobs;
        const std::uint64_t e = config.trials * (k + 1) / jobs;
        pool.emplace_back([&, b, e, k] {
          try {
            run_chunk(config, st, seed, b, e, outcomes);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    report.cells.push_back(aggregate(s, seed, outcomes, config.horizons));
  }
  return report;
}

namespace {

nlohmann::ordered_json estimate_json(const Estimate& e) {
  return {{"value", e.value}, {"se", e.se}, {"lo", e.lo}, {"hi", e.hi}};
}

std::string_view to_string(IntervalMethod m) {
  return m == IntervalMethod::kNormal ? "normal" : "wilson";
}

nlohmann::ordered_json tallies_json(const Tallies& t) {
  return {{"rounds", t.rounds},
          {"claims", t.claims},
          {"accept_by_coins", t.accept_by_coins},
          {"tests", t.tests},
          {"test_rejects", t.test_rejects},
          {"infinity_checks", t.infinity_checks},
          {"infinity_batches", t.infinity_batches},
          {"restarts", t.restarts}};
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

nlohmann::ordered_json to_json(const TrialReport& report) {
  const ExperimentConfig& c = report.config;
  nlohmann::ordered_json j;
  j["schema"] = "debatelab.trial-report";
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = {
      {"machine", c.machine_path},
      {"machine_name", c.spec.name},
      {"mode", to_string(c.params.mode)},
      {"l", c.params.l},
      {"r", c.params.r},
      {"m", c.params.m},
      {"regime", to_string(c.params.regime)},
      {"max_steps", c.params.max_steps},
      {"trials", c.trials},
      {"seed", c.seed},
      {"interval", to_string(c.interval)},
  };
  j["cells"] = nlohmann::ordered_json::array();
  for (const CellReport& cell : report.cells) {
    nlohmann::ordered_json r;
    r["input"] = cell.scenario.input;
    r["p1"] = cell.scenario.p1;
    r["p0"] = cell.scenario.p0;
    r["cell_seed"] = cell.seed;
    r["trials"] = cell.trials;
    r["accept"] = cell.accepts;
    r["reject"] = cell.rejects;
    r["undecided"] = cell.undecided;
    r["a_w"] = estimate_json(estimate(cell.accepts, cell.trials, c.interval));
    r["r_w"] = estimate_json(estimate(cell.rejects, cell.trials, c.interval));
    r["undecided_rate"] =
        estimate_json(estimate(cell.undecided, cell.trials, c.interval));
    r["accept_among_decided"] =
        estimate_json(estimate(cell.accepts, cell.decided(), c.interval));
    r["reject_among_decided"] =
        estimate_json(estimate(cell.rejects, cell.decided(), c.interval));
    r["reasons"] = cell.reasons;
    nlohmann::ordered_json horizons = nlohmann::ordered_json::object();
    for (const auto& [h, u] : cell.undecided_at) horizons[std::to_string(h)] = u;
    horizons[std::to_string(c.params.max_steps)] = cell.undecided;
    r["undecided_at"] = std::move(horizons);
    r["steps"] = {{"mean", cell.mean_steps},
                  {"p50", cell.p50_steps},
                  {"p90", cell.p90_steps},
                  {"max", cell.max_steps}};
    r["tallies"] = tallies_json(cell.tallies);
    j["cells"].push_back(std::move(r));
  }
  return j;
}

std::string to_table(const TrialReport& report) {
  std::ostringstream os;
  const ExperimentConfig& c = report.config;
  os << "machine " << c.spec.name << "  mode " << to_string(c.params.mode)
     << "  l=" << c.params.l << " r=" << c.params.r << " m=" << c.params.m
     << "  max_steps " << c.params.max_steps << "  trials " << c.trials
     << "  seed " << c.seed << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-24s %-24s %8s %8s %8s %16s %16s %12s\n",
                "input", "p1", "p0", "accept", "reject", "undec", "acc|decided",
                "rej|decided", "mean steps");
  os << line;
  for (const CellReport& cell : report.cells) {
    const Estimate a = estimate(cell.accepts, cell.decided(), c.interval);
    const Estimate r = estimate(cell.rejects, cell.decided(), c.interval);
    const std::string input =
        cell.scenario.input.empty() ? "(empty)" : cell.scenario.input;
    std::snprintf(line, sizeof line,
                  "%-10s %-24s %-24s %8llu %8llu %8llu %16s %16s %12s\n",
                  input.c_str(), cell.scenario.p1.c_str(),
                  cell.scenario.p0.c_str(),
                  static_cast<unsigned long long>(cell.accepts),
                  static_cast<unsigned long long>(cell.rejects),
                  static_cast<unsigned long long>(cell.undecided),
                  (fmt("%.4f", a.value) + fmt("±%.4f", a.se)).c_str(),
                  (fmt("%.4f", r.value) + fmt("±%.4f", r.se)).c_str(),
                  fmt("%.1f", cell.mean_steps).c_str());
    os << line;
  }
  return os.str();
}

ClaimStatsReport claim_stats(unsigned l, unsigned j, unsigned k,
                             std::uint64_t trials, std::uint64_t seed,
                             IntervalMethod interval) {
  if (trials == 0) throw ContractViolation("trials must be at least 1");
  if (l == 0 || j == 0 || k == 0)
    throw ContractViolation("l, j and k must be positive");
  ClaimStatsReport rep;
  rep.l = l;
  rep.j = j;
  rep.k = k;
  rep.trials = trials;
  rep.seed = seed;
  rep.interval = interval;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RandomSource rng = RandomSource::for_trial(seed, t);
    LiveCoins coins(rng);
    ClaimFlags flags;
    for (unsigned i = 1; i <= j; ++i)
      claim_cell_coins(l, false, i == j, coins, flags);
    for (unsigned i = 1; i <= k; ++i)
      claim_cell_coins(l, true, i == k, coins, flags);
    switch (claim_result(flags)) {
      case ClaimResult::kAccept: ++rep.accepts; break;
      case ClaimResult::kTest: ++rep.tests; break;
      case ClaimResult::kContinue: ++rep.continues; break;
    }
  }
  rep.oracle = claim_distribution_exact(l, j, k);
  rep.closed_accept = pr_accept_closed(l, j, k);
  rep.closed_test = pr_test_closed(l, j, k);
  return rep;
}

nlohmann::ordered_json to_json(const ClaimStatsReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = "debatelab.claim-stats";
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = {{"l", r.l}, {"j", r.j}, {"k", r.k},
                 {"trials", r.trials}, {"seed", r.seed},
                 {"interval", to_string(r.interval)}};
  j["counts"] = {{"accept", r.accepts}, {"test", r.tests},
                 {"continue", r.continues}};
  j["accept"] = estimate_json(estimate(r.accepts, r.trials, r.interval));
  j["test"] = estimate_json(estimate(r.tests, r.trials, r.interval));
  j["continue"] = estimate_json(estimate(r.continues, r.trials, r.interval));
  j["oracle"] = {{"accept", to_string(r.oracle.pr_accept)},
                 {"test", to_string(r.oracle.pr_test)},
                 {"continue", to_string(r.oracle.pr_continue)}};
  j["closed_form"] = {{"accept", to_string(r.closed_accept)},
                      {"test", to_string(r.closed_test)}};
  if (r.tests > 0)
    j["accept_test_ratio"] =
        static_cast<double>(r.accepts) / static_cast<double>(r.tests);
  if (r.oracle.pr_test != 0)
    j["oracle_ratio"] = to_string(Rational(r.oracle.pr_accept / r.oracle.pr_test));
  return j;
}

std::string to_table(const ClaimStatsReport& r) {
  std::ostringstream os;
  os << "claim l=" << r.l << " j=" << r.j << " k=" << r.k << "  trials "
     << r.trials << "  seed " << r.seed << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-9s %10s %12s %10s %14s %14s\n", "event",
                "count", "frequency", "se", "oracle", "closed form");
  os << line;
  const auto row = [&](const char* name, std::uint64_t count,
                       const Rational& oracle, const std::string& closed) {
    const Estimate e = estimate(count, r.trials, r.interval);
    std::snprintf(line, sizeof line, "%-9s %10llu %12.6f %10.6f %14.6f %14s\n",
                  name, static_cast<unsigned long long>(count), e.value, e.se,
                  to_double(oracle), closed.c_str());
    os << line;
  };
  row("accept", r.accepts, r.oracle.pr_accept,
      fmt("%.6f", to_double(r.closed_accept)));
  row("test", r.tests, r.oracle.pr_test, fmt("%.6f", to_double(r.closed_test)));
  row("continue", r.continues, r.oracle.pr_continue, "-");
  return os.str();
}

InfinityEpisodeReport infinity_episode_stats(const MachineSpec& spec,
                                             std::uint64_t n, unsigned r,
                                             std::uint64_t cells,
                                             std::uint64_t trials,
                                             std::uint64_t seed) {
  if (n == 0 || trials == 0 || cells == 0)
    throw ContractViolation("n, cells and trials must be positive");
  InfinityEpisodeReport rep;
  rep.n = n;
  rep.r = r;
  rep.cells = cells;
  rep.trials = trials;
  rep.seed = seed;
  const std::string input(n, spec.input_alphabet.front());
  ProtocolParams params;
  params.r = r;
  params.regime = SpaceRegime::kSuperlinear;
  params = resolve_params(spec, params, n);
  const Symbol start = initial_configuration(spec).cells[0];
  const Symbol blank = Symbol::work(spec.blank);
  Symbol head = Symbol::state_dir(start.value, 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    RandomSource rng = RandomSource::for_trial(seed, t);
    LiveCoins coins(rng);
    Verifier v(spec, input, params);
    v.step(Symbol::delimiter(), Symbol::zero(), coins);
    v.step(start, Symbol::zero(), coins);
    v.step(Symbol::delimiter(), Symbol::infinity(), coins);
    std::optional<Decision> d;
    for (std::uint64_t c = 0; c < cells && !d; ++c)
      d = v.step(c == 0 ? head : blank, Symbol::zero(), coins);
    if (!d) d = v.step(Symbol::delimiter(), Symbol::zero(), coins);
    if (d && d->verdict == Verdict::kReject) ++rep.false_rejects;
  }
  const Rational p = pow2_neg(static_cast<unsigned>(r * n));
  Rational survive = 1;
  for (std::uint64_t i = 0; i < cells / n; ++i) survive *= (1 - p);
  rep.exact = 1 - survive;
  rep.bound = Rational(cells) * p;
  return rep;
}

nlohmann::ordered_json to_json(const InfinityEpisodeReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = "debatelab.infinity-episodes";
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = {{"n", r.n}, {"r", r.r}, {"cells", r.cells},
                 {"trials", r.trials}, {"seed", r.seed}};
  j["false_rejects"] = r.false_rejects;
  j["rate"] = estimate_json(estimate(r.false_rejects, r.trials,
                                     IntervalMethod::kNormal));
  j["exact"] = to_string(r.exact);
  j["bound"] = to_string(r.bound);
  return j;
}

std::vector<CorpusEntry> corpus(const std::string& dir) {
  const std::string path = dir + "/corpus.json";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const nlohmann::json j = nlohmann::json::parse(in);
  std::vector<CorpusEntry> out;
  for (const auto& m : j.at("machines")) {
    CorpusEntry e;
    e.file = m.at("file").get<std::string>();
    e.path = dir + "/" + e.file;
    e.members = m.at("members").get<std::vector<std::string>>();
    e.non_members = m.at("non_members").get<std::vector<std::string>>();
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace debatelab
