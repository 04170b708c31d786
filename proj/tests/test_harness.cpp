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

#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "debatelab/harness.hpp"

using namespace debatelab;

namespace {

ExperimentConfig config_for(const std::string& file, std::vector<Scenario> s,
                            std::uint64_t trials, std::uint64_t seed) {
  ExperimentConfig c;
  c.machine_path = file;
  c.spec = testing::machine(file);
  c.scenarios = std::move(s);
  c.trials = trials;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("honest against silent accepts every trial") {
  const auto c = config_for("subset_sum.tm", {{"aabaa", "honest", "silent"}}, 50, 3);
  const TrialReport r = run_experiment(c);
  REQUIRE(r.cells.size() == 1);
  CHECK(r.cells[0].accepts == 50);
  CHECK(r.cells[0].accepts + r.cells[0].rejects + r.cells[0].undecided == 50);
}

TEST_CASE("reports are byte-identical for a repeated seed and any job count") {
  auto c = config_for("subset_sum.tm",
                      {{"aabaa", "honest", "misaligned:j=1,k=2"},
                       {"aaaba", "head-error", "honest"},
                       {"aabaa", "honest", "false-infinity"}},
                      300, 11);
  c.params.l = 1;
  c.params.max_steps = 20000;
  const std::string a = to_json(run_experiment(c)).dump();
  const std::string b = to_json(run_experiment(c)).dump();
  CHECK(a == b);
  c.jobs = 4;
  CHECK(to_json(run_experiment(c)).dump() == a);
  c.jobs = 1;
  c.live = true;
  CHECK(to_json(run_experiment(c)).dump() == a);
  c.live = false;
  c.seed = 12;
  CHECK(to_json(run_experiment(c)).dump() != a);
}

TEST_CASE("estimates are consistent per cell") {
  auto c = config_for("subset_sum.tm", {{"aabaa", "honest", "misaligned:j=1,k=2"}},
                      400, 5);
  c.params.l = 1;
  c.params.max_steps = 2000;
  const TrialReport r = run_experiment(c);
  const auto j = to_json(r);
  const auto& cell = j["cells"][0];
  const double sum = cell["a_w"]["value"].get<double>() +
                     cell["r_w"]["value"].get<double>() +
                     cell["undecided_rate"]["value"].get<double>();
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["schema_version"] == kReportSchemaVersion);
  for (const char* k : {"a_w", "r_w", "accept_among_decided"}) {
    CHECK(cell[k]["value"].get<double>() >= 0);
    CHECK(cell[k]["value"].get<double>() <= 1);
  }
}

TEST_CASE("configuration invariants") {
  auto c = config_for("subset_sum.tm", {{"aabaa", "honest", "silent"}}, 0, 1);
  CHECK_THROWS_AS(run_experiment(c), ContractViolation);
  c.trials = 1;
  c.scenarios.clear();
  CHECK_THROWS_AS(run_experiment(c), ContractViolation);
  CHECK_THROWS_AS(claim_stats(1, 1, 1, 0, 1), ContractViolation);
}

TEST_CASE("estimate intervals") {
  const Estimate e = estimate(50, 100, IntervalMethod::kNormal);
  CHECK(e.value == doctest::Approx(0.5));
  CHECK(e.se == doctest::Approx(0.05));
  CHECK(e.lo == doctest::Approx(0.35));
  const Estimate w = estimate(0, 100, IntervalMethod::kWilson);
  CHECK(w.lo == 0);
  CHECK(w.hi > 0);  // Wilson stays informative at the boundary
  CHECK(w.hi == doctest::Approx(9.0 / 109.0));
  const Estimate z = estimate(0, 0, IntervalMethod::kNormal);
  CHECK(z.value == 0);
}

TEST_CASE("claim statistics match the oracle within three standard errors") {
  const ClaimStatsReport r = claim_stats(1, 1, 1, 100000, 2024);
  const double pa = 63.0 / 1024, pt = 961.0 / 16384;
  const double n = 100000;
  CHECK(std::abs(r.accepts / n - pa) <= 3 * std::sqrt(pa * (1 - pa) / n));
  CHECK(std::abs(r.tests / n - pt) <= 3 * std::sqrt(pt * (1 - pt) / n));
  CHECK(r.accepts + r.tests + r.continues == r.trials);
  CHECK(r.oracle.pr_accept == r.closed_accept);

  const ClaimStatsReport m = claim_stats(1, 1, 2, 100000, 77);
  const double ratio = double(m.accepts) / double(m.tests);
  // Ratio of two counts near 3300 and 1500: relative sd about 3%.
  CHECK(ratio == doctest::Approx(34752.0 / 15841.0).epsilon(0.1));
}

TEST_CASE("infinity episodes follow the exact false-reject probability") {
  const MachineSpec spec = testing::machine("micro_square.tm");
  // r*n = 2: false rejects are common enough to count.
  const InfinityEpisodeReport r = infinity_episode_stats(spec, 2, 1, 4, 20000, 9);
  CHECK(r.exact == Rational(7, 16));
  const double p = 7.0 / 16;
  CHECK(std::abs(r.false_rejects / 20000.0 - p) <=
        3 * std::sqrt(p * (1 - p) / 20000));
  const InfinityEpisodeReport big = infinity_episode_stats(spec, 8, 2, 64, 1000, 9);
  CHECK(big.bound == pow2_neg(10));
  CHECK(big.exact < big.bound);
}

TEST_CASE("corpus listing") {
  const auto entries = corpus();
  CHECK(entries.size() >= 4);
  for (const auto& e : entries) CHECK(e.members.size() + e.non_members.size() > 0);
}

TEST_CASE("undecided counts at lower horizons equal reruns with that cap") {
  auto c = config_for("subset_sum.tm",
                      {{"aabaa", "honest", "misaligned:j=1,k=2"},
                       {"aaabaa", "far-cell-error", "honest"}},
                      200, 31);
  c.params.l = 1;
  c.params.max_steps = 30000;
  c.horizons = {3000, 10000};
  const TrialReport full = run_experiment(c);
  for (std::uint64_t h : c.horizons) {
    auto lower = c;
    lower.params.max_steps = h;
    lower.horizons.clear();
    const TrialReport r = run_experiment(lower);
    for (std::size_t i = 0; i < r.cells.size(); ++i)
      CHECK(r.cells[i].undecided == full.cells[i].undecided_at.at(h));
  }
  c.horizons = {40000};
  CHECK_THROWS_AS(run_experiment(c), ContractViolation);
}
