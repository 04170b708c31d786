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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "debatelab/analysis.hpp"
#include "debatelab/machine.hpp"
#include "debatelab/verifier.hpp"

namespace debatelab {

inline constexpr int kReportSchemaVersion = 1;

enum class IntervalMethod { kNormal, kWilson };

struct Scenario {
  std::string input;
  std::string p1 = "honest";
  std::string p0 = "honest";
};

struct ExperimentConfig {
  std::string machine_path;
  MachineSpec spec;
  ProtocolParams params;
  std::vector<Scenario> scenarios;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  IntervalMethod interval = IntervalMethod::kNormal;
  bool live = false;  // step the verifier directly instead of replaying tapes
  // Lower step caps to report Undecided counts for. A trial that decides at
  // step s under max_steps decides identically under any cap >= s.
  std::vector<std::uint64_t> horizons;

  // Throws ContractViolation on trials == 0, no scenarios, jobs == 0 or a
  // horizon above max_steps.
  void validate() const;
};

struct Estimate {
  double value = 0;
  double se = 0;  // normal approximation
  double lo = 0;  // interval at 3 standard errors, or Wilson at z = 3
  double hi = 0;
};

// Rate estimate for `hits` out of `n`; n == 0 gives all zeros.
Estimate estimate(std::uint64_t hits, std::uint64_t n, IntervalMethod method);

struct CellReport {
  Scenario scenario;
  std::uint64_t seed = 0;  // cell seed; trial i uses RandomSource::for_trial(seed, i)
  std::uint64_t trials = 0;
  std::uint64_t accepts = 0;
  std::uint64_t rejects = 0;
  std::uint64_t undecided = 0;
  std::map<std::string, std::uint64_t> reasons;
  std::map<std::uint64_t, std::uint64_t> undecided_at;  // per horizon
  Tallies tallies;
  double mean_steps = 0;
  std::uint64_t p50_steps = 0;
  std::uint64_t p90_steps = 0;
  std::uint64_t max_steps = 0;

  std::uint64_t decided() const { return accepts + rejects; }
};

struct TrialReport {
  ExperimentConfig config;
  std::vector<CellReport> cells;
};

// Seed of scenario `index` under the master seed.
std::uint64_t cell_seed(std::uint64_t master, std::uint64_t index);

TrialReport run_experiment(const ExperimentConfig& config);

nlohmann::ordered_json to_json(const TrialReport& report);
std::string to_table(const TrialReport& report);

// The claim sub-protocol alone: α streams j cells ending at τ, β streams k
// cells ending at υ.
struct ClaimStatsReport {
  unsigned l = 0, j = 0, k = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t accepts = 0;
  std::uint64_t tests = 0;
  std::uint64_t continues = 0;
  ClaimDistribution oracle;
  Rational closed_accept;
  Rational closed_test;
  IntervalMethod interval = IntervalMethod::kNormal;
};

ClaimStatsReport claim_stats(unsigned l, unsigned j, unsigned k,
                             std::uint64_t trials, std::uint64_t seed,
                             IntervalMethod interval = IntervalMethod::kNormal);
nlohmann::ordered_json to_json(const ClaimStatsReport& report);
std::string to_table(const ClaimStatsReport& report);

// Superlinear infinity checks on a synthetic stream: ∞ at the opening $ of
// configuration 2, which then runs for `cells` cells before closing. Each
// trial is one episode on the real verifier.
struct InfinityEpisodeReport {
  std::uint64_t n = 0;
  unsigned r = 0;
  std::uint64_t cells = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t false_rejects = 0;
  Rational exact;  // 1 - (1 - 2^{-rn})^{floor(cells/n)}
  Rational bound;  // cells * 2^{-rn}
};

InfinityEpisodeReport infinity_episode_stats(const MachineSpec& spec,
                                             std::uint64_t n, unsigned r,
                                             std::uint64_t cells,
                                             std::uint64_t trials,
                                             std::uint64_t seed);
nlohmann::ordered_json to_json(const InfinityEpisodeReport& report);

struct CorpusEntry {
  std::string file;
  std::string path;
  std::vector<std::string> members;
  std::vector<std::string> non_members;
};

// Shipped machines with their listed inputs, from corpus.json in `dir`.
std::vector<CorpusEntry> corpus(const std::string& dir = DEBATELAB_MACHINES_DIR);

}  // namespace debatelab
