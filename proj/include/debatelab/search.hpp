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

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "debatelab/configuration.hpp"
#include "debatelab/machine.hpp"

namespace debatelab {

// Symbol under the input head; position 0 and n+1 hold the end-markers.
char input_symbol_at(std::string_view input, std::size_t pos);

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchLimits {
  std::size_t max_steps = 4096;
  std::size_t node_budget = 1'000'000;
};

// A configuration together with the (untracked by the configuration) input
// head position.
struct PathStep {
  Configuration config;
  std::size_t input_pos = 0;
  std::size_t entry = 0;  // transition used to reach this step (unused at 0)
};

// Shortest accepting computation path; ties go to the lexicographically
// smallest sequence of transition-entry indices. Throws BudgetExhausted when
// the node budget runs out before the search space is exhausted.
std::optional<std::vector<Configuration>> generate_acp(
    const MachineSpec& spec, std::string_view input,
    const SearchLimits& limits = {});

// Same search, keeping input positions and entries.
std::optional<std::vector<PathStep>> generate_acp_steps(
    const MachineSpec& spec, std::string_view input,
    const SearchLimits& limits = {});

// Winning strategy for the existential player of an alternating machine.
struct StrategyNode {
  Configuration config;
  std::size_t input_pos = 0;
  bool universal = false;
  // Existential nodes: the chosen choice index and one child.
  // Universal nodes: one child per choice, indexed by choice.
  int choice = -1;
  std::vector<std::unique_ptr<StrategyNode>> children;

  std::size_t depth() const;
};

class DepthExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Absent when the game is lost within `max_depth`; throws DepthExhausted
// when the value depends on branches deeper than `max_depth`.
std::unique_ptr<StrategyNode> accepting_strategy_tree(const MachineSpec& spec,
                                                      std::string_view input,
                                                      std::size_t max_depth);

enum class GameValue { kWin, kLose, kUnknown };

// Minimax over the configuration game of an alternating machine, memoizing
// every position whose value is settled.
class GameSolver {
 public:
  GameSolver(const MachineSpec& spec, std::string_view input);

  // Value for the existential player with at most `remaining` moves to go;
  // a stuck non-halting configuration loses.
  GameValue value(const Configuration& c, std::size_t pos,
                  std::size_t remaining);
  std::unique_ptr<StrategyNode> build(const Configuration& c, std::size_t pos,
                                      std::size_t remaining);

 private:
  GameValue remember(const std::string& key, GameValue v);

  const MachineSpec& spec_;
  std::string input_;
  std::unordered_map<std::string, GameValue> exact_;
};

// Successors of an alternating configuration indexed by choice (0 or 1).
std::vector<Successor> choice_successors(const MachineSpec& spec,
                                         const Configuration& config,
                                         char scanned_input);

}  // namespace debatelab
