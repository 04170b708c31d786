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

#include "debatelab/search.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace debatelab {
namespace {

std::string node_key(const Configuration& c, std::size_t input_pos) {
  std::string key = configuration_key(c);
  key.append(reinterpret_cast<const char*>(&input_pos), sizeof(input_pos));
  return key;
}

}  // namespace

GameSolver::GameSolver(const MachineSpec& spec, std::string_view input)
    : spec_(spec), input_(input) {}

GameValue GameSolver::value(const Configuration& c, std::size_t pos,
                            std::size_t remaining) {
  const StateId q = state_of(c);
  if (q == spec_.accept) return GameValue::kWin;
  if (q == spec_.reject) return GameValue::kLose;
  const std::string key = node_key(c, pos);
  if (auto it = exact_.find(key); it != exact_.end()) return it->second;
  const auto next = choice_successors(spec_, c, input_symbol_at(input_, pos));
  if (next.empty()) return remember(key, GameValue::kLose);
  if (remaining == 0) return GameValue::kUnknown;

  const bool universal = spec_.is_universal(q);
  bool unknown = false;
  for (const Successor& s : next) {
    const GameValue v = value(s.config, pos + s.input_move, remaining - 1);
    if (v == GameValue::kUnknown) {
      unknown = true;
    } else if (universal && v == GameValue::kLose) {
      return remember(key, GameValue::kLose);
    } else if (!universal && v == GameValue::kWin) {
      return remember(key, GameValue::kWin);
    }
  }
  if (unknown) return GameValue::kUnknown;
  return remember(key, universal ? GameValue::kWin : GameValue::kLose);
}

std::unique_ptr<StrategyNode> GameSolver::build(const Configuration& c,
                                                std::size_t pos,
                                                std::size_t remaining) {
  auto node = std::make_unique<StrategyNode>();
  node->config = c;
  node->input_pos = pos;
  const StateId q = state_of(c);
  if (spec_.is_halting(q)) return node;
  node->universal = spec_.is_universal(q);
  const auto next = choice_successors(spec_, c, input_symbol_at(input_, pos));
  for (std::size_t i = 0; i < next.size(); ++i) {
    const Successor& s = next[i];
    const std::size_t child_pos = pos + s.input_move;
    if (node->universal) {
      node->children.push_back(build(s.config, child_pos, remaining - 1));
    } else if (value(s.config, child_pos, remaining - 1) == GameValue::kWin) {
      node->choice = static_cast<int>(i);
      node->children.push_back(build(s.config, child_pos, remaining - 1));
      break;
    }
  }
  return node;
}

GameValue GameSolver::remember(const std::string& key, GameValue v) {
  exact_.emplace(key, v);
  return v;
}

char input_symbol_at(std::string_view input, std::size_t pos) {
  if (pos == 0) return kLeftEndMarker;
  if (pos > input.size()) return kRightEndMarker;
  return input[pos - 1];
}

std::optional<std::vector<PathStep>> generate_acp_steps(
    const MachineSpec& spec, std::string_view input,
    const SearchLimits& limits) {
  struct Node {
    PathStep step;
    std::size_t parent;
    std::size_t depth;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> seen;
  std::deque<std::size_t> frontier;

  auto unwind = [&](std::size_t i) {
    std::vector<PathStep> path;
    for (;;) {
      path.push_back(nodes[i].step);
      if (nodes[i].parent == i) break;
      i = nodes[i].parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  const Configuration start = initial_configuration(spec);
  nodes.push_back({{start, 0, 0}, 0, 0});
  seen.emplace(node_key(start, 0), 0);
  if (state_of(start) == spec.accept) return unwind(0);
  frontier.push_back(0);

  while (!frontier.empty()) {
    const std::size_t cur = frontier.front();
    frontier.pop_front();
    if (nodes[cur].depth >= limits.max_steps) continue;
    const std::size_t pos = nodes[cur].step.input_pos;
    const Configuration config = nodes[cur].step.config;
    for (Successor& s :
         successors(spec, config, input_symbol_at(input, pos))) {
      const std::size_t next_pos = pos + s.input_move;
      std::string key = node_key(s.config, next_pos);
      if (seen.count(key)) continue;
      if (nodes.size() >= limits.node_budget)
        throw BudgetExhausted("ACP search exceeded " +
                              std::to_string(limits.node_budget) + " nodes");
      const std::size_t id = nodes.size();
      const bool accepting = state_of(s.config) == spec.accept;
      nodes.push_back(
          {{std::move(s.config), next_pos, s.entry}, cur, nodes[cur].depth + 1});
      seen.emplace(std::move(key), id);
      if (accepting) return unwind(id);
      frontier.push_back(id);
    }
  }
  return std::nullopt;
}

std::optional<std::vector<Configuration>> generate_acp(
    const MachineSpec& spec, std::string_view input,
    const SearchLimits& limits) {
  auto steps = generate_acp_steps(spec, input, limits);
  if (!steps) return std::nullopt;
  std::vector<Configuration> out;
  out.reserve(steps->size());
  for (auto& s : *steps) out.push_back(std::move(s.config));
  return out;
}

std::size_t StrategyNode::depth() const {
  std::size_t d = 0;
  for (const auto& c : children) d = std::max(d, 1 + c->depth());
  return d;
}

std::vector<Successor> choice_successors(const MachineSpec& spec,
                                         const Configuration& config,
                                         char scanned_input) {
  return successors(spec, config, scanned_input);
}

std::unique_ptr<StrategyNode> accepting_strategy_tree(const MachineSpec& spec,
                                                      std::string_view input,
                                                      std::size_t max_depth) {
  if (spec.kind != MachineKind::kAlternating)
    throw ContractViolation("strategy trees need an alternating machine");
  GameSolver solver(spec, input);
  const Configuration start = initial_configuration(spec);
  switch (solver.value(start, 0, max_depth)) {
    case GameValue::kLose:
      return nullptr;
    case GameValue::kUnknown:
      throw DepthExhausted("game value undetermined within depth " +
                           std::to_string(max_depth));
    case GameValue::kWin:
      break;
  }
  return solver.build(start, 0, max_depth);
}

}  // namespace debatelab
