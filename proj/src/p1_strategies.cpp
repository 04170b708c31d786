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

#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "debatelab/debate.hpp"
#include "debatelab/search.hpp"
#include "rounds.hpp"

namespace debatelab {
namespace {

constexpr std::size_t kTreeDepth = 4096;
constexpr std::size_t kMaxRoundSymbols = 1'000'000;

std::string round_suffix(std::size_t round) {
  return ":round=" + std::to_string(round);
}

void require_linear_kind(const DebateSetup& setup) {
  if (setup.spec->kind == MachineKind::kAlternating)
    throw StrategyError(std::string(to_string(setup.mode)) +
                        " debates need a nondeterministic or deterministic "
                        "machine");
}

// Fixed stream: `prefix` once, then `period` forever.
class ScriptedP1 final : public ProverStrategy {
 public:
  ScriptedP1(std::string name, std::vector<Symbol> prefix,
             std::vector<Symbol> period)
      : name_(std::move(name)),
        prefix_(std::move(prefix)),
        period_(std::move(period)) {
    if (period_.empty()) throw StrategyError("empty P1 period");
  }

  Symbol next(const ProverContext& ctx) const override {
    const std::size_t i = ctx.own.size();
    if (i < prefix_.size()) return prefix_[i];
    return period_[(i - prefix_.size()) % period_.size()];
  }
  std::string name() const override { return name_; }
  std::unique_ptr<ProverStrategy> clone() const override {
    return std::make_unique<ScriptedP1>(*this);
  }

 private:
  std::string name_;
  std::vector<Symbol> prefix_;
  std::vector<Symbol> period_;
};

std::vector<Symbol> repeat_rounds(const std::vector<Symbol>& round,
                                  std::size_t count) {
  std::vector<Symbol> out;
  for (std::size_t r = 0; r < count; ++r)
    out.insert(out.end(), round.begin(), round.end());
  return out;
}

std::optional<std::vector<Configuration>> member_path(const DebateSetup& s) {
  return generate_acp(*s.spec, s.input);
}

// Shortest legal path to a halting configuration, preferring rejection.
std::vector<Configuration> halting_path(const DebateSetup& setup) {
  const MachineSpec& spec = *setup.spec;
  struct Node {
    Configuration config;
    std::size_t pos, parent;
  };
  std::vector<Node> nodes{{initial_configuration(spec), 0, 0}};
  std::unordered_set<std::string> seen{configuration_key(nodes[0].config) + '@'};
  std::optional<std::size_t> any_halt;
  auto unwind = [&](std::size_t i) {
    std::vector<Configuration> out;
    for (;;) {
      out.push_back(nodes[i].config);
      if (i == 0) break;
      i = nodes[i].parent;
    }
    return std::vector<Configuration>(out.rbegin(), out.rend());
  };
  for (std::size_t cur = 0; cur < nodes.size(); ++cur) {
    if (nodes.size() > 200'000) break;
    const StateId q = state_of(nodes[cur].config);
    if (q == spec.reject) return unwind(cur);
    if (spec.is_halting(q)) {
      if (!any_halt) any_halt = cur;
      continue;
    }
    const std::size_t pos = nodes[cur].pos;
    for (Successor& s : successors(spec, nodes[cur].config,
                                   input_symbol_at(setup.input, pos))) {
      const std::size_t np = pos + s.input_move;
      if (!seen.insert(configuration_key(s.config) + '@' + std::to_string(np))
               .second)
        continue;
      nodes.push_back({std::move(s.config), np, cur});
    }
  }
  if (any_halt) return unwind(*any_halt);
  throw StrategyError("no halting computation found for play-on");
}

// P1's base round: the ACP for members, a legal halting path otherwise.
std::vector<Configuration> base_path(const DebateSetup& setup) {
  if (auto acp = member_path(setup)) return *acp;
  return halting_path(setup);
}

bool far_from_heads(const Configuration& a, const Configuration& b,
                    std::size_t idx) {
  const auto i = static_cast<std::ptrdiff_t>(idx);
  const auto ha = static_cast<std::ptrdiff_t>(head_index(a));
  const auto hb = static_cast<std::ptrdiff_t>(head_index(b));
  return std::abs(i - ha) >= 2 && std::abs(i - hb) >= 2 && idx < b.size() &&
         b.cells[idx].is_work();
}

Configuration with_cell(const Configuration& c, std::size_t idx,
                        WorkSymbolId w) {
  Configuration out = c;
  out.cells[idx].value = w;
  return out;
}

WorkSymbolId other_symbol(const MachineSpec& spec, WorkSymbolId w) {
  for (std::size_t s = 0; s < spec.work_symbols.size(); ++s)
    if (static_cast<WorkSymbolId>(s) != w) return static_cast<WorkSymbolId>(s);
  throw StrategyError("work alphabet has a single symbol; no cell to corrupt");
}

// Member ACP with one corrupted cell at 0-based `idx`, far from both heads.
std::optional<std::vector<Configuration>> corrupt_acp(
    const MachineSpec& spec, std::vector<Configuration> acp, std::size_t idx) {
  for (std::size_t i = 0; i + 1 < acp.size(); ++i) {
    if (!far_from_heads(acp[i], acp[i + 1], idx)) continue;
    acp[i + 1] = with_cell(acp[i + 1], idx,
                           other_symbol(spec, acp[i + 1].cells[idx].value));
    return acp;
  }
  return std::nullopt;
}

// Accepting path for a non-member that is legal except for one cell changed
// at 0-based `idx` during one move, far from both heads.
std::optional<std::vector<Configuration>> fabricate_with_cheat(
    const DebateSetup& setup, std::size_t idx) {
  const MachineSpec& spec = *setup.spec;
  struct Node {
    Configuration config;
    std::size_t pos;
    bool cheated;
    std::size_t parent;
  };
  std::vector<Node> nodes{{initial_configuration(spec), 0, false, 0}};
  std::unordered_set<std::string> seen;
  auto key = [](const Configuration& c, std::size_t pos, bool cheated) {
    return configuration_key(c) + '@' + std::to_string(pos) + (cheated ? "!" : "");
  };
  seen.insert(key(nodes[0].config, 0, false));
  for (std::size_t cur = 0; cur < nodes.size(); ++cur) {
    if (nodes.size() > 400'000) break;
    if (state_of(nodes[cur].config) == spec.accept) {
      if (!nodes[cur].cheated) continue;
      std::vector<Configuration> out;
      for (std::size_t i = cur;; i = nodes[i].parent) {
        out.push_back(nodes[i].config);
        if (i == 0) break;
      }
      return std::vector<Configuration>(out.rbegin(), out.rend());
    }
    const Configuration from = nodes[cur].config;
    const std::size_t pos = nodes[cur].pos;
    const bool cheated = nodes[cur].cheated;
    for (Successor& s :
         successors(spec, from, input_symbol_at(setup.input, pos))) {
      const std::size_t np = pos + s.input_move;
      if (!cheated && far_from_heads(from, s.config, idx)) {
        for (std::size_t w = 0; w < spec.work_symbols.size(); ++w) {
          if (static_cast<WorkSymbolId>(w) == s.config.cells[idx].value)
            continue;
          Configuration bent =
              with_cell(s.config, idx, static_cast<WorkSymbolId>(w));
          if (seen.insert(key(bent, np, true)).second)
            nodes.push_back({std::move(bent), np, true, cur});
        }
      }
      if (seen.insert(key(s.config, np, cheated)).second)
        nodes.push_back({std::move(s.config), np, cheated, cur});
    }
  }
  return std::nullopt;
}

// Alternating-machine P1 for partial-information debates: reads P0's
// announced universal choices and answers with the next configurations.
class AtmP1 final : public ProverStrategy {
 public:
  enum class Cheat { kNone, kHeadError, kEndless, kWrongInitial, kEarlyAccept };

  AtmP1(const DebateSetup& setup, std::string name,
        std::shared_ptr<const StrategyNode> tree, Cheat cheat,
        std::size_t cheat_round)
      : setup_(setup),
        name_(std::move(name)),
        tree_(std::move(tree)),
        cheat_(cheat),
        cheat_round_(cheat_round) {}

  AtmP1(const AtmP1& o)
      : ProverStrategy(),
        setup_(o.setup_),
        name_(o.name_),
        tree_(o.tree_),
        cheat_(o.cheat_),
        cheat_round_(o.cheat_round_) {}

  Symbol next(const ProverContext& ctx) const override {
    track(ctx.seen);
    const std::size_t offset = ctx.own.size() - round_start_;
    std::vector<int> choices;
    const Plan* plan = &plan_for(choices);
    while (plan->awaiting && plan->symbols.size() <= offset) {
      const std::size_t slot = round_start_ + plan->symbols.size();  // 1-based
      auto it = announced_.find(slot);
      choices.push_back(it == announced_.end() ? 0 : it->second);
      plan = &plan_for(choices);
    }
    if (offset < plan->symbols.size()) return plan->symbols[offset];
    if (plan->endless) return Symbol::work(setup_.spec->blank);
    throw ContractViolation("P1 asked to speak past the end of its round");
  }
  std::string name() const override { return name_; }
  std::unique_ptr<ProverStrategy> clone() const override {
    return std::make_unique<AtmP1>(*this);
  }

 private:
  struct Plan {
    std::vector<Symbol> symbols;
    bool awaiting = false;
    bool endless = false;
  };

  void track(const VisibleHistory& seen) const {
    if (seen.size() < processed_ ||
        (processed_ > 0 && !(seen[processed_ - 1] == last_seen_))) {
      processed_ = 0;
      round_ = 1;
      round_start_ = 0;
      announced_.clear();
    }
    for (; processed_ < seen.size(); ++processed_) {
      const Seen& e = seen[processed_];
      if (e.origin == Origin::kP1 && e.symbol.is_separator()) {
        ++round_;
        round_start_ = e.index;
        announced_.clear();
      } else if (e.origin == Origin::kP0 &&
                 e.symbol.kind == SymbolKind::kChoice &&
                 e.index > round_start_) {
        announced_[e.index] = e.symbol.value;
      }
      last_seen_ = e;
    }
  }

  bool cheating_now() const {
    return cheat_ == Cheat::kWrongInitial || round_ == cheat_round_;
  }

  const Plan& plan_for(const std::vector<int>& choices) const {
    const auto key = std::make_pair(cheating_now(), choices);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    return plans_.emplace(key, build_plan(choices, key.first)).first->second;
  }

  Plan build_plan(const std::vector<int>& choices, bool cheating) const {
    const MachineSpec& spec = *setup_.spec;
    Plan plan;
    auto emit = [&](const Configuration& c) {
      plan.symbols.push_back(Symbol::delimiter());
      plan.symbols.insert(plan.symbols.end(), c.cells.begin(), c.cells.end());
    };
    Configuration cur = initial_configuration(spec);
    if (cheating && cheat_ == Cheat::kWrongInitial) {
      Configuration wrong = cur;
      wrong.cells.push_back(Symbol::work(spec.blank));
      emit(wrong);
    } else {
      emit(cur);
    }
    if (cheating && cheat_ == Cheat::kEarlyAccept) {
      emit(Configuration{{Symbol::state_dir(spec.accept, 0)}});
      plan.symbols.push_back(Symbol::separator());
      return plan;
    }
    if (cheating && cheat_ == Cheat::kEndless) {
      plan.symbols.push_back(Symbol::delimiter());
      plan.endless = true;
      return plan;
    }
    const StrategyNode* node = tree_.get();
    std::size_t pos = 0, used = 0;
    GameSolver& solver = this->solver();
    for (;;) {
      if (plan.symbols.size() > kMaxRoundSymbols)
        throw StrategyError("alternating round does not terminate");
      const StateId q = state_of(cur);
      auto next = choice_successors(spec, cur, input_symbol_at(setup_.input, pos));
      if (spec.is_halting(q) || next.empty()) break;
      std::size_t pick = 0;
      if (!spec.is_universal(q)) {
        if (node) {
          pick = static_cast<std::size_t>(node->choice);
          node = node->children.front().get();
        } else {
          for (std::size_t c = 0; c < next.size(); ++c)
            if (solver.value(next[c].config, pos + next[c].input_move,
                             kTreeDepth) == GameValue::kWin) {
              pick = c;
              break;
            }
        }
        emit(next[pick].config);
      } else {
        plan.symbols.push_back(Symbol::delimiter());
        if (used == choices.size()) {
          plan.awaiting = true;
          return plan;
        }
        const int announced = choices[used++];
        pick = announced == 1 && next.size() > 1 ? 1 : 0;
        if (node) node = node->children[pick].get();
        if (cheating && cheat_ == Cheat::kHeadError && next.size() > 1 &&
            !(next[0].config == next[1].config)) {
          pick = 1 - pick;
          node = nullptr;
        }
        plan.symbols.insert(plan.symbols.end(), next[pick].config.cells.begin(),
                            next[pick].config.cells.end());
      }
      pos += next[pick].input_move;
      cur = next[pick].config;
    }
    plan.symbols.push_back(Symbol::separator());
    return plan;
  }

  GameSolver& solver() const {
    if (!solver_) solver_ = std::make_unique<GameSolver>(*setup_.spec, setup_.input);
    return *solver_;
  }

  DebateSetup setup_;
  std::string name_;
  std::shared_ptr<const StrategyNode> tree_;
  Cheat cheat_;
  std::size_t cheat_round_;

  mutable std::size_t processed_ = 0;
  mutable Seen last_seen_;
  mutable std::size_t round_ = 1;
  mutable std::size_t round_start_ = 0;  // P1 symbols before this round
  mutable std::map<std::size_t, int> announced_;
  mutable std::map<std::pair<bool, std::vector<int>>, Plan> plans_;
  mutable std::unique_ptr<GameSolver> solver_;
};

std::shared_ptr<const StrategyNode> winning_tree(const DebateSetup& setup) {
  try {
    return accepting_strategy_tree(*setup.spec, setup.input, kTreeDepth);
  } catch (const DepthExhausted&) {
    return nullptr;
  }
}

std::unique_ptr<ProverStrategy> atm_p1(const DebateSetup& setup,
                                       std::string name, AtmP1::Cheat cheat,
                                       std::size_t round, bool need_tree) {
  if (setup.spec->kind != MachineKind::kAlternating)
    throw StrategyError("partial-info debates need an alternating machine");
  auto tree = winning_tree(setup);
  if (need_tree && !tree)
    throw StrategyError("honest P1 is undefined: input is not accepted");
  return std::make_unique<AtmP1>(setup, std::move(name), std::move(tree), cheat,
                                 round);
}

void require_round(std::size_t round) {
  if (round < 1) throw StrategyError("rounds are numbered from 1");
}

}  // namespace

std::unique_ptr<ProverStrategy> honest_p1(const DebateSetup& setup) {
  if (setup.mode == Mode::kPartialInfo)
    return atm_p1(setup, "honest", AtmP1::Cheat::kNone, 0, true);
  require_linear_kind(setup);
  auto acp = member_path(setup);
  if (!acp) throw StrategyError("honest P1 is undefined: input is not accepted");
  return std::make_unique<ScriptedP1>("honest", std::vector<Symbol>{},
                                      encode_round(*acp));
}

std::unique_ptr<ProverStrategy> p1_far_cell_error(
    const DebateSetup& setup, std::size_t round,
    std::optional<std::size_t> index) {
  require_round(round);
  if (setup.mode == Mode::kPartialInfo)
    throw StrategyError(
        "far-cell-error is not offered for alternating machines");
  require_linear_kind(setup);
  const MachineSpec& spec = *setup.spec;
  const std::size_t limit = spec.space(setup.input.size());
  std::vector<std::size_t> candidates;
  if (index) {
    if (*index < 1) throw StrategyError("cell indices start at 1");
    candidates.push_back(*index);
  } else {
    for (std::size_t i = 1; i <= limit; ++i) candidates.push_back(i);
  }
  const auto acp = member_path(setup);
  for (std::size_t cell : candidates) {
    std::string name = "far-cell-error" + round_suffix(round) +
                       ",index=" + std::to_string(cell);
    if (acp) {
      auto bent = corrupt_acp(spec, *acp, cell - 1);
      if (!bent) continue;
      const auto honest = encode_round(*acp);
      auto prefix = repeat_rounds(honest, round - 1);
      const auto cheat = encode_round(*bent);
      prefix.insert(prefix.end(), cheat.begin(), cheat.end());
      return std::make_unique<ScriptedP1>(std::move(name), std::move(prefix),
                                          honest);
    }
    if (auto path = fabricate_with_cheat(setup, cell - 1))
      return std::make_unique<ScriptedP1>(std::move(name), std::vector<Symbol>{},
                                          encode_round(*path));
  }
  throw StrategyError("no cell far enough from the heads to corrupt");
}

std::unique_ptr<ProverStrategy> p1_head_error(const DebateSetup& setup,
                                              std::size_t round) {
  require_round(round);
  const std::string name = "head-error" + round_suffix(round);
  if (setup.mode == Mode::kPartialInfo)
    return atm_p1(setup, name, AtmP1::Cheat::kHeadError, round, false);
  require_linear_kind(setup);
  const MachineSpec& spec = *setup.spec;
  const auto acp = member_path(setup);
  std::vector<Configuration> path = acp ? *acp : halting_path(setup);
  if (path.size() < 2) throw StrategyError("path too short for a head error");
  // Members: corrupt the second configuration. Others: claim acceptance at
  // the last one.
  const std::size_t at = acp ? 1 : path.size() - 1;
  const Triple prev = window_at_head(path[at - 1]);
  std::vector<StateId> order;
  if (!acp) order.push_back(spec.accept);
  for (std::size_t q = 0; q < spec.states.size(); ++q)
    order.push_back(static_cast<StateId>(q));
  // Input head position before the corrupted move.
  std::size_t pos = 0;
  for (std::size_t i = 1; i < at; ++i)
    pos = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(pos) +
                                   path[i].cells[head_index(path[i])].dir);
  const char scanned = input_symbol_at(setup.input, pos);
  for (StateId q : order) {
    Configuration bent = path[at];
    Symbol& head = bent.cells[head_index(bent)];
    if (head.value == q) continue;
    head.value = q;
    if (head_windows_consistent(spec, prev, window_at_head(bent), scanned))
      continue;
    auto cheat_path = path;
    cheat_path[at] = bent;
    if (!acp) cheat_path.resize(at + 1);
    const auto base = encode_round(path);
    const auto cheat = encode_round(cheat_path);
    if (!acp)
      return std::make_unique<ScriptedP1>(name, std::vector<Symbol>{}, cheat);
    auto prefix = repeat_rounds(base, round - 1);
    prefix.insert(prefix.end(), cheat.begin(), cheat.end());
    return std::make_unique<ScriptedP1>(name, std::move(prefix), base);
  }
  throw StrategyError("every state fits the head window; no head error exists");
}

std::unique_ptr<ProverStrategy> p1_endless_config(const DebateSetup& setup,
                                                  std::size_t round) {
  require_round(round);
  const std::string name = "endless-config" + round_suffix(round);
  if (setup.mode == Mode::kPartialInfo)
    return atm_p1(setup, name, AtmP1::Cheat::kEndless, round, false);
  require_linear_kind(setup);
  const auto base = encode_round(base_path(setup));
  auto prefix = repeat_rounds(base, round - 1);
  const auto start = encode_round({initial_configuration(*setup.spec)});
  prefix.insert(prefix.end(), start.begin(), start.end() - 1);
  prefix.push_back(Symbol::delimiter());
  return std::make_unique<ScriptedP1>(
      name, std::move(prefix),
      std::vector<Symbol>{Symbol::work(setup.spec->blank)});
}

std::unique_ptr<ProverStrategy> p1_wrong_initial(const DebateSetup& setup) {
  if (setup.mode == Mode::kPartialInfo)
    return atm_p1(setup, "wrong-initial", AtmP1::Cheat::kWrongInitial, 0, false);
  require_linear_kind(setup);
  auto path = base_path(setup);
  path.front().cells.push_back(Symbol::work(setup.spec->blank));
  return std::make_unique<ScriptedP1>("wrong-initial", std::vector<Symbol>{},
                                      encode_round(path));
}

std::unique_ptr<ProverStrategy> p1_early_accept(const DebateSetup& setup,
                                                std::size_t round) {
  require_round(round);
  const std::string name = "early-accept" + round_suffix(round);
  if (setup.mode == Mode::kPartialInfo)
    return atm_p1(setup, name, AtmP1::Cheat::kEarlyAccept, round, false);
  require_linear_kind(setup);
  const MachineSpec& spec = *setup.spec;
  const auto base = encode_round(base_path(setup));
  auto prefix = repeat_rounds(base, round - 1);
  const auto cheat = encode_round({initial_configuration(spec),
                                   Configuration{{Symbol::state_dir(spec.accept, 0)}}});
  prefix.insert(prefix.end(), cheat.begin(), cheat.end());
  return std::make_unique<ScriptedP1>(name, std::move(prefix), base);
}

std::unique_ptr<ProverStrategy> p1_play_on(const DebateSetup& setup) {
  if (setup.mode == Mode::kPartialInfo)
    return atm_p1(setup, "play-on", AtmP1::Cheat::kNone, 0, false);
  require_linear_kind(setup);
  return std::make_unique<ScriptedP1>("play-on", std::vector<Symbol>{},
                                      encode_round(halting_path(setup)));
}

}  // namespace debatelab
