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

#include <limits>
#include <map>

#include "debatelab/debate.hpp"
#include "debatelab/search.hpp"
#include "rounds.hpp"

namespace debatelab {
namespace {

using detail::ParsedConfig;
using detail::is_announcement;

constexpr std::size_t kGameDepth = 4096;

// Cells after which an unterminated configuration counts as endless.
std::size_t endless_horizon(const DebateSetup& setup) {
  return 8 * (setup.spec->space(setup.input.size()) + 1) + 64;
}

enum class ClaimPolicy { kHonest, kMisaligned };

// P0's private replay of the P1 it was built against. Because P1 sees at most
// P0's public choices, P0 can run P1 forward to the end of each round and
// place markers before P1 reaches them.
class Shadow {
 public:
  Shadow(const DebateSetup& setup, std::unique_ptr<ProverStrategy> p1,
         ClaimPolicy policy, std::size_t j, std::size_t k)
      : setup_(setup),
        p1_(std::move(p1)),
        policy_(policy),
        j_(j),
        k_(k),
        horizon_(endless_horizon(setup)) {}

  Symbol planned(std::size_t i, const Symbol& p1_symbol) {
    while (settled_ < i) extend();
    if (!(p1s_[i - 1] == p1_symbol))
      throw ContractViolation(
          "P0 was built against a different P1 than the one it faces");
    return plan_[i - 1];
  }

 private:
  void extend() {
    const std::size_t i = p1s_.size() + 1;
    const Symbol s = p1_->next({setup_.input, Role::kP1, view_, std::span(p1s_)});
    p1s_.push_back(s);
    view_.push_back({Origin::kP1, i, s});
    plan_.push_back(Symbol::zero());

    if (s.is_separator()) {
      close_config();
      if (!round_settled_) analyze(true);
      configs_.clear();
      choices_.clear();
      pos_ = 0;
      pos_valid_ = true;
      round_settled_ = false;
      settled_ = i;
      return;
    }
    if (s.is_delimiter()) {
      close_config();
      ParsedConfig c;
      c.number = configs_.size() + 1;
      c.open = i;
      configs_.push_back(c);
      if (is_announcement(setup_.mode, c.number)) {
        const int choice = choose();
        choices_[c.number] = choice;
        plan_[i - 1] = Symbol::choice(choice);
        view_.push_back({Origin::kP0, i, plan_[i - 1]});
      }
    } else if (configs_.empty()) {
      // Symbols before the first $ of a round: P1 syntax error.
      ParsedConfig c;
      c.number = 1;
      c.open = i;
      c.malformed = true;
      configs_.push_back(c);
    } else {
      ParsedConfig& c = configs_.back();
      if (s.is_cell()) {
        c.config.cells.push_back(s);
      } else {
        c.malformed = true;
      }
      if (!round_settled_ && c.config.size() > horizon_) analyze(false);
    }
    if (round_settled_) settled_ = i;
  }

  void close_config() {
    if (configs_.empty()) return;
    ParsedConfig& c = configs_.back();
    if (c.closed) return;
    c.closed = true;
    if (!is_well_formed(c.config)) c.malformed = true;
    if (c.malformed) {
      pos_valid_ = false;
      return;
    }
    const auto next = static_cast<std::ptrdiff_t>(pos_) +
                      c.config.cells[head_index(c.config)].dir;
    if (next < 0 || next > static_cast<std::ptrdiff_t>(setup_.input.size()) + 1)
      pos_valid_ = false;
    else
      pos_ = static_cast<std::size_t>(next);
  }

  // Universal choice announced at the $ opening the current configuration.
  int choose() {
    if (policy_ != ClaimPolicy::kHonest || configs_.size() < 2 || !pos_valid_)
      return 0;
    const ParsedConfig& u = configs_[configs_.size() - 2];
    if (u.malformed || !setup_.spec->is_universal(state_of(u.config))) return 0;
    if (!solver_) solver_ = std::make_unique<GameSolver>(*setup_.spec, setup_.input);
    const auto next = choice_successors(*setup_.spec, u.config,
                                        input_symbol_at(setup_.input, pos_));
    for (std::size_t c = 0; c < next.size(); ++c)
      if (solver_->value(next[c].config, pos_ + next[c].input_move,
                         kGameDepth) == GameValue::kLose)
        return static_cast<int>(c);
    return 0;
  }

  void claim(const ParsedConfig& alpha, const ParsedConfig& beta,
             std::size_t j, std::size_t k) {
    plan_[alpha.open - 1] = Symbol::sigma();
    plan_[alpha.open + j - 1] = Symbol::tau();
    plan_[beta.open + k - 1] = Symbol::upsilon();
  }

  // Decides the round's private markers once it is closed or found endless.
  void analyze(bool closed) {
    round_settled_ = true;
    if (policy_ == ClaimPolicy::kMisaligned) {
      analyze_misaligned();
      return;
    }
    std::vector<ParsedConfig> finished = configs_;
    std::optional<ParsedConfig> endless;
    if (!closed) {
      endless = finished.back();
      finished.pop_back();
    }
    if (detail::first_deterministic_failure(setup_, finished, choices_, closed))
      return;
    if (endless && setup_.mode != Mode::kCips &&
        !is_announcement(setup_.mode, endless->number)) {
      plan_[endless->open - 1] = Symbol::infinity();
      return;
    }
    std::vector<ParsedConfig> all = finished;
    if (endless) {
      endless->config = detail::truncated(
          endless->config, (finished.empty() ? 0 : finished.back().config.size()) + 3);
      all.push_back(*endless);
    }
    for (std::size_t b = 1; b < all.size(); ++b) {
      std::size_t a = b - 1;
      int moves = 1;
      if (is_announcement(setup_.mode, all[a].number)) {
        if (a == 0) continue;
        --a;
        moves = 2;
      }
      const auto idx = first_illegitimate_index(*setup_.spec, all[a].config,
                                                all[b].config, moves);
      if (!idx || *idx >= all[a].config.size() || *idx >= all[b].config.size())
        continue;
      claim(all[a], all[b], *idx + 1, *idx + 1);
      return;
    }
  }

  void analyze_misaligned() {
    for (std::size_t a = 0; a + 1 < configs_.size(); ++a) {
      const ParsedConfig& alpha = configs_[a];
      const ParsedConfig& beta = configs_[a + 1];
      if (is_announcement(setup_.mode, alpha.number)) continue;
      if (alpha.config.size() < j_ || beta.config.size() < k_) continue;
      claim(alpha, beta, j_, k_);
      return;
    }
  }

  const DebateSetup& setup_;
  std::unique_ptr<ProverStrategy> p1_;
  ClaimPolicy policy_;
  std::size_t j_, k_;
  std::size_t horizon_;

  std::vector<Symbol> p1s_;
  VisibleHistory view_;
  std::vector<Symbol> plan_;
  std::size_t settled_ = 0;

  std::vector<ParsedConfig> configs_;
  std::map<std::size_t, int> choices_;
  std::size_t pos_ = 0;
  bool pos_valid_ = true;
  bool round_settled_ = false;
  std::unique_ptr<GameSolver> solver_;
};

class PlanningP0 final : public ProverStrategy {
 public:
  PlanningP0(const DebateSetup& setup, const ProverStrategy& p1,
             ClaimPolicy policy, std::size_t j, std::size_t k, std::string name)
      : setup_(setup), p1_(p1.clone()), policy_(policy), j_(j), k_(k),
        name_(std::move(name)) {}

  Symbol next(const ProverContext& ctx) const override {
    if (ctx.seen.empty() || ctx.seen.back().origin != Origin::kP1)
      throw ContractViolation("P0 speaks only after P1");
    if (!shadow_)
      shadow_ = std::make_unique<Shadow>(setup_, p1_->clone(), policy_, j_, k_);
    return shadow_->planned(ctx.own.size() + 1, ctx.seen.back().symbol);
  }
  std::string name() const override { return name_; }
  std::unique_ptr<ProverStrategy> clone() const override {
    return std::make_unique<PlanningP0>(setup_, *p1_, policy_, j_, k_, name_);
  }

 private:
  DebateSetup setup_;
  std::unique_ptr<ProverStrategy> p1_;
  ClaimPolicy policy_;
  std::size_t j_, k_;
  std::string name_;
  mutable std::unique_ptr<Shadow> shadow_;
};

// P0 strategies that react only to what they have seen of P1.
class ReactiveP0 final : public ProverStrategy {
 public:
  enum class Kind { kSilent, kFalseInfinity, kTauFirst, kDoubleSigma,
                    kInfinityOffSlot };

  ReactiveP0(const DebateSetup& setup, Kind kind, std::size_t round,
             std::string name)
      : mode_(setup.mode), kind_(kind), round_(round), name_(std::move(name)) {}

  Symbol next(const ProverContext& ctx) const override {
    cursor_.update(ctx.seen);
    const std::size_t cfg = cursor_.config_number();
    if (cursor_.last_is_delimiter() && is_announcement(mode_, cfg))
      return Symbol::choice(0);
    const bool first_round = cursor_.round() == 1;
    switch (kind_) {
      case Kind::kSilent:
        break;
      case Kind::kFalseInfinity:
        if (cursor_.round() == round_ && cfg == 1 && cursor_.last_is_delimiter())
          return Symbol::infinity();
        break;
      case Kind::kTauFirst:
        if (first_round && cfg == 1 && cursor_.cells() == 1) return Symbol::tau();
        break;
      case Kind::kDoubleSigma:
        if (first_round && cursor_.last_is_delimiter() && (cfg == 1 || cfg == 2))
          return Symbol::sigma();
        if (first_round && cfg == 1 && cursor_.cells() == 1) return Symbol::tau();
        break;
      case Kind::kInfinityOffSlot:
        if (first_round && cfg == 1 && cursor_.cells() == 1)
          return Symbol::infinity();
        break;
    }
    return Symbol::zero();
  }
  std::string name() const override { return name_; }
  std::unique_ptr<ProverStrategy> clone() const override {
    return std::make_unique<ReactiveP0>(*this);
  }

 private:
  Mode mode_;
  Kind kind_;
  std::size_t round_;
  std::string name_;
  mutable detail::P1Cursor cursor_;
};

class RestartAware final : public ProverStrategy {
 public:
  explicit RestartAware(std::unique_ptr<ProverStrategy> inner)
      : inner_(std::move(inner)) {}

  Symbol next(const ProverContext& ctx) const override {
    std::size_t from = 0;  // history entries before the last restart
    std::size_t step = 0;  // steps before the last restart
    for (std::size_t e = ctx.seen.size(); e-- > 0;) {
      const Seen& s = ctx.seen[e];
      if (s.origin == Origin::kVerifier && s.symbol.value == 0) {
        from = e + 1;
        step = s.index;
        break;
      }
    }
    VisibleHistory view;
    view.reserve(ctx.seen.size() - from);
    for (std::size_t e = from; e < ctx.seen.size(); ++e) {
      const Seen& s = ctx.seen[e];
      if (s.origin == Origin::kVerifier) continue;
      view.push_back({s.origin, s.index - step, s.symbol});
    }
    return inner_->next({ctx.input, ctx.role, view, ctx.own.subspan(step)});
  }
  std::string name() const override { return inner_->name(); }
  std::unique_ptr<ProverStrategy> clone() const override {
    return std::make_unique<RestartAware>(inner_->clone());
  }

 private:
  std::unique_ptr<ProverStrategy> inner_;
};

}  // namespace

std::unique_ptr<ProverStrategy> honest_p0(const DebateSetup& setup,
                                          const ProverStrategy& p1) {
  return std::make_unique<PlanningP0>(setup, p1, ClaimPolicy::kHonest, 0, 0,
                                      "honest");
}

std::unique_ptr<ProverStrategy> p0_misaligned_claim(const DebateSetup& setup,
                                                    const ProverStrategy& p1,
                                                    std::size_t j,
                                                    std::size_t k) {
  if (j < 1 || k < 1) throw StrategyError("claim indices start at 1");
  if (j == k) throw StrategyError("misaligned claims need j != k");
  return std::make_unique<PlanningP0>(
      setup, p1, ClaimPolicy::kMisaligned, j, k,
      "misaligned:j=" + std::to_string(j) + ",k=" + std::to_string(k));
}

std::unique_ptr<ProverStrategy> p0_false_infinity(const DebateSetup& setup,
                                                  std::size_t round) {
  if (round < 1) throw StrategyError("rounds are numbered from 1");
  if (setup.mode == Mode::kCips)
    throw StrategyError("the restart protocol has no infinity claims");
  return std::make_unique<ReactiveP0>(setup, ReactiveP0::Kind::kFalseInfinity,
                                      round,
                                      "false-infinity:round=" + std::to_string(round));
}

std::unique_ptr<ProverStrategy> p0_silent(const DebateSetup& setup) {
  return std::make_unique<ReactiveP0>(setup, ReactiveP0::Kind::kSilent, 0,
                                      "silent");
}

std::unique_ptr<ProverStrategy> p0_bad_syntax(const DebateSetup& setup,
                                              SyntaxFault fault) {
  switch (fault) {
    case SyntaxFault::kTauFirst:
      return std::make_unique<ReactiveP0>(setup, ReactiveP0::Kind::kTauFirst, 1,
                                          "bad-syntax:kind=tau-first");
    case SyntaxFault::kDoubleSigma:
      return std::make_unique<ReactiveP0>(setup, ReactiveP0::Kind::kDoubleSigma,
                                          1, "bad-syntax:kind=double-sigma");
    case SyntaxFault::kInfinityOffSlot:
      return std::make_unique<ReactiveP0>(setup,
                                          ReactiveP0::Kind::kInfinityOffSlot, 1,
                                          "bad-syntax:kind=infinity-off-slot");
  }
  throw StrategyError("unknown syntax fault");
}

std::unique_ptr<ProverStrategy> restart_aware(
    std::unique_ptr<ProverStrategy> inner) {
  return std::make_unique<RestartAware>(std::move(inner));
}

}  // namespace debatelab
