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

#include "debatelab/verifier.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include <nlohmann/json.hpp>

#include "debatelab/search.hpp"

namespace debatelab {

std::string_view to_string(SpaceRegime regime) {
  switch (regime) {
    case SpaceRegime::kAuto: return "auto";
    case SpaceRegime::kLinear: return "linear";
    case SpaceRegime::kSuperlinear: return "superlinear";
  }
  return "?";
}

std::optional<SpaceRegime> parse_regime(std::string_view text) {
  if (text == "auto") return SpaceRegime::kAuto;
  if (text == "linear") return SpaceRegime::kLinear;
  if (text == "superlinear") return SpaceRegime::kSuperlinear;
  return std::nullopt;
}

unsigned default_ruler(const SpaceBound& space) {
  if (!space.is_linear())
    throw ContractViolation("no ruler multiple covers a superlinear bound");
  return static_cast<unsigned>(std::max<std::int64_t>(space.coefficient, 0) +
                               std::max<std::int64_t>(space.constant, 0) + 1);
}

ProtocolParams resolve_params(const MachineSpec& spec, ProtocolParams p,
                              std::size_t n) {
  if (p.l < 1 || p.r < 1) throw ContractViolation("l and r must be positive");
  if (p.max_steps < 1) throw ContractViolation("max_steps must be positive");
  const bool alternating = spec.kind == MachineKind::kAlternating;
  if (p.mode == Mode::kPartialInfo && !alternating)
    throw ContractViolation("partial-info mode needs an alternating machine");
  if (p.mode != Mode::kPartialInfo && alternating)
    throw ContractViolation("alternating machines run in partial-info mode");
  if (p.mode == Mode::kCips && spec.kind != MachineKind::kDeterministic)
    throw ContractViolation("the restart protocol needs a deterministic machine");
  if (p.regime == SpaceRegime::kAuto)
    p.regime = spec.space.is_linear() ? SpaceRegime::kLinear
                                      : SpaceRegime::kSuperlinear;
  if (p.m == 0)
    p.m = spec.space.is_linear()
              ? default_ruler(spec.space)
              : static_cast<unsigned>(spec.space(n) / std::max<std::size_t>(n, 1) + 1);
  if (p.regime == SpaceRegime::kLinear && n > 0 &&
      std::uint64_t{p.m} * n <= spec.space(n))
    throw ContractViolation("ruler too short: m*n must exceed s(n)");
  return p;
}

ProtocolViolation::ProtocolViolation(Role who, const std::string& message)
    : std::runtime_error((who == Role::kP1 ? "P1: " : "P0: ") + message),
      who_(who) {}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kAccept: return "accept";
    case Verdict::kReject: return "reject";
    case Verdict::kUndecided: return "undecided";
  }
  return "?";
}

std::string_view to_string(Reason r) {
  switch (r) {
    case Reason::kNone: return "none";
    case Reason::kP1Syntax: return "p1-syntax";
    case Reason::kWindow: return "window";
    case Reason::kP0Syntax: return "p0-syntax";
    case Reason::kClaimCoins: return "claim-coins";
    case Reason::kClaimTest: return "claim-test";
    case Reason::kRoundEnd: return "round-end";
    case Reason::kInfinityRuler: return "infinity-ruler";
    case Reason::kInfinityCoins: return "infinity-coins";
    case Reason::kEmptyInput: return "empty-input";
    case Reason::kStepCap: return "step-cap";
  }
  return "?";
}

Tallies& Tallies::operator+=(const Tallies& o) {
  rounds += o.rounds;
  claims += o.claims;
  accept_by_coins += o.accept_by_coins;
  tests += o.tests;
  test_rejects += o.test_rejects;
  infinity_checks += o.infinity_checks;
  infinity_batches += o.infinity_batches;
  restarts += o.restarts;
  return *this;
}

namespace {

void put(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put(std::vector<std::uint8_t>& out, const Symbol& s) {
  put(out, static_cast<std::uint8_t>(s.kind), 1);
  put(out, static_cast<std::uint16_t>(s.value), 2);
  put(out, static_cast<std::uint8_t>(s.dir), 1);
  put(out, s.counter, 1);
}

void put(std::vector<std::uint8_t>& out, const Triple& t) {
  for (const Symbol& s : t) put(out, s);
}

}  // namespace

std::vector<std::uint8_t> VerifierScratch::serialize() const {
  std::vector<std::uint8_t> out;
  put(out, static_cast<std::uint8_t>(phase), 1);
  put(out, config_class, 1);
  put(out, config_cells, 1);
  put(out, heads, 1);
  put(out, first_is_initial, 1);
  put(out, window_fill, 1);
  put(out, last_cell);
  put(out, window);
  put(out, prev_window);
  put(out, has_prev, 1);
  put(out, static_cast<std::uint16_t>(announced), 2);
  put(out, round_has_claim, 1);
  put(out, static_cast<std::uint8_t>(claim), 1);
  put(out, claim_offset, 1);
  put(out, two_move_ok, 1);
  put(out, two_move, 1);
  put(out, tau_first, 1);
  put(out, ups_first, 1);
  put(out, alpha_triple);
  put(out, alpha_fill, 1);
  put(out, beta_triple);
  put(out, beta_fill, 1);
  put(out, flags.a1, 1);
  put(out, flags.a2, 1);
  put(out, flags.c_alpha, 1);
  put(out, flags.c_beta, 1);
  put(out, static_cast<std::uint8_t>(sweep_dir), 1);
  put(out, sweeps, 4);
  put(out, infinity_one, 1);
  return out;
}

void claim_cell_coins(unsigned l, bool beta, bool marked, CoinPort& coins,
                      ClaimFlags& f) {
  const std::uint64_t n = l;
  if (!beta) {
    f.a1 |= coins.has_one(CoinSet::kAccept1, 4 * n);
    f.c_alpha |= coins.has_one(CoinSet::kControlAlpha, 2 * n);
    if (marked) f.a1 |= coins.has_one(CoinSet::kAccept1, n);
  } else {
    f.a2 |= coins.has_one(CoinSet::kAccept2, 4 * n);
    f.c_beta |= coins.has_one(CoinSet::kControlBeta, 2 * n);
    if (marked) f.a2 |= coins.has_one(CoinSet::kAccept2, n);
  }
}

ClaimResult claim_result(const ClaimFlags& f) {
  if (!f.a1 || !f.a2) return ClaimResult::kAccept;
  if (!f.c_alpha && !f.c_beta) return ClaimResult::kTest;
  return ClaimResult::kContinue;
}

Verifier::Verifier(const MachineSpec& spec, std::string_view input,
                   const ProtocolParams& params)
    : spec_(spec), input_(input), params_(params) {
  if (params_.m == 0 || params_.regime == SpaceRegime::kAuto)
    throw ContractViolation("verifier params must be resolved");
  if (input_.empty())
    throw ContractViolation("the empty input is decided without a debate");
  std::map<std::tuple<StateId, char, WorkSymbolId>, std::size_t> fan;
  for (const Transition& t : spec_.transitions)
    max_choices_ = std::max(max_choices_, ++fan[{t.from, t.input, t.read}]);
}

bool Verifier::at_round_start() const { return s_ == VerifierScratch{}; }

void Verifier::restart() {
  s_ = VerifierScratch{};
  pos_ = 0;
  ++tallies_.restarts;
}

void Verifier::note(std::string event) {
  if (trace_) events_.push_back(std::move(event));
}

std::optional<Decision> Verifier::halt(Verdict v, Reason r) {
  s_.phase = VerifierScratch::Phase::kHalted;
  note(std::string(to_string(v)) + ":" + std::string(to_string(r)));
  return Decision{v, r};
}

void Verifier::check_alphabets(const Symbol& a, const Symbol& b) const {
  const std::uint8_t digits = spec_.counter ? spec_.counter->digit_mask() : 0;
  switch (a.kind) {
    case SymbolKind::kWork:
      if (a.value < 0 || static_cast<std::size_t>(a.value) >= spec_.work_symbols.size() ||
          a.dir != 0 || a.counter > digits)
        throw ProtocolViolation(Role::kP1, "work symbol outside the alphabet");
      break;
    case SymbolKind::kStateDir:
      if (a.value < 0 || static_cast<std::size_t>(a.value) >= spec_.states.size() ||
          a.dir < -1 || a.dir > 1 || a.counter > digits)
        throw ProtocolViolation(Role::kP1, "state symbol outside the alphabet");
      break;
    case SymbolKind::kDelimiter:
    case SymbolKind::kSeparator:
      break;
    default:
      throw ProtocolViolation(Role::kP1, "P1 may emit only cells, $ and #");
  }
  switch (b.kind) {
    case SymbolKind::kZero:
    case SymbolKind::kSigma:
    case SymbolKind::kTau:
    case SymbolKind::kUpsilon:
    case SymbolKind::kInfinity:
      break;
    case SymbolKind::kChoice:
      if (params_.mode != Mode::kPartialInfo)
        throw ProtocolViolation(Role::kP0, "choice symbols need partial-info mode");
      if (b.value < 0 || static_cast<std::size_t>(b.value) >= max_choices_)
        throw ProtocolViolation(Role::kP0, "choice symbol outside the alphabet");
      break;
    default:
      throw ProtocolViolation(Role::kP0, "P0 may emit only markers and choices");
  }
}

bool Verifier::announcement_now() const {
  return params_.mode == Mode::kPartialInfo && s_.config_class == 3;
}

std::size_t Verifier::branching(const Triple& w) const {
  const StateId q = w[1].value;
  if (spec_.is_halting(q)) return 0;
  const WorkSymbolId read = w[2].is_work() ? w[2].value : spec_.blank;
  return spec_.entries(q, input_symbol_at(input_, pos_), read).size();
}

void Verifier::fresh_round() {
  s_ = VerifierScratch{};
  pos_ = 0;
  note("next-round");
}

std::optional<Decision> Verifier::step(const Symbol& p1, const Symbol& p0,
                                       CoinPort& coins) {
  if (halted()) throw ContractViolation("the verifier has already halted");
  check_alphabets(p1, p0);
  ++steps_;
  events_.clear();
  std::optional<Decision> d;
  if (s_.phase == VerifierScratch::Phase::kInfinity) {
    d = infinity_step(p1, coins);
  } else {
    const bool was_start = s_.phase == VerifierScratch::Phase::kRoundStart;
    d = on_p1(p1);
    if (!d) {
      const bool opened = p1.is_delimiter();
      const bool closed = !was_start && (p1.is_delimiter() || p1.is_separator());
      d = on_p0(p1, p0, opened, closed, coins);
    }
  }
  if (pos_ > input_.size() + 1)
    throw std::logic_error("input head crossed an end-marker");
  if (trace_) trace_({steps_, p1, p0, s_, pos_, events_});
  return d;
}

std::optional<Decision> Verifier::on_p1(const Symbol& a) {
  using Phase = VerifierScratch::Phase;
  if (s_.phase == Phase::kRoundStart) {
    if (!a.is_delimiter()) return halt(Verdict::kReject, Reason::kP1Syntax);
    ++tallies_.rounds;
    s_.phase = Phase::kConfig;
    s_.config_class = 1;
    note("round-start");
    return std::nullopt;
  }
  if (a.is_cell()) {
    if (s_.config_cells < 2) ++s_.config_cells;
    if (s_.config_class == 1 && s_.config_cells == 1)
      s_.first_is_initial = a == initial_configuration(spec_).cells[0];
    if (a.is_head()) {
      if (s_.heads < 2) ++s_.heads;
      if (s_.heads == 1) {
        s_.window = {s_.last_cell, a, Symbol::delimiter()};
        s_.window_fill = 1;
      }
    } else if (s_.window_fill == 1) {
      s_.window[2] = a;
      s_.window_fill = 2;
    }
    s_.last_cell = a;
    return std::nullopt;
  }
  if (auto d = close_config(s_.config_class == 1)) return d;
  if (a.is_delimiter()) {
    s_.config_class = s_.config_class == 4 ? 3 : s_.config_class + 1;
    s_.config_cells = 0;
    s_.heads = 0;
    s_.window_fill = 0;
    s_.last_cell = Symbol::delimiter();
    s_.announced = -1;
  }
  return std::nullopt;
}

std::optional<Decision> Verifier::close_config(bool closing_first) {
  if (s_.heads != 1) return halt(Verdict::kReject, Reason::kP1Syntax);
  if (closing_first && !(s_.config_cells == 1 && s_.first_is_initial))
    return halt(Verdict::kReject, Reason::kP1Syntax);
  if (s_.has_prev) {
    std::optional<int> choice;
    if (s_.announced >= 0) choice = s_.announced;
    if (!head_windows_consistent(spec_, s_.prev_window, s_.window,
                                 input_symbol_at(input_, pos_), 1, choice))
      return halt(Verdict::kReject, Reason::kWindow);
  }
  const auto next = static_cast<std::ptrdiff_t>(pos_) + s_.window[1].dir;
  if (next < 0 || next > static_cast<std::ptrdiff_t>(input_.size()) + 1)
    throw std::logic_error("input head would cross an end-marker");
  pos_ = static_cast<std::size_t>(next);
  s_.prev_window = s_.window;
  s_.has_prev = true;
  return std::nullopt;
}

void Verifier::capture(Triple& t, std::uint8_t& fill, const Symbol& a) {
  if (fill >= 3) return;
  if (a.is_cell()) {
    t[fill++] = a;
    return;
  }
  while (fill < 3) t[fill++] = Symbol::delimiter();
}

std::optional<Decision> Verifier::claim_close(bool round_end,
                                              CoinPort& coins) {
  using Claim = VerifierScratch::Claim;
  switch (s_.claim) {
    case Claim::kNone:
    case Claim::kAfterUps:
      return std::nullopt;
    case Claim::kAlpha:
      note("tau-missing");
      return halt(Verdict::kAccept, Reason::kP0Syntax);
    case Claim::kAfterTau:
      if (round_end || s_.claim_offset == 2) break;
      if (s_.claim_offset == 0) {
        s_.claim_offset = 1;
        return std::nullopt;
      }
      if (s_.two_move_ok) {
        s_.claim_offset = 2;
        s_.two_move = true;
        s_.flags.a2 = false;
        s_.flags.c_beta = false;
        coins.span_extended(steps_);
        note("two-move-span");
        return std::nullopt;
      }
      break;
  }
  note("upsilon-missing");
  return halt(Verdict::kAccept, Reason::kP0Syntax);
}

std::optional<Decision> Verifier::on_p0(const Symbol& a, const Symbol& b,
                                        bool opened, bool closed,
                                        CoinPort& coins) {
  using Claim = VerifierScratch::Claim;
  using Phase = VerifierScratch::Phase;
  const auto syntax = [&](const char* what) {
    note(what);
    return halt(Verdict::kAccept, Reason::kP0Syntax);
  };

  if (closed)
    if (auto d = claim_close(a.is_separator(), coins)) return d;

  bool tau_now = false, ups_now = false;
  if (opened && announcement_now()) {
    if (b.kind != SymbolKind::kChoice) return syntax("choice-missing");
    const std::size_t fan = branching(s_.prev_window);
    if (fan > 0 && static_cast<std::size_t>(b.value) >= fan)
      return syntax("choice-out-of-range");
    s_.announced = b.value;
  } else {
    switch (b.kind) {
      case SymbolKind::kChoice:
        return syntax("choice-off-slot");
      case SymbolKind::kZero:
        break;
      case SymbolKind::kSigma:
        if (!opened || s_.claim != Claim::kNone) return syntax("sigma-misplaced");
        s_.claim = Claim::kAlpha;
        s_.claim_offset = 0;
        s_.two_move_ok = params_.mode == Mode::kPartialInfo &&
                         (s_.config_class == 2 || s_.config_class == 4);
        s_.two_move = false;
        s_.alpha_fill = s_.beta_fill = 0;
        s_.flags = ClaimFlags{};
        s_.round_has_claim = true;
        note("claim-open");
        break;
      case SymbolKind::kInfinity:
        if (params_.mode == Mode::kCips) return syntax("infinity-in-cips");
        if (!opened || s_.claim != Claim::kNone)
          return syntax("infinity-misplaced");
        s_.phase = Phase::kInfinity;
        s_.round_has_claim = true;
        pos_ = 0;
        s_.sweep_dir = 1;
        s_.sweeps = 0;
        s_.infinity_one = false;
        ++tallies_.infinity_checks;
        coins.infinity_start(steps_);
        note("infinity-open");
        return std::nullopt;
      case SymbolKind::kTau:
        if (s_.claim != Claim::kAlpha || !a.is_cell()) return syntax("tau-misplaced");
        s_.claim = Claim::kAfterTau;
        s_.tau_first = s_.config_cells == 1;
        tau_now = true;
        break;
      case SymbolKind::kUpsilon:
        if (s_.claim != Claim::kAfterTau || s_.claim_offset == 0 || !a.is_cell())
          return syntax("upsilon-misplaced");
        s_.claim = Claim::kAfterUps;
        s_.ups_first = s_.config_cells == 1;
        ups_now = true;
        break;
      default:
        break;
    }
  }

  if (s_.claim != Claim::kNone) {
    if (tau_now) {
      s_.alpha_triple[0] = a;
      s_.alpha_fill = 1;
    } else if (s_.alpha_fill > 0) {
      capture(s_.alpha_triple, s_.alpha_fill, a);
    }
    if (ups_now) {
      s_.beta_triple[0] = a;
      s_.beta_fill = 1;
    } else if (s_.beta_fill > 0) {
      capture(s_.beta_triple, s_.beta_fill, a);
    }

    if (a.is_cell()) {
      if (s_.claim == Claim::kAlpha || tau_now)
        claim_cell_coins(params_.l, false, tau_now, coins, s_.flags);
      else if ((s_.claim == Claim::kAfterTau && s_.claim_offset > 0) || ups_now)
        claim_cell_coins(params_.l, true, ups_now, coins, s_.flags);
    }

    if (s_.claim == Claim::kAfterUps && s_.beta_fill == 3) {
      ++tallies_.claims;
      const ClaimResult result = claim_result(s_.flags);
      const bool need =
          coins.wants_legitimacy() || result == ClaimResult::kTest;
      const bool legit = need && legitimate(s_.two_move ? 2 : 1);
      coins.claim_point(steps_, legit);
      if (result == ClaimResult::kAccept) {
        ++tallies_.accept_by_coins;
        return halt(Verdict::kAccept, Reason::kClaimCoins);
      }
      if (result == ClaimResult::kTest) {
        ++tallies_.tests;
        if (legit) return halt(Verdict::kAccept, Reason::kClaimTest);
        ++tallies_.test_rejects;
        return halt(Verdict::kReject, Reason::kClaimTest);
      }
      s_.claim = Claim::kNone;
      s_.alpha_fill = s_.beta_fill = 0;
      note("claim-continue");
    }
  }

  if (a.is_separator()) {
    if (s_.prev_window[1].value != spec_.accept)
      return halt(Verdict::kReject, Reason::kRoundEnd);
    if (!s_.round_has_claim) return halt(Verdict::kAccept, Reason::kRoundEnd);
    fresh_round();
  }
  return std::nullopt;
}

bool Verifier::legitimate(int moves) {
  const bool edge = s_.tau_first && s_.ups_first;
  std::string key;
  for (const Triple* t : {&s_.alpha_triple, &s_.beta_triple})
    for (const Symbol& c : *t) {
      const std::uint64_t v = c.packed();
      key.append(reinterpret_cast<const char*>(&v), sizeof v);
    }
  key.push_back(static_cast<char>(edge));
  key.push_back(static_cast<char>(moves));
  auto it = legit_memo_.find(key);
  if (it != legit_memo_.end()) return it->second;
  const bool v = triple_pair_legitimate(spec_, s_.alpha_triple, s_.beta_triple,
                                        edge, moves);
  legit_memo_.emplace(std::move(key), v);
  return v;
}

std::optional<Decision> Verifier::infinity_step(const Symbol& a,
                                                CoinPort& coins) {
  const bool linear = params_.regime == SpaceRegime::kLinear;
  const Reason reason = linear ? Reason::kInfinityRuler : Reason::kInfinityCoins;
  if (a.is_delimiter() || a.is_separator()) {
    if (s_.heads != 1 ||
        (s_.config_class == 1 && !(s_.config_cells == 1 && s_.first_is_initial)))
      return halt(Verdict::kReject, Reason::kP1Syntax);
    return halt(Verdict::kAccept, reason);
  }
  if (s_.config_cells < 2) ++s_.config_cells;
  if (s_.config_class == 1 && s_.config_cells == 1)
    s_.first_is_initial = a == initial_configuration(spec_).cells[0];
  if (a.is_head() && s_.heads < 2) ++s_.heads;
  move_ruler();
  if (pos_ != 0 && pos_ != input_.size()) return std::nullopt;
  // One full sweep across the input.
  s_.sweep_dir = static_cast<std::int8_t>(-s_.sweep_dir);
  if (linear) {
    if (++s_.sweeps >= params_.m) return halt(Verdict::kReject, reason);
    return std::nullopt;
  }
  ++tallies_.infinity_batches;
  s_.infinity_one =
      coins.has_one(CoinSet::kInfinity, std::uint64_t{params_.r} * input_.size());
  coins.infinity_point(steps_);
  if (!s_.infinity_one) return halt(Verdict::kReject, reason);
  return std::nullopt;
}

void Verifier::move_ruler() {
  pos_ = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(pos_) + s_.sweep_dir);
}

Outcome decide_empty_input(const MachineSpec& spec, const ProtocolParams& params) {
  Outcome out;
  out.reason = Reason::kEmptyInput;
  try {
    bool member = false;
    if (spec.kind == MachineKind::kAlternating)
      member = accepting_strategy_tree(spec, "", params.max_steps) != nullptr;
    else
      member = generate_acp(spec, "").has_value();
    out.verdict = member ? Verdict::kAccept : Verdict::kReject;
  } catch (const BudgetExhausted&) {
    out.verdict = Verdict::kUndecided;
  } catch (const DepthExhausted&) {
    out.verdict = Verdict::kUndecided;
  }
  return out;
}

namespace {

Outcome run_live(const MachineSpec& spec, ProtocolParams params,
                 std::string_view input, const ProverStrategy& p1,
                 const ProverStrategy& p0, RandomSource& rng,
                 const TraceSink& trace) {
  params = resolve_params(spec, params, input.size());
  if (input.empty()) return decide_empty_input(spec, params);
  const DebateSetup setup{&spec, std::string(input), params.mode};
  const bool cips = params.mode == Mode::kCips;
  std::unique_ptr<ProverStrategy> w1, w0;
  if (cips) {
    w1 = restart_aware(p1.clone());
    w0 = restart_aware(p0.clone());
  }
  TranscriptBuilder tb(setup, cips ? *w1 : p1, cips ? *w0 : p0);
  Verifier v(spec, input, params);
  if (trace) v.set_trace(trace);
  LiveCoins coins(rng);
  while (v.steps() < params.max_steps) {
    tb.step();
    const Transcript& t = tb.transcript();
    if (auto d = v.step(t.p1.back(), t.p0.back(), coins))
      return {d->verdict, d->reason, v.steps(), v.tallies()};
    if (cips) {
      const int c = rng.coin() ? 1 : 0;
      tb.announce(c);
      if (c == 0) v.restart();
    }
  }
  return {Verdict::kUndecided, Reason::kStepCap, v.steps(), v.tallies()};
}

void expect_mode(const ProtocolParams& params, Mode mode) {
  if (params.mode != mode)
    throw ContractViolation("runner called with mode " +
                            std::string(to_string(params.mode)));
}

}  // namespace

Outcome run_debate(const MachineSpec& spec, const ProtocolParams& params,
                   std::string_view input, const ProverStrategy& p1,
                   const ProverStrategy& p0, RandomSource& rng,
                   const TraceSink& trace) {
  expect_mode(params, Mode::kZeroInfo);
  return run_live(spec, params, input, p1, p0, rng, trace);
}

Outcome run_partial_info(const MachineSpec& spec, const ProtocolParams& params,
                         std::string_view input, const ProverStrategy& p1,
                         const ProverStrategy& p0, RandomSource& rng,
                         const TraceSink& trace) {
  expect_mode(params, Mode::kPartialInfo);
  return run_live(spec, params, input, p1, p0, rng, trace);
}

Outcome run_cips(const MachineSpec& spec, const ProtocolParams& params,
                 std::string_view input, const ProverStrategy& p1,
                 const ProverStrategy& p0, RandomSource& rng,
                 const TraceSink& trace) {
  expect_mode(params, Mode::kCips);
  return run_live(spec, params, input, p1, p0, rng, trace);
}

Outcome run_protocol(const MachineSpec& spec, const ProtocolParams& params,
                     std::string_view input, const ProverStrategy& p1,
                     const ProverStrategy& p0, RandomSource& rng,
                     const TraceSink& trace) {
  return run_live(spec, params, input, p1, p0, rng, trace);
}

std::string format_trace(const MachineSpec& spec, const TraceRecord& r) {
  static constexpr const char* kPhase[] = {"round-start", "config", "infinity",
                                           "halted"};
  static constexpr const char* kClaim[] = {"none", "alpha", "after-tau",
                                           "after-upsilon"};
  const VerifierScratch& s = r.scratch;
  nlohmann::ordered_json j;
  j["step"] = r.step;
  j["p1"] = format_symbol(spec, r.p1);
  j["p0"] = format_symbol(spec, r.p0);
  j["phase"] = kPhase[static_cast<int>(s.phase)];
  j["claim"] = kClaim[static_cast<int>(s.claim)];
  j["input_head"] = r.input_head;
  j["flags"] = {{"a1", s.flags.a1},
                {"a2", s.flags.a2},
                {"control", s.flags.c_alpha || s.flags.c_beta},
                {"round_has_claim", s.round_has_claim}};
  j["events"] = r.events;
  return j.dump();
}

}  // namespace debatelab
