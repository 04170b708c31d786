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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "debatelab/debate.hpp"
#include "debatelab/machine.hpp"
#include "debatelab/random.hpp"
#include "debatelab/symbol.hpp"

namespace debatelab {

enum class SpaceRegime { kAuto, kLinear, kSuperlinear };

std::string_view to_string(SpaceRegime regime);
std::optional<SpaceRegime> parse_regime(std::string_view text);

struct ProtocolParams {
  unsigned l = 4;
  unsigned r = 2;
  unsigned m = 0;  // 0: smallest ruler with m*n > s(n) for every n >= 1
  Mode mode = Mode::kZeroInfo;
  SpaceRegime regime = SpaceRegime::kAuto;
  std::uint64_t max_steps = 1'000'000;
};

// Smallest m with m*n > s(n) for all n >= 1; requires a linear bound.
unsigned default_ruler(const SpaceBound& space);

// Params with m and the regime filled in; throws ContractViolation when they
// cannot be honoured for this machine and input length.
ProtocolParams resolve_params(const MachineSpec& spec, ProtocolParams params,
                              std::size_t input_length);

// A prover emitted a symbol outside its alphabet. Not an in-protocol error.
class ProtocolViolation : public std::runtime_error {
 public:
  ProtocolViolation(Role who, const std::string& message);
  Role who() const { return who_; }

 private:
  Role who_;
};

enum class Verdict { kAccept, kReject, kUndecided };
std::string_view to_string(Verdict v);

enum class Reason : std::uint8_t {
  kNone,
  kP1Syntax,
  kWindow,
  kP0Syntax,
  kClaimCoins,
  kClaimTest,
  kRoundEnd,
  kInfinityRuler,
  kInfinityCoins,
  kEmptyInput,
  kStepCap,
};
std::string_view to_string(Reason r);

struct Tallies {
  std::uint64_t rounds = 0;
  std::uint64_t claims = 0;          // claims that reached their decision point
  std::uint64_t accept_by_coins = 0;
  std::uint64_t tests = 0;
  std::uint64_t test_rejects = 0;
  std::uint64_t infinity_checks = 0;
  std::uint64_t infinity_batches = 0;  // superlinear coin batches
  std::uint64_t restarts = 0;

  Tallies& operator+=(const Tallies& o);
  friend bool operator==(const Tallies&, const Tallies&) = default;
};

struct Outcome {
  Verdict verdict = Verdict::kUndecided;
  Reason reason = Reason::kNone;
  std::uint64_t steps = 0;
  Tallies tallies;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

enum class CoinSet : std::uint8_t {
  kAccept1,
  kAccept2,
  kControlAlpha,
  kControlBeta,
  kInfinity,
};

// Where the verifier's coins come from. The live port draws them; a recording
// port answers "not all zero" and notes what was asked.
class CoinPort {
 public:
  virtual ~CoinPort() = default;
  // Flips `count` coins of one set and reports whether any came up 1.
  virtual bool has_one(CoinSet set, std::uint64_t count) = 0;
  // Decision points, reported before the verifier acts on its flags.
  virtual void claim_point(std::uint64_t /*step*/, bool /*legitimate*/) {}
  virtual void infinity_point(std::uint64_t /*step*/) {}
  virtual void infinity_start(std::uint64_t /*step*/) {}
  // A claim's span grew to two moves; β's coins so far are discarded.
  virtual void span_extended(std::uint64_t /*step*/) {}
  // Whether claim_point needs the triple test evaluated.
  virtual bool wants_legitimacy() const { return false; }
};

class LiveCoins final : public CoinPort {
 public:
  explicit LiveCoins(RandomSource& rng) : rng_(rng) {}
  bool has_one(CoinSet, std::uint64_t count) override {
    return !rng_.all_zero(count);
  }

 private:
  RandomSource& rng_;
};

// Has-a-one flags of one claim's coin sets.
struct ClaimFlags {
  bool a1 = false;
  bool a2 = false;
  bool c_alpha = false;
  bool c_beta = false;
  friend bool operator==(const ClaimFlags&, const ClaimFlags&) = default;
};

enum class ClaimResult { kAccept, kTest, kContinue };

// Coins flipped while streaming one cell of α (`beta` false) or β, up to and
// including the marked cell; `marked` is true at τ or υ.
void claim_cell_coins(unsigned l, bool beta, bool marked, CoinPort& coins,
                      ClaimFlags& flags);
ClaimResult claim_result(const ClaimFlags& flags);

// The verifier's finite control beyond its heads. Every field has a fixed
// width; the input-head position lives on the input tape, not here.
struct VerifierScratch {
  enum class Phase : std::uint8_t { kRoundStart, kConfig, kInfinity, kHalted };
  enum class Claim : std::uint8_t {
    kNone,
    kAlpha,     // after ς, before τ
    kAfterTau,  // τ seen; waiting for β
    kAfterUps,  // υ seen; collecting β's triple
  };

  Phase phase = Phase::kRoundStart;
  std::uint8_t config_class = 0;  // 0 none, 1, 2, 3: odd >= 3, 4: even >= 4
  std::uint8_t config_cells = 0;  // saturates at 2
  std::uint8_t heads = 0;         // saturates at 2
  bool first_is_initial = false;
  std::uint8_t window_fill = 0;   // 0 no head yet, 1 head seen, 2 complete
  Symbol last_cell = Symbol::delimiter();
  Triple window{};
  Triple prev_window{};
  bool has_prev = false;
  std::int16_t announced = -1;
  bool round_has_claim = false;

  Claim claim = Claim::kNone;
  std::uint8_t claim_offset = 0;  // configurations since α
  bool two_move_ok = false;
  bool two_move = false;
  bool tau_first = false;
  bool ups_first = false;
  Triple alpha_triple{};
  std::uint8_t alpha_fill = 0;
  Triple beta_triple{};
  std::uint8_t beta_fill = 0;
  ClaimFlags flags;

  std::int8_t sweep_dir = 1;
  std::uint32_t sweeps = 0;  // bounded by m
  bool infinity_one = false;

  // Fixed-width encoding, identical length for every state.
  std::vector<std::uint8_t> serialize() const;
  friend bool operator==(const VerifierScratch&,
                         const VerifierScratch&) = default;
};

struct TraceRecord {
  std::uint64_t step = 0;
  Symbol p1;
  Symbol p0;
  VerifierScratch scratch;
  std::size_t input_head = 0;
  std::vector<std::string> events;
};
using TraceSink = std::function<void(const TraceRecord&)>;

struct Decision {
  Verdict verdict = Verdict::kUndecided;
  Reason reason = Reason::kNone;
};

// Streaming verifier: one step consumes P1's next symbol and then P0's.
class Verifier {
 public:
  // `params` must already be resolved.
  Verifier(const MachineSpec& spec, std::string_view input,
           const ProtocolParams& params);

  std::optional<Decision> step(const Symbol& p1, const Symbol& p0,
                               CoinPort& coins);
  // Restart protocol: back to the opening state, keeping step and tallies.
  void restart();

  bool at_round_start() const;
  bool halted() const { return s_.phase == VerifierScratch::Phase::kHalted; }
  const VerifierScratch& scratch() const { return s_; }
  std::size_t input_head() const { return pos_; }
  std::uint64_t steps() const { return steps_; }
  const Tallies& tallies() const { return tallies_; }
  void set_trace(TraceSink sink) { trace_ = std::move(sink); }

 private:
  void check_alphabets(const Symbol& p1, const Symbol& p0) const;
  std::optional<Decision> on_p1(const Symbol& a);
  std::optional<Decision> close_config(bool closing_first);
  std::optional<Decision> on_p0(const Symbol& a, const Symbol& b,
                                bool opened, bool closed, CoinPort& coins);
  std::optional<Decision> claim_close(bool round_end, CoinPort& coins);
  bool legitimate(int moves);
  std::optional<Decision> infinity_step(const Symbol& a, CoinPort& coins);
  void capture(Triple& t, std::uint8_t& fill, const Symbol& a);
  void move_ruler();
  void fresh_round();
  std::optional<Decision> halt(Verdict v, Reason r);
  void note(std::string event);
  bool announcement_now() const;
  std::size_t branching(const Triple& w) const;

  const MachineSpec& spec_;
  std::string input_;
  ProtocolParams params_;
  VerifierScratch s_;
  std::size_t pos_ = 0;
  std::uint64_t steps_ = 0;
  Tallies tallies_;
  std::size_t max_choices_ = 1;
  TraceSink trace_;
  std::vector<std::string> events_;
  // Memo of the fixed triple predicate; not part of the scratch.
  std::unordered_map<std::string, bool> legit_memo_;
};

// Empty input: decided by searching the machine directly.
Outcome decide_empty_input(const MachineSpec& spec, const ProtocolParams& params);

// Reference runners: drive both strategies symbol by symbol.
Outcome run_debate(const MachineSpec& spec, const ProtocolParams& params,
                   std::string_view input, const ProverStrategy& p1,
                   const ProverStrategy& p0, RandomSource& rng,
                   const TraceSink& trace = {});
Outcome run_partial_info(const MachineSpec& spec, const ProtocolParams& params,
                         std::string_view input, const ProverStrategy& p1,
                         const ProverStrategy& p0, RandomSource& rng,
                         const TraceSink& trace = {});
// Strategies are wrapped with restart_aware internally.
Outcome run_cips(const MachineSpec& spec, const ProtocolParams& params,
                 std::string_view input, const ProverStrategy& p1,
                 const ProverStrategy& p0, RandomSource& rng,
                 const TraceSink& trace = {});
// Dispatches on params.mode.
Outcome run_protocol(const MachineSpec& spec, const ProtocolParams& params,
                     std::string_view input, const ProverStrategy& p1,
                     const ProverStrategy& p0, RandomSource& rng,
                     const TraceSink& trace = {});

// One line of JSON per trace record.
std::string format_trace(const MachineSpec& spec, const TraceRecord& r);

}  // namespace debatelab
