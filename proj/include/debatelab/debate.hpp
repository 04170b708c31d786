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
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "debatelab/configuration.hpp"
#include "debatelab/machine.hpp"
#include "debatelab/symbol.hpp"

namespace debatelab {

enum class Mode { kZeroInfo, kPartialInfo, kCips };
std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

enum class Role { kP1, kP0 };
enum class Origin : std::uint8_t { kP1, kP0, kVerifier };

// One public symbol as seen by a prover; `index` is the 1-based position in
// the originating stream (for the verifier, the step after which the coin was
// announced).
struct Seen {
  Origin origin = Origin::kP1;
  std::size_t index = 0;
  Symbol symbol;

  friend bool operator==(const Seen&, const Seen&) = default;
};
using VisibleHistory = std::vector<Seen>;

struct Transcript {
  std::vector<Symbol> p1;
  std::vector<Symbol> p0;
  // Restart protocol only: announcements[t-1] is the coin flipped after step t.
  std::vector<Symbol> announcements;
};

// What P1 has seen before emitting its i-th symbol: its own symbols 1..i-1,
// P0's public symbols 1..i-1 and announced coins 1..i-1, interleaved.
VisibleHistory project_for_p1(const Transcript& t, std::size_t i);
// What P0 has seen before emitting its i-th symbol: P1's symbols 1..i, its own
// public symbols 1..i-1 and announced coins 1..i-1.
VisibleHistory project_for_p0(const Transcript& t, std::size_t i);

struct ProverContext {
  std::string_view input;
  Role role = Role::kP1;
  const VisibleHistory& seen;
  std::span<const Symbol> own;
};

// Deterministic next-symbol function. Implementations may memoize internally;
// one instance must not be shared between threads.
class ProverStrategy {
 public:
  virtual ~ProverStrategy() = default;
  virtual Symbol next(const ProverContext& ctx) const = 0;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<ProverStrategy> clone() const = 0;
};

class StrategyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DebateSetup {
  const MachineSpec* spec = nullptr;
  std::string input;
  Mode mode = Mode::kZeroInfo;
};

// $c1$c2...$cm#
std::vector<Symbol> encode_round(const std::vector<Configuration>& configs);

// P1 strategies.
std::unique_ptr<ProverStrategy> honest_p1(const DebateSetup& setup);
// `index` is the 1-based cell to corrupt; absent picks the smallest usable.
std::unique_ptr<ProverStrategy> p1_far_cell_error(
    const DebateSetup& setup, std::size_t round,
    std::optional<std::size_t> index = {});
std::unique_ptr<ProverStrategy> p1_head_error(const DebateSetup& setup,
                                              std::size_t round);
std::unique_ptr<ProverStrategy> p1_endless_config(const DebateSetup& setup,
                                                  std::size_t round);
std::unique_ptr<ProverStrategy> p1_wrong_initial(const DebateSetup& setup);
std::unique_ptr<ProverStrategy> p1_early_accept(const DebateSetup& setup,
                                                std::size_t round);
// Legal moves only, ending wherever the machine halts.
std::unique_ptr<ProverStrategy> p1_play_on(const DebateSetup& setup);

// P0 strategies. Those that point at errors are built against the P1 they
// face and predict its stream.
std::unique_ptr<ProverStrategy> honest_p0(const DebateSetup& setup,
                                          const ProverStrategy& p1);
std::unique_ptr<ProverStrategy> p0_misaligned_claim(const DebateSetup& setup,
                                                    const ProverStrategy& p1,
                                                    std::size_t j,
                                                    std::size_t k);
std::unique_ptr<ProverStrategy> p0_false_infinity(const DebateSetup& setup,
                                                  std::size_t round);
std::unique_ptr<ProverStrategy> p0_silent(const DebateSetup& setup);

enum class SyntaxFault { kTauFirst, kDoubleSigma, kInfinityOffSlot };
std::unique_ptr<ProverStrategy> p0_bad_syntax(const DebateSetup& setup,
                                              SyntaxFault fault);

// Restart protocol: the wrapped strategy sees only what happened since the
// last announced 0 coin.
std::unique_ptr<ProverStrategy> restart_aware(
    std::unique_ptr<ProverStrategy> inner);

// "far-cell-error:round=1,index=2" -> {far-cell-error, {round:1, index:2}}
struct StrategySpec {
  std::string text;
  std::string name;
  std::map<std::string, std::string> params;
};
StrategySpec parse_strategy_spec(std::string_view text);
std::unique_ptr<ProverStrategy> make_p1(const DebateSetup& setup,
                                        const StrategySpec& spec);
std::unique_ptr<ProverStrategy> make_p0(const DebateSetup& setup,
                                        const StrategySpec& spec,
                                        const ProverStrategy& p1);
std::vector<std::string> p1_strategy_names();
std::vector<std::string> p0_strategy_names();

// Drives two strategies under strict alternation, keeping both projections
// up to date incrementally.
class TranscriptBuilder {
 public:
  TranscriptBuilder(const DebateSetup& setup, const ProverStrategy& p1,
                    const ProverStrategy& p0);

  // Appends P1's next symbol, then P0's.
  void step();
  // Announces a verifier coin to both provers after the current step.
  void announce(int coin);

  const Transcript& transcript() const { return transcript_; }
  std::size_t size() const { return transcript_.p1.size(); }

 private:
  const DebateSetup& setup_;
  const ProverStrategy& p1_;
  const ProverStrategy& p0_;
  Transcript transcript_;
  VisibleHistory p1_view_;
  VisibleHistory p0_view_;
};

// Two-row dump of steps [from, to) in the layout
//   P1 : $ a1 a2 ... $ b1 ...
//   P0 : ς 0  0  ... 0 ...
std::string figure_dump(const MachineSpec& spec, const Transcript& t,
                        std::size_t from, std::size_t to);

}  // namespace debatelab
