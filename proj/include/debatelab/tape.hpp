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
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "debatelab/debate.hpp"
#include "debatelab/random.hpp"
#include "debatelab/verifier.hpp"

namespace debatelab {

// What the verifier does with coins during one round, recorded while every
// coin set is assumed to contain a 1. Steps are 1-based within the round.
struct RoundOp {
  enum class Kind : std::uint8_t {
    kFlip,
    kClaim,
    kInfinityBatch,
    kInfinityStart,
    kSpanExtended,
  };
  Kind kind = Kind::kFlip;
  CoinSet set = CoinSet::kAccept1;
  bool legitimate = false;
  std::uint64_t count = 0;
  std::uint64_t step = 0;
};

// Runs of flips packed into one draw of at most 64 coins; `mask` marks which
// of the drawn coins belong to each set. Large flips and every other op are
// kept as they are.
struct PackedItem {
  enum class Kind : std::uint8_t { kBits, kOp };
  Kind kind = Kind::kBits;
  unsigned bits = 0;
  std::array<std::uint64_t, 5> mask{};
  std::size_t op = 0;  // index into ops, kOp only
};

struct RoundProgram {
  enum class End : std::uint8_t { kNextRound, kDecided, kTruncated };
  std::vector<RoundOp> ops;
  std::vector<PackedItem> packed;  // same coins as `ops`, whole rounds only
  std::uint64_t length = 0;
  bool starts_round = false;
  End end = End::kTruncated;
  Decision decision;  // kDecided only
};

// The coin-independent part of a debate: the provers are deterministic and
// see no verifier coins (outside the restart protocol, where every attempt
// replays a prefix of the same stream), so the transcript is fixed. Rounds are
// generated lazily, up to params.max_steps steps, and identical rounds share
// one program. Not thread-safe; use one tape per thread.
class DebateTape {
 public:
  DebateTape(const MachineSpec& spec, const ProtocolParams& params,
             std::string_view input, const ProverStrategy& p1,
             const ProverStrategy& p0);
  ~DebateTape();

  // Program of round r (0-based); null past a round that decides.
  const RoundProgram* round(std::size_t r);

  // Round r generated to at least `length` steps, or whole if it ends sooner.
  // An unfinished round has end kTruncated and stays valid only until the
  // next call.
  const RoundProgram* prefix(std::size_t r, std::uint64_t length);

  const ProtocolParams& params() const { return params_; }
  const std::string& input() const { return input_; }
  const MachineSpec& spec() const { return spec_; }
  std::size_t programs() const { return programs_.size(); }

 private:
  struct Pending;

  // Steps the open round until it has `length` steps or ends.
  void extend(std::uint64_t length);
  bool generate_next();

  const MachineSpec& spec_;
  ProtocolParams params_;
  std::string input_;
  DebateSetup setup_;
  std::unique_ptr<ProverStrategy> p1_, p0_;
  std::unique_ptr<TranscriptBuilder> builder_;
  std::uint64_t generated_steps_ = 0;
  bool finished_ = false;
  std::unique_ptr<Pending> pending_;
  std::vector<std::size_t> rounds_;
  std::vector<RoundProgram> programs_;
  std::unordered_map<std::string, std::size_t> by_content_;
};

// Runs one trial against a tape. Bit-identical to run_protocol with the same
// strategies and random source, including the coins consumed. `max_steps`
// may lower the tape's cap.
Outcome replay(DebateTape& tape, RandomSource& rng,
               std::optional<std::uint64_t> max_steps = {});

}  // namespace debatelab
