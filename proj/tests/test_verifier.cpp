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

#include "common.hpp"
#include "debatelab/search.hpp"
#include "debatelab/tape.hpp"
#include "debatelab/verifier.hpp"

using namespace debatelab;

namespace {

struct Pair {
  std::unique_ptr<ProverStrategy> p1, p0;
};

Pair make_pair(const DebateSetup& setup, const std::string& p1,
               const std::string& p0) {
  Pair out;
  out.p1 = make_p1(setup, parse_strategy_spec(p1));
  out.p0 = make_p0(setup, parse_strategy_spec(p0), *out.p1);
  return out;
}

Outcome live(const MachineSpec& spec, ProtocolParams params,
             const std::string& input, const std::string& p1,
             const std::string& p0, std::uint64_t seed = 7) {
  const DebateSetup setup{&spec, input, params.mode};
  Pair p = make_pair(setup, p1, p0);
  RandomSource rng(seed);
  return run_protocol(spec, params, input, *p.p1, *p.p0, rng);
}

}  // namespace

TEST_CASE("honest prover against a silent refuter accepts at the first round end") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  const Outcome o = live(spec, {}, "aabaa", "honest", "silent");
  CHECK(o.verdict == Verdict::kAccept);
  CHECK(o.reason == Reason::kRoundEnd);
  CHECK(o.tallies.rounds == 1);
  const auto acp = generate_acp(spec, "aabaa");
  REQUIRE(acp);
  CHECK(o.steps == encode_round(*acp).size());
}

TEST_CASE("a wrong initial configuration is rejected inside the first configuration") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  for (const char* p0 : {"silent", "honest", "false-infinity"}) {
    const Outcome o = live(spec, {}, "aabaa", "wrong-initial", p0);
    CHECK(o.verdict == Verdict::kReject);
    CHECK(o.reason == Reason::kP1Syntax);
    CHECK(o.steps == 4);  // $ <S,0> _ then the closing $
  }
}

TEST_CASE("a head error is caught by the verifier's own window check") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  const Outcome o = live(spec, {}, "aabaa", "head-error", "silent");
  CHECK(o.verdict == Verdict::kReject);
  CHECK(o.reason == Reason::kWindow);
  const Outcome n = live(spec, {}, "aaaba", "head-error", "honest");
  CHECK(n.verdict == Verdict::kReject);
  CHECK(n.reason == Reason::kWindow);
}

TEST_CASE("linear ruler: honest configurations pass, endless ones fail after m*n symbols") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  const ProtocolParams params = resolve_params(spec, {}, 5);
  const Outcome honest = live(spec, {}, "aabaa", "honest", "false-infinity");
  CHECK(honest.verdict == Verdict::kAccept);
  CHECK(honest.reason == Reason::kInfinityRuler);
  CHECK(honest.tallies.infinity_checks == 1);

  const Outcome endless = live(spec, {}, "aaaba", "endless-config", "honest");
  CHECK(endless.verdict == Verdict::kReject);
  CHECK(endless.reason == Reason::kInfinityRuler);
  // ∞ sits on the opening $ of the endless configuration, after "$c1".
  CHECK(endless.steps == 3 + std::uint64_t{params.m} * 5);
}

TEST_CASE("P0 syntax errors accept") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  for (const char* kind : {"tau-first", "double-sigma", "infinity-off-slot"}) {
    const Outcome o = live(spec, {}, "aabaa", "honest",
                           std::string("bad-syntax:kind=") + kind);
    CHECK(o.verdict == Verdict::kAccept);
    CHECK(o.reason == Reason::kP0Syntax);
  }
}

TEST_CASE("early accept is caught by the window check") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  const Outcome o = live(spec, {}, "aaaba", "early-accept", "honest");
  CHECK(o.verdict == Verdict::kReject);
  CHECK(o.reason == Reason::kWindow);
}

TEST_CASE("play-on P1 on a non-member is rejected at round end") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  const Outcome o = live(spec, {}, "aaaba", "play-on", "honest");
  CHECK(o.verdict == Verdict::kReject);
  CHECK(o.reason == Reason::kRoundEnd);
}

TEST_CASE("far-cell errors draw a claim every round") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  ProtocolParams params;
  params.l = 1;
  params.max_steps = 200000;
  const Outcome o = live(spec, params, "aaabaa", "far-cell-error", "honest");
  CHECK(o.verdict != Verdict::kUndecided);
  CHECK(o.tallies.claims >= 1);
  CHECK(o.tallies.claims <= o.tallies.rounds);
}

TEST_CASE("replay is bit-identical to the live verifier") {
  const MachineSpec ntm = testing::machine("subset_sum.tm");
  struct Case {
    const MachineSpec* spec;
    Mode mode;
    const char* input;
    const char* p1;
    const char* p0;
  };
  const MachineSpec atm = testing::machine("token_game.tm");
  const MachineSpec dtm = testing::machine("binary_counter.tm");
  const Case cases[] = {
      {&ntm, Mode::kZeroInfo, "aabaa", "honest", "silent"},
      {&ntm, Mode::kZeroInfo, "aabaa", "honest", "misaligned:j=1,k=2"},
      {&ntm, Mode::kZeroInfo, "aabaa", "honest", "false-infinity"},
      {&ntm, Mode::kZeroInfo, "aaabaa", "far-cell-error", "honest"},
      {&ntm, Mode::kZeroInfo, "aaaba", "endless-config", "honest"},
      {&atm, Mode::kPartialInfo, "aa", "honest", "honest"},
      {&atm, Mode::kPartialInfo, "aa", "honest", "misaligned:j=1,k=2"},
      {&atm, Mode::kPartialInfo, "aaa", "play-on", "honest"},
      {&atm, Mode::kPartialInfo, "aaa", "head-error", "honest"},
      {&dtm, Mode::kCips, "b", "honest", "silent"},
      {&dtm, Mode::kCips, "ab", "play-on", "honest"},
      {&dtm, Mode::kCips, "a", "honest", "misaligned:j=1,k=2"},
  };
  for (const Case& c : cases) {
    const std::string label = std::string(c.input) + " " + c.p1 + " " + c.p0;
    CAPTURE(label);
    ProtocolParams params;
    params.mode = c.mode;
    params.l = 1;
    params.max_steps = 20000;
    const DebateSetup setup{c.spec, c.input, c.mode};
    Pair p = make_pair(setup, c.p1, c.p0);
    DebateTape tape(*c.spec, params, c.input, *p.p1, *p.p0);
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
      RandomSource a(seed), b(seed);
      const Outcome slow = run_protocol(*c.spec, params, c.input, *p.p1, *p.p0, a);
      const Outcome fast = replay(tape, b);
      CHECK(slow == fast);
      CHECK(a.consumed() == b.consumed());
    }
  }
}

TEST_CASE("serialized scratch has one size for every step and input length") {
  const MachineSpec spec = testing::machine("micro_square.tm");
  std::size_t size = 0;
  for (std::size_t n = 4; n <= 64; ++n) {
    const std::string input(n, n % 2 ? 'a' : 'b');
    ProtocolParams params;
    params.l = 1;
    params.max_steps = 5000;
    const DebateSetup setup{&spec, input, params.mode};
    Pair p = make_pair(setup, "honest", n % 3 ? "false-infinity" : "misaligned:j=1,k=2");
    RandomSource rng(n);
    run_protocol(spec, params, input, *p.p1, *p.p0, rng,
                 [&](const TraceRecord& r) {
                   const std::size_t s = r.scratch.serialize().size();
                   if (size == 0) size = s;
                   CHECK(s == size);
                 });
  }
  CHECK(size == VerifierScratch{}.serialize().size());
}

TEST_CASE("protocol violations are contract errors, not verdicts") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  ProtocolParams params = resolve_params(spec, {}, 3);
  Verifier v(spec, "aba", params);
  RandomSource rng(1);
  LiveCoins coins(rng);
  CHECK_THROWS_AS(v.step(Symbol::tau(), Symbol::zero(), coins), ProtocolViolation);
  CHECK_THROWS_AS(v.step(Symbol::delimiter(), Symbol::choice(0), coins),
                  ProtocolViolation);
}
