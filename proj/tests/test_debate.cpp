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

#include <algorithm>

#include "common.hpp"
#include "debatelab/debate.hpp"
#include "debatelab/search.hpp"
#include "debatelab/verifier.hpp"

using namespace debatelab;

namespace {

Transcript play(const DebateSetup& setup, const ProverStrategy& p1,
                const ProverStrategy& p0, std::size_t steps) {
  TranscriptBuilder b(setup, p1, p0);
  for (std::size_t i = 0; i < steps; ++i) b.step();
  return b.transcript();
}

struct Built {
  DebateSetup setup;
  std::unique_ptr<ProverStrategy> p1, p0;
};

Built build(const MachineSpec& spec, const std::string& input, Mode mode,
            const std::string& p1, const std::string& p0) {
  Built b{{&spec, input, mode}, nullptr, nullptr};
  b.p1 = make_p1(b.setup, parse_strategy_spec(p1));
  b.p0 = make_p0(b.setup, parse_strategy_spec(p0), *b.p1);
  return b;
}

std::vector<std::size_t> positions(const std::vector<Symbol>& s, SymbolKind k) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].kind == k) out.push_back(i);
  return out;
}

}  // namespace

TEST_CASE("projections follow strict alternation") {
  Transcript t;
  t.p1 = {Symbol::delimiter(), Symbol::work(0), Symbol::work(1), Symbol::delimiter()};
  t.p0 = {Symbol::zero(), Symbol::choice(1), Symbol::zero(), Symbol::zero()};
  CHECK(project_for_p1(t, 1).empty());
  const VisibleHistory h = project_for_p1(t, 4);
  REQUIRE(h.size() == 4);
  CHECK(h[0].origin == Origin::kP1);
  CHECK(h[1].origin == Origin::kP1);
  CHECK(h[2].origin == Origin::kP0);
  CHECK(h[2].index == 2);
  CHECK(h[2].symbol == Symbol::choice(1));
  CHECK(h[3].origin == Origin::kP1);
  CHECK(h[3].index == 3);

  const VisibleHistory g = project_for_p0(t, 1);
  REQUIRE(g.size() == 1);
  CHECK(g[0].origin == Origin::kP1);
  CHECK(g[0].symbol == Symbol::delimiter());
  const VisibleHistory all = project_for_p0(t, 4);
  CHECK(std::count_if(all.begin(), all.end(), [](const Seen& s) {
          return s.origin == Origin::kP1;
        }) == 4);
  CHECK_THROWS_AS(project_for_p0(t, 5), ContractViolation);
  CHECK_THROWS_AS(project_for_p1(t, 6), ContractViolation);
}

TEST_CASE("private markers never reach P1") {
  Transcript t;
  t.p1 = {Symbol::delimiter(), Symbol::work(0), Symbol::work(0)};
  t.p0 = {Symbol::sigma(), Symbol::tau(), Symbol::infinity()};
  for (std::size_t i = 1; i <= 4; ++i)
    for (const Seen& s : project_for_p1(t, i)) CHECK(is_public(s.symbol));
}

TEST_CASE("honest P1 repeats its accepting path, with $ after every #") {
  const MachineSpec spec = testing::machine("micro_accept.tm");
  Built b = build(spec, "a", Mode::kZeroInfo, "honest", "silent");
  const Transcript t = play(b.setup, *b.p1, *b.p0, 20);
  const auto acp = generate_acp(spec, "a");
  REQUIRE(acp);
  REQUIRE(acp->size() == 2);
  const auto round = encode_round(*acp);
  CHECK(format_symbol(spec, round[1]) == "<S,0>");
  CHECK(format_symbol(spec, round[3]) == "<Acc,0>");
  for (std::size_t i = 0; i < t.p1.size(); ++i) {
    CHECK(t.p1[i] == round[i % round.size()]);
    if (i > 0 && t.p1[i - 1].is_separator()) CHECK(t.p1[i].is_delimiter());
  }
}

TEST_CASE("honest P0 stays silent against honest P1 in zero-info mode") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  for (const char* w : {"aabaa", "aba", "b"}) {
    Built b = build(spec, w, Mode::kZeroInfo, "honest", "honest");
    const Transcript t = play(b.setup, *b.p1, *b.p0, 300);
    for (const Symbol& s : t.p0) CHECK(s == Symbol::zero());
  }
}

TEST_CASE("P0's private symbols never change P1's stream") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  const std::string w = "aaabaa";
  Built a = build(spec, w, Mode::kZeroInfo, "far-cell-error", "silent");
  Built c = build(spec, w, Mode::kZeroInfo, "far-cell-error", "honest");
  Built d = build(spec, w, Mode::kZeroInfo, "far-cell-error", "misaligned:j=1,k=2");
  const Transcript ta = play(a.setup, *a.p1, *a.p0, 400);
  CHECK(play(c.setup, *c.p1, *c.p0, 400).p1 == ta.p1);
  CHECK(play(d.setup, *d.p1, *d.p0, 400).p1 == ta.p1);
  CHECK(play(a.setup, *a.p1, *a.p0, 400).p1 == ta.p1);  // replay
}

TEST_CASE("far-cell error differs from the honest stream in one symbol") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  const std::string w = "aaabaaa";
  Built h = build(spec, w, Mode::kZeroInfo, "honest", "silent");
  Built f = build(spec, w, Mode::kZeroInfo, "far-cell-error", "honest");
  const Transcript th = play(h.setup, *h.p1, *h.p0, 200);
  const Transcript tf = play(f.setup, *f.p1, *f.p0, 200);
  std::size_t diffs = 0, at = 0;
  for (std::size_t i = 0; i < th.p1.size(); ++i)
    if (!(th.p1[i] == tf.p1[i])) {
      ++diffs;
      at = i;
    }
  CHECK(diffs == 1);

  // Honest P0 claims exactly there: ς on the $ before α, τ and υ on the
  // same cell index of α and β, β's index being the mutated cell.
  const auto sig = positions(tf.p0, SymbolKind::kSigma);
  const auto tau = positions(tf.p0, SymbolKind::kTau);
  const auto ups = positions(tf.p0, SymbolKind::kUpsilon);
  REQUIRE(sig.size() >= 1);
  REQUIRE(tau.size() >= 1);
  REQUIRE(ups.size() >= 1);
  CHECK(tf.p1[sig[0]].is_delimiter());
  std::size_t beta_dollar = tau[0];
  while (!tf.p1[beta_dollar].is_delimiter()) ++beta_dollar;
  CHECK(tau[0] - sig[0] == ups[0] - beta_dollar);
  CHECK(ups[0] == at);
}

TEST_CASE("misaligned P0 marks cell j of α and cell k of β") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  Built b = build(spec, "aabaa", Mode::kZeroInfo, "honest", "misaligned:j=1,k=2");
  const Transcript t = play(b.setup, *b.p1, *b.p0, 60);
  const auto sig = positions(t.p0, SymbolKind::kSigma);
  const auto tau = positions(t.p0, SymbolKind::kTau);
  const auto ups = positions(t.p0, SymbolKind::kUpsilon);
  REQUIRE(!sig.empty());
  REQUIRE(!tau.empty());
  REQUIRE(!ups.empty());
  CHECK(t.p1[sig[0]].is_delimiter());
  CHECK(tau[0] == sig[0] + 1);
  std::size_t beta_dollar = tau[0];
  while (!t.p1[beta_dollar].is_delimiter()) ++beta_dollar;
  CHECK(ups[0] == beta_dollar + 2);
}

TEST_CASE("silent P0 emits only zeros") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  Built b = build(spec, "aaaba", Mode::kZeroInfo, "play-on", "silent");
  for (const Symbol& s : play(b.setup, *b.p1, *b.p0, 100).p0) CHECK(s == Symbol::zero());
}

TEST_CASE("honest P0 flags an endless configuration at its opening $") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  const std::string w = "aaaba";
  Built b = build(spec, w, Mode::kZeroInfo, "endless-config", "honest");
  const Transcript t = play(b.setup, *b.p1, *b.p0, 3 * spec.space(w.size()) + 10);
  const auto inf = positions(t.p0, SymbolKind::kInfinity);
  REQUIRE(inf.size() == 1);
  CHECK(t.p1[inf[0]].is_delimiter());
  for (std::size_t i = inf[0] + 1; i < t.p1.size(); ++i)
    CHECK(!t.p1[i].is_delimiter());
}

TEST_CASE("zero-info P0 emits only private symbols") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  for (const char* p1 : {"honest", "head-error", "far-cell-error", "early-accept"}) {
    const std::string w = std::string(p1) == "honest" ? "aabaa" : "aaabaa";
    Built b = build(spec, w, Mode::kZeroInfo, p1, "honest");
    for (const Symbol& s : play(b.setup, *b.p1, *b.p0, 200).p0)
      CHECK(!is_public(s));
  }
}

TEST_CASE("bad-syntax P0 variants") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  {
    Built b = build(spec, "aabaa", Mode::kZeroInfo, "honest", "bad-syntax:kind=tau-first");
    const Transcript t = play(b.setup, *b.p1, *b.p0, 30);
    const auto tau = positions(t.p0, SymbolKind::kTau);
    REQUIRE(!tau.empty());
    CHECK(positions(t.p0, SymbolKind::kSigma).empty());
  }
  {
    Built b = build(spec, "aabaa", Mode::kZeroInfo, "honest", "bad-syntax:kind=double-sigma");
    CHECK(positions(play(b.setup, *b.p1, *b.p0, 40).p0, SymbolKind::kSigma).size() >= 2);
  }
  {
    Built b = build(spec, "aabaa", Mode::kZeroInfo, "honest",
                    "bad-syntax:kind=infinity-off-slot");
    const Transcript t = play(b.setup, *b.p1, *b.p0, 30);
    const auto inf = positions(t.p0, SymbolKind::kInfinity);
    REQUIRE(!inf.empty());
    CHECK(!t.p1[inf[0]].is_delimiter());
  }
}

TEST_CASE("partial-info P1 follows the announced universal choice") {
  const MachineSpec spec = testing::machine("token_game.tm");
  // Against every choice P0 can make, honest P1 still reaches acceptance.
  for (const char* w : {"a", "aa", "aaaa", "aaaaa"}) {
    CAPTURE(w);
    Built b = build(spec, w, Mode::kPartialInfo, "honest", "honest");
    RandomSource rng(1);
    ProtocolParams params;
    params.mode = Mode::kPartialInfo;
    const Outcome o = run_partial_info(spec, params, w, *b.p1, *b.p0, rng);
    CHECK(o.verdict == Verdict::kAccept);
    CHECK(o.reason == Reason::kRoundEnd);
  }
  for (const char* w : {"aaa", "aaaaaa"}) {
    CAPTURE(w);
    Built b = build(spec, w, Mode::kPartialInfo, "play-on", "honest");
    RandomSource rng(1);
    ProtocolParams params;
    params.mode = Mode::kPartialInfo;
    const Outcome o = run_partial_info(spec, params, w, *b.p1, *b.p0, rng);
    CHECK(o.verdict == Verdict::kReject);
  }
}

TEST_CASE("partial-info choices sit only at announcement slots") {
  const MachineSpec spec = testing::machine("token_game.tm");
  Built b = build(spec, "aaaa", Mode::kPartialInfo, "honest", "honest");
  const Transcript t = play(b.setup, *b.p1, *b.p0, 80);
  for (std::size_t i = 0; i < t.p0.size(); ++i)
    if (t.p0[i].kind == SymbolKind::kChoice) CHECK(t.p1[i].is_delimiter());
  CHECK(!positions(t.p0, SymbolKind::kChoice).empty());
}

TEST_CASE("restart-aware strategies start over after an announced 0") {
  const MachineSpec spec = testing::machine("binary_counter.tm");
  DebateSetup setup{&spec, "a", Mode::kCips};
  auto p1 = restart_aware(honest_p1(setup));
  auto p0 = restart_aware(p0_silent(setup));
  TranscriptBuilder b(setup, *p1, *p0);
  for (int i = 0; i < 5; ++i) {
    b.step();
    b.announce(1);
  }
  b.step();
  b.announce(0);
  for (int i = 0; i < 6; ++i) {
    b.step();
    b.announce(1);
  }
  const auto& t = b.transcript();
  for (int i = 0; i < 6; ++i) CHECK(t.p1[6 + i] == t.p1[i]);
}

TEST_CASE("restart protocol outcomes depend only on the seed") {
  const MachineSpec spec = testing::machine("binary_counter.tm");
  ProtocolParams params;
  params.mode = Mode::kCips;
  params.max_steps = 20000;
  for (const char* w : {"b", "ab", "a"}) {
    const std::string p1 = std::string(w) == "ab" ? "play-on" : "honest";
    Built b = build(spec, w, Mode::kCips, p1, "honest");
    RandomSource r1(5), r2(5);
    const Outcome o1 = run_cips(spec, params, w, *b.p1, *b.p0, r1);
    const Outcome o2 = run_cips(spec, params, w, *b.p1, *b.p0, r2);
    CHECK(o1 == o2);
    CHECK(r1.consumed() == r2.consumed());
  }
}

TEST_CASE("runners check the mode") {
  const MachineSpec spec = testing::machine("binary_counter.tm");
  Built b = build(spec, "b", Mode::kZeroInfo, "honest", "silent");
  ProtocolParams params;
  RandomSource rng(1);
  CHECK_THROWS_AS(run_cips(spec, params, "b", *b.p1, *b.p0, rng), ContractViolation);
  params.mode = Mode::kPartialInfo;
  CHECK_THROWS(run_partial_info(spec, params, "b", *b.p1, *b.p0, rng));
}

TEST_CASE("figure dump shows both rows") {
  const MachineSpec spec = testing::machine("subset_sum.tm");
  Built b = build(spec, "aabaa", Mode::kZeroInfo, "honest", "misaligned:j=1,k=2");
  const Transcript t = play(b.setup, *b.p1, *b.p0, 20);
  const std::string dump = figure_dump(spec, t, 0, 20);
  CHECK(dump.find("P1") != std::string::npos);
  CHECK(dump.find("P0") != std::string::npos);
  CHECK(dump.find("ς") != std::string::npos);
  CHECK(dump.find("τ") != std::string::npos);
  CHECK(dump.find("υ") != std::string::npos);
}
