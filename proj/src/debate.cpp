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

#include "debatelab/debate.hpp"

#include <algorithm>
#include <charconv>

namespace debatelab {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kZeroInfo: return "zero-info";
    case Mode::kPartialInfo: return "partial-info";
    case Mode::kCips: return "cips";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "zero-info") return Mode::kZeroInfo;
  if (text == "partial-info") return Mode::kPartialInfo;
  if (text == "cips") return Mode::kCips;
  return std::nullopt;
}

VisibleHistory project_for_p1(const Transcript& t, std::size_t i) {
  if (i < 1 || i > t.p1.size() + 1 || t.p0.size() + 1 < i)
    throw ContractViolation("project_for_p1: index outside the emitted prefix");
  VisibleHistory out;
  for (std::size_t s = 1; s < i; ++s) {
    out.push_back({Origin::kP1, s, t.p1[s - 1]});
    if (is_public(t.p0[s - 1])) out.push_back({Origin::kP0, s, t.p0[s - 1]});
    if (s <= t.announcements.size())
      out.push_back({Origin::kVerifier, s, t.announcements[s - 1]});
  }
  return out;
}

VisibleHistory project_for_p0(const Transcript& t, std::size_t i) {
  if (i < 1 || i > t.p0.size() + 1 || t.p1.size() < i)
    throw ContractViolation("project_for_p0: index outside the emitted prefix");
  VisibleHistory out;
  for (std::size_t s = 1; s <= i; ++s) {
    out.push_back({Origin::kP1, s, t.p1[s - 1]});
    if (s == i) break;
    if (is_public(t.p0[s - 1])) out.push_back({Origin::kP0, s, t.p0[s - 1]});
    if (s <= t.announcements.size())
      out.push_back({Origin::kVerifier, s, t.announcements[s - 1]});
  }
  return out;
}

std::vector<Symbol> encode_round(const std::vector<Configuration>& configs) {
  std::vector<Symbol> out;
  for (const Configuration& c : configs) {
    out.push_back(Symbol::delimiter());
    out.insert(out.end(), c.cells.begin(), c.cells.end());
  }
  out.push_back(Symbol::separator());
  return out;
}

TranscriptBuilder::TranscriptBuilder(const DebateSetup& setup,
                                     const ProverStrategy& p1,
                                     const ProverStrategy& p0)
    : setup_(setup), p1_(p1), p0_(p0) {}

void TranscriptBuilder::step() {
  const std::size_t i = transcript_.p1.size() + 1;
  const Symbol a = p1_.next(
      {setup_.input, Role::kP1, p1_view_, std::span(transcript_.p1)});
  transcript_.p1.push_back(a);
  p1_view_.push_back({Origin::kP1, i, a});
  p0_view_.push_back({Origin::kP1, i, a});
  const Symbol b = p0_.next(
      {setup_.input, Role::kP0, p0_view_, std::span(transcript_.p0)});
  transcript_.p0.push_back(b);
  if (is_public(b)) {
    p1_view_.push_back({Origin::kP0, i, b});
    p0_view_.push_back({Origin::kP0, i, b});
  }
}

void TranscriptBuilder::announce(int coin) {
  const std::size_t t = transcript_.p1.size();
  if (transcript_.announcements.size() + 1 != t)
    throw ContractViolation("one announcement per step, after the step");
  const Symbol c = Symbol::coin(coin);
  transcript_.announcements.push_back(c);
  p1_view_.push_back({Origin::kVerifier, t, c});
  p0_view_.push_back({Origin::kVerifier, t, c});
}

std::string figure_dump(const MachineSpec& spec, const Transcript& t,
                        std::size_t from, std::size_t to) {
  to = std::min(to, std::min(t.p1.size(), t.p0.size()));
  std::string top = "P1 :", bottom = "P0 :";
  for (std::size_t i = from; i < to; ++i) {
    const std::string a = format_symbol(spec, t.p1[i]);
    const std::string b = format_symbol(spec, t.p0[i]);
    // Column width in code points; ς τ υ ∞ are multi-byte.
    auto width = [](const std::string& s) {
      return static_cast<std::size_t>(std::count_if(
          s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
    };
    const std::size_t w = std::max(width(a), width(b));
    top += ' ' + a + std::string(w - width(a), ' ');
    bottom += ' ' + b + std::string(w - width(b), ' ');
  }
  while (!top.empty() && top.back() == ' ') top.pop_back();
  while (!bottom.empty() && bottom.back() == ' ') bottom.pop_back();
  return top + '\n' + bottom + '\n';
}

StrategySpec parse_strategy_spec(std::string_view text) {
  StrategySpec out;
  out.text = std::string(text);
  const auto colon = text.find(':');
  out.name = std::string(text.substr(0, colon));
  if (out.name.empty()) throw StrategyError("empty strategy name");
  if (colon == std::string_view::npos) return out;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw StrategyError("strategy parameter '" + std::string(item) +
                          "' is not key=value");
    out.params[std::string(item.substr(0, eq))] =
        std::string(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

namespace {

std::size_t number_param(const StrategySpec& spec, const std::string& key,
                         std::optional<std::size_t> fallback = {}) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    if (fallback) return *fallback;
    throw StrategyError(spec.name + " needs parameter '" + key + "'");
  }
  std::size_t v = 0;
  const auto& s = it->second;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw StrategyError(spec.name + ": '" + key + "' must be a number");
  return v;
}

void expect_params(const StrategySpec& spec,
                   std::initializer_list<std::string_view> allowed) {
  for (const auto& [k, v] : spec.params)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw StrategyError(spec.name + ": unknown parameter '" + k + "'");
}

}  // namespace

std::vector<std::string> p1_strategy_names() {
  return {"honest",        "far-cell-error", "head-error", "endless-config",
          "wrong-initial", "early-accept",   "play-on"};
}

std::vector<std::string> p0_strategy_names() {
  return {"honest", "misaligned", "false-infinity", "silent", "bad-syntax"};
}

std::unique_ptr<ProverStrategy> make_p1(const DebateSetup& setup,
                                        const StrategySpec& spec) {
  const std::string& n = spec.name;
  if (n == "honest") {
    expect_params(spec, {});
    return honest_p1(setup);
  }
  if (n == "far-cell-error") {
    expect_params(spec, {"round", "index"});
    std::optional<std::size_t> index;
    if (spec.params.count("index")) index = number_param(spec, "index");
    return p1_far_cell_error(setup, number_param(spec, "round", 1), index);
  }
  if (n == "head-error") {
    expect_params(spec, {"round"});
    return p1_head_error(setup, number_param(spec, "round", 1));
  }
  if (n == "endless-config") {
    expect_params(spec, {"round"});
    return p1_endless_config(setup, number_param(spec, "round", 1));
  }
  if (n == "wrong-initial") {
    expect_params(spec, {});
    return p1_wrong_initial(setup);
  }
  if (n == "early-accept") {
    expect_params(spec, {"round"});
    return p1_early_accept(setup, number_param(spec, "round", 1));
  }
  if (n == "play-on") {
    expect_params(spec, {});
    return p1_play_on(setup);
  }
  throw StrategyError("unknown P1 strategy '" + n + "'");
}

std::unique_ptr<ProverStrategy> make_p0(const DebateSetup& setup,
                                        const StrategySpec& spec,
                                        const ProverStrategy& p1) {
  const std::string& n = spec.name;
  if (n == "honest") {
    expect_params(spec, {});
    return honest_p0(setup, p1);
  }
  if (n == "misaligned") {
    expect_params(spec, {"j", "k"});
    return p0_misaligned_claim(setup, p1, number_param(spec, "j", 1),
                               number_param(spec, "k", 2));
  }
  if (n == "false-infinity") {
    expect_params(spec, {"round"});
    return p0_false_infinity(setup, number_param(spec, "round", 1));
  }
  if (n == "silent") {
    expect_params(spec, {});
    return p0_silent(setup);
  }
  if (n == "bad-syntax") {
    expect_params(spec, {"kind"});
    auto it = spec.params.find("kind");
    const std::string kind = it == spec.params.end() ? "tau-first" : it->second;
    if (kind == "tau-first") return p0_bad_syntax(setup, SyntaxFault::kTauFirst);
    if (kind == "double-sigma")
      return p0_bad_syntax(setup, SyntaxFault::kDoubleSigma);
    if (kind == "infinity-off-slot")
      return p0_bad_syntax(setup, SyntaxFault::kInfinityOffSlot);
    throw StrategyError("bad-syntax: unknown kind '" + kind + "'");
  }
  throw StrategyError("unknown P0 strategy '" + n + "'");
}

}  // namespace debatelab
