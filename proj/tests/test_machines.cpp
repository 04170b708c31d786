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
#include <functional>
#include <numeric>

#include "common.hpp"
#include "debatelab/configuration.hpp"
#include "debatelab/harness.hpp"
#include "debatelab/search.hpp"

using namespace debatelab;

namespace {

// Language predicates written straight from each machine's description.
bool subset_sum_member(const std::string& w) {
  std::size_t t = 0;
  while (t < w.size() && w[t] == 'a') ++t;
  std::vector<std::size_t> blocks;
  for (std::size_t i = t; i < w.size(); ++i) {
    if (w[i] == 'b') blocks.push_back(0);
    else ++blocks.back();
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << blocks.size()); ++mask) {
    std::size_t sum = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (mask >> i & 1) sum += blocks[i];
    if (sum == t) return true;
  }
  return false;
}

bool binary_counter_member(const std::string& w) {
  return (!w.empty() && w[0] == 'b') ||
         std::all_of(w.begin(), w.end(), [](char c) { return c == 'a'; });
}

bool token_game_member(const std::string& w) { return w.size() % 3 != 0; }

std::vector<std::string> all_words(const std::string& alphabet, std::size_t max) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].size() < max)
      for (char c : alphabet) out.push_back(out[i] + c);
  return out;
}

// Plain recursive minimax over the configuration game; no memo.
bool minimax(const MachineSpec& spec, const std::string& input,
             const Configuration& c, std::size_t pos, int depth) {
  const StateId q = c.cells[head_index(c)].value;
  if (q == spec.accept) return true;
  if (q == spec.reject || depth == 0) return false;
  const auto next = successors(spec, c, input_symbol_at(input, pos));
  if (next.empty()) return false;
  const auto win = [&](const Successor& s) {
    return minimax(spec, input, s.config,
                   static_cast<std::size_t>(static_cast<std::ptrdiff_t>(pos) +
                                            s.input_move),
                   depth - 1);
  };
  return spec.is_universal(q) ? std::all_of(next.begin(), next.end(), win)
                              : std::any_of(next.begin(), next.end(), win);
}

bool search_member(const MachineSpec& spec, const std::string& w) {
  if (spec.kind == MachineKind::kAlternating)
    return accepting_strategy_tree(spec, w, 64) != nullptr;
  return generate_acp(spec, w).has_value();
}

}  // namespace

TEST_CASE("every shipped machine validates cleanly") {
  for (const CorpusEntry& e : corpus()) {
    CAPTURE(e.file);
    const MachineSpec spec = load_machine(e.path);
    CHECK(validate_machine(spec).empty());
  }
}

TEST_CASE("corpus ships the required kinds of machine") {
  int ntm = 0, dtm = 0, atm = 0;
  for (const CorpusEntry& e : corpus()) {
    const MachineSpec spec = load_machine(e.path);
    switch (spec.kind) {
      case MachineKind::kNondeterministic: ++ntm; break;
      case MachineKind::kDeterministic: ++dtm; break;
      case MachineKind::kAlternating:
        ++atm;
        CHECK(spec.states.size() <= 8);
        break;
    }
  }
  CHECK(ntm >= 1);
  CHECK(dtm >= 2);
  CHECK(atm >= 1);
}

TEST_CASE("listed inputs match search and the language predicates") {
  const std::map<std::string, std::function<bool(const std::string&)>> lang = {
      {"subset_sum.tm", subset_sum_member},
      {"binary_counter.tm", binary_counter_member},
      {"token_game.tm", token_game_member},
      {"micro_accept.tm", [](const std::string&) { return true; }},
      {"micro_reject.tm", [](const std::string&) { return false; }},
      {"micro_square.tm", [](const std::string&) { return true; }},
  };
  for (const CorpusEntry& e : corpus()) {
    const MachineSpec spec = load_machine(e.path);
    REQUIRE(lang.count(e.file));
    for (const auto* list : {&e.members, &e.non_members}) {
      const bool expected = list == &e.members;
      for (const std::string& w : *list) {
        CAPTURE(e.file);
        CAPTURE(w);
        CHECK(w.size() <= 8);
        CHECK(lang.at(e.file)(w) == expected);
        CHECK(search_member(spec, w) == expected);
      }
    }
  }
}

TEST_CASE("NTM and DTM membership agrees with the predicates on all short words") {
  const MachineSpec ntm = testing::machine("subset_sum.tm");
  for (const std::string& w : all_words("ab", 6)) {
    CAPTURE(w);
    CHECK(generate_acp(ntm, w).has_value() == subset_sum_member(w));
  }
  const MachineSpec dtm = testing::machine("binary_counter.tm");
  for (const std::string& w : all_words("ab", 6)) {
    CAPTURE(w);
    CHECK(generate_acp(dtm, w).has_value() == binary_counter_member(w));
  }
}

TEST_CASE("ATM membership agrees with plain minimax") {
  const MachineSpec atm = testing::machine("token_game.tm");
  for (std::size_t n = 0; n <= 8; ++n) {
    const std::string w(n, 'a');
    CAPTURE(w);
    const bool mm = minimax(atm, w, initial_configuration(atm), 0, 40);
    CHECK(mm == token_game_member(w));
    CHECK(search_member(atm, w) == mm);
  }
}

TEST_CASE("accepting paths stay inside the declared space bound") {
  for (const char* file : {"subset_sum.tm", "binary_counter.tm", "micro_square.tm"}) {
    const MachineSpec spec = testing::machine(file);
    for (const std::string& w : all_words(spec.input_alphabet, 6)) {
      const auto acp = generate_acp(spec, w);
      if (!acp) continue;
      const std::string name = file;
      CAPTURE(name);
      CAPTURE(w);
      CHECK(acp->front() == initial_configuration(spec));
      CHECK(acp->back().cells[head_index(acp->back())].value == spec.accept);
      for (const Configuration& c : *acp)
        CHECK(c.cells.size() <= std::max<std::size_t>(spec.space(w.size()), 2));
    }
  }
}

TEST_CASE("deterministic machines have at most one move everywhere") {
  for (const CorpusEntry& e : corpus()) {
    const MachineSpec spec = load_machine(e.path);
    if (spec.kind != MachineKind::kDeterministic) continue;
    for (StateId q = 0; q < spec.states.size(); ++q)
      for (char in : spec.tape_alphabet())
        for (WorkSymbolId w = 0; w < spec.work_symbols.size(); ++w)
          CHECK(spec.entries(q, in, w).size() <= 1);
  }
}
