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
#include <cstdint>
#include <functional>
#include <string>

namespace debatelab {

using StateId = std::int16_t;
using WorkSymbolId = std::int16_t;

// Every symbol that can appear on a configuration, in a prover stream, or in
// a verifier window. Public kinds form the shared alphabet; the last five are
// the private markers only P0 may emit.
enum class SymbolKind : std::uint8_t {
  kWork,
  kStateDir,
  kDelimiter,  // $
  kSeparator,  // #
  kChoice,     // universal-choice announcement
  kCoin,       // announced verifier coin (restart protocol)
  kZero,
  kSigma,
  kTau,
  kUpsilon,
  kInfinity,
};

struct Symbol {
  SymbolKind kind = SymbolKind::kDelimiter;
  std::int16_t value = 0;     // work symbol, state, choice or coin value
  std::int8_t dir = 0;        // input-head direction, state/direction only
  std::uint8_t counter = 0;   // counter-track digit, configuration cells only

  static constexpr Symbol work(WorkSymbolId w, std::uint8_t counter = 0) {
    return {SymbolKind::kWork, w, 0, counter};
  }
  static constexpr Symbol state_dir(StateId q, int dir,
                                    std::uint8_t counter = 0) {
    return {SymbolKind::kStateDir, q, static_cast<std::int8_t>(dir), counter};
  }
  static constexpr Symbol delimiter() { return {SymbolKind::kDelimiter}; }
  static constexpr Symbol separator() { return {SymbolKind::kSeparator}; }
  static constexpr Symbol choice(int c) {
    return {SymbolKind::kChoice, static_cast<std::int16_t>(c)};
  }
  static constexpr Symbol coin(int b) {
    return {SymbolKind::kCoin, static_cast<std::int16_t>(b)};
  }
  static constexpr Symbol zero() { return {SymbolKind::kZero}; }
  static constexpr Symbol sigma() { return {SymbolKind::kSigma}; }
  static constexpr Symbol tau() { return {SymbolKind::kTau}; }
  static constexpr Symbol upsilon() { return {SymbolKind::kUpsilon}; }
  static constexpr Symbol infinity() { return {SymbolKind::kInfinity}; }

  constexpr bool is_work() const { return kind == SymbolKind::kWork; }
  constexpr bool is_head() const { return kind == SymbolKind::kStateDir; }
  constexpr bool is_cell() const { return is_work() || is_head(); }
  constexpr bool is_delimiter() const { return kind == SymbolKind::kDelimiter; }
  constexpr bool is_separator() const { return kind == SymbolKind::kSeparator; }

  // Comparison on the first track only (ignores the counter digit).
  constexpr bool same_track(const Symbol& o) const {
    return kind == o.kind && value == o.value && dir == o.dir;
  }

  constexpr std::uint64_t packed() const {
    return static_cast<std::uint64_t>(kind) |
           (static_cast<std::uint64_t>(static_cast<std::uint16_t>(value)) << 8) |
           (static_cast<std::uint64_t>(static_cast<std::uint8_t>(dir)) << 24) |
           (static_cast<std::uint64_t>(counter) << 32);
  }

  friend constexpr bool operator==(const Symbol&, const Symbol&) = default;
};

// Public symbols can be seen by the opposing prover.
constexpr bool is_public(const Symbol& s) {
  return s.kind <= SymbolKind::kCoin;
}
constexpr bool is_private(const Symbol& s) { return !is_public(s); }

// Three consecutive cells; positions outside a configuration read as $.
using Triple = std::array<Symbol, 3>;

}  // namespace debatelab

template <>
struct std::hash<debatelab::Symbol> {
  std::size_t operator()(const debatelab::Symbol& s) const noexcept {
    return std::hash<std::uint64_t>{}(s.packed());
  }
};
