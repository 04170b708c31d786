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
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "debatelab/symbol.hpp"

namespace debatelab {

inline constexpr char kLeftEndMarker = '<';
inline constexpr char kRightEndMarker = '>';

enum class MachineKind { kDeterministic, kNondeterministic, kAlternating };
enum class StateMode { kExistential, kUniversal };

std::string_view to_string(MachineKind kind);

// One entry of the transition relation:
// (from, input, read) -> (to, write, input_move, work_move).
struct Transition {
  StateId from = 0;
  char input = 0;
  WorkSymbolId read = 0;
  StateId to = 0;
  WorkSymbolId write = 0;
  int input_move = 0;
  int work_move = 0;
};

// s(n) = coefficient * n^degree + constant, measured in configuration cells
// (the state/direction cell included).
struct SpaceBound {
  int degree = 1;
  std::int64_t coefficient = 1;
  std::int64_t constant = 1;

  std::size_t operator()(std::size_t n) const;
  bool is_linear() const { return degree <= 1; }
};

// Step counter kept in a second track: each cell carries a digit of
// `digit_bits` bits, least significant digit in cell 1. The machine halts
// (rejecting) once the counter reaches 2^ceiling_log2.
struct CounterTrack {
  unsigned digit_bits = 1;
  unsigned ceiling_log2 = 0;
  std::size_t input_length = 0;

  std::uint64_t ceiling() const { return std::uint64_t{1} << ceiling_log2; }
  std::uint8_t digit_mask() const {
    return static_cast<std::uint8_t>((1u << digit_bits) - 1u);
  }
};

// Counter parameters: c bits per cell and the step ceiling 2^{c s(n)}.
struct CounterParams {
  unsigned c = 1;
  std::size_t input_length = 0;
  // Overrides c*s(n) as the ceiling exponent (desk-scale experiments).
  std::optional<unsigned> ceiling_log2;
};

struct MachineSpec {
  MachineKind kind = MachineKind::kNondeterministic;
  std::string name;
  std::vector<std::string> states;
  StateId start = 0;
  StateId accept = 0;
  StateId reject = 0;
  std::vector<StateMode> modes;  // alternating machines only
  std::string input_alphabet;    // without the end-markers
  std::vector<std::string> work_symbols;
  WorkSymbolId blank = 0;
  std::vector<Transition> transitions;
  SpaceBound space;
  std::optional<CounterTrack> counter;

  // Indices into `transitions` that apply to (state, input, read), in file
  // order. Valid after reindex().
  std::span<const std::size_t> entries(StateId q, char input,
                                       WorkSymbolId read) const;
  void reindex();

  bool is_halting(StateId q) const { return q == accept || q == reject; }
  bool is_universal(StateId q) const;
  // Input alphabet plus both end-markers.
  std::string tape_alphabet() const;

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<WorkSymbolId> find_work_symbol(std::string_view name) const;

 private:
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> index_;
};

struct Diagnostic {
  std::string rule;
  std::string detail;
};

// Empty iff every structural invariant of the machine holds.
std::vector<Diagnostic> validate_machine(const MachineSpec& spec);

class MachineParseError : public std::runtime_error {
 public:
  MachineParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

MachineSpec parse_machine(std::string_view text);
MachineSpec load_machine(const std::string& path);
std::string format_machine(const MachineSpec& spec);

// Human-readable rendering of a symbol, e.g. "x", "<q,+1>", "$", "ς".
std::string format_symbol(const MachineSpec& spec, const Symbol& s);

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace debatelab
