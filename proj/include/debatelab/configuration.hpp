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
#include <string>
#include <vector>

#include "debatelab/machine.hpp"
#include "debatelab/symbol.hpp"

namespace debatelab {

// A configuration u q_d x: work cells with exactly one state/direction cell
// whose position marks the work head. The head scans the cell after it; a
// missing cell reads as blank.
struct Configuration {
  std::vector<Symbol> cells;

  std::size_t size() const { return cells.size(); }
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

bool is_well_formed(const Configuration& c);
// Index of the state/direction cell; requires a well-formed configuration.
std::size_t head_index(const Configuration& c);
StateId state_of(const Configuration& c);
std::uint64_t counter_value(const MachineSpec& spec, const Configuration& c);
std::string format_configuration(const MachineSpec& spec,
                                 const Configuration& c);
// Byte key suitable for hashing whole configurations.
std::string configuration_key(const Configuration& c);

Configuration initial_configuration(const MachineSpec& spec);

struct Successor {
  Configuration config;
  int input_move = 0;
  std::size_t entry = 0;  // index into spec.transitions
};

// All configurations one move away, in transition-entry order.
std::vector<Successor> successors(const MachineSpec& spec,
                                  const Configuration& config,
                                  char scanned_input);

// Cell at 0-based position, $ outside the configuration.
Symbol cell_or_pad(const Configuration& c, std::ptrdiff_t pos);
// The three cells starting at 0-based position `start`.
Triple triple_at(const Configuration& c, std::ptrdiff_t start);
Triple window_at_head(const Configuration& c);

// Does some move (or, for moves == 2, a move honouring `announced_choice`
// followed by any move) take the head window `prev` to `next` while the
// input head scans `scanned_input`?
bool head_windows_consistent(const MachineSpec& spec, const Triple& prev,
                             const Triple& next, char scanned_input,
                             int moves = 1,
                             std::optional<int> announced_choice = {});

// Can `a` and `b`, read at the same cell index of two consecutive
// configurations, occur in a legitimate run? `at_left_edge` is true when the
// triples start at cell 1. For moves == 2, consecutive means two moves apart.
bool triple_pair_legitimate(const MachineSpec& spec, const Triple& a,
                            const Triple& b, bool at_left_edge,
                            int moves = 1);

// First 0-based index at which the two configurations show an illegitimate
// triple pair, if any.
std::optional<std::size_t> first_illegitimate_index(const MachineSpec& spec,
                                                    const Configuration& a,
                                                    const Configuration& b,
                                                    int moves = 1);

MachineSpec instrument_with_counter(const MachineSpec& spec,
                                    const CounterParams& params);

}  // namespace debatelab
