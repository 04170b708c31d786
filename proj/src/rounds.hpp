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
#include <optional>
#include <vector>

#include "debatelab/configuration.hpp"
#include "debatelab/debate.hpp"

namespace debatelab::detail {

// Within a round, the $ opening configuration 3, 5, 7, ... carries P0's
// universal choice in partial-information mode.
inline bool is_announcement(Mode mode, std::size_t config_number) {
  return mode == Mode::kPartialInfo && config_number >= 3 &&
         config_number % 2 == 1;
}

struct ParsedConfig {
  std::size_t number = 0;  // 1-based within the round
  std::size_t open = 0;    // 1-based stream index of the opening $
  Configuration config;
  bool malformed = false;  // a non-cell symbol inside, or not one head
  bool closed = false;
};

// Cells of a configuration that may never end, capped for inspection.
Configuration truncated(const Configuration& c, std::size_t cells);

// Index of the first configuration at which the verifier itself rejects
// (initial-configuration check, syntax, head windows, accepting end), if any.
// `choices` maps configuration numbers to the announced universal choice.
std::optional<std::size_t> first_deterministic_failure(
    const DebateSetup& setup, const std::vector<ParsedConfig>& configs,
    const std::map<std::size_t, int>& choices, bool round_closed);

// Incremental view of P1's stream as seen in a history: round number,
// configuration number and cell offset of the latest P1 symbol.
class P1Cursor {
 public:
  void update(const VisibleHistory& seen);

  std::size_t round() const { return round_; }           // 1-based
  std::size_t config_number() const { return config_; }  // 0 before first $
  std::size_t cells() const { return cells_; }           // since the last $
  bool last_is_delimiter() const { return last_delim_; }
  bool last_is_cell() const { return last_cell_; }

 private:
  void reset();

  std::size_t processed_ = 0;
  std::size_t last_p1_index_ = 0;
  std::size_t round_ = 1, config_ = 0, cells_ = 0;
  bool last_delim_ = false, last_cell_ = false;
};

}  // namespace debatelab::detail
