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

#include "rounds.hpp"

#include "debatelab/search.hpp"

namespace debatelab::detail {

Configuration truncated(const Configuration& c, std::size_t cells) {
  if (c.cells.size() <= cells) return c;
  return Configuration{{c.cells.begin(), c.cells.begin() +
                                             static_cast<std::ptrdiff_t>(cells)}};
}

std::optional<std::size_t> first_deterministic_failure(
    const DebateSetup& setup, const std::vector<ParsedConfig>& configs,
    const std::map<std::size_t, int>& choices, bool round_closed) {
  const MachineSpec& spec = *setup.spec;
  if (configs.empty()) return 0;
  if (configs.front().malformed ||
      !(configs.front().config == initial_configuration(spec)))
    return 0;
  std::ptrdiff_t pos = 0;
  const auto last_pos = static_cast<std::ptrdiff_t>(setup.input.size()) + 1;
  for (std::size_t i = 1; i < configs.size(); ++i) {
    if (configs[i].malformed) return i;
    std::optional<int> choice;
    if (is_announcement(setup.mode, configs[i].number)) {
      auto it = choices.find(configs[i].number);
      choice = it == choices.end() ? 0 : it->second;
    }
    const Triple prev = window_at_head(configs[i - 1].config);
    const Triple next = window_at_head(configs[i].config);
    const char scanned =
        input_symbol_at(setup.input, static_cast<std::size_t>(pos));
    if (!head_windows_consistent(spec, prev, next, scanned, 1, choice))
      return i;
    pos += next[1].dir;
    if (pos < 0 || pos > last_pos) return i;
  }
  if (round_closed && state_of(configs.back().config) != spec.accept)
    return configs.size() - 1;
  return std::nullopt;
}

void P1Cursor::reset() { *this = P1Cursor{}; }

void P1Cursor::update(const VisibleHistory& seen) {
  if (seen.size() < processed_ ||
      (processed_ > 0 && seen[processed_ - 1].origin == Origin::kP1 &&
       seen[processed_ - 1].index != last_p1_index_))
    reset();
  for (; processed_ < seen.size(); ++processed_) {
    const Seen& e = seen[processed_];
    if (e.origin != Origin::kP1) continue;
    last_p1_index_ = e.index;
    last_delim_ = false;
    last_cell_ = false;
    if (e.symbol.is_separator()) {
      ++round_;
      config_ = 0;
      cells_ = 0;
    } else if (e.symbol.is_delimiter()) {
      ++config_;
      cells_ = 0;
      last_delim_ = true;
    } else {
      ++cells_;
      last_cell_ = e.symbol.is_cell();
    }
  }
}

}  // namespace debatelab::detail
