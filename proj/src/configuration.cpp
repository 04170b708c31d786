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

#include "debatelab/configuration.hpp"

#include <algorithm>
#include <sstream>

namespace debatelab {
namespace {

// Overwrites the first track of a cell, keeping its counter digit.
void set_track(Symbol& cell, const Symbol& value) {
  const std::uint8_t digit = cell.counter;
  cell = value;
  cell.counter = digit;
}

void increment_counter(const CounterTrack& track, std::vector<Symbol>& cells,
                       WorkSymbolId blank) {
  unsigned carry = 1;
  for (std::size_t p = 0; carry != 0; ++p) {
    if (p == cells.size()) cells.push_back(Symbol::work(blank, 0));
    const unsigned sum = cells[p].counter + carry;
    cells[p].counter = static_cast<std::uint8_t>(sum & track.digit_mask());
    carry = sum >> track.digit_bits;
  }
}

// Right-hand neighbours of the head read the blank when they are padding.
std::optional<WorkSymbolId> scanned_work(const MachineSpec& spec,
                                         const Symbol& right) {
  if (right.is_work()) return right.value;
  if (right.is_delimiter()) return spec.blank;
  return std::nullopt;
}

std::vector<StateId> targets(const MachineSpec& spec, const Transition& t) {
  std::vector<StateId> out{t.to};
  if (spec.counter && t.to != spec.reject) out.push_back(spec.reject);
  return out;
}

// Counter digits of `b` follow from those of `a` by adding some carry-in
// (forced to one at the left edge).
bool counter_digits_legitimate(const MachineSpec& spec, const Triple& a,
                               const Triple& b, bool at_left_edge) {
  if (!spec.counter) return true;
  const CounterTrack& track = *spec.counter;
  for (unsigned carry_in = at_left_edge ? 1u : 0u; carry_in <= 1; ++carry_in) {
    unsigned carry = carry_in;
    bool ok = true;
    for (std::size_t i = 0; i < 3 && ok; ++i) {
      const unsigned da = a[i].is_cell() ? a[i].counter : 0u;
      const unsigned db = b[i].is_cell() ? b[i].counter : 0u;
      const unsigned sum = da + carry;
      if ((sum & track.digit_mask()) != db) ok = false;
      carry = sum >> track.digit_bits;
    }
    if (ok) return true;
  }
  return false;
}

// One-move legitimacy of the first track, assuming the left end of the
// window sits at absolute cell `j` (only j == 0 versus j > 0 matters).
bool track_legitimate(const MachineSpec& spec, const Triple& a,
                      const Triple& b, bool at_left_edge) {
  const bool counter = spec.counter.has_value();
  // Position of the first padding cell in `a`, if visible.
  int first_pad = 3;
  for (int i = 0; i < 3; ++i) {
    if (a[i].is_delimiter()) {
      first_pad = i;
      break;
    }
  }
  for (int i = first_pad; i < 3; ++i)
    if (!a[i].is_delimiter()) return false;

  auto pad_ok = [&](int i, int grown_at) {
    // a[i] is padding and not touched by the head.
    if (b[i].is_delimiter()) return true;
    return counter && i == first_pad && grown_at != first_pad &&
           b[i].is_work() && b[i].value == spec.blank;
  };

  // Head far from the window: nothing visible changes.
  {
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      if (a[i].is_head() || b[i].is_head()) ok = false;
      else if (a[i].is_delimiter()) ok = pad_ok(i, -1);
      else ok = b[i].same_track(a[i]);
    }
    if (ok) return true;
  }

  const int lo = at_left_edge ? 0 : -1;
  for (int h = lo; h <= 3; ++h) {
    // Requirements on `a` for a head at relative position h.
    bool shape_ok = true;
    for (int i = 0; i < 3 && shape_ok; ++i) {
      if (i == h) shape_ok = a[i].is_head();
      else shape_ok = !a[i].is_head();
    }
    if (!shape_ok) continue;
    if (h >= 0 && h <= 2 && a[h].is_delimiter()) continue;

    for (const Transition& t : spec.transitions) {
      if (h >= 0 && h <= 2 && a[h].value != t.from) continue;
      const int r = h + 1;
      if (r >= 0 && r <= 2) {
        auto read = scanned_work(spec, a[r]);
        if (!read || *read != t.read) continue;
      }
      // A left move at cell 1 stays put. With the window at an unknown
      // offset, a head just left of it may or may not sit at cell 1.
      std::vector<int> moves{t.work_move};
      if (t.work_move < 0 && h == 0 && at_left_edge) moves = {0};
      if (t.work_move < 0 && h == -1) moves.push_back(0);
      for (int dw : moves)
      for (StateId to : targets(spec, t)) {
        const Symbol head = Symbol::state_dir(to, t.input_move);
        const Symbol written = Symbol::work(t.write);
        bool ok = true;
        const int grown_at = (r <= 2 && r >= 0 && a[r].is_delimiter()) ? r : -1;
        for (int i = 0; i < 3 && ok; ++i) {
          // Expected first-track content of b at relative position i.
          std::optional<Symbol> expect;
          bool any_work = false;
          if (dw > 0) {
            if (i == h) expect = written;
            else if (i == h + 1) expect = head;
          } else if (dw == 0) {
            if (i == h) expect = head;
            else if (i == h + 1) expect = written;
          } else {
            if (i == h - 1) expect = head;
            else if (i == h + 1) expect = written;
            else if (i == h) {
              if (h - 1 >= 0) expect = a[h - 1];
              else any_work = true;
            }
          }
          if (any_work) {
            ok = b[i].is_work();
          } else if (expect) {
            ok = b[i].same_track(*expect);
          } else if (a[i].is_delimiter()) {
            ok = pad_ok(i, grown_at);
          } else {
            ok = b[i].same_track(a[i]);
          }
        }
        if (ok) return true;
      }
    }
  }
  return false;
}

bool one_move_legitimate(const MachineSpec& spec, const Triple& a,
                         const Triple& b, bool at_left_edge) {
  return track_legitimate(spec, a, b, at_left_edge) &&
         counter_digits_legitimate(spec, a, b, at_left_edge);
}

std::vector<Symbol> cell_alphabet(const MachineSpec& spec,
                                  bool include_heads) {
  std::vector<Symbol> out{Symbol::delimiter()};
  const unsigned digits = spec.counter ? (1u << spec.counter->digit_bits) : 1u;
  for (unsigned d = 0; d < digits; ++d) {
    const auto digit = static_cast<std::uint8_t>(d);
    for (std::size_t w = 0; w < spec.work_symbols.size(); ++w)
      out.push_back(Symbol::work(static_cast<WorkSymbolId>(w), digit));
    if (!include_heads) continue;
    for (std::size_t q = 0; q < spec.states.size(); ++q)
      for (int dir = -1; dir <= 1; ++dir)
        out.push_back(Symbol::state_dir(static_cast<StateId>(q), dir, digit));
  }
  return out;
}

bool single_window_step(const MachineSpec& spec, const Triple& prev,
                        const Triple& next, char scanned,
                        std::optional<int> choice) {
  if (!prev[1].is_head() || !next[1].is_head()) return false;
  const StateId q = prev[1].value;
  if (spec.is_halting(q)) return false;
  const auto read = scanned_work(spec, prev[2]);
  if (!read) return false;
  const auto entries = spec.entries(q, scanned, *read);
  for (std::size_t c = 0; c < entries.size(); ++c) {
    if (choice && static_cast<std::size_t>(*choice) != c) continue;
    const Transition& t = spec.transitions[entries[c]];
    const bool at_edge = prev[0].is_delimiter();
    const int dw = (t.work_move < 0 && at_edge) ? 0 : t.work_move;
    const Symbol written = Symbol::work(t.write);
    for (StateId to : targets(spec, t)) {
      if (!next[1].same_track(Symbol::state_dir(to, t.input_move))) continue;
      bool ok = false;
      if (dw > 0) {
        ok = next[0].same_track(written) && !next[2].is_head();
      } else if (dw == 0) {
        ok = next[0].same_track(prev[0]) && next[2].same_track(written);
      } else {
        ok = next[2].same_track(prev[0]) && !next[0].is_head() &&
             !next[0].is_separator();
      }
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace

bool is_well_formed(const Configuration& c) {
  if (c.cells.empty()) return false;
  std::size_t heads = 0;
  for (const Symbol& s : c.cells) {
    if (!s.is_cell()) return false;
    heads += s.is_head() ? 1 : 0;
  }
  return heads == 1;
}

std::size_t head_index(const Configuration& c) {
  for (std::size_t i = 0; i < c.cells.size(); ++i)
    if (c.cells[i].is_head()) return i;
  throw ContractViolation("configuration has no state/direction symbol");
}

StateId state_of(const Configuration& c) {
  return c.cells[head_index(c)].value;
}

std::uint64_t counter_value(const MachineSpec& spec, const Configuration& c) {
  if (!spec.counter) return 0;
  std::uint64_t v = 0;
  for (std::size_t i = c.cells.size(); i-- > 0;)
    v = (v << spec.counter->digit_bits) | c.cells[i].counter;
  return v;
}

std::string format_configuration(const MachineSpec& spec,
                                 const Configuration& c) {
  std::string out;
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    if (i) out += ' ';
    out += format_symbol(spec, c.cells[i]);
  }
  return out;
}

std::string configuration_key(const Configuration& c) {
  std::string key;
  key.reserve(c.cells.size() * 5);
  for (const Symbol& s : c.cells) {
    const std::uint64_t p = s.packed();
    for (int b = 0; b < 5; ++b) key.push_back(static_cast<char>(p >> (8 * b)));
  }
  return key;
}

Configuration initial_configuration(const MachineSpec& spec) {
  return Configuration{{Symbol::state_dir(spec.start, 0)}};
}

std::vector<Successor> successors(const MachineSpec& spec,
                                  const Configuration& config,
                                  char scanned_input) {
  if (!is_well_formed(config))
    throw ContractViolation("successors of a malformed configuration");
  const std::size_t h = head_index(config);
  const StateId q = config.cells[h].value;
  if (spec.is_halting(q)) return {};
  std::uint64_t count = 0;
  if (spec.counter) {
    count = counter_value(spec, config);
    if (count >= spec.counter->ceiling()) return {};
  }
  const WorkSymbolId read =
      h + 1 < config.cells.size() ? config.cells[h + 1].value : spec.blank;

  std::vector<Successor> out;
  for (std::size_t idx : spec.entries(q, scanned_input, read)) {
    const Transition& t = spec.transitions[idx];
    std::vector<Symbol> cells = config.cells;
    if (h + 1 >= cells.size()) cells.push_back(Symbol::work(spec.blank, 0));
    StateId to = t.to;
    if (spec.counter && count + 1 == spec.counter->ceiling()) to = spec.reject;
    const Symbol head = Symbol::state_dir(to, t.input_move);
    const Symbol written = Symbol::work(t.write);
    const int dw = (t.work_move < 0 && h == 0) ? 0 : t.work_move;
    if (dw > 0) {
      set_track(cells[h], written);
      set_track(cells[h + 1], head);
    } else if (dw == 0) {
      set_track(cells[h], head);
      set_track(cells[h + 1], written);
    } else {
      const Symbol left = cells[h - 1];
      set_track(cells[h - 1], head);
      set_track(cells[h], left);
      set_track(cells[h + 1], written);
    }
    if (spec.counter) increment_counter(*spec.counter, cells, spec.blank);
    out.push_back({Configuration{std::move(cells)}, t.input_move, idx});
  }
  return out;
}

Symbol cell_or_pad(const Configuration& c, std::ptrdiff_t pos) {
  if (pos < 0 || pos >= static_cast<std::ptrdiff_t>(c.cells.size()))
    return Symbol::delimiter();
  return c.cells[static_cast<std::size_t>(pos)];
}

Triple triple_at(const Configuration& c, std::ptrdiff_t start) {
  return {cell_or_pad(c, start), cell_or_pad(c, start + 1),
          cell_or_pad(c, start + 2)};
}

Triple window_at_head(const Configuration& c) {
  const auto h = static_cast<std::ptrdiff_t>(head_index(c));
  return {cell_or_pad(c, h - 1), c.cells[static_cast<std::size_t>(h)],
          cell_or_pad(c, h + 1)};
}

bool head_windows_consistent(const MachineSpec& spec, const Triple& prev,
                             const Triple& next, char scanned_input,
                             int moves, std::optional<int> announced_choice) {
  if (!prev[1].is_head() || !next[1].is_head())
    throw ContractViolation("head windows need a state/direction middle");
  if (moves == 1)
    return single_window_step(spec, prev, next, scanned_input,
                              announced_choice);
  if (moves != 2) throw ContractViolation("moves must be 1 or 2");
  if (spec.kind == MachineKind::kAlternating && !announced_choice)
    throw ContractViolation("two-move window check needs the announced choice");

  // The intermediate window is unknown: try every window the first move can
  // reach, then any second move under any scanned input symbol.
  const auto cells = cell_alphabet(spec, false);
  const std::string tape = spec.tape_alphabet();
  for (const Symbol& left : cells) {
    for (const Symbol& right : cells) {
      for (std::size_t q = 0; q < spec.states.size(); ++q) {
        for (int dir = -1; dir <= 1; ++dir) {
          const Triple mid{left, Symbol::state_dir(static_cast<StateId>(q), dir),
                           right};
          if (!single_window_step(spec, prev, mid, scanned_input,
                                  announced_choice))
            continue;
          for (char s : tape)
            if (single_window_step(spec, mid, next, s, std::nullopt))
              return true;
        }
      }
    }
  }
  return false;
}

bool triple_pair_legitimate(const MachineSpec& spec, const Triple& a,
                            const Triple& b, bool at_left_edge, int moves) {
  if (moves == 1) return one_move_legitimate(spec, a, b, at_left_edge);
  if (moves != 2) throw ContractViolation("moves must be 1 or 2");
  const auto cells = cell_alphabet(spec, true);
  for (const Symbol& c0 : cells)
    for (const Symbol& c1 : cells)
      for (const Symbol& c2 : cells) {
        const Triple mid{c0, c1, c2};
        if (one_move_legitimate(spec, a, mid, at_left_edge) &&
            one_move_legitimate(spec, mid, b, at_left_edge))
          return true;
      }
  return false;
}

std::optional<std::size_t> first_illegitimate_index(const MachineSpec& spec,
                                                    const Configuration& a,
                                                    const Configuration& b,
                                                    int moves) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t j = 0; j < n; ++j) {
    const auto sj = static_cast<std::ptrdiff_t>(j);
    if (!triple_pair_legitimate(spec, triple_at(a, sj), triple_at(b, sj),
                                j == 0, moves))
      return j;
  }
  return std::nullopt;
}

MachineSpec instrument_with_counter(const MachineSpec& spec,
                                    const CounterParams& params) {
  if (!validate_machine(spec).empty())
    throw ContractViolation("cannot instrument an invalid machine");
  if (params.c == 0 || params.c > 8)
    throw std::invalid_argument("counter digit width c must be in 1..8");
  const std::size_t s = spec.space(params.input_length);
  const std::size_t width = params.c * s;
  const std::size_t log2 = params.ceiling_log2.value_or(width);
  if (log2 > width || log2 > 62)
    throw std::invalid_argument(
        "counter ceiling 2^" + std::to_string(log2) +
        " overflows the track width of " + std::to_string(width) + " bits");
  MachineSpec out = spec;
  out.counter = CounterTrack{params.c, static_cast<unsigned>(log2),
                             params.input_length};
  // The halting configuration may carry the overflow digit in one more cell.
  out.space.constant += 1;
  return out;
}

}  // namespace debatelab
