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

#include "debatelab/machine.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace debatelab {
namespace {

std::uint64_t entry_key(StateId q, char input, WorkSymbolId read) {
  return (static_cast<std::uint64_t>(static_cast<std::uint16_t>(q)) << 24) |
         (static_cast<std::uint64_t>(static_cast<unsigned char>(input)) << 16) |
         static_cast<std::uint16_t>(read);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_direction(const std::string& tok, std::size_t line) {
  if (tok == "-1") return -1;
  if (tok == "0") return 0;
  if (tok == "+1" || tok == "1") return 1;
  throw MachineParseError(line, "direction must be one of -1, 0, +1: '" + tok +
                                    "'");
}

std::string dir_text(int d) { return d < 0 ? "-1" : (d > 0 ? "+1" : "0"); }

}  // namespace

std::string_view to_string(MachineKind kind) {
  switch (kind) {
    case MachineKind::kDeterministic:
      return "deterministic";
    case MachineKind::kNondeterministic:
      return "nondeterministic";
    case MachineKind::kAlternating:
      return "alternating";
  }
  return "?";
}

std::size_t SpaceBound::operator()(std::size_t n) const {
  std::int64_t p = 1;
  for (int i = 0; i < degree; ++i) p *= static_cast<std::int64_t>(n);
  const std::int64_t v = coefficient * p + constant;
  return v < 1 ? 1 : static_cast<std::size_t>(v);
}

std::span<const std::size_t> MachineSpec::entries(StateId q, char input,
                                                  WorkSymbolId read) const {
  const auto it = index_.find(entry_key(q, input, read));
  if (it == index_.end()) return {};
  return it->second;
}

void MachineSpec::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const Transition& t = transitions[i];
    index_[entry_key(t.from, t.input, t.read)].push_back(i);
  }
}

bool MachineSpec::is_universal(StateId q) const {
  return kind == MachineKind::kAlternating &&
         static_cast<std::size_t>(q) < modes.size() &&
         modes[q] == StateMode::kUniversal;
}

std::string MachineSpec::tape_alphabet() const {
  return std::string(1, kLeftEndMarker) + input_alphabet + kRightEndMarker;
}

std::optional<StateId> MachineSpec::find_state(std::string_view n) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == n) return static_cast<StateId>(i);
  return std::nullopt;
}

std::optional<WorkSymbolId> MachineSpec::find_work_symbol(
    std::string_view n) const {
  for (std::size_t i = 0; i < work_symbols.size(); ++i)
    if (work_symbols[i] == n) return static_cast<WorkSymbolId>(i);
  return std::nullopt;
}

std::vector<Diagnostic> validate_machine(const MachineSpec& spec) {
  std::vector<Diagnostic> out;
  const auto nstates = static_cast<StateId>(spec.states.size());
  const auto nwork = static_cast<WorkSymbolId>(spec.work_symbols.size());
  auto state_ok = [&](StateId q) { return q >= 0 && q < nstates; };

  if (!state_ok(spec.start) || !state_ok(spec.accept) ||
      !state_ok(spec.reject)) {
    out.push_back({"designated-states", "start/accept/reject out of range"});
    return out;
  }
  if (spec.accept == spec.reject || spec.start == spec.accept ||
      spec.start == spec.reject) {
    out.push_back({"designated-states",
                   "start, accept and reject must be distinct states"});
  }
  if (spec.blank < 0 || spec.blank >= nwork) {
    out.push_back({"blank", "blank symbol missing from the work alphabet"});
  }

  const std::string tape = spec.tape_alphabet();
  std::map<std::tuple<StateId, char, WorkSymbolId>, std::vector<std::size_t>>
      by_key;
  for (std::size_t i = 0; i < spec.transitions.size(); ++i) {
    const Transition& t = spec.transitions[i];
    const std::string where = "entry " + std::to_string(i + 1);
    if (!state_ok(t.from) || !state_ok(t.to) || t.read < 0 ||
        t.read >= nwork || t.write < 0 || t.write >= nwork ||
        tape.find(t.input) == std::string::npos) {
      out.push_back({"symbols", where + " references an unknown symbol"});
      continue;
    }
    if (t.input_move < -1 || t.input_move > 1 || t.work_move < -1 ||
        t.work_move > 1) {
      out.push_back({"directions", where + " has a direction outside {-1,0,+1}"});
    }
    if (spec.is_halting(t.from)) {
      out.push_back({"halting-states-no-outgoing",
                     where + " leaves halting state " + spec.states[t.from]});
    }
    if ((t.input == kLeftEndMarker && t.input_move < 0) ||
        (t.input == kRightEndMarker && t.input_move > 0)) {
      out.push_back({"input-head-bounds",
                     where + " moves the input head past an end-marker"});
    }
    by_key[{t.from, t.input, t.read}].push_back(i);
  }

  if (spec.kind == MachineKind::kDeterministic) {
    for (const auto& [key, idx] : by_key) {
      if (idx.size() > 1) {
        out.push_back({"deterministic-unique",
                       "state " + spec.states[std::get<0>(key)] + " has " +
                           std::to_string(idx.size()) +
                           " entries for one (input, work) pair"});
      }
    }
  }

  if (spec.kind == MachineKind::kAlternating) {
    if (spec.modes.size() != spec.states.size()) {
      out.push_back({"alternating-modes", "every state needs a mode"});
      return out;
    }
    if (spec.modes[spec.start] != StateMode::kExistential) {
      out.push_back({"alternating-start-existential",
                     "start state " + spec.states[spec.start] +
                         " must be existential"});
    }
    for (const auto& [key, idx] : by_key) {
      if (idx.size() != 2) {
        out.push_back({"alternating-two-choices",
                       "state " + spec.states[std::get<0>(key)] + " has " +
                           std::to_string(idx.size()) +
                           " choices on one (input, work) pair"});
      }
    }
    for (std::size_t i = 0; i < spec.transitions.size(); ++i) {
      const Transition& t = spec.transitions[i];
      if (!state_ok(t.from) || !state_ok(t.to)) continue;
      if (spec.is_halting(t.to)) continue;
      if (spec.modes[t.from] == spec.modes[t.to]) {
        out.push_back({"alternating-mode-alternation",
                       "entry " + std::to_string(i + 1) + " joins two " +
                           (spec.modes[t.from] == StateMode::kExistential
                                ? "existential"
                                : "universal") +
                           " states"});
      }
    }
  }
  return out;
}

MachineParseError::MachineParseError(std::size_t line,
                                     const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

MachineSpec parse_machine(std::string_view text) {
  MachineSpec spec;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::string> start, accept, reject;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> deltas;
  std::vector<std::pair<std::size_t, std::string>> mode_tokens;
  bool saw_kind = false, saw_states = false, saw_work = false;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos
                                ? std::string_view(raw)
                                : std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw MachineParseError(line_no, "expected 'section: value'");
    const std::string section = trim(std::string_view(line).substr(0, colon));
    const std::string value = trim(std::string_view(line).substr(colon + 1));
    const auto toks = split_ws(value);

    if (section == "kind") {
      if (value == "deterministic") {
        spec.kind = MachineKind::kDeterministic;
      } else if (value == "nondeterministic") {
        spec.kind = MachineKind::kNondeterministic;
      } else if (value == "alternating") {
        spec.kind = MachineKind::kAlternating;
      } else {
        throw MachineParseError(line_no, "unknown kind '" + value + "'");
      }
      saw_kind = true;
    } else if (section == "name") {
      spec.name = value;
    } else if (section == "states") {
      spec.states = toks;
      saw_states = true;
    } else if (section == "start" || section == "accept" ||
               section == "reject") {
      if (toks.size() != 1)
        throw MachineParseError(line_no, section + " takes exactly one state");
      (section == "start" ? start : section == "accept" ? accept : reject) =
          toks[0];
    } else if (section == "modes") {
      for (const auto& t : toks) mode_tokens.emplace_back(line_no, t);
    } else if (section == "input_alphabet") {
      spec.input_alphabet.clear();
      for (const auto& t : toks) {
        if (t.size() != 1 || t[0] == kLeftEndMarker || t[0] == kRightEndMarker)
          throw MachineParseError(line_no, "input symbols are single "
                                           "characters other than < and >");
        spec.input_alphabet += t[0];
      }
    } else if (section == "work_alphabet") {
      spec.work_symbols = toks;
      saw_work = true;
    } else if (section == "space") {
      if (toks.size() != 3)
        throw MachineParseError(line_no,
                                "space takes: degree coefficient constant");
      try {
        spec.space = {std::stoi(toks[0]), std::stoll(toks[1]),
                      std::stoll(toks[2])};
      } catch (const std::exception&) {
        throw MachineParseError(line_no, "space bound must be integers");
      }
    } else if (section == "delta") {
      deltas.emplace_back(line_no, toks);
    } else {
      throw MachineParseError(line_no, "unknown section '" + section + "'");
    }
  }

  if (!saw_kind) throw MachineParseError(line_no, "missing 'kind:'");
  if (!saw_states) throw MachineParseError(line_no, "missing 'states:'");
  if (!saw_work) throw MachineParseError(line_no, "missing 'work_alphabet:'");
  if (!start || !accept || !reject)
    throw MachineParseError(line_no, "missing start/accept/reject");

  auto state_of = [&](const std::string& n, std::size_t ln) {
    auto q = spec.find_state(n);
    if (!q) throw MachineParseError(ln, "unknown state '" + n + "'");
    return *q;
  };
  auto work_of = [&](const std::string& n, std::size_t ln) {
    auto w = spec.find_work_symbol(n);
    if (!w) throw MachineParseError(ln, "unknown work symbol '" + n + "'");
    return *w;
  };
  spec.start = state_of(*start, line_no);
  spec.accept = state_of(*accept, line_no);
  spec.reject = state_of(*reject, line_no);
  spec.blank = spec.find_work_symbol("_").value_or(0);

  if (spec.kind == MachineKind::kAlternating) {
    spec.modes.assign(spec.states.size(), StateMode::kExistential);
    for (const auto& [ln, tok] : mode_tokens) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw MachineParseError(ln, "mode entries look like state=existential");
      const StateId q = state_of(tok.substr(0, eq), ln);
      const std::string m = tok.substr(eq + 1);
      if (m == "existential" || m == "e") {
        spec.modes[q] = StateMode::kExistential;
      } else if (m == "universal" || m == "u") {
        spec.modes[q] = StateMode::kUniversal;
      } else {
        throw MachineParseError(ln, "unknown mode '" + m + "'");
      }
    }
  } else if (!mode_tokens.empty()) {
    throw MachineParseError(mode_tokens.front().first,
                            "modes are only allowed for alternating machines");
  }

  const std::string tape = spec.tape_alphabet();
  for (const auto& [ln, t] : deltas) {
    if (t.size() != 8 || t[3] != "->")
      throw MachineParseError(ln,
                              "delta: q sigma theta -> q' theta' dIn dWork");
    if (t[1].size() != 1 || tape.find(t[1][0]) == std::string::npos)
      throw MachineParseError(ln, "unknown input symbol '" + t[1] + "'");
    Transition tr;
    tr.from = state_of(t[0], ln);
    tr.input = t[1][0];
    tr.read = work_of(t[2], ln);
    tr.to = state_of(t[4], ln);
    tr.write = work_of(t[5], ln);
    tr.input_move = parse_direction(t[6], ln);
    tr.work_move = parse_direction(t[7], ln);
    spec.transitions.push_back(tr);
  }
  spec.reindex();
  return spec;
}

MachineSpec load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open machine file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  MachineSpec spec = parse_machine(buf.str());
  if (spec.name.empty()) {
    auto slash = path.find_last_of('/');
    spec.name = path.substr(slash == std::string::npos ? 0 : slash + 1);
  }
  return spec;
}

std::string format_machine(const MachineSpec& spec) {
  std::ostringstream out;
  out << "kind: " << to_string(spec.kind) << "\n";
  if (!spec.name.empty()) out << "name: " << spec.name << "\n";
  out << "states:";
  for (const auto& s : spec.states) out << ' ' << s;
  out << "\nstart: " << spec.states[spec.start]
      << "\naccept: " << spec.states[spec.accept]
      << "\nreject: " << spec.states[spec.reject] << "\n";
  if (spec.kind == MachineKind::kAlternating) {
    out << "modes:";
    for (std::size_t i = 0; i < spec.states.size(); ++i) {
      out << ' ' << spec.states[i] << '='
          << (spec.modes[i] == StateMode::kExistential ? "existential"
                                                        : "universal");
    }
    out << "\n";
  }
  out << "input_alphabet:";
  for (char c : spec.input_alphabet) out << ' ' << c;
  out << "\nwork_alphabet:";
  for (const auto& w : spec.work_symbols) out << ' ' << w;
  out << "\nspace: " << spec.space.degree << ' ' << spec.space.coefficient
      << ' ' << spec.space.constant << "\n";
  for (const Transition& t : spec.transitions) {
    out << "delta: " << spec.states[t.from] << ' ' << t.input << ' '
        << spec.work_symbols[t.read] << " -> " << spec.states[t.to] << ' '
        << spec.work_symbols[t.write] << ' ' << dir_text(t.input_move) << ' '
        << dir_text(t.work_move) << "\n";
  }
  return out.str();
}

std::string format_symbol(const MachineSpec& spec, const Symbol& s) {
  std::string out;
  switch (s.kind) {
    case SymbolKind::kWork:
      out = static_cast<std::size_t>(s.value) < spec.work_symbols.size()
                ? spec.work_symbols[s.value]
                : "?";
      break;
    case SymbolKind::kStateDir:
      out = "<" +
            (static_cast<std::size_t>(s.value) < spec.states.size()
                 ? spec.states[s.value]
                 : std::string("?")) +
            "," + dir_text(s.dir) + ">";
      break;
    case SymbolKind::kDelimiter:
      return "$";
    case SymbolKind::kSeparator:
      return "#";
    case SymbolKind::kChoice:
      return s.value == 0 ? "L" : "R";
    case SymbolKind::kCoin:
      return s.value == 0 ? "c0" : "c1";
    case SymbolKind::kZero:
      return "0";
    case SymbolKind::kSigma:
      return "ς";
    case SymbolKind::kTau:
      return "τ";
    case SymbolKind::kUpsilon:
      return "υ";
    case SymbolKind::kInfinity:
      return "∞";
  }
  if (spec.counter) out += "/" + std::to_string(s.counter);
  return out;
}

}  // namespace debatelab
