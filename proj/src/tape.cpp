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

#include "debatelab/tape.hpp"

namespace debatelab {
namespace {

class Recorder final : public CoinPort {
 public:
  explicit Recorder(RoundProgram& program) : program_(program) {}

  std::uint64_t now = 0;

  bool has_one(CoinSet set, std::uint64_t count) override {
    auto& ops = program_.ops;
    if (!ops.empty() && ops.back().kind == RoundOp::Kind::kFlip &&
        ops.back().set == set && ops.back().step == now) {
      ops.back().count += count;
    } else {
      ops.push_back({RoundOp::Kind::kFlip, set, false, count, now});
    }
    return true;
  }
  void claim_point(std::uint64_t, bool legitimate) override {
    program_.ops.push_back(
        {RoundOp::Kind::kClaim, CoinSet::kAccept1, legitimate, 0, now});
  }
  void infinity_point(std::uint64_t) override {
    program_.ops.push_back(
        {RoundOp::Kind::kInfinityBatch, CoinSet::kInfinity, false, 0, now});
  }
  void infinity_start(std::uint64_t) override {
    program_.ops.push_back(
        {RoundOp::Kind::kInfinityStart, CoinSet::kInfinity, false, 0, now});
  }
  void span_extended(std::uint64_t) override {
    program_.ops.push_back(
        {RoundOp::Kind::kSpanExtended, CoinSet::kAccept2, false, 0, now});
  }
  bool wants_legitimacy() const override { return true; }

 private:
  RoundProgram& program_;
};

void pack(RoundProgram& p) {
  PackedItem cur;
  const auto flush = [&] {
    if (cur.bits > 0) p.packed.push_back(cur);
    cur = PackedItem{};
  };
  for (std::size_t i = 0; i < p.ops.size(); ++i) {
    const RoundOp& op = p.ops[i];
    if (op.kind == RoundOp::Kind::kFlip && op.count <= 64) {
      if (cur.bits + op.count > 64) flush();
      const std::uint64_t m =
          op.count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << op.count) - 1;
      cur.mask[static_cast<std::size_t>(op.set)] |= m << cur.bits;
      cur.bits += static_cast<unsigned>(op.count);
      continue;
    }
    flush();
    PackedItem item;
    item.kind = PackedItem::Kind::kOp;
    item.op = i;
    p.packed.push_back(item);
  }
  flush();
}

void append(std::string& key, const Symbol& s) {
  const std::uint64_t v = s.packed();
  key.append(reinterpret_cast<const char*>(&v), 5);
}

}  // namespace

DebateTape::DebateTape(const MachineSpec& spec, const ProtocolParams& params,
                       std::string_view input, const ProverStrategy& p1,
                       const ProverStrategy& p0)
    : spec_(spec),
      params_(resolve_params(spec, params, input.size())),
      input_(input),
      setup_{&spec_, input_, params_.mode} {
  if (params_.mode == Mode::kCips) {
    p1_ = restart_aware(p1.clone());
    p0_ = restart_aware(p0.clone());
  } else {
    p1_ = p1.clone();
    p0_ = p0.clone();
  }
  if (input_.empty()) {
    finished_ = true;
    return;
  }
  builder_ = std::make_unique<TranscriptBuilder>(setup_, *p1_, *p0_);
}

struct DebateTape::Pending {
  Pending(const MachineSpec& spec, std::string_view input,
          const ProtocolParams& params)
      : recorder(program), verifier(spec, input, params) {}

  RoundProgram program;
  Recorder recorder;
  Verifier verifier;
  std::string key;
  bool done = false;
};

DebateTape::~DebateTape() = default;

const RoundProgram* DebateTape::round(std::size_t r) {
  while (rounds_.size() <= r)
    if (!generate_next()) return nullptr;
  return &programs_[rounds_[r]];
}

const RoundProgram* DebateTape::prefix(std::size_t r, std::uint64_t length) {
  while (rounds_.size() < r)
    if (!generate_next()) return nullptr;
  if (r < rounds_.size()) return &programs_[rounds_[r]];
  if (finished_) return nullptr;
  extend(length);
  if (r < rounds_.size()) return &programs_[rounds_[r]];
  return &pending_->program;
}

void DebateTape::extend(std::uint64_t length) {
  if (!pending_) pending_ = std::make_unique<Pending>(spec_, input_, params_);
  Pending& p = *pending_;
  RoundProgram& program = p.program;
  if (generated_steps_ >= params_.max_steps) p.done = true;
  while (!p.done && program.length < length) {
    builder_->step();
    ++generated_steps_;
    p.recorder.now = ++program.length;
    const Transcript& t = builder_->transcript();
    append(p.key, t.p1.back());
    append(p.key, t.p0.back());
    if (program.length == 1) program.starts_round = t.p1.back().is_delimiter();
    if (auto d = p.verifier.step(t.p1.back(), t.p0.back(), p.recorder)) {
      program.end = RoundProgram::End::kDecided;
      program.decision = *d;
      p.done = true;
    } else if (p.verifier.at_round_start()) {
      program.end = RoundProgram::End::kNextRound;
      p.done = true;
    } else if (generated_steps_ >= params_.max_steps) {
      p.done = true;
    }
  }
  if (!p.done) return;
  if (program.end != RoundProgram::End::kNextRound) finished_ = true;
  auto [it, fresh] = by_content_.try_emplace(std::move(p.key), programs_.size());
  if (fresh) {
    pack(program);
    programs_.push_back(std::move(program));
  }
  rounds_.push_back(it->second);
  pending_.reset();
}

bool DebateTape::generate_next() {
  if (finished_) return false;
  extend(~std::uint64_t{0});
  return true;
}

namespace {

struct Flags {
  bool a1 = false, a2 = false, ca = false, cb = false, inf = false;

  void flip(CoinSet set, bool one) {
    switch (set) {
      case CoinSet::kAccept1: a1 |= one; break;
      case CoinSet::kAccept2: a2 |= one; break;
      case CoinSet::kControlAlpha: ca |= one; break;
      case CoinSet::kControlBeta: cb |= one; break;
      case CoinSet::kInfinity: inf = one; break;
    }
  }
};

// Applies one op; returns a decision when the op settles the trial.
std::optional<Decision> apply(const RoundOp& op, Flags& f, Tallies& tallies,
                              RandomSource& rng) {
  switch (op.kind) {
    case RoundOp::Kind::kFlip:
      f.flip(op.set, !rng.all_zero(op.count));
      return std::nullopt;
    case RoundOp::Kind::kSpanExtended:
      f.a2 = f.cb = false;
      return std::nullopt;
    case RoundOp::Kind::kInfinityStart:
      ++tallies.infinity_checks;
      return std::nullopt;
    case RoundOp::Kind::kInfinityBatch:
      ++tallies.infinity_batches;
      if (!f.inf) return Decision{Verdict::kReject, Reason::kInfinityCoins};
      return std::nullopt;
    case RoundOp::Kind::kClaim: {
      ++tallies.claims;
      if (!f.a1 || !f.a2) {
        ++tallies.accept_by_coins;
        return Decision{Verdict::kAccept, Reason::kClaimCoins};
      }
      if (!f.ca && !f.cb) {
        ++tallies.tests;
        if (op.legitimate) return Decision{Verdict::kAccept, Reason::kClaimTest};
        ++tallies.test_rejects;
        return Decision{Verdict::kReject, Reason::kClaimTest};
      }
      f = Flags{};
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Outcome undecided(std::uint64_t cap, const Tallies& t) {
  return {Verdict::kUndecided, Reason::kStepCap, cap, t};
}

Outcome replay_rounds(DebateTape& tape, RandomSource& rng, std::uint64_t cap) {
  std::uint64_t steps = 0;
  Tallies tallies;
  for (std::size_t r = 0;; ++r) {
    if (steps >= cap) return undecided(cap, tallies);
    const RoundProgram* p = tape.round(r);
    if (p == nullptr) throw ContractViolation("tape ended without a decision");
    if (p->starts_round) ++tallies.rounds;
    Flags flags;
    if (steps + p->length <= cap) {
      for (const PackedItem& item : p->packed) {
        if (item.kind == PackedItem::Kind::kBits) {
          const std::uint64_t v = rng.take(item.bits);
          for (std::size_t s = 0; s < item.mask.size(); ++s)
            if (item.mask[s] != 0) flags.flip(static_cast<CoinSet>(s), (v & item.mask[s]) != 0);
          continue;
        }
        const RoundOp& op = p->ops[item.op];
        if (auto d = apply(op, flags, tallies, rng))
          return {d->verdict, d->reason, steps + op.step, tallies};
      }
      if (p->end == RoundProgram::End::kTruncated) return undecided(cap, tallies);
      steps += p->length;
      if (p->end == RoundProgram::End::kDecided)
        return {p->decision.verdict, p->decision.reason, steps, tallies};
      continue;
    }
    for (const RoundOp& op : p->ops) {
      if (steps + op.step > cap) return undecided(cap, tallies);
      if (auto d = apply(op, flags, tallies, rng))
        return {d->verdict, d->reason, steps + op.step, tallies};
    }
    if (steps + p->length > cap || p->end == RoundProgram::End::kTruncated)
      return undecided(cap, tallies);
    steps += p->length;
    if (p->end == RoundProgram::End::kDecided)
      return {p->decision.verdict, p->decision.reason, steps, tallies};
  }
}

// Restart protocol: one announced coin after every undecided step.
Outcome replay_restarts(DebateTape& tape, RandomSource& rng, std::uint64_t cap) {
  std::uint64_t steps = 0;
  Tallies tallies;
  std::size_t r = 0, k = 0;
  std::uint64_t local = 0;
  Flags flags;
  const RoundProgram* p = nullptr;
  while (true) {
    if (steps >= cap) return undecided(cap, tallies);
    ++steps;
    ++local;
    // One step past `local`, so an open round is never mistaken for a
    // finished one. The pointer stays valid until the next prefix call.
    if (local == 1 || local + 1 > p->length) {
      p = tape.prefix(r, local + 1);
      if (p == nullptr) throw ContractViolation("tape ended without a decision");
    }
    if (local == 1) {
      if (p->starts_round) ++tallies.rounds;
      k = 0;
    }
    for (; k < p->ops.size() && p->ops[k].step == local; ++k)
      if (auto d = apply(p->ops[k], flags, tallies, rng))
        return {d->verdict, d->reason, steps, tallies};
    if (local == p->length) {
      if (p->end == RoundProgram::End::kDecided)
        return {p->decision.verdict, p->decision.reason, steps, tallies};
      if (p->end == RoundProgram::End::kTruncated) return undecided(cap, tallies);
      ++r;
      local = 0;
      flags = Flags{};
    }
    if (!rng.coin()) {
      ++tallies.restarts;
      r = 0;
      local = 0;
      flags = Flags{};
    }
  }
}

}  // namespace

Outcome replay(DebateTape& tape, RandomSource& rng,
               std::optional<std::uint64_t> max_steps) {
  const std::uint64_t cap = max_steps.value_or(tape.params().max_steps);
  if (cap > tape.params().max_steps)
    throw ContractViolation("replay cap exceeds the tape's step cap");
  if (tape.input().empty()) {
    ProtocolParams p = tape.params();
    p.max_steps = cap;
    return decide_empty_input(tape.spec(), p);
  }
  if (tape.params().mode == Mode::kCips)
    return replay_restarts(tape, rng, cap);
  return replay_rounds(tape, rng, cap);
}

}  // namespace debatelab
