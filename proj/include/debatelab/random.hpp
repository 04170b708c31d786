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

#include <cstdint>
#include <random>

namespace debatelab {

std::uint64_t splitmix64(std::uint64_t x);

// Seedable private coin source. Coins are drawn 64 at a time from the engine
// and consumed low bit first, so a given seed fixes the whole coin sequence
// regardless of how calls batch it.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  // Stream of trial `index` under `master`; independent of scheduling.
  static RandomSource for_trial(std::uint64_t master, std::uint64_t index);

  bool coin();
  // Flips exactly `count` coins; true iff every one came up 0.
  bool all_zero(std::uint64_t count);
  // Next `count` coins (at most 64), the first in the lowest bit.
  std::uint64_t take(unsigned count);

  std::uint64_t consumed() const { return consumed_; }

 private:
  void refill();

  std::mt19937_64 engine_;
  std::uint64_t buffer_ = 0;
  unsigned left_ = 0;
  std::uint64_t consumed_ = 0;
};

}  // namespace debatelab
