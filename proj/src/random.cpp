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

#include "debatelab/random.hpp"

namespace debatelab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomSource::RandomSource(std::uint64_t seed) : engine_(seed) {}

RandomSource RandomSource::for_trial(std::uint64_t master, std::uint64_t index) {
  return RandomSource(splitmix64(splitmix64(master) ^ splitmix64(~index)));
}

void RandomSource::refill() {
  buffer_ = engine_();
  left_ = 64;
}

bool RandomSource::coin() {
  if (left_ == 0) refill();
  const bool b = buffer_ & 1u;
  buffer_ >>= 1;
  --left_;
  ++consumed_;
  return b;
}

bool RandomSource::all_zero(std::uint64_t count) {
  bool zero = true;
  consumed_ += count;
  while (count > 0) {
    if (left_ == 0) refill();
    const unsigned take = count < left_ ? static_cast<unsigned>(count) : left_;
    const std::uint64_t mask =
        take == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << take) - 1;
    if (buffer_ & mask) zero = false;
    buffer_ = take == 64 ? 0 : buffer_ >> take;
    left_ -= take;
    count -= take;
  }
  return zero;
}

std::uint64_t RandomSource::take(unsigned count) {
  consumed_ += count;
  if (count == 0) return 0;
  if (count <= left_) {
    const std::uint64_t v =
        count == 64 ? buffer_ : buffer_ & ((std::uint64_t{1} << count) - 1);
    buffer_ = count == 64 ? 0 : buffer_ >> count;
    left_ -= count;
    return v;
  }
  const unsigned low = left_;
  std::uint64_t v = buffer_;
  refill();
  const unsigned high = count - low;
  const std::uint64_t top =
      high == 64 ? buffer_ : buffer_ & ((std::uint64_t{1} << high) - 1);
  v |= low == 0 ? top : top << low;
  buffer_ = high == 64 ? 0 : buffer_ >> high;
  left_ -= high;
  return v;
}

}  // namespace debatelab
