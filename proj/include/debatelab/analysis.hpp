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
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace debatelab {

using Rational = boost::multiprecision::cpp_rational;

// 2^-e as an exact rational.
Rational pow2_neg(unsigned e);
double to_double(const Rational& r);
std::string to_string(const Rational& r);

Rational pr_accept_closed(unsigned l, unsigned j, unsigned k);
Rational pr_test_closed(unsigned l, unsigned j, unsigned k);

struct ClaimDistribution {
  unsigned l = 0, j = 0, k = 0;
  Rational pr_accept;
  Rational pr_test;
  Rational pr_continue;
};

// Order in which the oracle flips the coins of one claim.
enum class CoinOrder {
  kStreamed,  // per cell, as the verifier meets them
  kBatched,   // control set first, then each accept set in one block
};

// Exact outcome distribution of one claim, obtained by pushing the joint
// distribution of the three has-a-one flags through every single coin.
// Guaranteed range: l <= 4, j, k <= 16; outside it throws std::out_of_range.
ClaimDistribution claim_distribution_exact(unsigned l, unsigned j, unsigned k,
                                           CoinOrder order = CoinOrder::kStreamed);

// Pr[A] > 2^{l-1} Pr[T] for a misaligned claim (j != k).
bool check_misaligned_bound(unsigned l, unsigned j, unsigned k);
// Pr[T] > 2^{l-2} Pr[A] for an aligned claim (j == k).
bool check_aligned_bound(unsigned l, unsigned j);

struct InfinityBound {
  Rational bound;      // s(n) 2^{-rn}
  Rational exact_sum;  // probability over floor(s(n)/n) iterations
  bool dominated = false;
};
InfinityBound infinity_false_reject_bound(std::uint64_t s_of_n, unsigned r,
                                          std::uint64_t n);

enum class Side { kCompleteness, kSoundness };
Rational wrong_side_ceiling(unsigned l, Side side);

}  // namespace debatelab
