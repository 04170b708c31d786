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

#include <doctest.h>

#include "debatelab/analysis.hpp"
#include "debatelab/verifier.hpp"

using namespace debatelab;

namespace {

Rational q(std::int64_t a, std::int64_t b) { return Rational(a, b); }

// Feeds coins from the bits of one integer, low bit first.
class BitCoins final : public CoinPort {
 public:
  explicit BitCoins(std::uint64_t bits) : bits_(bits) {}
  bool has_one(CoinSet, std::uint64_t count) override {
    bool one = false;
    for (std::uint64_t i = 0; i < count; ++i) {
      one |= (bits_ & 1) != 0;
      bits_ >>= 1;
      ++used;
    }
    return one;
  }
  unsigned used = 0;

 private:
  std::uint64_t bits_;
};

// Every coin outcome of one claim through the verifier's own coin code.
ClaimDistribution enumerate(unsigned l, unsigned j, unsigned k) {
  BitCoins probe(0);
  ClaimFlags f;
  for (unsigned i = 1; i <= j; ++i) claim_cell_coins(l, false, i == j, probe, f);
  for (unsigned i = 1; i <= k; ++i) claim_cell_coins(l, true, i == k, probe, f);
  const unsigned coins = probe.used;
  REQUIRE(coins <= 22);
  std::uint64_t acc = 0, test = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << coins); ++bits) {
    BitCoins c(bits);
    ClaimFlags flags;
    for (unsigned i = 1; i <= j; ++i) claim_cell_coins(l, false, i == j, c, flags);
    for (unsigned i = 1; i <= k; ++i) claim_cell_coins(l, true, i == k, c, flags);
    switch (claim_result(flags)) {
      case ClaimResult::kAccept: ++acc; break;
      case ClaimResult::kTest: ++test; break;
      case ClaimResult::kContinue: break;
    }
  }
  const Rational total = Rational(std::uint64_t{1} << coins);
  ClaimDistribution d;
  d.l = l;
  d.j = j;
  d.k = k;
  d.pr_accept = Rational(acc) / total;
  d.pr_test = Rational(test) / total;
  d.pr_continue = 1 - d.pr_accept - d.pr_test;
  return d;
}

}  // namespace

TEST_CASE("closed forms at small parameters") {
  CHECK(pr_accept_closed(1, 1, 1) == q(63, 1024));
  CHECK(pr_accept_closed(1, 1, 2) == q(543, 16384));
  CHECK(pr_accept_closed(2, 1, 1) == q(2047, 1048576));
  CHECK(pr_test_closed(1, 1, 1) == q(961, 16384));
  CHECK(pr_test_closed(1, 1, 2) == q(15841, 1048576));
  CHECK(pr_test_closed(2, 1, 1) == q(1046529, 268435456));
}

TEST_CASE("the exact oracle at (1,1,1) and (1,1,2)") {
  const ClaimDistribution d = claim_distribution_exact(1, 1, 1);
  CHECK(d.pr_accept == q(63, 1024));
  CHECK(d.pr_test == q(961, 16384));
  CHECK(d.pr_continue == q(14415, 16384));
  const ClaimDistribution e = claim_distribution_exact(1, 1, 2);
  CHECK(e.pr_accept / e.pr_test == q(34752, 15841));
}

TEST_CASE("oracle equals brute-force enumeration of the verifier's coins") {
  for (auto [l, j, k] : {std::tuple{1u, 1u, 1u}, {1u, 1u, 2u}, {1u, 2u, 1u}}) {
    CAPTURE(l);
    CAPTURE(j);
    CAPTURE(k);
    const ClaimDistribution o = claim_distribution_exact(l, j, k);
    const ClaimDistribution b = enumerate(l, j, k);
    CHECK(o.pr_accept == b.pr_accept);
    CHECK(o.pr_test == b.pr_test);
  }
}

TEST_CASE("oracle equals the closed forms on the full grid") {
  for (unsigned l = 1; l <= 4; ++l)
    for (unsigned j = 1; j <= 8; ++j)
      for (unsigned k = 1; k <= 8; ++k) {
        const ClaimDistribution d = claim_distribution_exact(l, j, k);
        CHECK(d.pr_accept == pr_accept_closed(l, j, k));
        CHECK(d.pr_test == pr_test_closed(l, j, k));
        CHECK(d.pr_accept + d.pr_test + d.pr_continue == 1);
        CHECK(d.pr_continue >= 0);
      }
}

TEST_CASE("coin order does not change the distribution") {
  for (unsigned l = 1; l <= 3; ++l)
    for (unsigned j = 1; j <= 4; ++j)
      for (unsigned k = 1; k <= 4; ++k) {
        const auto a = claim_distribution_exact(l, j, k, CoinOrder::kStreamed);
        const auto b = claim_distribution_exact(l, j, k, CoinOrder::kBatched);
        CHECK(a.pr_accept == b.pr_accept);
        CHECK(a.pr_test == b.pr_test);
      }
}

TEST_CASE("oracle range is enforced") {
  CHECK_THROWS_AS(claim_distribution_exact(5, 1, 1), std::out_of_range);
  CHECK_THROWS_AS(claim_distribution_exact(1, 17, 1), std::out_of_range);
  CHECK_THROWS_AS(claim_distribution_exact(1, 0, 1), std::out_of_range);
}

TEST_CASE("separation bounds") {
  CHECK(check_misaligned_bound(1, 1, 2));
  CHECK(check_misaligned_bound(3, 2, 5));
  CHECK_THROWS_AS(check_misaligned_bound(2, 1, 1), ContractViolation);
  CHECK(check_aligned_bound(1, 1));
  CHECK(check_aligned_bound(2, 1));
  CHECK(check_aligned_bound(4, 3));
  for (unsigned l = 1; l <= 4; ++l)
    for (unsigned j = 1; j <= 8; ++j) {
      CHECK(check_aligned_bound(l, j));
      for (unsigned k = 1; k <= 8; ++k)
        if (j != k) CHECK(check_misaligned_bound(l, j, k));
    }
}

TEST_CASE("aligned bounds from the two one-sided estimates") {
  for (unsigned l = 1; l <= 4; ++l)
    for (unsigned j = 1; j <= 8; ++j) {
      const auto d = claim_distribution_exact(l, j, j);
      CHECK(d.pr_accept < pow2_neg(4 * l * j + l - 1));
      CHECK(d.pr_test > pow2_neg(4 * l * j + 1));
    }
}

TEST_CASE("infinity false-reject bound") {
  const InfinityBound b = infinity_false_reject_bound(64, 2, 8);
  CHECK(b.bound == pow2_neg(10));
  CHECK(b.dominated);
  CHECK(b.exact_sum < b.bound);
  // floor(s/n) = 1: a single term.
  const InfinityBound one = infinity_false_reject_bound(12, 3, 8);
  CHECK(one.exact_sum == pow2_neg(24));
  CHECK(one.exact_sum < one.bound);
  // Exact sum is 1 - (1 - p)^q.
  const InfinityBound g = infinity_false_reject_bound(40, 1, 4);
  const Rational p = pow2_neg(4);
  Rational s = 1;
  for (int i = 0; i < 10; ++i) s *= 1 - p;
  CHECK(g.exact_sum == 1 - s);
  for (std::uint64_t n = 1; n <= 6; ++n)
    for (unsigned r = 1; r <= 3; ++r)
      for (std::uint64_t sn = n + 1; sn <= n * n + 5; ++sn)
        CHECK(infinity_false_reject_bound(sn, r, n).dominated);
  CHECK_THROWS_AS(infinity_false_reject_bound(4, 2, 0), ContractViolation);
}

TEST_CASE("wrong-side ceilings") {
  CHECK(wrong_side_ceiling(4, Side::kSoundness) == q(1, 5));
  CHECK(wrong_side_ceiling(1, Side::kCompleteness) == q(1, 2));
  CHECK(wrong_side_ceiling(4, Side::kCompleteness) == q(1, 9));
  for (unsigned l = 2; l <= 8; ++l) {
    CHECK(wrong_side_ceiling(l, Side::kCompleteness) <
          wrong_side_ceiling(l - 1, Side::kCompleteness));
    CHECK(wrong_side_ceiling(l + 1, Side::kSoundness) <
          wrong_side_ceiling(l, Side::kSoundness));
  }
}
