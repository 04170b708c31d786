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

#include "debatelab/analysis.hpp"

#include <array>
#include <stdexcept>

#include "debatelab/machine.hpp"

namespace debatelab {
namespace {

using boost::multiprecision::cpp_int;

// Flag bits: a set has shown a 1.
constexpr unsigned kFirst = 1, kSecond = 2, kControl = 4;

class FlagDistribution {
 public:
  FlagDistribution() { p_[0] = 1; }

  void flip(unsigned flag, unsigned count) {
    for (unsigned c = 0; c < count; ++c) {
      std::array<Rational, 8> next;
      for (unsigned s = 0; s < 8; ++s) {
        if (p_[s] == 0) continue;
        if (s & flag) {
          next[s] += p_[s];
        } else {
          const Rational half = p_[s] / 2;
          next[s] += half;
          next[s | flag] += half;
        }
      }
      p_ = next;
    }
  }

  const Rational& operator[](unsigned s) const { return p_[s]; }

 private:
  std::array<Rational, 8> p_;
};

}  // namespace

Rational pow2_neg(unsigned e) { return Rational(cpp_int(1), cpp_int(1) << e); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) { return r.str(); }

Rational pr_accept_closed(unsigned l, unsigned j, unsigned k) {
  const Rational a = pow2_neg(4 * l * j + l);
  const Rational b = pow2_neg(4 * l * k + l);
  return a + (1 - a) * b;
}

Rational pr_test_closed(unsigned l, unsigned j, unsigned k) {
  return (1 - pr_accept_closed(l, j, k)) * pow2_neg(2 * l * (j + k));
}

ClaimDistribution claim_distribution_exact(unsigned l, unsigned j, unsigned k,
                                           CoinOrder order) {
  if (l < 1 || l > 4 || j < 1 || j > 16 || k < 1 || k > 16)
    throw std::out_of_range("claim oracle supports 1 <= l <= 4, 1 <= j,k <= 16");
  FlagDistribution d;
  if (order == CoinOrder::kStreamed) {
    for (unsigned cell = 1; cell <= j; ++cell) {
      d.flip(kFirst, 4 * l);
      d.flip(kControl, 2 * l);
    }
    d.flip(kFirst, l);
    for (unsigned cell = 1; cell <= k; ++cell) {
      d.flip(kSecond, 4 * l);
      d.flip(kControl, 2 * l);
    }
    d.flip(kSecond, l);
  } else {
    d.flip(kControl, 2 * l * (j + k));
    d.flip(kSecond, 4 * l * k + l);
    d.flip(kFirst, 4 * l * j + l);
  }

  ClaimDistribution out{l, j, k, 0, 0, 0};
  for (unsigned s = 0; s < 8; ++s) {
    if (!(s & kFirst) || !(s & kSecond))
      out.pr_accept += d[s];
    else if (!(s & kControl))
      out.pr_test += d[s];
    else
      out.pr_continue += d[s];
  }
  return out;
}

bool check_misaligned_bound(unsigned l, unsigned j, unsigned k) {
  if (j == k) throw ContractViolation("misaligned bound needs j != k");
  const ClaimDistribution d = claim_distribution_exact(l, j, k);
  return d.pr_accept > Rational(cpp_int(1) << (l - 1)) * d.pr_test;
}

bool check_aligned_bound(unsigned l, unsigned j) {
  const ClaimDistribution d = claim_distribution_exact(l, j, j);
  // 2^{l-2} is 1/2 at l = 1.
  const Rational factor = l >= 2 ? Rational(cpp_int(1) << (l - 2)) : pow2_neg(1);
  return d.pr_test > factor * d.pr_accept;
}

InfinityBound infinity_false_reject_bound(std::uint64_t s_of_n, unsigned r,
                                          std::uint64_t n) {
  if (n == 0) throw ContractViolation("infinity bound needs n > 0");
  const Rational p = pow2_neg(static_cast<unsigned>(r * n));
  InfinityBound out;
  out.bound = Rational(s_of_n) * p;
  Rational survive = 1;
  for (std::uint64_t i = 1; i <= s_of_n / n; ++i) {
    out.exact_sum += survive * p;
    survive *= 1 - p;
  }
  out.dominated = out.exact_sum < out.bound;
  return out;
}

Rational wrong_side_ceiling(unsigned l, Side side) {
  if (l < 1) throw ContractViolation("l must be positive");
  const unsigned shift = side == Side::kCompleteness ? l - 1 : l - 2;
  if (side == Side::kSoundness && l == 1) return Rational(1, 1) / (pow2_neg(1) + 1);
  return Rational(1) / (Rational(cpp_int(1) << shift) + 1);
}

}  // namespace debatelab
