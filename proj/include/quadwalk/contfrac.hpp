#pragma once

#include <utility>
#include <vector>

#include "quadwalk/qirr.hpp"

namespace quadwalk {

struct RegularCF {
  Int a0;
  std::vector<Int> preperiod;  // a_1 .. a_{i0-1}
  std::vector<Int> period;     // minimal repeating block
};

struct BackwardCF {
  Int b0;
  std::vector<Int> preperiod;  // b_1 .. b_{i0-1}, all >= 2
  std::vector<Int> period;     // minimal repeating block, digits >= 2
  long i0 = 0;                 // index where periodicity starts (0 = purely periodic)
  long r = 0;                  // period length

  // Digit b_k of the full expansion.
  Int digit(long k) const;
};

RegularCF regular_cf(const QuadIrrational& alpha);
BackwardCF backward_cf(const QuadIrrational& alpha);

// The purely periodic tails x_{i0+j}, j = 0..r-1, of the backward expansion
// of alpha, as exact values. Linear in the period length, unlike rebuilding
// each tail from its digit word.
std::vector<QuadIrrational> backward_cycle_states(const QuadIrrational& alpha);

// Unique w > 1 with purely periodic backward expansion given by `period`
// (digits >= 2, not all equal 2). w is reduced: w > 1 > conj(w) > 0.
QuadIrrational periodic_value(const std::vector<Int>& period);

// Exact convergent p_k/q_k of a regular CF via q_k = a_k q_{k-1} + q_{k-2}.
std::pair<Int, Int> convergents(const RegularCF& cf, long k);

// Convergent from an explicit digit list a_0; a_1, a_2, ...
std::pair<Int, Int> convergents(const Int& a0, const std::vector<Int>& digits, long k);

}  // namespace quadwalk
