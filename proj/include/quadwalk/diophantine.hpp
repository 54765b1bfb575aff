#pragma once

#include <vector>

#include "quadwalk/qirr.hpp"

namespace quadwalk {

struct DSumCheckpoint {
  long long M = 0;
  double sum = 0;
  double ratio = 0;  // sum / log M
};

struct DSumReport {
  double theta = 0;
  long long M = 0;
  double sum = 0;
  std::vector<DSumCheckpoint> checkpoints;
};

// sum_{m=1}^{M} 1/(m^theta ||m alpha||^theta), each ||m alpha|| exact
// (integer nearest point, distance evaluated through its exact surd).
// Checkpoints must be increasing; the final M is always reported.
DSumReport dsum(const QuadIrrational& alpha, double theta, long long M,
                const std::vector<long long>& checkpoints = {}, int threads = 1);

// (S(M2) - S(M1)) / (log M2 - log M1); the bounded remainder cancels.
double dsum_slope(const QuadIrrational& alpha, double theta, long long M1, long long M2,
                  int threads = 1);

// Bounded-partial-quotient construction with digit blocks of 1s and a's on
// rho-power ranges; the ratio dsum/log M has two separated accumulation
// regimes along the block ends.
struct BeckCheckpoint {
  long k = 0;         // block pair index
  long J = 0;         // digit index: rho^(2k+1) (odd) or rho^(2k+2) (even)
  bool even_block = false;
  Int q;              // q_J
  double log_M = 0;   // log(q_J - 1)
  double proxy_ratio = 0;  // zeta(2 theta) sum_{j<=J} a_j^theta / log(q_J - 1)
  bool direct = false;     // true when dsum was summed directly
  double ratio = 0;        // direct dsum(q_J - 1)/log(q_J - 1) when available
};

struct BeckReport {
  long a = 0, rho = 0;
  int k_max = 0;
  double theta = 0;
  std::vector<long> digits;       // a_1 .. a_{rho^(2 k_max + 2)}
  std::vector<Int> q;             // q_0 .. q_max (denominators of [0; a_1, ...])
  std::vector<BeckCheckpoint> checkpoints;
};

BeckReport beck_sequence(long a, long rho, int k_max, double theta = 2.0,
                         long long direct_budget = 30000000, int threads = 1);

}  // namespace quadwalk
