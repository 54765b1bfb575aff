#pragma once

#include <vector>

#include "quadwalk/contfrac.hpp"
#include "quadwalk/forms.hpp"
#include "quadwalk/qirr.hpp"

namespace quadwalk {

// Bernoulli number B_i, B_1 = -1/2 convention.
Rat bernoulli(unsigned i);

// Exact symbolic value coeff * sqrt(d) * pi^pi_power (d = 1 for no surd).
struct SurdValue {
  Rat coeff;
  long d = 1;
  int pi_power = 0;

  Real to_real(mpfr_prec_t prec = Real::kDefaultPrec) const;
  double approx() const { return to_real(128).to_double(); }
  friend bool operator==(const SurdValue& x, const SurdValue& y) {
    return x.coeff == y.coeff && x.d == y.d && x.pi_power == y.pi_power;
  }
};

// Riemann zeta at a positive even integer, as (rational) * pi^s.
SurdValue riemann_zeta_even(int s);

// Dedekind zeta of Q(sqrt(d)) at s = 2 or 4, via the finite character sums
// sum chi(k) k^2 and sum chi(k)(2k^2 - k^4/D0^2) over k < D0.
SurdValue dedekind_special(long d, int s);

struct ModuleCycleEntry {
  QuadIrrational w;         // purely periodic, reduced: w > 1 > conj(w) > 0
  BinaryQuadraticForm Q;    // integral form attached to Z w + Z
  Int digit;                // leading expansion digit of w
};

// The cycle of reduced modules equivalent to Z alpha + Z, with their forms.
struct ModuleCycle {
  QuadIrrational alpha;     // oriented representative (larger root)
  Int f;                    // order index
  Int D;                    // order discriminant
  long i0 = 0;              // preperiod length of alpha's backward expansion
  std::vector<ModuleCycleEntry> entries;  // length r
};

ModuleCycle module_cycle(const QuadIrrational& alpha);

// Exact rational zeta(A, -k) of the module from its cycle, k >= 1.
Rat zeta_module_neg(const ModuleCycle& cycle, unsigned k);
// The per-entry contributions, in cycle order (debugging surface).
std::vector<Rat> zeta_module_neg_terms(const ModuleCycle& cycle, unsigned k);

// zeta(A,k) + zeta(wA,k) for even k, from the functional equation
//   = 2^(2k-1) pi^(2k) / (D^(k-1/2) ((k-1)!)^2) * zeta(A, 1-k).
Real zeta_pair_pos(const ModuleCycle& cycle, unsigned k,
                   mpfr_prec_t prec = Real::kDefaultPrec);

}  // namespace quadwalk
