#include "quadwalk/contfrac.hpp"

#include <map>

namespace quadwalk {

namespace {

// Quadratic surd (P + sqrt(N))/Q with Q | N - P^2; for fixed N this
// representation of a value is unique, so (P,Q) keys period detection.
struct SurdState {
  Int P, Q, N;

  bool operator<(const SurdState& o) const {
    int c = cmp(P, o.P);
    if (c != 0) return c < 0;
    return Q < o.Q;
  }

  Int floor() const { return floor_surd(P, Int(1), N, Q); }

  Int ceil() const {
    // States are irrational, so ceil = floor + 1.
    return floor() + 1;
  }
};

SurdState initial_state(const QuadIrrational& alpha) {
  // (p + q sqrt(d))/r with q > 0, rewritten as (P + sqrt(N))/Q.
  Int P = alpha.p();
  Int Q = alpha.r();
  Int N = alpha.q() * alpha.q() * alpha.d();
  Int rem = (N - P * P) % Q;
  if (rem != 0) {
    Int s = abs(Q);
    P *= s;
    N *= s * s;
    Q *= s;
  }
  return SurdState{P, Q, N};
}

}  // namespace

Int BackwardCF::digit(long k) const {
  if (k == 0 && i0 > 0) return b0;
  if (k < i0) return (k == 0) ? b0 : preperiod[static_cast<size_t>(k - 1)];
  return period[static_cast<size_t>((k - i0) % r)];
}

RegularCF regular_cf(const QuadIrrational& alpha) {
  SurdState s = initial_state(alpha);
  std::vector<Int> digits;
  std::map<SurdState, long> seen;
  long start = -1;
  for (long k = 0;; ++k) {
    auto it = seen.find(s);
    if (it != seen.end()) {
      start = it->second;
      break;
    }
    seen.emplace(s, k);
    Int a = s.floor();
    digits.push_back(a);
    Int Pn = a * s.Q - s.P;
    Int Qn = (s.N - Pn * Pn) / s.Q;
    s = SurdState{Pn, Qn, s.N};
  }
  RegularCF cf;
  cf.a0 = digits[0];
  cf.preperiod.assign(digits.begin() + 1, digits.begin() + std::max<long>(start, 1));
  cf.period.assign(digits.begin() + std::max<long>(start, 1), digits.end());
  if (start == 0) {
    // alpha itself purely periodic (alpha > 1 > conj > ... rare for inputs,
    // e.g. golden ratio). Keep a0 and fold the full block as the period.
    cf.preperiod.clear();
    cf.period.assign(digits.begin(), digits.end());
  }
  return cf;
}

BackwardCF backward_cf(const QuadIrrational& alpha) {
  SurdState s = initial_state(alpha);
  std::vector<Int> digits;
  std::map<SurdState, long> seen;
  long start = -1;
  for (long k = 0;; ++k) {
    auto it = seen.find(s);
    if (it != seen.end()) {
      start = it->second;
      break;
    }
    seen.emplace(s, k);
    Int b = s.ceil();
    digits.push_back(b);
    // x_{k+1} = 1/(b - x_k) = (P' + sqrt(N))/Q' with P' = bQ - P.
    Int Pn = b * s.Q - s.P;
    Int Qn = (Pn * Pn - s.N) / s.Q;
    s = SurdState{Pn, Qn, s.N};
  }
  BackwardCF cf;
  cf.b0 = digits[0];
  cf.i0 = start;
  cf.r = static_cast<long>(digits.size()) - start;
  if (start > 0)
    cf.preperiod.assign(digits.begin() + 1, digits.begin() + start);
  cf.period.assign(digits.begin() + start, digits.end());
  return cf;
}

std::vector<QuadIrrational> backward_cycle_states(const QuadIrrational& alpha) {
  SurdState s = initial_state(alpha);
  std::vector<SurdState> states;
  std::map<SurdState, long> seen;
  long start = -1;
  for (long k = 0;; ++k) {
    auto it = seen.find(s);
    if (it != seen.end()) {
      start = it->second;
      break;
    }
    seen.emplace(s, k);
    states.push_back(s);
    Int b = s.ceil();
    Int Pn = b * s.Q - s.P;
    Int Qn = (Pn * Pn - s.N) / s.Q;
    s = SurdState{Pn, Qn, s.N};
  }
  // (P + sqrt(N))/Q with N = m^2 d
  long d = alpha.d();
  std::vector<QuadIrrational> cycle;
  for (size_t k = static_cast<size_t>(start); k < states.size(); ++k) {
    Int m = isqrt(states[k].N / d);
    cycle.push_back(QuadIrrational::make(states[k].P, m, states[k].Q, d));
  }
  return cycle;
}

QuadIrrational periodic_value(const std::vector<Int>& period) {
  if (period.empty()) throw domain_error("periodic_value: empty period");
  bool all2 = true;
  for (const Int& b : period) {
    if (b < 2) throw domain_error("periodic_value: digits must be >= 2");
    if (b != 2) all2 = false;
  }
  if (all2) throw rational_input_error("periodic_value: all-2 period encodes a rational");
  // w = b - 1/next corresponds to the Moebius matrix [[b, -1], [1, 0]];
  // composing the whole period gives w = (A w + B)/(C w + E).
  Int A = 1, B = 0, C = 0, E = 1;
  for (const Int& b : period) {
    Int A2 = A * b + B, B2 = -A;
    Int C2 = C * b + E, E2 = -C;
    A = A2; B = B2; C = C2; E = E2;
  }
  // C w^2 + (E - A) w - B = 0, take the root > 1.
  QuadIrrational w = QuadIrrational::from_poly(C, E - A, -B, +1);
  if (!(w.value() > QuadElem::rational(Rat(1)))) w = w.conjugate();
  return w;
}

std::pair<Int, Int> convergents(const Int& a0, const std::vector<Int>& digits, long k) {
  if (k < 0) throw domain_error("convergents: k >= 0 required");
  Int p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
  Int p = a0, q = 1;
  for (long i = 1; i <= k; ++i) {
    const Int& a = digits[static_cast<size_t>(i - 1)];
    Int pn = a * p + p_prev;
    Int qn = a * q + q_prev;
    p_prev = p; q_prev = q;
    p = pn; q = qn;
  }
  return {p, q};
}

std::pair<Int, Int> convergents(const RegularCF& cf, long k) {
  std::vector<Int> digits;
  digits.reserve(static_cast<size_t>(k));
  for (long i = 1; i <= k; ++i) {
    size_t idx = static_cast<size_t>(i - 1);
    if (idx < cf.preperiod.size()) {
      digits.push_back(cf.preperiod[idx]);
    } else {
      size_t j = (idx - cf.preperiod.size()) % cf.period.size();
      digits.push_back(cf.period[j]);
    }
  }
  return convergents(cf.a0, digits, k);
}

}  // namespace quadwalk
