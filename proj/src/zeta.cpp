#include "quadwalk/zeta.hpp"

#include <mutex>

namespace quadwalk {

namespace {
std::mutex g_bernoulli_mutex;
}

Rat bernoulli(unsigned i) {
  static std::vector<Rat> table{Rat(1)};  // B_0
  std::lock_guard<std::mutex> lk(g_bernoulli_mutex);
  while (table.size() <= i) {
    unsigned m = static_cast<unsigned>(table.size());
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    Rat acc(0);
    Int binom(1);  // C(m+1, 0)
    for (unsigned j = 0; j < m; ++j) {
      acc += Rat(binom) * table[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    // binom now C(m+1, m) = m+1
    table.push_back(-acc / Rat(binom));
  }
  return table[i];
}

Real SurdValue::to_real(mpfr_prec_t prec) const {
  Real r = Real::of(coeff, prec);
  if (d != 1) r *= Real::sqrt_of(Int(d), prec);
  if (pi_power != 0) r *= Real::pi(prec).pow_ui(static_cast<unsigned long>(pi_power));
  return r;
}

SurdValue riemann_zeta_even(int s) {
  if (s < 2 || s % 2 != 0) throw domain_error("riemann_zeta_even: even s >= 2 required");
  int n = s / 2;
  // zeta(2n) = (-1)^(n+1) B_{2n} (2 pi)^(2n) / (2 (2n)!)
  Rat b = bernoulli(static_cast<unsigned>(2 * n));
  Int fact(1);
  for (int i = 2; i <= 2 * n; ++i) fact *= i;
  Rat coeff = b * Rat(Int(1) << (2 * n)) / Rat(2 * fact);
  if (n % 2 == 0) coeff = -coeff;
  return SurdValue{coeff, 1, s};
}

SurdValue dedekind_special(long d, int s) {
  if (d <= 1 || !is_squarefree(Int(d)))
    throw invalid_field_error("dedekind_special: d must be squarefree > 1");
  if (s != 2 && s != 4) throw domain_error("dedekind_special: s must be 2 or 4");
  long D0 = (d % 4 == 1) ? d : 4 * d;
  Int S2(0), S4(0);
  for (long k = 1; k < D0; ++k) {
    int chi = kronecker(D0, k);
    if (chi == 0) continue;
    Int k2 = Int(k) * k;
    S2 += chi * k2;
    if (s == 4) S4 += chi * k2 * k2;
  }
  Int D0sq = Int(D0) * D0;
  // 1/sqrt(D0) = sqrt(d)/d or sqrt(d)/(2d)
  bool fund_odd = (D0 == d);
  if (s == 2) {
    Rat coeff = make_rat(S2, Int(6) * D0sq * d * (fund_odd ? 1 : 2));
    return SurdValue{coeff, d, 4};
  }
  // sum chi (2k^2 - k^4/D0^2) = (2 D0^2 S2 - S4)/D0^2
  Rat sum = make_rat(2 * D0sq * S2 - S4, D0sq);
  Rat coeff = sum / Rat(Int(270) * D0sq * d * (fund_odd ? 1 : 2));
  return SurdValue{coeff, d, 8};
}

ModuleCycle module_cycle(const QuadIrrational& alpha_in) {
  // Conjugate modules share zeta values; orient so alpha is the larger root.
  QuadIrrational alpha = alpha_in.larger_root() ? alpha_in : alpha_in.conjugate();
  DiscriminantDecomposition dec = decompose_discriminant(alpha.D());
  Int m = surd_multiplier(dec);

  BackwardCF cf = backward_cf(alpha);
  ModuleCycle cycle{alpha, dec.f, alpha.D(), cf.i0, {}};

  std::vector<QuadIrrational> ws = backward_cycle_states(alpha);
  long r = cf.r;
  if (static_cast<long>(ws.size()) != r)
    throw domain_error("module_cycle: cycle length mismatch");
  for (long j = 0; j < r; ++j) {
    const QuadIrrational& w = ws[static_cast<size_t>(j)];
    // Q(x,y) = sqrt(D)/(w - conj w) * (x w + y)(x conj(w) + y), integral.
    // With w = (u + v sqrt(d))/s this is (m s / 2v) (N(w) x^2 + Tr(w) x y + y^2).
    const Int& u = w.p();
    const Int& v = w.q();
    const Int& sden = w.r();
    Rat factor = make_rat(m * sden, 2 * v);
    Rat qa = factor * make_rat(u * u - v * v * w.d(), sden * sden);
    Rat qb = factor * make_rat(2 * u, sden);
    Rat qc = factor;
    if (qa.get_den() != 1 || qb.get_den() != 1 || qc.get_den() != 1)
      throw domain_error("module_cycle: non-integral form");
    BinaryQuadraticForm Q{qa.get_num(), qb.get_num(), qc.get_num()};
    if (Q.disc() != cycle.D) throw domain_error("module_cycle: discriminant mismatch");
    cycle.entries.push_back(
        ModuleCycleEntry{w, Q, cf.period[static_cast<size_t>(j)]});
  }
  return cycle;
}

namespace {

// Coefficients of (a t^2 + b t + c)^k, index = power of t.
std::vector<Int> trinomial_power(const Int& a, const Int& b, const Int& c, unsigned k) {
  std::vector<Int> poly{1};
  std::vector<Int> base{c, b, a};
  for (unsigned rep = 0; rep < k; ++rep) {
    std::vector<Int> next(poly.size() + 2, Int(0));
    for (size_t i = 0; i < poly.size(); ++i)
      for (size_t j = 0; j < 3; ++j) next[i + j] += poly[i] * base[j];
    poly = std::move(next);
  }
  return poly;
}

}  // namespace

std::vector<Rat> zeta_module_neg_terms(const ModuleCycle& cycle, unsigned k) {
  if (k < 1) throw domain_error("zeta_module_neg: k >= 1 required");
  std::vector<Rat> terms;
  terms.reserve(cycle.entries.size());
  Rat lead = bernoulli(2 * k + 2) / Rat(2 * k + 2);
  for (const auto& e : cycle.entries) {
    std::vector<Int> coeffs = trinomial_power(e.Q.a, e.Q.b, e.Q.c, k);
    Rat term(0);
    // digit powers digit^(2k-i+1), i = 0..2k
    std::vector<Int> dpow(2 * k + 2, Int(1));
    for (size_t t = 1; t < dpow.size(); ++t) dpow[t] = dpow[t - 1] * e.digit;
    for (unsigned i = 0; i <= 2 * k; ++i) {
      Rat d_ik = Rat(coeffs[i]);
      if (i % 2 == 1) d_ik = -d_ik;
      Rat part = lead * make_rat(dpow[2 * k - i + 1], Int(2 * k - i + 1)) -
                 (bernoulli(i + 1) / Rat(i + 1)) * (bernoulli(2 * k - i + 1) / Rat(2 * k - i + 1));
      term += d_ik * part;
    }
    terms.push_back(term);
  }
  return terms;
}

Rat zeta_module_neg(const ModuleCycle& cycle, unsigned k) {
  Rat total(0);
  for (const Rat& t : zeta_module_neg_terms(cycle, k)) total += t;
  return total;
}

Real zeta_pair_pos(const ModuleCycle& cycle, unsigned k, mpfr_prec_t prec) {
  if (k < 2 || k % 2 != 0)
    throw domain_error("zeta_pair_pos: even k >= 2 required (odd k unsupported)");
  Rat neg = zeta_module_neg(cycle, k - 1);
  // 2^(2k-1) pi^(2k) / (D^(k-1/2) ((k-1)!)^2)
  Int fact(1);
  for (unsigned i = 2; i < k; ++i) fact *= i;
  Int Dk1;
  mpz_pow_ui(Dk1.get_mpz_t(), cycle.D.get_mpz_t(), k - 1);
  Rat front = make_rat(Int(1) << (2 * k - 1), Dk1 * fact * fact);
  Real value = Real::of(front, prec) * Real::pi(prec).pow_ui(2 * k) / Real::sqrt_of(cycle.D, prec);
  return value * Real::of(neg, prec);
}

}  // namespace quadwalk
