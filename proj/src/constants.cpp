#include "quadwalk/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace quadwalk {

// --- StepLaw ---------------------------------------------------------------

StepLaw StepLaw::make(std::vector<std::pair<long, Rat>> entries) {
  if (entries.empty()) throw precondition_error("step law: empty support");
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  Rat total(0);
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i > 0 && entries[i].first == entries[i - 1].first)
      throw precondition_error("step law: duplicate support point");
    if (entries[i].second <= 0)
      throw precondition_error("step law: probabilities must be positive");
    total += entries[i].second;
  }
  if (total != 1) throw precondition_error("step law: probabilities must sum to 1");
  StepLaw law;
  law.support = std::move(entries);
  return law;
}

long StepLaw::lattice_gcd() const {
  long g = 0;
  for (const auto& [v, p] : support) g = std::gcd(g, std::abs(v));
  return g;
}

Rat StepLaw::mean() const {
  Rat m(0);
  for (const auto& [v, p] : support) m += Rat(v) * p;
  return m;
}

Rat StepLaw::second_moment() const {
  Rat m(0);
  for (const auto& [v, p] : support) m += Rat(v) * Rat(v) * p;
  return m;
}

std::complex<double> char_fn(const StepLaw& law, double x) {
  std::complex<double> z(0.0, 0.0);
  for (const auto& [v, p] : law.support) {
    double vx = static_cast<double>(v) * x;
    z += p.get_d() * std::complex<double>(std::cos(vx), std::sin(vx));
  }
  return z;
}

// --- exact constants --------------------------------------------------------

Real ExactConstant::value(mpfr_prec_t prec) const {
  Real num = Real::of(coeff, prec) * Real::sqrt_of(Int(d), prec);
  Real le = Real::of(unit.t0, prec) + Real::of(unit.u0, prec) * Real::sqrt_of(unit.D, prec);
  le = (le / Real::of(2L, prec)).log();
  return num / le;
}

std::pair<ExactConstant, ExactConstant> c1_c2_exact(const QuadIrrational& alpha) {
  ModuleCycle cycle = module_cycle(alpha);
  Rat z1 = zeta_module_neg(cycle, 1);
  Rat z3 = zeta_module_neg(cycle, 3);
  DiscriminantDecomposition dec = decompose_discriminant(alpha.D());
  Int m = surd_multiplier(dec);
  FundamentalUnit fu = pell_smallest(alpha.D());

  ExactConstant c1{z1 * 2 / Rat(m * dec.d), dec.d, fu};
  ExactConstant c2{z3 * 4 / (Rat(9) * Rat(alpha.D()) * Rat(m * dec.d)), dec.d, fu};
  if (c1.coeff <= 0 || c2.coeff <= 0)
    throw domain_error("c1_c2_exact: constants must be positive");
  return {c1, c2};
}

// --- series path -------------------------------------------------------------

namespace {

// Upper bound on zeta(theta), theta > 1.
double zeta_upper(double theta) {
  double s = 0;
  for (int n = 1; n <= 64; ++n) s += std::pow(n, -theta);
  return s + std::pow(64.0, 1.0 - theta) / (theta - 1.0);
}

// Upper bound on sum_{n > N} tau(n)/n^theta (hyperbola split at N/2):
//   2^(theta-1) (ln N + 1 + zeta(theta)) / ((theta-1) N^(theta-1)).
double tau_tail(double N, double theta) {
  return std::pow(2.0, theta - 1.0) * (std::log(N) + 1.0 + zeta_upper(theta)) /
         ((theta - 1.0) * std::pow(N, theta - 1.0));
}

// Certified bound on sum_{|n| > N} R_Q(n)/|n|^theta given the two envelopes
// R <= K sqrt(n) (measured, doubled) and R <= C_D tau(n) (divisor formula).
double series_tail(double N, double theta, double K, double C_D) {
  double env = (theta > 1.5)
                   ? 2.0 * K * std::pow(N, 1.5 - theta) / (theta - 1.5)
                   : std::numeric_limits<double>::infinity();
  double divisor = 2.0 * C_D * tau_tail(N, theta);
  return std::min(env, divisor);
}

}  // namespace

SeriesResult c_theta_series(const QuadIrrational& alpha, double theta, double tol,
                            int threads) {
  if (theta <= 1.0) throw domain_error("c_theta_series: theta > 1 required (series diverges)");
  if (tol <= 0.0) throw domain_error("c_theta_series: tol must be positive");
  BinaryQuadraticForm Q = form_of(alpha);
  Int D = alpha.D();
  FundamentalUnit fu = pell_smallest(D);
  DiscriminantDecomposition dec = decompose_discriminant(D);

  // Envelope constant K: measured on n <= 1e4 and doubled.
  const long kProbe = 10000;
  RepTable table = rep_counts(Q, kProbe);
  double K = 0;
  for (long n = 1; n <= kProbe; ++n) {
    double r = static_cast<double>(std::max(table.pos[n], table.neg[n]));
    K = std::max(K, r / std::sqrt(static_cast<double>(n)));
  }
  K *= 2.0;

  // Divisor envelope constant C_D = f prod_{p|f} (1 + 1/p).
  double C_D = dec.f.get_d();
  {
    Int rest = dec.f;
    for (Int p = 2; p * p <= rest; ++p) {
      if (rest % p != 0) continue;
      C_D *= 1.0 + 1.0 / p.get_d();
      while (rest % p == 0) rest /= p;
    }
    if (rest > 1) C_D *= 1.0 + 1.0 / rest.get_d();
  }

  double prefactor =
      std::pow(D.get_d(), theta / 2.0) / fu.log_eps.to_double();

  long long n_max = 64;
  const long long kCap = 1LL << 33;
  while (prefactor * series_tail(static_cast<double>(n_max), theta, K, C_D) > tol) {
    n_max *= 2;
    if (n_max > kCap)
      throw overflow_guard_error("c_theta_series: truncation beyond enumeration budget");
  }
  // Shrink back: find the smallest power-of-two-ish cutoff is fine, but a
  // light bisection keeps runtime proportionate.
  long long lo = n_max / 2, hi = n_max;
  while (lo + 1 < hi) {
    long long mid = lo + (hi - lo) / 2;
    if (prefactor * series_tail(static_cast<double>(mid), theta, K, C_D) > tol)
      lo = mid;
    else
      hi = mid;
  }
  n_max = hi;

  SeriesResult res;
  res.n_max = n_max;
  res.envelope_K = K;
  res.tail_bound = prefactor * series_tail(static_cast<double>(n_max), theta, K, C_D);
  res.value = prefactor * rep_series_sum(Q, theta, n_max, threads);
  return res;
}

// --- special paths ------------------------------------------------------------

namespace {

int omega_distinct_primes(long d) {
  int w = 0;
  long rest = d;
  for (long p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    ++w;
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) ++w;
  return w;
}

// Z_{d'}(s) as (coeff, surd part): zeta(s) for d' = 1, else L(s, chi_{D0(d')}).
SurdValue genus_factor(long dprime, int s) {
  if (dprime == 1) return riemann_zeta_even(s);
  SurdValue ded = dedekind_special(dprime, s);
  SurdValue z = riemann_zeta_even(s);
  return SurdValue{ded.coeff / z.coeff, dprime, s};
}

// sum over admissible d' | d of Z_{d'}(s) Z_{d/d'}(s), which collapses to
// (rational) * sqrt(d) * pi^(2s). `admit` filters d'.
template <typename Admit>
Rat genus_sum(long d, int s, Admit&& admit) {
  Rat total(0);
  for (long dp = 1; dp <= d; ++dp) {
    if (d % dp != 0 || !admit(dp)) continue;
    total += genus_factor(dp, s).coeff * genus_factor(d / dp, s).coeff;
  }
  return total;
}

}  // namespace

std::string SpecialPathResult::path_name() const {
  switch (path) {
    case Path::kClassNumber12: return "class-number-1-2";
    case Path::kGenusOdd1: return "genus-d-1-mod-4";
    case Path::kGenusOdd3: return "genus-d-3-mod-4";
    case Path::kGenusEven: return "genus-d-even";
  }
  return "?";
}

std::optional<SpecialPathResult> c1_c2_special_paths(const QuadIrrational& alpha) {
  Int D = alpha.D();
  DiscriminantDecomposition dec = decompose_discriminant(D);
  FundamentalUnit fu = pell_smallest(D);
  long d = dec.d;

  // Path 1: f = 1 and h(D) = 1, or h(D) = 2 with Q, -Q inequivalent.
  if (dec.f == 1) {
    ClassData cd = class_number(D);
    bool applies = (cd.h == 1);
    if (cd.h == 2) {
      BinaryQuadraticForm Q = form_of(alpha);
      applies = !equivalent(Q, Q.negated());
    }
    if (applies) {
      SurdValue z2 = dedekind_special(d, 2);
      SurdValue z4 = dedekind_special(d, 4);
      SpecialPathResult res{SpecialPathResult::Path::kClassNumber12,
                            ExactConstant{Rat(D) * z2.coeff / Rat(2 * cd.h), d, fu},
                            ExactConstant{Rat(D * D) * z4.coeff / Rat(4 * cd.h), d, fu}};
      return res;
    }
  }

  // Genus paths require the principal alpha: (1 + sqrt(d))/2 or sqrt(d).
  bool is_half = (alpha.p() == 1 && alpha.q() == 1 && alpha.r() == 2);
  bool is_root = (alpha.p() == 0 && alpha.q() == 1 && alpha.r() == 1);
  int w = omega_distinct_primes(d);
  if (d % 4 == 1 && is_half) {
    ClassData cd = class_number(Int(d));
    if (cd.h == (1L << (w - 1))) {
      Rat s2 = genus_sum(d, 2, [](long dp) { return dp % 4 == 1; });
      Rat s4 = genus_sum(d, 4, [](long dp) { return dp % 4 == 1; });
      return SpecialPathResult{SpecialPathResult::Path::kGenusOdd1,
                               ExactConstant{Rat(d) * s2 / Rat(4 * cd.h), d, fu},
                               ExactConstant{Rat(Int(d) * d) * s4 / Rat(8 * cd.h), d, fu}};
    }
  } else if (d % 4 == 3 && is_root) {
    ClassData cd = class_number(Int(4 * d));
    if (cd.h == (1L << w)) {
      Rat s2 = genus_sum(d, 2, [](long) { return true; });
      Rat s4 = genus_sum(d, 4, [](long) { return true; });
      return SpecialPathResult{SpecialPathResult::Path::kGenusOdd3,
                               ExactConstant{Rat(d) * s2 / Rat(cd.h), d, fu},
                               ExactConstant{Rat(2 * Int(d) * d) * s4 / Rat(cd.h), d, fu}};
    }
  } else if (d % 2 == 0 && is_root) {
    ClassData cd = class_number(Int(4 * d));
    if (cd.h == (1L << (w - 1))) {
      auto admit = [d](long dp) {
        long m8 = dp % 8;
        return m8 == 1 || m8 == 5 || m8 == d % 8;
      };
      Rat s2 = genus_sum(d, 2, admit);
      Rat s4 = genus_sum(d, 4, admit);
      return SpecialPathResult{SpecialPathResult::Path::kGenusEven,
                               ExactConstant{Rat(d) * s2 / Rat(cd.h), d, fu},
                               ExactConstant{Rat(2 * Int(d) * d) * s4 / Rat(cd.h), d, fu}};
    }
  }
  return std::nullopt;
}

// --- walk predictions ----------------------------------------------------------

WalkPrediction walk_prediction(const StepLaw& law, const QuadIrrational& alpha) {
  if (!law.nondegenerate())
    throw precondition_error("walk_prediction: law must be nondegenerate");
  if (law.mean() != 0)
    throw precondition_error("walk_prediction: law must have mean zero");
  long L = law.lattice_gcd();
  double sigma2 = law.sigma2();
  QuadIrrational La = alpha.scaled(Int(L));
  auto [c1, c2] = c1_c2_exact(La);
  WalkPrediction pred{L, sigma2, c1, c2, 0, 0};
  double L2 = static_cast<double>(L) * L;
  pred.mean_slope = L2 * c1.approx() / sigma2;
  pred.var_slope = L2 * L2 * c2.approx() / (sigma2 * sigma2);
  return pred;
}

std::pair<double, double> finite_n_main_terms(const StepLaw& law,
                                              const QuadIrrational& alpha, long N) {
  if (!law.nondegenerate())
    throw precondition_error("finite_n_main_terms: law must be nondegenerate");
  if (N < 3) throw precondition_error("finite_n_main_terms: N >= 3 required");
  long M = static_cast<long>(std::sqrt(static_cast<double>(N)));
  while ((M + 1) * static_cast<double>(M + 1) <= static_cast<double>(N)) ++M;
  while (M * static_cast<double>(M) > static_cast<double>(N)) --M;

  Real areal = alpha.to_real(192);
  const double pi = 3.14159265358979323846;
  double mean_main = 0, var_main = 0;
  for (long m = 1; m <= M; ++m) {
    Real mx = Real::of(static_cast<long>(m), 192) * areal;
    double fr = mx.frac_mod1().to_double();
    std::complex<double> phi = char_fn(law, 2.0 * pi * fr);
    double num = 1.0 - std::norm(phi);
    double den = std::norm(1.0 - phi);
    double ratio = num / den;
    double m2 = static_cast<double>(m) * m;
    mean_main += ratio / (2.0 * pi * pi * m2);
    var_main += ratio * ratio / (4.0 * pi * pi * pi * pi * m2 * m2);
  }
  double dN = static_cast<double>(N);
  return {mean_main / dN, var_main / (dN * dN)};
}

}  // namespace quadwalk
