#pragma once

#include <optional>
#include <string>
#include <utility>

#include "quadwalk/forms.hpp"
#include "quadwalk/steplaw.hpp"
#include "quadwalk/zeta.hpp"

namespace quadwalk {

// Exact constant of shape coeff * sqrt(d) / log(eps).
struct ExactConstant {
  Rat coeff;
  long d = 1;
  FundamentalUnit unit;

  Real value(mpfr_prec_t prec = Real::kDefaultPrec) const;
  double approx() const { return value(128).to_double(); }
  friend bool operator==(const ExactConstant& x, const ExactConstant& y) {
    return x.coeff == y.coeff && x.d == y.d && x.unit.t0 == y.unit.t0 &&
           x.unit.u0 == y.unit.u0 && x.unit.D == y.unit.D;
  }
};

// c1 = 2 zeta(A,-1) / (sqrt(D) log eps), c2 = 4 zeta(A,-3) / (9 D^(3/2) log eps).
std::pair<ExactConstant, ExactConstant> c1_c2_exact(const QuadIrrational& alpha);

struct SeriesResult {
  double value = 0;        // c(alpha, theta) partial sum, prefactor included
  double tail_bound = 0;   // certified bound on the truncation error of value
  long long n_max = 0;     // series truncation
  double envelope_K = 0;   // measured-and-doubled sqrt-envelope constant
};

// c(alpha,theta) = D^(theta/2)/log(eps) * sum_{n != 0} R_Q(n)/|n|^theta,
// truncated so the certified tail of the returned value is below tol.
SeriesResult c_theta_series(const QuadIrrational& alpha, double theta, double tol,
                            int threads = 1);

struct SpecialPathResult {
  // Which shortcut applied; empty when the hypotheses fail.
  enum class Path { kClassNumber12, kGenusOdd1, kGenusOdd3, kGenusEven };
  Path path;
  ExactConstant c1, c2;
  std::string path_name() const;
};

// Dedekind-zeta shortcut paths; applicability detected from h(D), f and the
// shape of alpha, never assumed.
std::optional<SpecialPathResult> c1_c2_special_paths(const QuadIrrational& alpha);

struct WalkPrediction {
  long L = 1;
  double sigma2 = 0;
  ExactConstant c1_Lalpha, c2_Lalpha;
  double mean_slope = 0;  // L^2 c1(L alpha) / sigma^2
  double var_slope = 0;   // L^4 c2(L alpha) / sigma^4
};

WalkPrediction walk_prediction(const StepLaw& law, const QuadIrrational& alpha);

// The two finite-N spectral main terms
//   mean: 1/N sum_{m <= sqrt(N)} (2 pi^2 m^2)^-1 (1-|phi|^2)/|1-phi|^2
//   var:  1/N^2 sum_{m <= sqrt(N)} (4 pi^4 m^4)^-1 ((1-|phi|^2)/|1-phi|^2)^2
// with phi = char_fn(law, 2 pi m alpha).
std::pair<double, double> finite_n_main_terms(const StepLaw& law,
                                              const QuadIrrational& alpha, long N);

}  // namespace quadwalk
