#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quadwalk/qirr.hpp"
#include "quadwalk/steplaw.hpp"

namespace quadwalk {

// First N positions {S_n alpha} of the lattice walk, n = 1..N, for the
// counter-based stream (seed, trial). Identical arguments give identical
// output regardless of threading.
std::vector<double> simulate(const StepLaw& law, const QuadIrrational& alpha, long N,
                             std::uint64_t seed, std::uint64_t trial);

// The integer walk S_1..S_N of the same stream (shared sampler and RNG).
std::vector<long long> walk_partial_sums(const StepLaw& law, long N, std::uint64_t seed,
                                         std::uint64_t trial);

// W_{T,2}^2(mu, lambda) of the empirical measure of `points` (values in
// [0,1)), by closed-form integration over the order statistics:
//   inf_c ||F - x - c||_2^2 = int (F-x)^2 - (int (F-x))^2.
double w2sq_exact(std::vector<double> points);
// Same, but `sorted` must already be ascending.
double w2sq_exact_sorted(const std::vector<double>& sorted);

// Truncated spectral form 2 sum_{m<=M} |mu_hat(m)|^2/(4 pi^2 m^2) together
// with the certified tail bound 1/(pi^2 M) from |mu_hat| <= 1.
std::pair<double, double> w2sq_fourier(const std::vector<double>& points, long m_cut);

struct WalkConfig {
  StepLaw law;
  QuadIrrational alpha;
  std::vector<long> n_grid;   // strictly increasing
  long trials = 1;
  std::uint64_t seed = 0;
  long fourier_cut = 0;  // 0 = skip the spectral cross-check
  int threads = 1;
};

struct PerNStats {
  long N = 0;
  double mean = 0, var = 0;
  double se_mean = 0, se_var = 0;
};

struct FitResult {
  double slope = 0, intercept = 0;
  double se_slope = 0, se_intercept = 0;
  double max_abs_residual = 0;
};

FitResult wls_fit(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& se);

struct WalkStats {
  std::vector<PerNStats> per_n;
  FitResult mean_fit;  // N E[W^2] vs log N
  FitResult var_fit;   // N^2 Var[W^2] vs log N
  double fourier_check_dev = 0;    // max |exact - spectral| over checked sets
  double fourier_check_bound = 0;  // the matching certified bound
};

// Per-N mean/variance of W^2 over trials plus weighted log-slope fits.
// Output is bit-identical for a fixed config across any thread count.
WalkStats run_experiment(const WalkConfig& config);

}  // namespace quadwalk
