#include "quadwalk/walk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace quadwalk {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct SplitMix64 {
  std::uint64_t s;
  explicit SplitMix64(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t trial) {
  SplitMix64 h(seed);
  std::uint64_t a = h.next();
  SplitMix64 g(trial + 0x632be59bd9b4e019ULL);
  return a ^ g.next();
}

// Sampling thresholds: value v_i drawn when u64 < floor(cum_i * 2^64).
struct StepSampler {
  std::vector<std::uint64_t> thresholds;
  std::vector<long> values;

  explicit StepSampler(const StepLaw& law) {
    Rat cum(0);
    Int shift = Int(1) << 64;
    for (const auto& [v, p] : law.support) {
      cum += p;
      Int t = (cum.get_num() * shift) / cum.get_den();
      // unsigned long is 64-bit here; t < 2^64 unless cum == 1
      std::uint64_t tv = (t >= shift) ? ~0ULL : static_cast<std::uint64_t>(mpz_get_ui(t.get_mpz_t()));
      thresholds.push_back(tv);
      values.push_back(v);
    }
    thresholds.back() = ~0ULL;
  }

  long draw(std::uint64_t u) const {
    for (size_t i = 0; i < thresholds.size(); ++i)
      if (u <= thresholds[i]) return values[i];
    return values.back();
  }
};

// frac((k) * alpha) for k in [-K, K], from a 192-bit value of alpha.
std::vector<double> frac_table(const QuadIrrational& alpha, long K) {
  if (K < 0 || 2 * K + 1 > (1L << 27))
    throw overflow_guard_error("frac table exceeds memory budget");
  Real a = alpha.to_real(192);
  std::vector<double> table(static_cast<size_t>(2 * K + 1));
  for (long k = -K; k <= K; ++k) {
    Real v = Real::of(k, 192) * a;
    table[static_cast<size_t>(k + K)] = v.frac_mod1().to_double();
  }
  return table;
}

void simulate_into(const StepSampler& sampler, const std::vector<double>& table, long K,
                   long N, std::uint64_t seed, std::uint64_t trial, double* out) {
  SplitMix64 rng(stream_seed(seed, trial));
  long long S = 0;
  for (long n = 0; n < N; ++n) {
    S += sampler.draw(rng.next());
    out[n] = table[static_cast<size_t>(S + K)];
  }
}

}  // namespace

std::vector<double> simulate(const StepLaw& law, const QuadIrrational& alpha, long N,
                             std::uint64_t seed, std::uint64_t trial) {
  if (N < 1) throw precondition_error("simulate: N >= 1 required");
  long maxstep = 0;
  for (const auto& [v, p] : law.support) maxstep = std::max(maxstep, std::labs(v));
  long K = N * maxstep;
  StepSampler sampler(law);
  std::vector<double> table = frac_table(alpha, K);
  std::vector<double> pts(static_cast<size_t>(N));
  simulate_into(sampler, table, K, N, seed, trial, pts.data());
  return pts;
}

std::vector<long long> walk_partial_sums(const StepLaw& law, long N, std::uint64_t seed,
                                         std::uint64_t trial) {
  if (N < 1) throw precondition_error("walk_partial_sums: N >= 1 required");
  StepSampler sampler(law);
  SplitMix64 rng(stream_seed(seed, trial));
  std::vector<long long> sums(static_cast<size_t>(N));
  long long S = 0;
  for (long n = 0; n < N; ++n) {
    S += sampler.draw(rng.next());
    sums[static_cast<size_t>(n)] = S;
  }
  return sums;
}

double w2sq_exact_sorted(const std::vector<double>& y) {
  size_t N = y.size();
  if (N == 0) throw precondition_error("w2sq: empty point set");
  double inv = 1.0 / static_cast<double>(N);
  double i1 = 0, i2 = 0;
  double a = 0;
  for (size_t k = 0; k <= N; ++k) {
    double b = (k < N) ? y[k] : 1.0;
    double c = static_cast<double>(k) * inv;
    double len = b - a;
    i1 += len * (c - 0.5 * (a + b));
    double ca = c - a, cb = c - b;
    i2 += (ca * ca * ca - cb * cb * cb) / 3.0;
    a = b;
  }
  return i2 - i1 * i1;
}

double w2sq_exact(std::vector<double> points) {
  std::sort(points.begin(), points.end());
  return w2sq_exact_sorted(points);
}

std::pair<double, double> w2sq_fourier(const std::vector<double>& points, long m_cut) {
  if (m_cut < 1) throw precondition_error("w2sq_fourier: m_cut >= 1 required");
  size_t N = points.size();
  if (N == 0) throw precondition_error("w2sq_fourier: empty point set");
  std::vector<double> re(N), im(N), cre(N), cim(N);
  for (size_t n = 0; n < N; ++n) {
    double ang = 2.0 * kPi * points[n];
    cre[n] = std::cos(ang);
    cim[n] = std::sin(ang);
    re[n] = 1.0;
    im[n] = 0.0;
  }
  double total = 0;
  double invN2 = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
  for (long m = 1; m <= m_cut; ++m) {
    double sr = 0, si = 0;
    for (size_t n = 0; n < N; ++n) {
      double r = re[n] * cre[n] - im[n] * cim[n];
      double i = re[n] * cim[n] + im[n] * cre[n];
      re[n] = r;
      im[n] = i;
      sr += r;
      si += i;
    }
    double mt = static_cast<double>(m);
    total += (sr * sr + si * si) * invN2 / (4.0 * kPi * kPi * mt * mt);
  }
  double tail = 1.0 / (kPi * kPi * static_cast<double>(m_cut));
  return {2.0 * total, tail};
}

FitResult wls_fit(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& se) {
  double Sw = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    double w = 1.0 / (se[i] * se[i]);
    Sw += w;
    Sx += w * x[i];
    Sy += w * y[i];
    Sxx += w * x[i] * x[i];
    Sxy += w * x[i] * y[i];
  }
  double det = Sw * Sxx - Sx * Sx;
  FitResult fit;
  fit.slope = (Sw * Sxy - Sx * Sy) / det;
  fit.intercept = (Sxx * Sy - Sx * Sxy) / det;
  fit.se_slope = std::sqrt(Sw / det);
  fit.se_intercept = std::sqrt(Sxx / det);
  for (size_t i = 0; i < x.size(); ++i)
    fit.max_abs_residual =
        std::max(fit.max_abs_residual, std::abs(y[i] - fit.slope * x[i] - fit.intercept));
  return fit;
}

WalkStats run_experiment(const WalkConfig& config) {
  const StepLaw& law = config.law;
  if (!law.nondegenerate())
    throw precondition_error("run_experiment: law must be nondegenerate");
  if (law.mean() != 0)
    throw precondition_error("run_experiment: law must have mean zero");
  if (config.trials < 1) throw precondition_error("run_experiment: trials >= 1");
  if (config.n_grid.empty()) throw precondition_error("run_experiment: empty N grid");
  for (size_t i = 1; i < config.n_grid.size(); ++i)
    if (config.n_grid[i] <= config.n_grid[i - 1])
      throw precondition_error("run_experiment: N grid must be strictly increasing");

  long n_max = config.n_grid.back();
  long maxstep = 0;
  for (const auto& [v, p] : law.support) maxstep = std::max(maxstep, std::labs(v));
  long K = n_max * maxstep;
  StepSampler sampler(law);
  std::vector<double> table = frac_table(config.alpha, K);

  size_t G = config.n_grid.size();
  size_t T = static_cast<size_t>(config.trials);
  std::vector<double> w2(T * G);

  auto run_trial = [&](size_t t, std::vector<double>& pts, std::vector<double>& sorted,
                       std::vector<double>& chunk, std::vector<double>& scratch) {
    simulate_into(sampler, table, K, n_max, config.seed, t, pts.data());
    sorted.clear();
    long prev = 0;
    for (size_t g = 0; g < G; ++g) {
      long N = config.n_grid[g];
      chunk.assign(pts.begin() + prev, pts.begin() + N);
      std::sort(chunk.begin(), chunk.end());
      scratch.resize(static_cast<size_t>(N));
      std::merge(sorted.begin(), sorted.end(), chunk.begin(), chunk.end(), scratch.begin());
      sorted.swap(scratch);
      w2[t * G + g] = w2sq_exact_sorted(sorted);
      prev = N;
    }
  };

  int nthreads = std::max(1, config.threads);
  if (nthreads == 1) {
    std::vector<double> pts(static_cast<size_t>(n_max)), sorted, chunk, scratch;
    for (size_t t = 0; t < T; ++t) run_trial(t, pts, sorted, chunk, scratch);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < nthreads; ++w)
      pool.emplace_back([&] {
        std::vector<double> pts(static_cast<size_t>(n_max)), sorted, chunk, scratch;
        for (size_t t = next.fetch_add(1); t < T; t = next.fetch_add(1))
          run_trial(t, pts, sorted, chunk, scratch);
      });
    for (auto& th : pool) th.join();
  }

  WalkStats stats;
  std::vector<double> xs(G), ye(G), se_ye(G), yv(G), se_yv(G);
  for (size_t g = 0; g < G; ++g) {
    long N = config.n_grid[g];
    double mean = 0;
    for (size_t t = 0; t < T; ++t) mean += w2[t * G + g];
    mean /= static_cast<double>(T);
    double var = 0;
    for (size_t t = 0; t < T; ++t) {
      double dv = w2[t * G + g] - mean;
      var += dv * dv;
    }
    var = (T > 1) ? var / static_cast<double>(T - 1) : 0.0;
    PerNStats ps;
    ps.N = N;
    ps.mean = mean;
    ps.var = var;
    ps.se_mean = (T > 1) ? std::sqrt(var / static_cast<double>(T)) : 0.0;
    ps.se_var = (T > 2) ? var * std::sqrt(2.0 / static_cast<double>(T - 1)) : 0.0;
    stats.per_n.push_back(ps);

    double dN = static_cast<double>(N);
    xs[g] = std::log(dN);
    ye[g] = dN * mean;
    se_ye[g] = dN * ps.se_mean;
    yv[g] = dN * dN * var;
    se_yv[g] = dN * dN * ps.se_var;
  }
  if (G >= 2 && T > 2) {
    stats.mean_fit = wls_fit(xs, ye, se_ye);
    stats.var_fit = wls_fit(xs, yv, se_yv);
  }

  // Optional spectral cross-check on a few trajectories at the largest N.
  if (config.fourier_cut > 0) {
    size_t check_trials = std::min<size_t>(T, 3);
    std::vector<double> pts(static_cast<size_t>(n_max)), sorted, chunk, scratch;
    for (size_t t = 0; t < check_trials; ++t) {
      simulate_into(sampler, table, K, n_max, config.seed, t, pts.data());
      double exact = w2sq_exact(pts);
      auto [four, bound] = w2sq_fourier(pts, config.fourier_cut);
      stats.fourier_check_dev = std::max(stats.fourier_check_dev, std::abs(exact - four));
      stats.fourier_check_bound = bound;
    }
  }
  return stats;
}

}  // namespace quadwalk
