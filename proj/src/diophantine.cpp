#include "quadwalk/diophantine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace quadwalk {

namespace {

using i128 = __int128;
using u64 = unsigned long long;

u64 isqrt_u128(unsigned __int128 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  // one Newton step plus fixup
  if (r > 0) r = static_cast<u64>((r + n / r) / 2);
  while (r > 0 && (unsigned __int128)r * r > n) --r;
  while ((unsigned __int128)(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Per-term engine: exact nearest integer k to m*alpha and exact |m alpha - k|
// evaluated without cancellation. Fast path in 128-bit integers.
struct DistEngine {
  long long p, q, r;  // alpha = (p + q sqrt(d))/r, q > 0
  long d;
  bool fast;
  Int P, Qq, R;  // arbitrary-precision copies

  explicit DistEngine(const QuadIrrational& alpha)
      : P(alpha.p()), Qq(alpha.q()), R(alpha.r()) {
    fast = alpha.p().fits_slong_p() && alpha.q().fits_slong_p() && alpha.r().fits_slong_p();
    p = fast ? alpha.p().get_si() : 0;
    q = fast ? alpha.q().get_si() : 0;
    r = fast ? alpha.r().get_si() : 0;
    d = alpha.d();
  }

  bool fast_ok(long long M) const {
    if (!fast) return false;
    // (2Mq)^2 d must stay below ~2^124; the other intermediates are smaller.
    long double z = 2.0L * M * std::abs((long double)q);
    return z * z * d < 1e36L;
  }

  // ||m alpha|| in double, exact integer work inside.
  double dist_fast(long long m) const {
    // nearest k = floor((2mp + r + 2mq sqrt(d)) / (2r))
    i128 A = 2 * (i128)m * p + r;
    i128 B = 2 * (i128)m * q;  // > 0
    i128 C = 2 * (i128)r;
    if (C < 0) { A = -A; B = -B; C = -C; }
    unsigned __int128 absB = (unsigned __int128)(B < 0 ? -B : B);
    i128 s = (i128)isqrt_u128(absB * absB * (unsigned __int128)d);
    i128 num = (B > 0) ? (A + s) : (A - s - 1);
    i128 k = num >= 0 ? num / C : -(((-num) + C - 1) / C);
    // dist = (E + F sqrt(d))/r, E = m p - k r, F = m q > 0
    i128 E = (i128)m * p - k * r;
    i128 F = (i128)m * q;
    long double fr = (long double)F * std::sqrt((long double)d);
    long double er = (long double)E;
    long double val;
    if (E <= 0) {
      // opposite signs: rationalize to avoid cancellation
      i128 numer = E * E - F * F * (i128)d;
      val = std::abs((long double)numer) / (std::abs(er - fr));
    } else {
      val = er + fr;
    }
    return static_cast<double>(std::abs(val) / std::abs((long double)r));
  }

  double dist_slow(long long m) const {
    Int mI(static_cast<long>(m));
    Int A = 2 * mI * P + R;
    Int B = 2 * mI * Qq;
    Int k = floor_surd(A, B, Int(d), 2 * R);
    Int E = mI * P - k * R;
    Int F = mI * Qq;
    if (sgn(E) * sgn(F) < 0 || E == 0) {
      Int numer = E * E - F * F * d;
      double den = std::abs(E.get_d() - F.get_d() * std::sqrt((double)d));
      return std::abs(numer.get_d()) / den / std::abs(R.get_d());
    }
    double v = E.get_d() + F.get_d() * std::sqrt((double)d);
    return std::abs(v) / std::abs(R.get_d());
  }
};


}  // namespace

DSumReport dsum(const QuadIrrational& alpha, double theta, long long M,
                const std::vector<long long>& checkpoints, int threads) {
  if (M < 1) throw precondition_error("dsum: M >= 1 required");
  DistEngine eng(alpha);
  bool fast = eng.fast_ok(M);

  // Block boundaries: fixed quanta plus checkpoints, so parallel reduction in
  // block order is deterministic and checkpoint prefixes are exact.
  std::vector<long long> bounds;
  const long long kBlock = 1 << 16;
  for (long long b = kBlock; b < M; b += kBlock) bounds.push_back(b);
  for (long long c : checkpoints)
    if (c >= 1 && c < M) bounds.push_back(c);
  bounds.push_back(M);
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  size_t nblocks = bounds.size();
  std::vector<__float128> partial(nblocks, 0);

  auto run_block = [&](size_t bi) {
    long long lo = (bi == 0) ? 1 : bounds[bi - 1] + 1;
    long long hi = bounds[bi];
    __float128 acc = 0;
    if (theta == 2.0) {
      for (long long m = lo; m <= hi; ++m) {
        double dist = fast ? eng.dist_fast(m) : eng.dist_slow(m);
        double t = static_cast<double>(m) * dist;
        acc += (__float128)(1.0 / (t * t));
      }
    } else if (theta == 4.0) {
      for (long long m = lo; m <= hi; ++m) {
        double dist = fast ? eng.dist_fast(m) : eng.dist_slow(m);
        double t = static_cast<double>(m) * dist;
        double t2 = t * t;
        acc += (__float128)(1.0 / (t2 * t2));
      }
    } else {
      for (long long m = lo; m <= hi; ++m) {
        double dist = fast ? eng.dist_fast(m) : eng.dist_slow(m);
        acc += (__float128)std::pow(static_cast<double>(m) * dist, -theta);
      }
    }
    partial[bi] = acc;
  };

  int nthreads = std::max(1, threads);
  if (nthreads == 1 || nblocks < 4) {
    for (size_t i = 0; i < nblocks; ++i) run_block(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < nblocks; i = next.fetch_add(1)) run_block(i);
      });
    for (auto& th : pool) th.join();
  }

  DSumReport rep;
  rep.theta = theta;
  rep.M = M;
  std::vector<long long> want(checkpoints);
  want.push_back(M);
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());
  __float128 acc = 0;
  size_t wi = 0;
  for (size_t bi = 0; bi < nblocks; ++bi) {
    acc += partial[bi];
    while (wi < want.size() && want[wi] == bounds[bi]) {
      double s = static_cast<double>((long double)acc);
      rep.checkpoints.push_back(
          DSumCheckpoint{want[wi], s, s / std::log(static_cast<double>(want[wi]))});
      ++wi;
    }
  }
  rep.sum = rep.checkpoints.back().sum;
  return rep;
}

double dsum_slope(const QuadIrrational& alpha, double theta, long long M1, long long M2,
                  int threads) {
  if (!(1 <= M1 && M1 < M2)) throw precondition_error("dsum_slope: 1 <= M1 < M2 required");
  DSumReport rep = dsum(alpha, theta, M2, {M1}, threads);
  double s1 = rep.checkpoints.front().sum;
  double s2 = rep.checkpoints.back().sum;
  return (s2 - s1) / (std::log((double)M2) - std::log((double)M1));
}

// --- bounded-quotient construction ------------------------------------------

namespace {

// dsum for a non-quadratic alpha given as a 256-bit fixed-point value.
double dsum_fixed_point(const Int& alpha_fp, int fp_bits, double theta, long long M,
                        int threads) {
  std::vector<long long> bounds;
  const long long kBlock = 1 << 16;
  for (long long b = kBlock; b < M; b += kBlock) bounds.push_back(b);
  bounds.push_back(M);
  std::vector<__float128> partial(bounds.size(), 0);
  const Int half = Int(1) << (fp_bits - 1);
  const Int whole = Int(1) << fp_bits;
  auto run_block = [&](size_t bi) {
    long long lo = (bi == 0) ? 1 : bounds[bi - 1] + 1;
    long long hi = bounds[bi];
    __float128 acc = 0;
    Int t;
    bool theta2 = (theta == 2.0);
    for (long long m = lo; m <= hi; ++m) {
      mpz_mul_ui(t.get_mpz_t(), alpha_fp.get_mpz_t(), static_cast<unsigned long>(m));
      mpz_tdiv_r_2exp(t.get_mpz_t(), t.get_mpz_t(), fp_bits);  // frac(m alpha)
      if (t > half) t = whole - t;
      double md = static_cast<double>(m) * std::ldexp(t.get_d(), -fp_bits);
      acc += theta2 ? (__float128)(1.0 / (md * md)) : (__float128)std::pow(md, -theta);
    }
    partial[bi] = acc;
  };
  int nthreads = std::max(1, threads);
  if (nthreads == 1 || bounds.size() < 4) {
    for (size_t i = 0; i < bounds.size(); ++i) run_block(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < bounds.size(); i = next.fetch_add(1))
          run_block(i);
      });
    for (auto& th : pool) th.join();
  }
  __float128 acc = 0;
  for (auto pcs : partial) acc += pcs;
  return static_cast<double>((long double)acc);
}

double zeta_num(double s) {
  double z = 0;
  for (int n = 1; n < 200000; ++n) {
    double t = std::pow(n, -s);
    z += t;
    if (t < 1e-17) break;
  }
  return z;
}

}  // namespace

BeckReport beck_sequence(long a, long rho, int k_max, double theta,
                         long long direct_budget, int threads) {
  if (a < 2 || rho < 2) throw precondition_error("beck_sequence: a, rho >= 2 required");
  if (k_max < 0) throw precondition_error("beck_sequence: k_max >= 0 required");

  BeckReport rep;
  rep.a = a;
  rep.rho = rho;
  rep.k_max = k_max;
  rep.theta = theta;

  // Digit rule: a_1 = 1; a_j = 1 on (rho^{2k}, rho^{2k+1}], a on
  // (rho^{2k+1}, rho^{2k+2}].
  double max_index_d = std::pow(static_cast<double>(rho), 2 * k_max + 2);
  if (max_index_d > 4e6) throw overflow_guard_error("beck_sequence: digit range too large");
  long max_index = static_cast<long>(max_index_d + 0.5);
  rep.digits.resize(static_cast<size_t>(max_index) + 1, 0);
  rep.digits[1] = 1;
  {
    long e = 0;  // current block (rho^e, rho^(e+1)]
    double hi = static_cast<double>(rho);
    for (long j = 2; j <= max_index; ++j) {
      while (static_cast<double>(j) > hi) { hi *= rho; ++e; }
      rep.digits[static_cast<size_t>(j)] = (e % 2 == 0) ? 1 : a;
    }
  }

  // q_k for [0; a_1, a_2, ...]: q_0 = 1, q_1 = a_1, q_k = a_k q_{k-1} + q_{k-2}.
  const long kBitBudget = 200000;
  rep.q.resize(static_cast<size_t>(max_index) + 1);
  rep.q[0] = 1;
  if (max_index >= 1) rep.q[1] = rep.digits[1];
  for (long k = 2; k <= max_index; ++k) {
    rep.q[static_cast<size_t>(k)] =
        rep.digits[static_cast<size_t>(k)] * rep.q[static_cast<size_t>(k - 1)] +
        rep.q[static_cast<size_t>(k - 2)];
    if (mpz_sizeinbase(rep.q[static_cast<size_t>(k)].get_mpz_t(), 2) > kBitBudget)
      throw overflow_guard_error("beck_sequence: q_k exceeds bit budget");
  }

  // L alpha as a 256-bit fixed point from a deep convergent.
  const int fp_bits = 256;
  Int p_prev = 1, q_prev = 0, p = 0, q = 1;  // p_0/q_0 for a_0 = 0
  for (long k = 1; k <= max_index; ++k) {
    Int pn = rep.digits[static_cast<size_t>(k)] * p + p_prev;
    Int qn = rep.digits[static_cast<size_t>(k)] * q + q_prev;
    p_prev = p; q_prev = q;
    p = pn; q = qn;
    if (mpz_sizeinbase(q.get_mpz_t(), 2) > 2 * fp_bits + 64) break;
  }
  Int alpha_fp = (p << fp_bits) / q;

  double zval = zeta_num(2 * theta);
  // Running sum of a_j^theta.
  std::vector<double> digit_power_prefix(static_cast<size_t>(max_index) + 1, 0.0);
  for (long j = 1; j <= max_index; ++j)
    digit_power_prefix[static_cast<size_t>(j)] =
        digit_power_prefix[static_cast<size_t>(j - 1)] +
        std::pow(static_cast<double>(rep.digits[static_cast<size_t>(j)]), theta);

  for (int k = 0; k <= k_max; ++k) {
    for (int parity = 0; parity < 2; ++parity) {
      double Jd = std::pow(static_cast<double>(rho), 2 * k + 1 + parity);
      long J = static_cast<long>(Jd + 0.5);
      if (J > max_index) continue;
      BeckCheckpoint cp;
      cp.k = k;
      cp.J = J;
      cp.even_block = (parity == 1);
      cp.q = rep.q[static_cast<size_t>(J)];
      Int M = cp.q - 1;
      if (M < 2) continue;  // log M degenerate
      cp.log_M = std::log(M.get_d());
      cp.proxy_ratio = zval * digit_power_prefix[static_cast<size_t>(J)] / cp.log_M;
      if (M.fits_slong_p() && M.get_si() <= direct_budget) {
        cp.direct = true;
        double s = dsum_fixed_point(alpha_fp, fp_bits, theta, M.get_si(), threads);
        cp.ratio = s / cp.log_M;
      }
      rep.checkpoints.push_back(cp);
    }
  }
  return rep;
}

}  // namespace quadwalk
