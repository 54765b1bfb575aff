#include <cmath>
#include <thread>

#include "quadwalk/forms.hpp"

namespace quadwalk {

// Batched enumeration of all primary representations with |Q(x,y)| <= n_max.
//
// For fixed y the primary window
//   conj(xi) > 0,  conj(xi) <= |xi| < eps^2 conj(xi),  |Q(x,y)| <= N
// cuts out at most two integer x-intervals, with endpoints of the form
// (A + B sqrt(Z))/C. Points split into the xi > 0 branch (y >= 0) and the
// xi < 0 branch (y <= -1); on a branch the sign of n = Q(x,y) is constant.

namespace {

int ssign(const Int& u, const Int& v, const Int& D) {
  int su = sgn(u), sv = sgn(v);
  if (sv == 0) return su;
  if (su == 0) return sv;
  if (su == sv) return su;
  return (cmp(u * u, v * v * D) > 0) ? su : sv;
}

struct Ctx {
  Int a, b, c, D;
  Int T, U;  // eps^2 = (T + U sqrt(D))/2
  Int N;
};

struct Interval {
  Int lo, hi;
  bool empty() const { return lo > hi; }
};

// Tighten [lo,hi] with the linear constraint (S.u + S.v sqrt(D)) x + (V.u +
// V.v sqrt(D)) > 0 (strict) or >= 0.
void apply_linear(const Ctx& ctx, const Int& Su, const Int& Sv, const Int& Vu,
                  const Int& Vv, bool strict, Interval* iv) {
  Int P = -(Vu * Su) + Vv * Sv * ctx.D;
  Int Q = Vu * Sv - Vv * Su;
  Int R = Su * Su - Sv * Sv * ctx.D;
  int ss = ssign(Su, Sv, ctx.D);
  if (ss == 0) throw domain_error("series: degenerate linear constraint");
  if (ss > 0) {
    Int lo = strict ? Int(floor_surd(P, Q, ctx.D, R) + 1)
                    : Int(-floor_surd(Int(-P), Int(-Q), ctx.D, R));
    if (lo > iv->lo) iv->lo = lo;
  } else {
    Int hi = strict ? Int(-floor_surd(Int(-P), Int(-Q), ctx.D, R) - 1)
                    : floor_surd(P, Q, ctx.D, R);
    if (hi < iv->hi) iv->hi = hi;
  }
}

// Integer hull of the closed interval between the roots of
// a x^2 + (b y) x + K = 0 (root discriminant Z = (by)^2 - 4 a K >= 0).
Interval between_roots(const Ctx& ctx, const Int& y, const Int& Z) {
  Interval iv;
  Int by = ctx.b * y;
  if (ctx.a > 0) {
    iv.lo = -floor_surd(by, 1, Z, 2 * ctx.a);   // ceil of (-by - sqrt(Z))/(2a)
    iv.hi = floor_surd(-by, 1, Z, 2 * ctx.a);   // floor of (-by + sqrt(Z))/(2a)
  } else {
    iv.lo = -floor_surd(by, -1, Z, 2 * ctx.a);
    iv.hi = floor_surd(-by, -1, Z, 2 * ctx.a);
  }
  return iv;
}

// Integers strictly between the roots (the excluded gap), empty if Z < 0.
// Roots hit exactly at an integer x stay allowed (|n| = N there).
Interval open_gap(const Ctx& ctx, const Int& y, const Int& Z) {
  if (Z < 0) return Interval{0, -1};
  Int by = ctx.b * y;
  Interval gap;
  if (ctx.a > 0) {
    gap.lo = floor_surd(-by, -1, Z, 2 * ctx.a) + 1;  // floor(min root) + 1
    gap.hi = -floor_surd(by, -1, Z, 2 * ctx.a) - 1;  // ceil(max root) - 1
  } else {
    gap.lo = floor_surd(-by, 1, Z, 2 * ctx.a) + 1;
    gap.hi = -floor_surd(by, 1, Z, 2 * ctx.a) - 1;
  }
  return gap;
}

// x-intervals of the slice (y, branch). branch = +1: xi > 0 (y >= 0);
// branch = -1: xi < 0 (y <= -1). Returns 0, 1 or 2 intervals.
int slice_intervals(const Ctx& ctx, const Int& y, int branch, Interval out[2]) {
  const Int kHuge = Int(1) << 80;
  Interval iv{-kHuge, kHuge};
  // conj(xi) = (2a x + b y) - y sqrt(D) > 0
  apply_linear(ctx, 2 * ctx.a, Int(0), ctx.b * y, -y, /*strict=*/true, &iv);
  if (branch > 0) {
    // 2 xi < (T + U sqrt(D)) conj(xi)
    Int Su = 2 * ctx.a * (ctx.T - 2), Sv = 2 * ctx.a * ctx.U;
    Int Vu = ctx.T * ctx.b * y - ctx.U * y * ctx.D - 2 * ctx.b * y;
    Int Vv = -ctx.T * y + ctx.U * ctx.b * y - 2 * y;
    apply_linear(ctx, Su, Sv, Vu, Vv, /*strict=*/true, &iv);
    if (iv.empty()) return 0;
    Int Z = ctx.D * y * y + 4 * abs(ctx.a) * ctx.N;
    Interval roots = between_roots(ctx, y, Z);
    iv.lo = std::max(iv.lo, roots.lo);
    iv.hi = std::min(iv.hi, roots.hi);
    if (iv.empty()) return 0;
    out[0] = iv;
    return 1;
  }
  // branch < 0: xi + conj(xi) <= 0, i.e. -(4a x + 2 b y) >= 0
  apply_linear(ctx, -4 * ctx.a, Int(0), -2 * ctx.b * y, Int(0), /*strict=*/false, &iv);
  // (T + U sqrt(D)) conj(xi) + 2 xi > 0
  Int Su = 2 * ctx.a * (ctx.T + 2), Sv = 2 * ctx.a * ctx.U;
  Int Vu = ctx.T * ctx.b * y - ctx.U * y * ctx.D + 2 * ctx.b * y;
  Int Vv = -ctx.T * y + ctx.U * ctx.b * y + 2 * y;
  apply_linear(ctx, Su, Sv, Vu, Vv, /*strict=*/true, &iv);
  if (iv.empty()) return 0;
  Interval gap = open_gap(ctx, y, ctx.D * y * y - 4 * abs(ctx.a) * ctx.N);
  if (gap.empty() || gap.hi < iv.lo || gap.lo > iv.hi) {
    out[0] = iv;
    return 1;
  }
  int cnt = 0;
  if (iv.lo <= gap.lo - 1) out[cnt++] = Interval{iv.lo, gap.lo - 1};
  if (gap.hi + 1 <= iv.hi) out[cnt++] = Interval{gap.hi + 1, iv.hi};
  return cnt;
}

long y_limit(const BinaryQuadraticForm& Q, const Int& D, double n_max) {
  FundamentalUnit fu = pell_smallest(D);
  double epsd = (fu.t0.get_d() + fu.u0.get_d() * std::sqrt(D.get_d())) / 2.0;
  double bound = (epsd + 1.0) * std::sqrt(std::abs(Q.a.get_d()) * n_max / D.get_d());
  return static_cast<long>(bound) + 2;
}

struct SliceJob {
  long y;
  int branch;
};

template <typename PerPoint>
void run_slice(const Ctx& ctx, const SliceJob& job, PerPoint&& per_point) {
  Interval ivs[2];
  Int y(job.y);
  int cnt = slice_intervals(ctx, y, job.branch, ivs);
  const Int kLim = Int(1) << 62;
  for (int i = 0; i < cnt; ++i) {
    if (abs(ivs[i].lo) > kLim || abs(ivs[i].hi) > kLim)
      throw overflow_guard_error("series: x range exceeds 64-bit budget");
    long long xlo = ivs[i].lo.get_si(), xhi = ivs[i].hi.get_si();
    long long A = ctx.a.get_si(), B = ctx.b.get_si(), C = ctx.c.get_si();
    long long n = A * xlo * xlo + B * xlo * job.y + C * job.y * job.y;
    long long delta = A * (2 * xlo + 1) + B * job.y;
    for (long long x = xlo; x <= xhi; ++x) {
      per_point(n);
      n += delta;
      delta += 2 * A;
    }
  }
}

Ctx make_ctx(const BinaryQuadraticForm& Q, long long n_max) {
  Int D = Q.disc();
  if (D <= 0 || is_perfect_square(D))
    throw invalid_discriminant_error("series: positive nonsquare discriminant required");
  FundamentalUnit fu = pell_smallest(D);
  Ctx ctx;
  ctx.a = Q.a;
  ctx.b = Q.b;
  ctx.c = Q.c;
  ctx.D = D;
  ctx.T = fu.t0 * fu.t0 - 2;
  ctx.U = fu.t0 * fu.u0;
  ctx.N = Int(static_cast<long>(n_max));
  if (ctx.T > (Int(1) << 40) || abs(Q.a) > (1 << 20) || abs(Q.b) > (1 << 20))
    throw overflow_guard_error("series: coefficients exceed supported range");
  return ctx;
}

}  // namespace

RepTable rep_counts(const BinaryQuadraticForm& Q, long n_max) {
  Ctx ctx = make_ctx(Q, n_max);
  RepTable t;
  t.pos.assign(static_cast<size_t>(n_max) + 1, 0);
  t.neg.assign(static_cast<size_t>(n_max) + 1, 0);
  long ylim = y_limit(Q, ctx.D, static_cast<double>(n_max));
  for (long y = 0; y <= ylim; ++y)
    run_slice(ctx, SliceJob{y, +1}, [&](long long n) {
      if (n > 0) ++t.pos[static_cast<size_t>(n)];
      else ++t.neg[static_cast<size_t>(-n)];
    });
  for (long y = -1; y >= -ylim; --y)
    run_slice(ctx, SliceJob{y, -1}, [&](long long n) {
      if (n > 0) ++t.pos[static_cast<size_t>(n)];
      else ++t.neg[static_cast<size_t>(-n)];
    });
  return t;
}

double rep_series_sum(const BinaryQuadraticForm& Q, double theta, long long n_max,
                      int threads) {
  Ctx ctx = make_ctx(Q, n_max);
  long ylim = y_limit(Q, ctx.D, static_cast<double>(n_max));
  // Slice table: branch + for y = 0..ylim, branch - for y = -1..-ylim.
  std::vector<SliceJob> jobs;
  jobs.reserve(2 * static_cast<size_t>(ylim) + 1);
  for (long y = 0; y <= ylim; ++y) jobs.push_back({y, +1});
  for (long y = -1; y >= -ylim; --y) jobs.push_back({y, -1});
  std::vector<double> partial(jobs.size(), 0.0);

  auto worker = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      double acc = 0.0;
      if (theta == 2.0) {
        run_slice(ctx, jobs[i], [&acc](long long n) {
          double dn = static_cast<double>(n);
          acc += 1.0 / (dn * dn);
        });
      } else if (theta == 4.0) {
        run_slice(ctx, jobs[i], [&acc](long long n) {
          double dn = static_cast<double>(n);
          double sq = dn * dn;
          acc += 1.0 / (sq * sq);
        });
      } else {
        run_slice(ctx, jobs[i], [&acc, theta](long long n) {
          acc += std::pow(std::abs(static_cast<double>(n)), -theta);
        });
      }
      partial[i] = acc;
    }
  };

  int nthreads = std::max(1, threads);
  if (nthreads == 1 || jobs.size() < 16) {
    worker(0, jobs.size());
  } else {
    std::vector<std::thread> pool;
    size_t chunk = (jobs.size() + nthreads - 1) / nthreads;
    for (int tix = 0; tix < nthreads; ++tix) {
      size_t b = std::min(jobs.size(), tix * chunk);
      size_t e = std::min(jobs.size(), b + chunk);
      if (b < e) pool.emplace_back(worker, b, e);
    }
    for (auto& th : pool) th.join();
  }
  long double total = 0.0L;
  for (double p : partial) total += p;
  return static_cast<double>(total);
}

}  // namespace quadwalk
