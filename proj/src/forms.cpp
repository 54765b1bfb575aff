#include "quadwalk/forms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>

namespace quadwalk {

Int BinaryQuadraticForm::content() const {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

BinaryQuadraticForm form_of(const QuadIrrational& alpha) {
  return {alpha.a(), alpha.b(), alpha.c()};
}

BinaryQuadraticForm transform(const BinaryQuadraticForm& Q, const Mat2& B) {
  if (B.det() != 1) throw invalid_matrix_error("transform: matrix must have det 1");
  Int na = Q.eval(B.m00, B.m10);
  Int nc = Q.eval(B.m01, B.m11);
  Int nb = 2 * Q.a * B.m00 * B.m01 + Q.b * (B.m00 * B.m11 + B.m01 * B.m10) +
           2 * Q.c * B.m10 * B.m11;
  return {na, nb, nc};
}

// --- Kronecker symbol ------------------------------------------------------

int kronecker(const Int& a_in, const Int& b_in) {
  Int a = a_in, b = b_in;
  if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && b % 2 == 0) return 0;
  int k = 1;
  // strip twos from b; (a/2) by a mod 8
  long v = 0;
  while (b % 2 == 0) { b /= 2; ++v; }
  if (v % 2 == 1) {
    Int am8 = ((a % 8) + 8) % 8;
    if (am8 == 3 || am8 == 5) k = -k;
  }
  if (b < 0) {
    b = -b;
    if (a < 0) k = -k;
  }
  // now b odd positive; standard Jacobi loop
  a %= b;
  if (a < 0) a += b;
  while (a != 0) {
    v = 0;
    while (a % 2 == 0) { a /= 2; ++v; }
    if (v % 2 == 1) {
      Int bm8 = b % 8;
      if (bm8 == 3 || bm8 == 5) k = -k;
    }
    if (a % 4 == 3 && b % 4 == 3) k = -k;
    std::swap(a, b);
    a %= b;
  }
  return (b == 1) ? k : 0;
}

int kronecker(long a, long b) { return kronecker(Int(a), Int(b)); }

// --- reduction -------------------------------------------------------------

bool is_reduced(const BinaryQuadraticForm& Q) {
  Int D = Q.disc();
  if (D <= 0 || is_perfect_square(D)) return false;
  Int s = isqrt(D);
  Int aa = 2 * abs(Q.a);
  return Q.b >= 1 && Q.b <= s && aa - Q.b <= s && aa + Q.b >= s + 1;
}

namespace {

// One rho step: (a,b,c) -> (c, r, (r^2-D)/(4c)); also reports the column
// matrix [[0,-1],[1,(r+b)/(2c)]] realizing it.
BinaryQuadraticForm rho_step(const BinaryQuadraticForm& Q, const Int& D, const Int& s,
                             Mat2* B) {
  Int c = Q.c;
  Int m2 = 2 * abs(c);
  Int r0 = (-Q.b) % m2;
  if (r0 < 0) r0 += m2;
  Int r;
  if (c * c > D) {
    r = (r0 > abs(c)) ? r0 - m2 : r0;
  } else {
    // unique residue in [s+1-2|c|, s]
    r = s - ((s - r0) % m2 + m2) % m2;
  }
  BinaryQuadraticForm next{c, r, (r * r - D) / (4 * c)};
  if (B) *B = Mat2{0, -1, 1, (r + Q.b) / (2 * c)};
  return next;
}

}  // namespace

BinaryQuadraticForm reduce(const BinaryQuadraticForm& Q) {
  Int D = Q.disc();
  if (D <= 0 || is_perfect_square(D))
    throw invalid_discriminant_error("reduce: positive nonsquare discriminant required");
  Int s = isqrt(D);
  BinaryQuadraticForm cur = Q;
  for (int i = 0; i < 100000 && !is_reduced(cur); ++i) cur = rho_step(cur, D, s, nullptr);
  if (!is_reduced(cur)) throw domain_error("reduce: did not converge");
  return cur;
}

std::vector<BinaryQuadraticForm> reduction_cycle(const BinaryQuadraticForm& Q) {
  Int D = Q.disc();
  Int s = isqrt(D);
  BinaryQuadraticForm start = reduce(Q);
  std::vector<BinaryQuadraticForm> cycle{start};
  BinaryQuadraticForm cur = rho_step(start, D, s, nullptr);
  while (!(cur == start)) {
    cycle.push_back(cur);
    cur = rho_step(cur, D, s, nullptr);
  }
  return cycle;
}

bool equivalent(const BinaryQuadraticForm& Q1, const BinaryQuadraticForm& Q2) {
  Int D1 = Q1.disc(), D2 = Q2.disc();
  if (D1 != D2) throw domain_error("equivalent: discriminants differ");
  if (D1 <= 0 || is_perfect_square(D1))
    throw invalid_discriminant_error("equivalent: positive nonsquare discriminant required");
  Int g1 = Q1.content(), g2 = Q2.content();
  if (g1 != g2) return false;
  BinaryQuadraticForm P1{Q1.a / g1, Q1.b / g1, Q1.c / g1};
  BinaryQuadraticForm P2{Q2.a / g2, Q2.b / g2, Q2.c / g2};
  BinaryQuadraticForm target = reduce(P2);
  for (const auto& F : reduction_cycle(P1))
    if (F == target) return true;
  return false;
}

// --- Pell ------------------------------------------------------------------

namespace {

FundamentalUnit pell_uncached(const Int& D) {
  if (D <= 0 || is_perfect_square(D) || (D % 4 != 0 && D % 4 != 1))
    throw invalid_discriminant_error("pell_smallest: invalid discriminant");
  // Principal form of discriminant D.
  Int b0 = (D % 2 == 0) ? 0 : 1;
  BinaryQuadraticForm principal{1, b0, (b0 * b0 - D) / 4};
  Int s = isqrt(D);
  BinaryQuadraticForm start = reduce(principal);
  // One full trip around the cycle realizes the fundamental automorphism;
  // the accumulated matrix has the shape (((t-bu)/2, -cu), (au, (t+bu)/2)).
  Mat2 M = Mat2::identity();
  BinaryQuadraticForm cur = start;
  do {
    Mat2 B;
    cur = rho_step(cur, D, s, &B);
    M = M * B;
  } while (!(cur == start));
  Int t = M.m00 + M.m11;
  Int u = M.m10 / start.a;
  t = abs(t);
  u = abs(u);
  if (t * t - D * u * u != 4)
    throw domain_error("pell_smallest: automorphism extraction failed");

  FundamentalUnit fu;
  fu.D = D;
  fu.t0 = t;
  fu.u0 = u;
  DiscriminantDecomposition dec = decompose_discriminant(D);
  Int m = surd_multiplier(dec);
  fu.eps = QuadElem(make_rat(t, Int(2)), make_rat(u * m, Int(2)), dec.d);
  fu.eps_sq = fu.eps * fu.eps;
  Real num = Real::of(t, 128) + Real::of(u, 128) * Real::sqrt_of(D, 128);
  fu.log_eps = (num / Real::of(2L, 128)).log();
  return fu;
}

std::mutex g_pell_mutex;
std::map<Int, FundamentalUnit>& pell_cache() {
  static std::map<Int, FundamentalUnit> cache;
  return cache;
}

}  // namespace

FundamentalUnit pell_smallest(const Int& D) {
  {
    std::lock_guard<std::mutex> lk(g_pell_mutex);
    auto it = pell_cache().find(D);
    if (it != pell_cache().end()) return it->second;
  }
  FundamentalUnit fu = pell_uncached(D);
  std::lock_guard<std::mutex> lk(g_pell_mutex);
  pell_cache().emplace(D, fu);
  return fu;
}

// --- class numbers ---------------------------------------------------------

ClassData class_number(const Int& D) {
  if (D <= 0 || is_perfect_square(D) || (D % 4 != 0 && D % 4 != 1))
    throw invalid_discriminant_error("class_number: invalid discriminant");
  Int s = isqrt(D);
  std::set<BinaryQuadraticForm> reduced;
  Int b = (D % 2 == 0) ? 0 : 1;
  if (b == 0) b = 2;  // b >= 1 with b = D mod 2
  for (; b <= s; b += 2) {
    Int m = (D - b * b) / 4;  // = -ac > 0
    for (Int av = 1; av * av <= m; ++av) {
      if (m % av != 0) continue;
      Int other = m / av;
      for (const Int& aa : {av, other}) {
        Int cc = m / aa;
        for (int sa : {+1, -1}) {
          BinaryQuadraticForm F{sa * aa, b, -sa * cc};
          if (!is_reduced(F) || !F.primitive()) continue;
          reduced.insert(F);
        }
        if (aa == other) break;
      }
    }
  }
  ClassData cd;
  cd.D = D;
  std::set<BinaryQuadraticForm> seen;
  for (const auto& F : reduced) {
    if (seen.count(F)) continue;
    auto cycle = reduction_cycle(F);
    BinaryQuadraticForm rep = *std::min_element(cycle.begin(), cycle.end());
    for (auto& G : cycle) seen.insert(G);
    cd.representatives.push_back(rep);
  }
  std::sort(cd.representatives.begin(), cd.representatives.end());
  cd.h = static_cast<long>(cd.representatives.size());
  return cd;
}

// --- primary representations ----------------------------------------------

namespace {

// sign of u + v*sqrt(D), exact
int surd_sign(const Int& u, const Int& v, const Int& D) {
  int su = sgn(u), sv = sgn(v);
  if (sv == 0) return su;
  if (su == 0) return sv;
  if (su == sv) return su;
  int c = cmp(u * u, v * v * D);
  if (c == 0) throw domain_error("surd_sign: square discriminant");
  return c > 0 ? su : sv;
}

}  // namespace

PrimaryReps primary_reps(const BinaryQuadraticForm& Q, const Int& n) {
  if (n == 0) throw domain_error("primary_reps: n must be nonzero");
  Int D = Q.disc();
  if (D <= 0 || is_perfect_square(D))
    throw invalid_discriminant_error("primary_reps: positive nonsquare discriminant required");
  if (!Q.primitive()) throw domain_error("primary_reps: form must be primitive");
  FundamentalUnit fu = pell_smallest(D);
  // eps^2 = (T + U sqrt(D))/2
  Int T = fu.t0 * fu.t0 - 2;
  Int U = fu.t0 * fu.u0;

  double epsd = (fu.t0.get_d() + fu.u0.get_d() * std::sqrt(D.get_d())) / 2.0;
  double bound =
      (epsd + 1.0) * std::sqrt(4.0 * std::abs(Q.a.get_d()) * std::abs(n.get_d())) /
      (2.0 * std::sqrt(D.get_d()));
  Int y_max(static_cast<long>(bound) + 2);

  PrimaryReps out;
  for (Int y = -y_max; y <= y_max; ++y) {
    Int delta = D * y * y + 4 * Q.a * n;
    if (delta < 0) continue;
    Int sd;
    if (!is_perfect_square(delta, &sd)) continue;
    for (int pm : {+1, -1}) {
      Int num = -Q.b * y + pm * sd;
      if (num % (2 * Q.a) != 0) continue;
      Int x = num / (2 * Q.a);
      // xi = w + y sqrt(D), conj = w - y sqrt(D), w = 2ax + by
      Int w = 2 * Q.a * x + Q.b * y;
      if (surd_sign(w, -y, D) <= 0) continue;  // conj(xi) > 0
      // ratio >= 1 iff xi - conj = 2y sqrt(D) >= 0 or -xi - conj = -2w >= 0
      bool ge1 = (sgn(y) >= 0) || (sgn(w) <= 0);
      if (!ge1) continue;
      // |xi| < eps^2 conj: eps^2*conj -+ xi > 0 for both signs.
      // eps^2 * conj = ((T w - U y D) + (U w - T y) sqrt(D)) / 2
      Int pu = T * w - U * y * D;
      Int pv = U * w - T * y;
      // pu/2 + pv/2 sqrt(D) > |xi| <=> (pu -+ 2w) + (pv -+ 2y) sqrt(D) > 0 both
      if (surd_sign(pu - 2 * w, pv - 2 * y, D) <= 0) continue;
      if (surd_sign(pu + 2 * w, pv + 2 * y, D) <= 0) continue;
      if (pm == -1 && sd == 0) continue;  // double root already handled
      out.points.emplace_back(x, y);
    }
  }
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  out.count = static_cast<long>(out.points.size());
  return out;
}

Int class_rep_sum(const Int& D, const Int& n) {
  if (n < 1) throw domain_error("class_rep_sum: n >= 1 required");
  DiscriminantDecomposition dec = decompose_discriminant(D);
  Int f2 = dec.f * dec.f;
  Int g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), f2.get_mpz_t());
  Int m;
  if (!is_perfect_square(g, &m)) return 0;
  // m * prod_{p | m} (1 - (D/m^2 / p)/p)
  Int Dm2 = D / (m * m);
  Int coeff = m;
  Int rest = m;
  for (Int p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    coeff = coeff / p * (p - kronecker(Dm2, p));
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) coeff = coeff / rest * (rest - kronecker(Dm2, rest));
  // sum over k | n/m^2 of (D/f^2 / k)
  Int nm = n / (m * m);
  Int Df2 = D / f2;
  Int total = 0;
  for (Int k = 1; k * k <= nm; ++k) {
    if (nm % k != 0) continue;
    total += kronecker(Df2, k);
    Int other = nm / k;
    if (other != k) total += kronecker(Df2, other);
  }
  return coeff * total;
}

}  // namespace quadwalk
