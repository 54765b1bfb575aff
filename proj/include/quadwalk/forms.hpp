#pragma once

#include <array>
#include <utility>
#include <vector>

#include "quadwalk/qirr.hpp"

namespace quadwalk {

struct BinaryQuadraticForm {
  Int a, b, c;

  Int disc() const { return b * b - 4 * a * c; }
  Int content() const;
  bool primitive() const { return content() == 1; }
  Int eval(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }
  BinaryQuadraticForm negated() const { return {-a, -b, -c}; }

  friend bool operator==(const BinaryQuadraticForm& p, const BinaryQuadraticForm& q) {
    return p.a == q.a && p.b == q.b && p.c == q.c;
  }
  friend bool operator<(const BinaryQuadraticForm& p, const BinaryQuadraticForm& q) {
    int t = cmp(p.a, q.a);
    if (t != 0) return t < 0;
    t = cmp(p.b, q.b);
    if (t != 0) return t < 0;
    return p.c < q.c;
  }
};

// Column-action unimodular matrix ((r,s),(t,u)).
struct Mat2 {
  Int m00, m01, m10, m11;
  Int det() const { return m00 * m11 - m01 * m10; }
  static Mat2 identity() { return {1, 0, 0, 1}; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
            x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
  }
};

BinaryQuadraticForm form_of(const QuadIrrational& alpha);
BinaryQuadraticForm transform(const BinaryQuadraticForm& Q, const Mat2& B);

// Smallest totally positive unit > 1 of the order of discriminant D, i.e.
// eps = (t0 + u0 sqrt(D))/2 from the least positive solution of
// t^2 - D u^2 = 4.
struct FundamentalUnit {
  Int D;
  Int t0, u0;
  QuadElem eps;       // exact, in sqrt(d) coordinates
  QuadElem eps_sq;    // eps^2, needed by the primary-representation window
  Real log_eps;       // 128-bit
};

FundamentalUnit pell_smallest(const Int& D);

struct ClassData {
  Int D;
  long h = 0;
  std::vector<BinaryQuadraticForm> representatives;  // one reduced form per cycle
};

ClassData class_number(const Int& D);

bool is_reduced(const BinaryQuadraticForm& Q);
BinaryQuadraticForm reduce(const BinaryQuadraticForm& Q);
// Reduction cycle starting from (the reduction of) Q, in rho order.
std::vector<BinaryQuadraticForm> reduction_cycle(const BinaryQuadraticForm& Q);

bool equivalent(const BinaryQuadraticForm& Q1, const BinaryQuadraticForm& Q2);

struct PrimaryReps {
  long count = 0;
  std::vector<std::pair<Int, Int>> points;
};

// All (x,y) with Q(x,y) = n in the primary window
//   conj(xi) > 0,  1 <= |xi/conj(xi)| < eps^2,
// where xi = 2ax + (b + sqrt(D))y. Exact arithmetic throughout.
PrimaryReps primary_reps(const BinaryQuadraticForm& Q, const Int& n);

// Total primary representation count of n > 0 over all classes of
// discriminant D, by the finite divisor-sum formula (0 when gcd(n, f^2) is
// not a perfect square).
Int class_rep_sum(const Int& D, const Int& n);

int kronecker(const Int& a, const Int& b);
int kronecker(long a, long b);

// --- series support -------------------------------------------------------
//
// Batched enumeration of the primary sector. rep_counts fills
// counts_pos[n] = R_Q(n) and counts_neg[n] = R_Q(-n) for 1 <= n <= n_max.
// rep_series_sum returns sum over all primary (x,y), 1 <= |Q(x,y)| <= n_max,
// of |Q(x,y)|^-theta, accumulated per |y| slice in slice order.
struct RepTable {
  std::vector<long> pos, neg;  // index n, entry R_Q(+-n); index 0 unused
};

RepTable rep_counts(const BinaryQuadraticForm& Q, long n_max);
double rep_series_sum(const BinaryQuadraticForm& Q, double theta, long long n_max,
                      int threads = 1);

}  // namespace quadwalk
