#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "quadwalk/errors.hpp"
#include "quadwalk/real.hpp"

namespace quadwalk {

using Int = mpz_class;
using Rat = mpq_class;

Rat make_rat(Int num, Int den);

// Floor of (A + B*sqrt(Z)) / C with integers A,B,Z>=0,C!=0, computed with
// integer square roots only. Z need not be squarefree; B*sqrt(Z) may be
// rational (Z a perfect square or B=0).
Int floor_surd(const Int& A, const Int& B, const Int& Z, const Int& C);

bool is_squarefree(const Int& n);
Int isqrt(const Int& n);
bool is_perfect_square(const Int& n, Int* root = nullptr);

// Element a + b*sqrt(d) of a real quadratic field, a,b rational, d squarefree
// > 1. d == 1 marks a plain rational (b must then be 0).
class QuadElem {
 public:
  QuadElem() : a_(0), b_(0), d_(1) {}
  QuadElem(Rat a, Rat b, long d);
  static QuadElem rational(Rat a) { return QuadElem(std::move(a), Rat(0), 1); }
  static QuadElem sqrt(long d) { return QuadElem(Rat(0), Rat(1), d); }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  long d() const { return d_; }

  QuadElem conj() const { return QuadElem(a_, -b_, d_); }
  Rat norm() const { return a_ * a_ - b_ * b_ * d_; }
  Rat trace() const { return 2 * a_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  int sign() const;
  Int floor() const;
  Int ceil() const;

  QuadElem operator-() const { return QuadElem(-a_, -b_, d_); }
  friend QuadElem operator+(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator-(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator*(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator/(const QuadElem& x, const QuadElem& y);
  QuadElem inverse() const;
  QuadElem pow(unsigned long e) const;

  friend bool operator==(const QuadElem& x, const QuadElem& y) {
    return (x - y).is_zero();
  }
  friend bool operator<(const QuadElem& x, const QuadElem& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator>(const QuadElem& x, const QuadElem& y) {
    return (x - y).sign() > 0;
  }

  Real to_real(mpfr_prec_t prec = Real::kDefaultPrec) const;
  double approx() const { return to_real(128).to_double(); }
  std::string str() const;

 private:
  Rat a_, b_;
  long d_;
};

std::ostream& operator<<(std::ostream& os, const QuadElem& x);

// A real quadratic irrational (p + q*sqrt(d))/r stored canonically
// (q > 0, gcd(p,q,r) = 1) together with its minimal polynomial
// a x^2 + b x + c (a > 0, gcd(a,b,c) = 1), discriminant D = b^2 - 4ac and the
// root selector: root_sign = +1 picks (-b + sqrt(D))/(2a).
class QuadIrrational {
 public:
  static QuadIrrational make(Int p, Int q, Int r, long d);
  static QuadIrrational from_poly(Int a, Int b, Int c, int root_sign);

  const Int& p() const { return p_; }
  const Int& q() const { return q_; }
  const Int& r() const { return r_; }
  long d() const { return d_; }
  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  const Int& D() const { return D_; }
  int root_sign() const { return root_sign_; }

  QuadElem value() const;
  QuadElem conjugate_value() const { return value().conj(); }
  QuadIrrational conjugate() const;   // other root of the same polynomial
  bool larger_root() const { return root_sign_ > 0; }

  QuadIrrational shift(const Int& k) const;  // alpha + k
  QuadIrrational negated() const;            // -alpha
  QuadIrrational inverted() const;           // 1/alpha
  QuadIrrational scaled(const Int& L) const; // L*alpha, L != 0

  Real to_real(mpfr_prec_t prec = Real::kDefaultPrec) const {
    return value().to_real(prec);
  }
  double approx() const { return value().approx(); }
  std::string str() const;

  friend bool operator==(const QuadIrrational& x, const QuadIrrational& y) {
    return x.p_ == y.p_ && x.q_ == y.q_ && x.r_ == y.r_ && x.d_ == y.d_;
  }

 private:
  QuadIrrational() = default;
  void attach_minpoly();

  Int p_, q_, r_;
  long d_ = 0;
  Int a_, b_, c_, D_;
  int root_sign_ = +1;
};

std::ostream& operator<<(std::ostream& os, const QuadIrrational& x);

// D = f^2 d (d = 1 mod 4) or D = 4 f^2 d (otherwise), d squarefree, together
// with the fundamental discriminant D0 of the ambient field.
struct DiscriminantDecomposition {
  Int D;
  Int f;
  long d;
  Int D0;
};

DiscriminantDecomposition decompose_discriminant(const Int& D);

// Multiplier m with sqrt(D) = m * sqrt(d).
Int surd_multiplier(const DiscriminantDecomposition& dec);

}  // namespace quadwalk
