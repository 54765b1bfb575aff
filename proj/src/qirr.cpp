#include "quadwalk/qirr.hpp"

#include <ostream>
#include <sstream>

namespace quadwalk {

Rat make_rat(Int num, Int den) {
  Rat r(std::move(num), std::move(den));
  r.canonicalize();
  return r;
}

Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Int& n, Int* root) {
  if (n < 0) return false;
  Int r = isqrt(n);
  if (r * r == n) {
    if (root) *root = r;
    return true;
  }
  return false;
}

bool is_squarefree(const Int& n) {
  if (n <= 0) return false;
  Int m = n;
  for (Int f = 2; f * f * f <= m; ++f) {
    if (m % f == 0) {
      m /= f;
      if (m % f == 0) return false;
    }
  }
  // Remaining cofactor has at most two prime factors, both > cbrt(n); it is
  // squarefree unless it is a perfect square.
  return !(m > 1 && is_perfect_square(m));
}

Int floor_surd(const Int& A, const Int& B, const Int& Z, const Int& C) {
  if (C == 0) throw domain_error("floor_surd: zero denominator");
  Int a = A, b = B, c = C;
  if (c < 0) { a = -a; b = -b; c = -c; }
  if (b == 0 || Z == 0) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    return q;
  }
  // Fold |B| into the radicand so the surd part is +-sqrt(Z').
  Int z = b * b * Z;
  int s = sgn(b);
  Int t, q;
  if (is_perfect_square(z, &t)) {
    Int num = a + s * t;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), c.get_mpz_t());
    return q;
  }
  t = isqrt(z);
  // s=+1: value*c in (a+t, a+t+1); s=-1: in (a-t-1, a-t). Either open unit
  // interval contains no integer, so the floor is exact.
  Int num = (s > 0) ? Int(a + t) : Int(a - t - 1);
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), c.get_mpz_t());
  return q;
}

QuadElem::QuadElem(Rat a, Rat b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ == 1) {
    if (b_ != 0) throw invalid_field_error("QuadElem: surd part with d=1");
  } else if (d_ <= 1) {
    throw invalid_field_error("QuadElem: d must be > 1");
  }
}

namespace {
long join_field(const QuadElem& x, const QuadElem& y) {
  if (x.d() == 1) return y.d();
  if (y.d() == 1 || y.d() == x.d()) return x.d();
  throw invalid_field_error("QuadElem: mixed fields");
}
}  // namespace

QuadElem operator+(const QuadElem& x, const QuadElem& y) {
  return QuadElem(x.a() + y.a(), x.b() + y.b(), join_field(x, y));
}

QuadElem operator-(const QuadElem& x, const QuadElem& y) {
  return QuadElem(x.a() - y.a(), x.b() - y.b(), join_field(x, y));
}

QuadElem operator*(const QuadElem& x, const QuadElem& y) {
  long d = join_field(x, y);
  Rat a = x.a() * y.a() + x.b() * y.b() * (d == 1 ? 0 : d);
  Rat b = x.a() * y.b() + x.b() * y.a();
  return QuadElem(std::move(a), std::move(b), d);
}

QuadElem QuadElem::inverse() const {
  Rat n = norm();
  if (n == 0) throw domain_error("QuadElem: inverse of zero");
  return QuadElem(a_ / n, -b_ / n, d_);
}

QuadElem operator/(const QuadElem& x, const QuadElem& y) { return x * y.inverse(); }

QuadElem QuadElem::pow(unsigned long e) const {
  QuadElem r = QuadElem::rational(Rat(1));
  QuadElem base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  if (r.d_ == 1 && d_ != 1) r.d_ = d_;
  return r;
}

int QuadElem::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 against b^2 d.
  Rat lhs = a_ * a_, rhs = b_ * b_ * d_;
  int c = cmp(lhs, rhs);
  if (c == 0) throw domain_error("QuadElem: sqrt(d) rational");
  return c > 0 ? sa : sb;
}

Int QuadElem::floor() const {
  // Clear denominators: (A + B sqrt(d)) / C.
  Int qa = a_.get_den(), qb = b_.get_den();
  Int C;
  mpz_lcm(C.get_mpz_t(), qa.get_mpz_t(), qb.get_mpz_t());
  Int A = a_.get_num() * (C / qa);
  Int B = b_.get_num() * (C / qb);
  return floor_surd(A, B, Int(d_), C);
}

Int QuadElem::ceil() const {
  Int f = floor();
  QuadElem frac = *this - QuadElem::rational(Rat(f));
  return frac.is_zero() ? f : f + 1;
}

Real QuadElem::to_real(mpfr_prec_t prec) const {
  Real r = Real::of(a_, prec);
  if (b_ != 0) r += Real::of(b_, prec) * Real::sqrt_of(Int(d_), prec);
  return r;
}

std::string QuadElem::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadElem& x) {
  os << x.a();
  if (x.b() != 0) {
    os << (sgn(x.b()) < 0 ? " - " : " + ");
    os << abs(x.b()) << "*sqrt(" << x.d() << ")";
  }
  return os;
}

QuadIrrational QuadIrrational::make(Int p, Int q, Int r, long d) {
  if (d <= 1 || !is_squarefree(Int(d)))
    throw invalid_field_error("make_quad_irrational: d must be squarefree > 1");
  if (q == 0) throw rational_input_error("make_quad_irrational: q = 0 is rational");
  if (r == 0) throw domain_error("make_quad_irrational: r = 0");
  // Canonical orientation: q > 0, the overall sign lives in r.
  if (q < 0) { p = -p; q = -q; r = -r; }
  Int g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.get_mpz_t());
  QuadIrrational x;
  x.p_ = p / g;
  x.q_ = q / g;
  x.r_ = r / g;
  x.d_ = d;
  x.attach_minpoly();
  return x;
}

void QuadIrrational::attach_minpoly() {
  // From (r*alpha - p)^2 = q^2 d.
  Int a = r_ * r_;
  Int b = -2 * p_ * r_;
  Int c = p_ * p_ - q_ * q_ * d_;
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (a < 0) g = -g;
  a_ = a / g;
  b_ = b / g;
  c_ = c / g;
  D_ = b_ * b_ - 4 * a_ * c_;
  // alpha = (-b + sign * sqrt(D))/(2a); the larger root has q/r > 0.
  root_sign_ = (sgn(q_) * sgn(r_) > 0) ? +1 : -1;
}

QuadIrrational QuadIrrational::from_poly(Int a, Int b, Int c, int root_sign) {
  if (a == 0) throw domain_error("from_poly: degree 2 required");
  if (a < 0) { a = -a; b = -b; c = -c; }
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  a /= g;
  b /= g;
  c /= g;
  Int D = b * b - 4 * a * c;
  if (D <= 0) throw invalid_field_error("from_poly: discriminant must be positive");
  if (is_perfect_square(D))
    throw rational_input_error("from_poly: square discriminant gives rational roots");
  DiscriminantDecomposition dec = decompose_discriminant(D);
  Int m = surd_multiplier(dec);
  // (-b + s*sqrt(D))/(2a) = (-b + s*m*sqrt(d))/(2a)
  Int q = (root_sign >= 0) ? m : -m;
  return make(-b, q, 2 * a, dec.d);
}

QuadElem QuadIrrational::value() const {
  return QuadElem(make_rat(p_, r_), make_rat(q_, r_), d_);
}

QuadIrrational QuadIrrational::conjugate() const {
  return make(p_, -q_, r_, d_);
}

QuadIrrational QuadIrrational::shift(const Int& k) const {
  return make(p_ + k * r_, q_, r_, d_);
}

QuadIrrational QuadIrrational::negated() const {
  return make(-p_, -q_, r_, d_);
}

QuadIrrational QuadIrrational::inverted() const {
  // r/(p + q sqrt(d)) = r(p - q sqrt(d)) / (p^2 - q^2 d)
  Int n = p_ * p_ - q_ * q_ * d_;
  return make(r_ * p_, -r_ * q_, n, d_);
}

QuadIrrational QuadIrrational::scaled(const Int& L) const {
  if (L == 0) throw domain_error("scaled: L must be nonzero");
  return make(L * p_, L * q_, r_, d_);
}

std::string QuadIrrational::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadIrrational& x) {
  os << "(" << x.p() << " + " << x.q() << "*sqrt(" << x.d() << "))/" << x.r();
  return os;
}

DiscriminantDecomposition decompose_discriminant(const Int& D) {
  if (D <= 0) throw invalid_discriminant_error("discriminant must be positive");
  Int mod4 = D % 4;
  if (mod4 != 0 && mod4 != 1)
    throw invalid_discriminant_error("discriminant must be 0 or 1 mod 4");
  if (is_perfect_square(D))
    throw invalid_discriminant_error("discriminant must not be a perfect square");

  // Extract the square part: D = s^2 * m with m squarefree.
  Int m = D, s = 1;
  for (Int f = 2; f * f <= m;) {
    Int f2 = f * f;
    if (m % f2 == 0) {
      m /= f2;
      s *= f;
    } else {
      ++f;
    }
  }
  DiscriminantDecomposition dec;
  dec.D = D;
  if (m % 4 == 1) {
    dec.f = s;
    dec.d = m.get_si();
    dec.D0 = m;
  } else {
    // m = 2,3 mod 4 forces D = 0 mod 4 and an even square part.
    dec.f = s / 2;
    dec.d = m.get_si();
    dec.D0 = 4 * m;
  }
  if (dec.f * dec.f * (m % 4 == 1 ? m : 4 * m) != D)
    throw invalid_discriminant_error("discriminant decomposition failed");
  return dec;
}

Int surd_multiplier(const DiscriminantDecomposition& dec) {
  return (dec.D0 == dec.d) ? dec.f : 2 * dec.f;
}

}  // namespace quadwalk
