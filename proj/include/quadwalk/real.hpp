#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdio>
#include <string>
#include <utility>

namespace quadwalk {

// Thin RAII wrapper around mpfr_t. Default precision is 192 bits, enough to
// keep every derived float view far below the 1e-25 relative budget of the
// exact-constant views.
class Real {
 public:
  static constexpr mpfr_prec_t kDefaultPrec = 192;

  Real() { mpfr_init2(v_, kDefaultPrec); mpfr_set_zero(v_, 1); }
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Real() { mpfr_clear(v_); }

  static Real of(double x, mpfr_prec_t prec = kDefaultPrec) {
    Real r(prec); mpfr_set_d(r.v_, x, MPFR_RNDN); return r;
  }
  static Real of(long x, mpfr_prec_t prec = kDefaultPrec) {
    Real r(prec); mpfr_set_si(r.v_, x, MPFR_RNDN); return r;
  }
  static Real of(const mpz_class& x, mpfr_prec_t prec = kDefaultPrec) {
    Real r(prec); mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN); return r;
  }
  static Real of(const mpq_class& x, mpfr_prec_t prec = kDefaultPrec) {
    Real r(prec); mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN); return r;
  }
  static Real pi(mpfr_prec_t prec = kDefaultPrec) {
    Real r(prec); mpfr_const_pi(r.v_, MPFR_RNDN); return r;
  }
  static Real sqrt_of(const mpz_class& x, mpfr_prec_t prec = kDefaultPrec) {
    Real r(prec);
    mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec())); mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec())); mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec())); mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec())); mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  Real operator-() const { Real r(prec()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  Real log() const { Real r(prec()); mpfr_log(r.v_, v_, MPFR_RNDN); return r; }
  Real sqrt() const { Real r(prec()); mpfr_sqrt(r.v_, v_, MPFR_RNDN); return r; }
  Real abs() const { Real r(prec()); mpfr_abs(r.v_, v_, MPFR_RNDN); return r; }
  Real pow_ui(unsigned long e) const {
    Real r(prec()); mpfr_pow_ui(r.v_, v_, e, MPFR_RNDN); return r;
  }
  Real pow(const Real& e) const {
    Real r(std::max(prec(), e.prec())); mpfr_pow(r.v_, v_, e.v_, MPFR_RNDN); return r;
  }
  // Fractional part in [0,1).
  Real frac_mod1() const {
    Real r(prec());
    mpfr_frac(r.v_, v_, MPFR_RNDN);
    if (mpfr_sgn(r.v_) < 0) mpfr_add_ui(r.v_, r.v_, 1, MPFR_RNDN);
    return r;
  }

  int sgn() const { return mpfr_sgn(v_); }
  int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
  bool operator<(const Real& o) const { return cmp(o) < 0; }
  bool operator>(const Real& o) const { return cmp(o) > 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }

  std::string str(int digits = 17) const {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
    return std::string(buf);
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace quadwalk
