#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "quadwalk/qirr.hpp"

using namespace quadwalk;

TEST_CASE("construction and minimal polynomials") {
  auto phi = QuadIrrational::make(1, 1, 2, 5);
  CHECK(phi.a() == 1);
  CHECK(phi.b() == -1);
  CHECK(phi.c() == -1);
  CHECK(phi.D() == 5);

  auto a69 = QuadIrrational::make(19, 3, 26, 69);
  CHECK(a69.a() == 13);
  CHECK(a69.b() == -19);
  CHECK(a69.c() == -5);
  CHECK(a69.D() == 621);

  auto r2 = QuadIrrational::make(0, 1, 1, 2);
  CHECK(r2.a() == 1);
  CHECK(r2.b() == 0);
  CHECK(r2.c() == -2);
  CHECK(r2.D() == 8);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(QuadIrrational::make(1, 1, 2, 12), invalid_field_error);  // 12 = 4*3
  CHECK_THROWS_AS(QuadIrrational::make(1, 1, 2, 1), invalid_field_error);
  CHECK_THROWS_AS(QuadIrrational::make(1, 1, 2, -5), invalid_field_error);
  CHECK_THROWS_AS(QuadIrrational::make(1, 0, 2, 5), rational_input_error);
  CHECK_THROWS_AS(QuadIrrational::make(1, 1, 0, 5), domain_error);
}

TEST_CASE("canonicalization") {
  // scaling and sign absorption
  auto x = QuadIrrational::make(2, 2, 4, 5);
  CHECK(x.p() == 1);
  CHECK(x.q() == 1);
  CHECK(x.r() == 2);
  auto y = QuadIrrational::make(-1, -1, -2, 5);  // same value as phi
  CHECK(y == QuadIrrational::make(1, 1, 2, 5));
}

TEST_CASE("value satisfies its minimal polynomial exactly") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long> coef(-30, 30);
  const long ds[] = {2, 3, 5, 6, 7, 10, 11, 13, 69, 101};
  for (int it = 0; it < 200; ++it) {
    long p = coef(rng), q = coef(rng), r = coef(rng);
    if (q == 0 || r == 0) continue;
    long d = ds[static_cast<size_t>(it) % 10];
    auto x = QuadIrrational::make(p, q, r, d);
    QuadElem v = x.value();
    QuadElem res = QuadElem::rational(Rat(x.a())) * v * v +
                   QuadElem::rational(Rat(x.b())) * v + QuadElem::rational(Rat(x.c()));
    CHECK(res.is_zero());
    QuadElem w = x.conjugate_value();
    QuadElem res2 = QuadElem::rational(Rat(x.a())) * w * w +
                    QuadElem::rational(Rat(x.b())) * w + QuadElem::rational(Rat(x.c()));
    CHECK(res2.is_zero());
    // round-trip via from_poly
    auto back = QuadIrrational::from_poly(x.a(), x.b(), x.c(), x.root_sign());
    CHECK(back == x);
  }
}

TEST_CASE("discriminant decomposition") {
  auto d621 = decompose_discriminant(Int(621));
  CHECK(d621.f == 3);
  CHECK(d621.d == 69);
  CHECK(d621.D0 == 69);

  auto d20 = decompose_discriminant(Int(20));
  CHECK(d20.f == 2);
  CHECK(d20.d == 5);
  CHECK(d20.D0 == 5);

  auto d8 = decompose_discriminant(Int(8));
  CHECK(d8.f == 1);
  CHECK(d8.d == 2);
  CHECK(d8.D0 == 8);

  CHECK_THROWS_AS(decompose_discriminant(Int(16)), invalid_discriminant_error);
  CHECK_THROWS_AS(decompose_discriminant(Int(7)), invalid_discriminant_error);
  CHECK_THROWS_AS(decompose_discriminant(Int(-4)), invalid_discriminant_error);
}

TEST_CASE("decomposition recomposes over a range") {
  for (long D = 5; D <= 2000; ++D) {
    if (D % 4 != 0 && D % 4 != 1) continue;
    if (is_perfect_square(Int(D))) continue;
    auto dec = decompose_discriminant(Int(D));
    CHECK(is_squarefree(Int(dec.d)));
    Int re = dec.f * dec.f * (dec.d % 4 == 1 ? Int(dec.d) : Int(4 * dec.d));
    CHECK(re == D);
    // f maximal: D/f^2 must be 0 or 1 mod 4 and squarefree-or-4*squarefree
    Int q = Int(D) / (dec.f * dec.f);
    CHECK((q % 4 == 0 || q % 4 == 1));
  }
}

TEST_CASE("floor and comparison") {
  auto phi = QuadIrrational::make(1, 1, 2, 5);
  CHECK(phi.value().floor() == 1);
  // (25 + 3 sqrt(69))/2
  QuadElem x(make_rat(Int(25), Int(2)), make_rat(Int(3), Int(2)), 69);
  CHECK(x.floor() == 24);
  QuadElem y(make_rat(Int(3), Int(2)), make_rat(Int(1), Int(2)), 2);  // (3+sqrt2)/2
  CHECK(y > QuadElem::rational(Rat(2)));
  CHECK(QuadElem::sqrt(2) < QuadElem::rational(Rat(2)));
}

TEST_CASE("floor agrees with 200-bit float evaluation on random inputs") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<long> big(-1000000, 1000000);
  std::uniform_int_distribution<long> dd(2, 1000);
  int done = 0;
  while (done < 10000) {
    long p = big(rng), q = big(rng), r = big(rng), d = dd(rng);
    if (q == 0 || r == 0 || !is_squarefree(Int(d))) continue;
    ++done;
    auto x = QuadIrrational::make(p, q, r, d);
    Int f = x.value().floor();
    Real v = x.to_real(200);
    Real fr = v - Real::of(f, 200);
    CHECK(fr.sgn() >= 0);
    CHECK((fr - Real::of(1L, 200)).sgn() < 0);
  }
}

TEST_CASE("alpha transformations") {
  auto phi = QuadIrrational::make(1, 1, 2, 5);
  auto s = phi.shift(Int(1));
  CHECK(s.value() == phi.value() + QuadElem::rational(Rat(1)));
  auto n = phi.negated();
  CHECK(n.value() == -phi.value());
  auto i = phi.inverted();
  CHECK(i.value() == phi.value().inverse());
  auto t = phi.scaled(Int(2));  // 1 + sqrt(5), minpoly x^2 - 2x - 4
  CHECK(t.a() == 1);
  CHECK(t.b() == -2);
  CHECK(t.c() == -4);
  CHECK(t.D() == 20);
}
