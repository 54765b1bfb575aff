#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "quadwalk/qirr.hpp"

namespace quadwalk {

// Finitely supported integer step distribution with exact probabilities.
struct StepLaw {
  std::vector<std::pair<long, Rat>> support;  // (value, probability), values distinct

  static StepLaw make(std::vector<std::pair<long, Rat>> entries);

  bool nondegenerate() const { return support.size() >= 2; }
  long lattice_gcd() const;  // gcd of the support values
  Rat mean() const;
  Rat second_moment() const;
  double sigma2() const { return second_moment().get_d(); }
};

// Characteristic function E(exp(i x X)).
std::complex<double> char_fn(const StepLaw& law, double x);

}  // namespace quadwalk
