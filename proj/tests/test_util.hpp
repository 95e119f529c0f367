#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "trisign/binary_form.hpp"
#include "trisign/rational.hpp"

namespace tutil {

// Build a rational binary form from integer coefficients, given in the
// u^d, u^{d-1}v, ..., v^d order used by BinaryForm::coeffs().
inline trisign::RatForm rf(std::initializer_list<long> c) {
  trisign::Vec<trisign::Rational> v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (long x : c) v(i++) = trisign::Rational(x);
  return trisign::RatForm::from_coeffs(std::move(v));
}

inline trisign::BinaryForm<double> df(std::initializer_list<double> c) {
  trisign::Vec<double> v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (double x : c) v(i++) = x;
  return trisign::BinaryForm<double>::from_coeffs(std::move(v));
}

// Random form of exactly the given degree with integer coefficients in
// [lo, hi]; the leading-or-trailing structure is whatever the draw gives,
// except the all-zero form is rerolled.
inline trisign::RatForm random_form(std::mt19937_64& rng, int degree,
                                    int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> d(lo, hi);
  for (;;) {
    trisign::Vec<trisign::Rational> v(degree + 1);
    bool nonzero = false;
    for (int k = 0; k <= degree; ++k) {
      int x = d(rng);
      v(k) = trisign::Rational(x);
      nonzero = nonzero || x != 0;
    }
    if (nonzero) return trisign::RatForm::from_coeffs(std::move(v));
  }
}

inline std::vector<trisign::RatForm> random_curve(std::mt19937_64& rng, int n,
                                                  int lo = -9, int hi = 9) {
  std::vector<trisign::RatForm> p;
  p.reserve(n);
  for (int j = 0; j < n; ++j) p.push_back(random_form(rng, 2 * n - 2, lo, hi));
  return p;
}

}  // namespace tutil
