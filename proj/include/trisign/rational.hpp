#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "trisign/errors.hpp"

namespace trisign {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// High-precision escalation scalars for borderline numeric sign decisions.
using Float50 = boost::multiprecision::cpp_bin_float_50;
using Complex50 = boost::multiprecision::cpp_complex_50;
using Float100 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>>;
using Complex100 = boost::multiprecision::cpp_complex<100>;

template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using RatVec = Vec<Rational>;
using RatMat = Mat<Rational>;

// Parses "a/b" (or "a"); canonicalizes and rejects zero denominators.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) fail(ErrorKind::InvalidInput, "empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) fail(ErrorKind::InvalidInput, "zero denominator in '" + s + "'");
    return Rational(num, den);  // two-integer ctor canonicalizes
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidInput, "bad rational literal '" + s + "'");
  }
}

inline std::string format_rational(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline int sign_of(const Rational& r) { return r == 0 ? 0 : (r > 0 ? 1 : -1); }

template <typename Real>
Real to_real(const Rational& r) {
  return Real(numerator(r)) / Real(denominator(r));
}

// Nearest rational with denominator <= max_den within tol of x, via the
// Stern-Brocot / continued-fraction convergents of x. Empty when x has no
// such approximant (the usual signal that a numeric quantity is irrational).
inline std::optional<Rational> rationalize(double x, std::int64_t max_den = 1000000,
                                           double tol = 1e-9) {
  if (!std::isfinite(x)) return std::nullopt;
  const bool neg = x < 0;
  double y = std::abs(x);
  // convergents p_k/q_k of the continued fraction of y
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = y;
  for (int it = 0; it < 64; ++it) {
    const double fa = std::floor(frac);
    if (fa > 9e17) break;
    const auto a = static_cast<std::int64_t>(fa);
    if (q0 > (std::numeric_limits<std::int64_t>::max() - q1) / std::max<std::int64_t>(a, 1)) break;
    const std::int64_t p2 = a * p1 + p0;
    const std::int64_t q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(y - approx) <= tol * std::max(1.0, std::abs(y))) {
      Rational r{Integer(p1), Integer(q1)};
      return neg ? Rational(-r) : r;
    }
    const double rem = frac - fa;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  return std::nullopt;
}

}  // namespace trisign
