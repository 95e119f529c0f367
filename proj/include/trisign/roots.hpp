#pragma once

#include <complex>
#include <vector>

#include "trisign/binary_form.hpp"
#include "trisign/rational.hpp"

namespace trisign {

// A root on the projective line in the affine chart x = u/v; at_infinity
// marks [1:0]. certified_radius is a Newton-residual bound on the distance
// to a true root (heuristic, not a formal certificate).
struct ComplexPoint {
  double re = 0.0;
  double im = 0.0;
  double certified_radius = 0.0;
  int multiplicity = 1;
  bool at_infinity = false;

  std::complex<double> value() const { return {re, im}; }
};

// All roots of f on P^1 with multiplicity (repeated entries share a cluster's
// multiplicity). Conjugate closure is enforced: non-real roots come in
// bit-identical conjugate pairs. Throws NumericFailure on non-convergence.
std::vector<ComplexPoint> complex_roots(const BinaryForm<double>& f, double tol = 1e-10);
std::vector<ComplexPoint> complex_roots(const BinaryForm<Rational>& f, double tol = 1e-10);

// Complex-coefficient variant (no conjugate symmetry to exploit); roots at
// [1:0] are reported only for exactly-zero leading coefficients.
std::vector<ComplexPoint> complex_roots(const BinaryForm<std::complex<double>>& f,
                                        double tol = 1e-10);

// Newton refinement of a simple root of the descending-coefficient
// polynomial; works for any complex scalar (std::complex<double>,
// Complex50, ...).
template <typename C>
C refine_root_newton(const std::vector<C>& descending, C z, int max_iter = 80) {
  using std::abs;
  for (int it = 0; it < max_iter; ++it) {
    C val(0), der(0);
    for (const C& c : descending) {
      der = der * z + val;
      val = val * z + c;
    }
    if (abs(der) == 0) break;
    const C step = val / der;
    z -= step;
    if (abs(step) <= abs(z) * 1e-40 + 1e-60) break;
  }
  return z;
}

// Descending affine coefficients f(x, 1) of an exact form, in the requested
// complex scalar.
template <typename C>
std::vector<C> descending_coeffs(const BinaryForm<Rational>& f) {
  std::vector<C> out(f.degree() + 1);
  for (Eigen::Index k = 0; k <= f.degree(); ++k) {
    const Rational& r = f.coeff(k);
    out[k] = C(typename C::value_type(numerator(r)) / typename C::value_type(denominator(r)));
  }
  return out;
}

}  // namespace trisign
