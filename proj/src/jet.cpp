#include "trisign/jet.hpp"

#include <numeric>

#include "trisign/errors.hpp"
#include "trisign/exact_linalg.hpp"

namespace trisign {

void validate(const Hypersurface& X) {
  if (X.n < 2) fail(ErrorKind::InvalidInput, "hypersurface needs n >= 2");
  const int deg = 2 * X.n - 1;
  const size_t nv = static_cast<size_t>(X.n) + 2;
  for (const auto& t : X.terms) {
    if (t.exps.size() != nv)
      fail(ErrorKind::InvalidInput, "exponent vector has wrong length");
    int total = 0, xdeg = 0;
    for (size_t i = 0; i < nv; ++i) {
      if (t.exps[i] < 0)
        fail(ErrorKind::InvalidInput, "negative exponent");
      total += t.exps[i];
      if (i >= 2) xdeg += t.exps[i];
    }
    if (total != deg)
      fail(ErrorKind::InvalidInput, "term is not homogeneous of degree 2n-1");
    if (xdeg == 0 && t.c != 0)
      fail(ErrorKind::InvalidInput,
           "pure (u,v) monomial: the line x=0 does not lie on F=0");
  }
}

namespace {

// gcd over the nonzero components; throws if they share a root.
void check_no_common_root(const JetCurve& C) {
  bool seen = false;
  RatForm g;
  for (const auto& f : C.p) {
    if (f.is_zero()) continue;
    g = seen ? bf_gcd(g, f) : f;
    seen = true;
    if (g.degree() == 0) return;  // coprime already
  }
  if (!seen)
    fail(ErrorKind::SingularAlongLine, "all components vanish identically");
  fail(ErrorKind::SingularAlongLine, "components share a root on the line");
}

}  // namespace

void validate_shape(const JetCurve& C) {
  if (C.n < 2) fail(ErrorKind::InvalidInput, "curve needs n >= 2");
  if (static_cast<int>(C.p.size()) != C.n)
    fail(ErrorKind::InvalidInput, "curve needs exactly n components");
  const Eigen::Index deg = 2 * C.n - 2;
  for (const auto& f : C.p)
    if (f.degree() != deg)
      fail(ErrorKind::InvalidInput, "component has wrong degree");
}

void validate(const JetCurve& C) {
  validate_shape(C);
  check_no_common_root(C);
}

JetCurve extract_jet(const Hypersurface& X) {
  validate(X);
  JetCurve C;
  C.n = X.n;
  C.p.assign(static_cast<size_t>(X.n), RatForm(2 * X.n - 2));
  for (const auto& t : X.terms) {
    int xdeg = 0, which = -1;
    for (int k = 0; k < X.n; ++k) {
      xdeg += t.exps[static_cast<size_t>(k) + 2];
      if (t.exps[static_cast<size_t>(k) + 2] >= 1) which = k;
    }
    if (xdeg != 1) continue;  // Q part, vanishes to second order on the line
    C.p[static_cast<size_t>(which)].coeff(t.exps[1]) += t.c;
  }
  check_no_common_root(C);
  return C;
}

RatMat jet_matrix(const JetCurve& C) {
  validate_shape(C);
  const Eigen::Index m = 2 * C.n;
  RatMat A = RatMat::Constant(m, m, Rational(0));
  for (Eigen::Index j = 0; j < C.n; ++j) {
    const auto& a = C.p[static_cast<size_t>(j)].coeffs();
    for (Eigen::Index k = 0; k <= m - 2; ++k) {
      A(k, 2 * j) = a(k);          // u * p_j
      A(k + 1, 2 * j + 1) = a(k);  // v * p_j
    }
  }
  return A;
}

Rational jet_det(const JetCurve& C) { return det_exact(jet_matrix(C)); }

int euler_index(const JetCurve& C) {
  validate(C);
  const Rational d = jet_det(C);
  if (d == 0)
    fail(ErrorKind::Degenerate,
         "determinant vanishes: normal bundle is not balanced");
  return d > 0 ? 1 : -1;
}

std::optional<std::vector<RatForm>> linear_syzygy(const JetCurve& C) {
  RatMat A = jet_matrix(C);
  auto ker = kernel_exact(A);
  if (ker.empty()) return std::nullopt;
  const RatVec& w = ker.front();
  std::vector<RatForm> L;
  L.reserve(C.p.size());
  RatForm sum(2 * C.n - 1);
  for (Eigen::Index j = 0; j < C.n; ++j) {
    Vec<Rational> c(2);
    c << w(2 * j), w(2 * j + 1);
    L.push_back(RatForm::from_coeffs(std::move(c)));
    sum = sum + L.back() * C.p[static_cast<size_t>(j)];
  }
  if (!sum.is_zero())
    fail(ErrorKind::NumericFailure, "kernel vector is not a syzygy");
  return L;
}

DiscriminantFlags classify_discriminants(
    const JetCurve& C, const std::function<bool(const JetCurve&)>& probe) {
  validate_shape(C);
  DiscriminantFlags f;
  f.in_DP = (jet_det(C) == 0);
  f.balanced = !f.in_DP;
  RatMat coef(C.n, 2 * C.n - 1);
  for (Eigen::Index j = 0; j < C.n; ++j)
    for (Eigen::Index k = 0; k <= 2 * C.n - 2; ++k)
      coef(j, k) = C.p[static_cast<size_t>(j)].coeff(k);
  f.in_DP1 = (rank_exact(coef) < C.n);
  if (probe) f.in_Dinf1 = probe(C);
  return f;
}

}  // namespace trisign
