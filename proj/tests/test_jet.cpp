#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "test_util.hpp"
#include "trisign/errors.hpp"
#include "trisign/exact_linalg.hpp"
#include "trisign/jet.hpp"

using namespace trisign;
using tutil::rf;

namespace {

JetCurve curve(int n, std::vector<RatForm> p) {
  JetCurve C;
  C.n = n;
  C.p = std::move(p);
  return C;
}

// x_1 u^{2n-2} + x_2 u^{2n-4} v^2 + ... + x_n v^{2n-2}
JetCurve one_example(int n) {
  std::vector<RatForm> p;
  for (int j = 0; j < n; ++j) {
    RatForm f(2 * n - 2);
    f.coeff(2 * j) = 1;
    p.push_back(f);
  }
  return curve(n, std::move(p));
}

// (2uv(u^2+v^2), u^4-v^4, 2uv(u^2-v^2))
JetCurve circle_quartic() {
  return curve(3, {rf({0, 2, 0, 2, 0}), rf({1, 0, 0, 0, -1}),
                   rf({0, 2, 0, -2, 0})});
}

// p_1 L_1 + p_2 L_2 = 0 by construction, with L = (u-3v, -(u-2v), 0).
JetCurve syzygy_quartic() {
  return curve(3, {rf({1, -3, 2, 0, 0}), rf({1, -4, 3, 0, 0}),
                   rf({0, 0, 0, 0, 1})});
}

}  // namespace

TEST_CASE("extract_jet keeps the x-linear part") {
  Hypersurface X;
  X.n = 3;
  X.terms = {{{4, 0, 1, 0, 0}, Rational(1)},
             {{2, 2, 0, 1, 0}, Rational(1)},
             {{0, 4, 0, 0, 1}, Rational(1)}};
  auto C = extract_jet(X);
  CHECK(C.p[0] == rf({1, 0, 0, 0, 0}));
  CHECK(C.p[1] == rf({0, 0, 1, 0, 0}));
  CHECK(C.p[2] == rf({0, 0, 0, 0, 1}));

  // Adding terms of x-degree >= 2 changes nothing.
  Hypersurface Y = X;
  Y.terms.push_back({{2, 0, 2, 1, 0}, Rational(7)});
  Y.terms.push_back({{0, 0, 3, 1, 1}, Rational(-2)});
  auto C2 = extract_jet(Y);
  CHECK(C2.p[0] == C.p[0]);
  CHECK(C2.p[1] == C.p[1]);
  CHECK(C2.p[2] == C.p[2]);
}

TEST_CASE("extract_jet for n=2") {
  Hypersurface X;
  X.n = 2;
  X.terms = {{{2, 0, 1, 0}, Rational(1)}, {{0, 2, 0, 1}, Rational(1)}};
  auto C = extract_jet(X);
  CHECK(C.p[0] == rf({1, 0, 0}));
  CHECK(C.p[1] == rf({0, 0, 1}));
}

TEST_CASE("hypersurface validation") {
  Hypersurface X;
  X.n = 3;
  X.terms = {{{5, 0, 0, 0, 0}, Rational(1)}};  // pure (u,v) monomial
  CHECK_THROWS_AS(validate(X), Error);
  X.terms = {{{4, 0, 1, 0, 0}, Rational(1)},
             {{3, 0, 1, 0, 0}, Rational(1)}};  // inhomogeneous
  CHECK_THROWS_AS(validate(X), Error);
}

TEST_CASE("singular along the line is rejected") {
  // All components share the root u=0.
  auto C = curve(3, {rf({0, 1, 0, 0, 0}), rf({0, 0, 1, 0, 0}),
                     rf({0, 0, 0, 1, 0})});
  CHECK_THROWS_AS(validate(C), Error);
  try {
    validate(C);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularAlongLine);
  }
}

TEST_CASE("jet matrix of the staircase example is the identity") {
  for (int n = 2; n <= 6; ++n) {
    auto A = jet_matrix(one_example(n));
    CHECK(A == RatMat::Identity(2 * n, 2 * n));
    CHECK(jet_det(one_example(n)) == 1);
    CHECK(euler_index(one_example(n)) == 1);
  }
}

TEST_CASE("circle quartic has determinant -64") {
  auto C = circle_quartic();
  CHECK(jet_det(C) == Rational(-64));
  CHECK(euler_index(C) == -1);
}

TEST_CASE("syzygy curve is degenerate with the constructed relation") {
  auto C = syzygy_quartic();
  CHECK(jet_det(C) == 0);
  CHECK_THROWS_AS(euler_index(C), Error);
  auto L = linear_syzygy(C);
  REQUIRE(L.has_value());
  REQUIRE(L->size() == 3);
  // Sum p_j L_j = 0 exactly.
  RatForm s = (*L)[0] * C.p[0] + (*L)[1] * C.p[1] + (*L)[2] * C.p[2];
  CHECK(s.is_zero());
  // Proportional to (u-3v, -(u-2v), 0).
  CHECK((*L)[2].is_zero());
  CHECK((*L)[0] * rf({-1, 2}) == (*L)[1] * rf({1, -3}));
  bool nonzero = false;
  for (auto& l : *L) nonzero = nonzero || !l.is_zero();
  CHECK(nonzero);

  // Nondegenerate curves have no syzygy.
  CHECK_FALSE(linear_syzygy(one_example(3)).has_value());
}

TEST_CASE("discriminant flags") {
  auto f0 = classify_discriminants(one_example(3));
  CHECK_FALSE(f0.in_DP);
  CHECK_FALSE(f0.in_DP1);
  CHECK(f0.balanced);

  // Dependent components: p_3 = p_1 + p_2.
  auto dep = curve(3, {rf({1, 0, 0, 0, 0}), rf({0, 0, 1, 0, 0}),
                       rf({1, 0, 1, 0, 0})});
  auto f1 = classify_discriminants(dep);
  CHECK(f1.in_DP1);
  CHECK(f1.in_DP);  // dependence forces degeneracy
  CHECK_FALSE(f1.balanced);

  auto f2 = classify_discriminants(syzygy_quartic());
  CHECK(f2.in_DP);
  CHECK_FALSE(f2.in_DP1);

  // The probe is consulted for the advisory flag.
  auto f3 = classify_discriminants(one_example(3),
                                   [](const JetCurve&) { return true; });
  CHECK(f3.in_Dinf1);
}

TEST_CASE("degeneracy is equivalent to a linear syzygy") {
  std::mt19937_64 rng(4242);
  int degenerate_seen = 0;
  for (int trial = 0; trial < 500; ++trial) {
    JetCurve C;
    C.n = 3;
    if (trial % 5 == 0) {
      // Engineered relation: with p_1 = q*l2*m and p_2 = q*l1*m,
      // p_1*l1 - p_2*l2 vanishes identically.
      auto q = tutil::random_form(rng, 2);
      auto l1 = tutil::random_form(rng, 1);
      auto l2 = tutil::random_form(rng, 1);
      auto m = tutil::random_form(rng, 1);
      C.p = {q * l2 * m, q * l1 * m, tutil::random_form(rng, 4)};
    } else {
      C.p = tutil::random_curve(rng, 3);
    }
    try {
      validate(C);
    } catch (const Error&) {
      continue;  // common root; not in the configuration space
    }
    bool deg = (jet_det(C) == 0);
    auto L = linear_syzygy(C);
    CHECK(deg == L.has_value());
    if (L) {
      RatForm s(2 * C.n - 1);
      for (int j = 0; j < 3; ++j)
        s = s + (*L)[static_cast<size_t>(j)] * C.p[static_cast<size_t>(j)];
      CHECK(s.is_zero());
      ++degenerate_seen;
    }
  }
  CHECK(degenerate_seen >= 50);
}

TEST_CASE("x-coordinate change scales the determinant by det(M)^2") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    JetCurve C;
    C.n = n;
    C.p = tutil::random_curve(rng, n);
    try {
      validate(C);
    } catch (const Error&) {
      continue;
    }
    RatMat M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = Rational(d(rng));
    RatMat Mc = M;
    Rational dM = det_exact(Mc);
    if (dM == 0) continue;
    JetCurve MC;
    MC.n = n;
    MC.p.assign(static_cast<size_t>(n), RatForm(2 * n - 2));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        MC.p[static_cast<size_t>(i)] =
            MC.p[static_cast<size_t>(i)] + M(i, j) * C.p[static_cast<size_t>(j)];
    CHECK(jet_det(MC) == dM * dM * jet_det(C));
  }
}

TEST_CASE("positive reparameterization scaling preserves the sign") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 40; ++trial) {
    JetCurve C;
    C.n = 3;
    C.p = tutil::random_curve(rng, 3);
    try {
      validate(C);
    } catch (const Error&) {
      continue;
    }
    if (jet_det(C) == 0) continue;
    for (Rational lam : {Rational(2), Rational(1, 3), Rational(5, 7)}) {
      JetCurve S;
      S.n = 3;
      for (auto& f : C.p)
        S.p.push_back(compose_gl2(f, lam, Rational(0), Rational(0),
                                  Rational(1)));
      CHECK(sign_of(jet_det(S)) == sign_of(jet_det(C)));
      S.p.clear();
    }
  }
}
