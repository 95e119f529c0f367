#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "test_util.hpp"
#include "trisign/errors.hpp"
#include "trisign/exact_linalg.hpp"
#include "trisign/jet.hpp"
#include "trisign/welsch.hpp"

using namespace trisign;
using tutil::rf;

namespace {

JetCurve curve(int n, std::vector<RatForm> p) {
  JetCurve C;
  C.n = n;
  C.p = std::move(p);
  return C;
}

JetCurve one_example(int n) {
  std::vector<RatForm> p;
  for (int j = 0; j < n; ++j) {
    RatForm f(2 * n - 2);
    f.coeff(2 * j) = 1;
    p.push_back(f);
  }
  return curve(n, std::move(p));
}

JetCurve circle_quartic() {
  return curve(3, {rf({0, 2, 0, 2, 0}), rf({1, 0, 0, 0, -1}),
                   rf({0, 2, 0, -2, 0})});
}

// Is f in the row span of the section tuples (as 3n-coefficient vectors)?
bool in_span(const SplittingSections& S,
             const std::vector<RatForm>& target) {
  const int n = S.n;
  RatMat rows(static_cast<Eigen::Index>(S.sections.size()) + 1, 3 * n);
  for (size_t i = 0; i < S.sections.size(); ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < 3; ++k)
        rows(static_cast<Eigen::Index>(i), 3 * j + k) =
            S.sections[i][static_cast<size_t>(j)].coeff(k);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < 3; ++k)
      rows(static_cast<Eigen::Index>(S.sections.size()), 3 * j + k) =
          target[static_cast<size_t>(j)].coeff(k);
  RatMat top = rows.topRows(static_cast<Eigen::Index>(S.sections.size()));
  return rank_exact(rows) == rank_exact(top);
}

}  // namespace

TEST_CASE("splitting sections of the staircase example") {
  auto S = splitting_sections(one_example(3));
  REQUIRE(S.sections.size() == 2);
  // Each basis element is a genuine syzygy.
  auto C = one_example(3);
  for (auto& tup : S.sections) {
    RatForm sum(2 * 3);
    for (int j = 0; j < 3; ++j)
      sum = sum + C.p[static_cast<size_t>(j)] * tup[static_cast<size_t>(j)];
    CHECK(sum.is_zero());
  }
  // The expected tuples lie in the computed span.
  CHECK(in_span(S, {rf({0, 0, 1}), rf({-1, 0, 0}), rf({0, 0, 0})}));
  CHECK(in_span(S, {rf({0, 0, 0}), rf({0, 0, 1}), rf({-1, 0, 0})}));
  CHECK_FALSE(in_span(S, {rf({1, 0, 0}), rf({0, 0, 0}), rf({0, 0, 0})}));
}

TEST_CASE("splitting sections for n=2") {
  auto S = splitting_sections(one_example(2));
  REQUIRE(S.sections.size() == 1);
  CHECK(in_span(S, {rf({0, 0, 1}), rf({-1, 0, 0})}));
}

TEST_CASE("degenerate curve has no balanced splitting") {
  auto syz = curve(3, {rf({1, -3, 2, 0, 0}), rf({1, -4, 3, 0, 0}),
                       rf({0, 0, 0, 0, 1})});
  CHECK_THROWS_AS(splitting_sections(syz), Error);
  try {
    splitting_sections(syz);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotBalanced);
  }
}

TEST_CASE("weight of the staircase example is +1") {
  CHECK(welschinger_weight(one_example(3)) == 1);
  CHECK(welschinger_weight(one_example(2)) == 1);
}

TEST_CASE("weight of the circle quartic is -1") {
  WelschingerDiagnostics d;
  CHECK(welschinger_weight(circle_quartic(), &d) == -1);
  CHECK(d.max_step_angle < 1.3);
  // Loop closure: endpoint quaternion is +-start, so |w|,|xyz| finite.
  double norm = 0;
  for (double c : d.end_quaternion) norm += c * c;
  CHECK(std::abs(norm - 1.0) < 1e-8);
}

TEST_CASE("n=2 winding distinguishes the two signs") {
  WelschingerDiagnostics d0;
  CHECK(welschinger_weight(one_example(2), &d0) == 1);
  CHECK(d0.winding == 0);
  // (u^2 - v^2, 2uv): the section (2uv, v^2 - u^2) makes one full turn.
  auto C = curve(2, {rf({1, 0, -1}), rf({0, 2, 0})});
  WelschingerDiagnostics d1;
  CHECK(welschinger_weight(C, &d1) == -1);
  CHECK(std::abs(d1.winding) == 1);
  CHECK(euler_index(C) == -1);
}

TEST_CASE("n >= 4 is unsupported") {
  CHECK_THROWS_AS(welschinger_weight(one_example(4)), Error);
  try {
    welschinger_weight(one_example(4));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unsupported);
  }
}

TEST_CASE("weight equals euler index on random balanced curves") {
  std::mt19937_64 rng(20260101);
  int done = 0;
  while (done < 500) {
    JetCurve C;
    C.n = 3;
    C.p = tutil::random_curve(rng, 3);
    try {
      validate(C);
    } catch (const Error&) {
      continue;
    }
    if (jet_det(C) == 0) continue;
    CHECK(welschinger_weight(C) == euler_index(C));
    ++done;
  }
}

TEST_CASE("weight does not depend on the section basis") {
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<int> d(-3, 3);
  int done = 0;
  while (done < 40) {
    JetCurve C;
    C.n = 3;
    C.p = tutil::random_curve(rng, 3);
    try {
      validate(C);
    } catch (const Error&) {
      continue;
    }
    if (jet_det(C) == 0) continue;
    auto S = splitting_sections(C);
    const int w = welschinger_weight(C, S);
    // Random invertible 2x2 change of basis.
    Rational a(d(rng)), b(d(rng)), c(d(rng)), e(d(rng));
    if (a * e - b * c == 0) continue;
    SplittingSections T;
    T.n = 3;
    T.sections.resize(2, std::vector<RatForm>(3, RatForm(2)));
    for (int j = 0; j < 3; ++j) {
      T.sections[0][static_cast<size_t>(j)] =
          a * S.sections[0][static_cast<size_t>(j)] +
          b * S.sections[1][static_cast<size_t>(j)];
      T.sections[1][static_cast<size_t>(j)] =
          c * S.sections[0][static_cast<size_t>(j)] +
          e * S.sections[1][static_cast<size_t>(j)];
    }
    CHECK(welschinger_weight(C, T) == w);
    ++done;
  }
}

TEST_CASE("halving the step never changes the answer") {
  std::mt19937_64 rng(70707);
  int done = 0;
  while (done < 30) {
    JetCurve C;
    C.n = 3;
    C.p = tutil::random_curve(rng, 3);
    try {
      validate(C);
    } catch (const Error&) {
      continue;
    }
    if (jet_det(C) == 0) continue;
    CHECK(welschinger_weight(C, nullptr, 64) ==
          welschinger_weight(C, nullptr, 128));
    CHECK(welschinger_weight(C, nullptr, 64) ==
          welschinger_weight(C, nullptr, 256));
    ++done;
  }
}

TEST_CASE("frame closes at the endpoints") {
  // Even-degree sections make the frame pi-periodic; the diagnostics grid
  // must start at 0 and end at pi.
  WelschingerDiagnostics d;
  welschinger_weight(circle_quartic(), &d);
  REQUIRE(!d.thetas.empty());
  CHECK(d.thetas.front() == 0.0);
  CHECK(std::abs(d.thetas.back() - std::acos(-1.0)) < 1e-15);
}
