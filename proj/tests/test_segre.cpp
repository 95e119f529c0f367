#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "trisign/exact_linalg.hpp"
#include "trisign/jet.hpp"
#include "trisign/secants.hpp"
#include "trisign/segre.hpp"

using namespace trisign;
using CD = std::complex<double>;

namespace {

RatForm rf(std::initializer_list<int> c) {
  Vec<Rational> v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (int x : c) v(i++) = Rational(x);
  return RatForm::from_coeffs(std::move(v));
}

// Rational normal sextic with three simple nodes, one per coordinate point.
JetCurve cstar() {
  JetCurve C;
  C.n = 3;
  C.p = {rf({0, 2, 0, 2, 0}), rf({1, 0, 0, 0, -1}), rf({0, 2, 0, -2, 0})};
  return C;
}

JetCurve syzygy_quartic() {
  JetCurve C;
  C.n = 3;
  C.p = {rf({1, -3, 2, 0, 0}), rf({1, -4, 3, 0, 0}), rf({0, 0, 0, 0, 1})};
  return C;
}

JetCurve triple_point_quartic() {
  JetCurve C;
  C.n = 3;
  C.p = {rf({1, 0, 0, 0, 1}), rf({0, 1, 0, -1, 0}), rf({0, 1, -3, 2, 0})};
  return C;
}

bool proportional(const RatForm& a, const RatForm& b) {
  if (a.degree() != b.degree()) return false;
  RatMat m(2, a.degree() + 1);
  for (Eigen::Index k = 0; k <= a.degree(); ++k) {
    m(0, k) = a.coeff(k);
    m(1, k) = b.coeff(k);
  }
  return rank_exact(m) == 1;
}

// span{p.q0, p.q1} == span{e0, e1}, both two-dimensional.
bool same_pencil(const ResidualPencil& p, const RatForm& e0, const RatForm& e1) {
  RatMat m(4, 3), q(2, 3);
  for (Eigen::Index k = 0; k < 3; ++k) {
    m(0, k) = e0.coeff(k);
    m(1, k) = e1.coeff(k);
    m(2, k) = p.q0.coeff(k);
    m(3, k) = p.q1.coeff(k);
    q(0, k) = p.q0.coeff(k);
    q(1, k) = p.q1.coeff(k);
  }
  return rank_exact(q) == 2 && rank_exact(m) == 2;
}

const Secant& secant_with_divisor(const SecantReport& rep, const RatForm& d) {
  const RatForm dm = monic_normalized(d);
  for (const auto& s : rep.secants)
    if (s.divisor.has_exact && s.divisor.exact == dm) return s;
  REQUIRE(false);
  return rep.secants.front();
}

JetCurve random_curve(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> U(-9, 9);
  JetCurve C;
  C.n = n;
  for (int j = 0; j < n; ++j) {
    Vec<Rational> v(2 * n - 1);
    for (Eigen::Index k = 0; k < 2 * n - 1; ++k) v(k) = Rational(U(rng));
    C.p.push_back(RatForm::from_coeffs(v));
  }
  return C;
}

}  // namespace

TEST_CASE("residual pencils at the three nodes") {
  const JetCurve C = cstar();
  const auto rep = nodes_exact_n3(C);
  REQUIRE(rep.certificate_ok);
  REQUIRE(rep.secants.size() == 3);

  const RatForm d_sol = rf({1, 0, 1});    // u^2 + v^2
  const RatForm d_hyp = rf({1, 0, -1});   // u^2 - v^2
  const RatForm d_mix = rf({0, 1, 0});    // u v

  const RatForm two_uv = rf({0, 2, 0});
  const RatForm upv = rf({1, 0, 1});
  const RatForm umv = rf({1, 0, -1});

  // node with divisor u^2+v^2 cuts the pencil {2uv, u^2-v^2}
  const auto P_sol = residual_pencil(C, secant_with_divisor(rep, d_sol));
  CHECK(same_pencil(P_sol, two_uv, umv));
  // node with divisor u^2-v^2 cuts {u^2+v^2, 2uv}
  const auto P_hyp = residual_pencil(C, secant_with_divisor(rep, d_hyp));
  CHECK(same_pencil(P_hyp, upv, two_uv));
  // node with divisor uv cuts {u^2+v^2, u^2-v^2}
  const auto P_mix = residual_pencil(C, secant_with_divisor(rep, d_mix));
  CHECK(same_pencil(P_mix, upv, umv));

  CHECK(segre_points(P_sol).disc_sign == -1);
  CHECK(segre_points(P_hyp).disc_sign == 1);
  CHECK(segre_points(P_mix).disc_sign == 1);

  CHECK(segre_weight(C, secant_with_divisor(rep, d_sol)) == -1);
  CHECK(segre_weight(C, secant_with_divisor(rep, d_hyp)) == 1);
  CHECK(segre_weight(C, secant_with_divisor(rep, d_mix)) == 1);

  CHECK(segre_index(C, rep) == -1);
  CHECK(euler_index(C) == -1);
  CHECK(chord_diagram_index_n3(C, rep) == -1);
}

TEST_CASE("segre points of explicit pencils") {
  // {2uv, u^2-v^2}: jacobian proportional to u^2+v^2, both points imaginary.
  {
    ResidualPencil P{rf({0, 2, 0}), rf({1, 0, -1})};
    const auto S = segre_points(P);
    CHECK(proportional(S.jacobian, rf({1, 0, 1})));
    CHECK(S.disc_sign == -1);
    CHECK(segre_weight(P) == -1);
  }
  // {u^2+v^2, 2uv}: jacobian proportional to u^2-v^2, both points real.
  {
    ResidualPencil P{rf({1, 0, 1}), rf({0, 2, 0})};
    const auto S = segre_points(P);
    CHECK(proportional(S.jacobian, rf({1, 0, -1})));
    CHECK(S.disc_sign == 1);
    CHECK(segre_weight(P) == 1);
  }
  // {2(u^2+v^2), 2(u^2-v^2)}: jacobian proportional to uv.
  {
    ResidualPencil P{rf({2, 0, 2}), rf({2, 0, -2})};
    const auto S = segre_points(P);
    CHECK(proportional(S.jacobian, rf({0, 1, 0})));
    CHECK(S.disc_sign == 1);
    CHECK(segre_weight(P) == 1);
  }
  // {u^2, v^2}: jacobian proportional to uv.
  {
    ResidualPencil P{rf({1, 0, 0}), rf({0, 0, 1})};
    CHECK(proportional(segre_points(P).jacobian, rf({0, 1, 0})));
    CHECK(segre_weight(P) == 1);
  }
  // {u^2, uv} has a base point; the Segre points collide there.
  {
    ResidualPencil P{rf({1, 0, 0}), rf({0, 1, 0})};
    CHECK(segre_points(P).disc_sign == 0);
    CHECK_THROWS_AS(segre_weight(P), Error);
    try {
      segre_weight(P);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateOnWall);
    }
  }
  // Proportional members span no pencil.
  {
    ResidualPencil P{rf({1, 2, 3}), rf({2, 4, 6})};
    CHECK_THROWS_AS(segre_points(P), Error);
  }
}

TEST_CASE("jacobian transforms by the determinant under basis change") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> U(-9, 9);
  int checked = 0;
  while (checked < 50) {
    Vec<Rational> c0(3), c1(3);
    for (int k = 0; k < 3; ++k) {
      c0(k) = Rational(U(rng));
      c1(k) = Rational(U(rng));
    }
    const Rational a(U(rng)), b(U(rng)), c(U(rng)), d(U(rng));
    const Rational det = a * d - b * c;
    if (det == 0) continue;
    ResidualPencil P{RatForm::from_coeffs(c0), RatForm::from_coeffs(c1)};
    ResidualPencil Q{a * P.q0 + b * P.q1, c * P.q0 + d * P.q1};
    RatForm jac_p(2);
    try {
      jac_p = segre_points(P).jacobian;
    } catch (const Error&) {
      continue;  // proportional draw
    }
    CHECK(segre_points(Q).jacobian == det * jac_p);
    CHECK(segre_points(Q).disc_sign == segre_points(P).disc_sign);
    ++checked;
  }
  CHECK(checked == 50);
}

TEST_CASE("segre points are the double roots of the degenerate members") {
  std::mt19937_64 rng(31415);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto disc = [](CD a, CD b, CD c) { return b * b - 4.0 * a * c; };
  int checked = 0, attempts = 0;
  while (checked < 150 && attempts < 400) {
    ++attempts;
    ResidualPencilNum P;
    Vec<double> c0(3), c1(3);
    for (int k = 0; k < 3; ++k) {
      c0(k) = U(rng);
      c1(k) = U(rng);
    }
    P.q0 = BinaryForm<double>::from_coeffs(c0);
    P.q1 = BinaryForm<double>::from_coeffs(c1);
    const auto S = segre_points_numeric(P);
    const double J0 = S.jacobian.coeff(0), J1 = S.jacobian.coeff(1),
                 J2 = S.jacobian.coeff(2);
    if (std::abs(J0) < 1e-2 || S.disc_sign == 0) continue;

    // Degenerate members q0 + t q1 solve a quadratic in t.
    const double A2 = c1(1) * c1(1) - 4.0 * c1(0) * c1(2);
    const double A1 = 2.0 * c0(1) * c1(1) - 4.0 * (c0(0) * c1(2) + c1(0) * c0(2));
    const double A0 = c0(1) * c0(1) - 4.0 * c0(0) * c0(2);
    if (std::abs(A2) < 1e-2) continue;
    const CD st = std::sqrt(CD(A1 * A1 - 4.0 * A2 * A0));
    const CD t1 = (-A1 + st) / (2.0 * A2), t2 = (-A1 - st) / (2.0 * A2);

    std::vector<CD> doubles;
    for (const CD& t : {t1, t2}) {
      const CD a = c0(0) + t * c1(0), b = c0(1) + t * c1(1);
      if (std::abs(a) < 1e-4) {
        doubles.clear();
        break;
      }
      doubles.push_back(-b / (2.0 * a));
    }
    if (doubles.size() != 2) continue;

    const CD sj = std::sqrt(disc(CD(J0), CD(J1), CD(J2)));
    const CD x1 = (-J1 + sj) / (2.0 * J0), x2 = (-J1 - sj) / (2.0 * J0);
    auto close = [](CD a, CD b) { return std::abs(a - b) < 1e-6; };
    const bool direct = close(x1, doubles[0]) && close(x2, doubles[1]);
    const bool crossed = close(x1, doubles[1]) && close(x2, doubles[0]);
    CHECK((direct || crossed));
    ++checked;
  }
  CHECK(checked == 150);
}

TEST_CASE("euler index equals segre index, n = 3, exact") {
  std::mt19937_64 rng(777);
  int ok = 0, chord_checked = 0, mismatch = 0, chord_mismatch = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const JetCurve C = random_curve(rng, 3);
    try {
      if (jet_det(C) == 0) continue;
      const auto rep = nodes_exact_n3(C);
      const int e = euler_index(C);
      if (segre_index(C, rep) != e)
        ++mismatch;
      else
        ++ok;
      try {
        if (chord_diagram_index_n3(C, rep) != e)
          ++chord_mismatch;
        else
          ++chord_checked;
      } catch (const Error&) {
      }
    } catch (const Error&) {
      // non-generic draw or thin numeric margins: the census refuses
    }
  }
  CHECK(mismatch == 0);
  CHECK(chord_mismatch == 0);
  CHECK(ok >= 440);
  CHECK(chord_checked >= 440);
}

TEST_CASE("euler index equals segre index, n = 4, numeric census") {
  std::mt19937_64 rng(888);
  int ok = 0, mismatch = 0;
  for (int trial = 0; trial < 70 && ok < 50; ++trial) {
    const JetCurve C = random_curve(rng, 4);
    try {
      if (jet_det(C) == 0) continue;
      SolverConfig cfg;
      cfg.starts = 250;
      cfg.seed = 9000 + static_cast<unsigned>(trial);
      const auto rep = secants_numeric(C, cfg);
      if (!rep.certificate_ok) continue;
      if (segre_index(C, rep) != euler_index(C))
        ++mismatch;
      else
        ++ok;
    } catch (const Error&) {
    }
  }
  CHECK(mismatch == 0);
  CHECK(ok == 50);
}

TEST_CASE("perturbed double conic counts positively") {
  // (u^4, u^2 v^2, v^4) traces a conic twice; a small generic perturbation
  // has three simple nodes and total weight +1 in all three indices.
  const int bump[3][5] = {
      {-1, -1, 1, 0, 1}, {-2, -3, 1, 0, -2}, {-3, -3, -1, 1, 3}};
  const int base[3][5] = {
      {10, 0, 0, 0, 0}, {0, 0, 10, 0, 0}, {0, 0, 0, 0, 10}};
  JetCurve C;
  C.n = 3;
  for (int j = 0; j < 3; ++j) {
    Vec<Rational> v(5);
    for (int k = 0; k < 5; ++k) v(k) = Rational(base[j][k] + bump[j][k], 10);
    C.p.push_back(RatForm::from_coeffs(v));
  }
  REQUIRE(jet_det(C) != 0);
  const auto rep = nodes_exact_n3(C);
  CHECK(euler_index(C) == 1);
  CHECK(segre_index(C, rep) == 1);
  CHECK(chord_diagram_index_n3(C, rep) == 1);
}

TEST_CASE("walls and bad inputs are refused") {
  // A long secant leaves no room for a residual pencil.
  {
    const JetCurve C = syzygy_quartic();
    Secant M;
    RatVec la(3), lb(3);
    la << Rational(1), Rational(0), Rational(0);
    lb << Rational(0), Rational(1), Rational(0);
    M.lambda_a_exact = la;
    M.lambda_b_exact = lb;
    M.divisor.has_exact = true;
    M.divisor.exact = rf({1, 0, 0});
    try {
      residual_pencil(C, M);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateOnWall);
    }
  }
  // A divisor that does not divide the cut pencil.
  {
    const JetCurve C = cstar();
    Secant M;
    RatVec la(3), lb(3);
    la << Rational(1), Rational(0), Rational(0);
    lb << Rational(0), Rational(1), Rational(0);
    M.lambda_a_exact = la;
    M.lambda_b_exact = lb;
    M.divisor.has_exact = true;
    M.divisor.exact = rf({0, 1, 0});
    try {
      residual_pencil(C, M);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidSecant);
    }
  }
  // The index is not defined on the discriminant wall.
  {
    const JetCurve C = triple_point_quartic();
    REQUIRE(jet_det(C) == 0);
    SolverConfig cfg;
    cfg.starts = 300;
    cfg.seed = 11;
    const auto rep = secants_numeric(C, cfg);
    REQUIRE(rep.certificate_ok);
    try {
      segre_index(C, rep);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateOnWall);
    }
  }
  // Numeric borderline discriminants are reported as such, not guessed.
  {
    ResidualPencilNum P;
    Vec<double> c0(3), c1(3);
    c0 << 1.0, 0.0, 1e-12;
    c1 << 0.0, 1.0, 0.0;
    P.q0 = BinaryForm<double>::from_coeffs(c0);
    P.q1 = BinaryForm<double>::from_coeffs(c1);
    CHECK(segre_points_numeric(P).disc_sign == 0);
  }
  // The numeric residual pencil is only defined over real secants.
  {
    const JetCurve C = cstar();
    Secant M;
    M.is_real = false;
    CHECK_THROWS_AS(residual_pencil_numeric(C, M), Error);
  }
  // Deficient-span probe is a no-op for plane curves.
  {
    const JetCurve C = cstar();
    const auto rep = nodes_exact_n3(C);
    CHECK(!secant_spans_deficient(C, rep));
  }
}

TEST_CASE("numeric census weights agree with the exact ones") {
  const JetCurve C = cstar();
  const auto exact_rep = nodes_exact_n3(C);
  SolverConfig cfg;
  cfg.starts = 200;
  cfg.seed = 7;
  const auto num_rep = secants_numeric(C, cfg);
  REQUIRE(num_rep.certificate_ok);
  REQUIRE(num_rep.secants.size() == 3);

  for (const auto& ns : num_rep.secants) {
    REQUIRE(ns.is_real);
    const Secant* match = nullptr;
    for (const auto& es : exact_rep.secants) {
      double d = 0;
      for (Eigen::Index k = 0; k < 3; ++k)
        d = std::max(d, std::abs(ns.divisor.approx.coeff(k) -
                                 es.divisor.approx.coeff(k)));
      if (d < 1e-6) match = &es;
    }
    REQUIRE(match != nullptr);
    CHECK(segre_weight(C, ns) == segre_weight(C, *match));
  }
  CHECK(segre_index(C, num_rep) == -1);
  CHECK(chord_diagram_index_n3(C, num_rep) == -1);
}
