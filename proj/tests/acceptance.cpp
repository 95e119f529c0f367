// End-to-end acceptance run.  Each numbered block exercises one headline
// claim against frozen corpora and prints a single PASS/FAIL line; the
// process exits with the number of failed blocks.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "test_util.hpp"
#include "trisign/generators.hpp"
#include "trisign/jet.hpp"
#include "trisign/lines.hpp"
#include "trisign/secants.hpp"
#include "trisign/segre.hpp"
#include "trisign/surfaces.hpp"
#include "trisign/welsch.hpp"

using namespace trisign;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void report(int k, bool ok, const char* what, double secs) {
  std::printf("%s %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", k, what, secs);
  std::fflush(stdout);
  failures += ok ? 0 : 1;
}

// Random curve with exact nonzero determinant and no common component root.
JetCurve generic_curve(std::mt19937_64& rng, int n) {
  for (;;) {
    JetCurve C;
    C.n = n;
    C.p = tutil::random_curve(rng, n);
    try {
      validate(C);
    } catch (const Error&) {
      continue;
    }
    if (jet_det(C) != 0) return C;
  }
}

// Angle of a real parameter point on the circle of real directions.
double circle_angle(const ComplexPoint& z) {
  return z.at_infinity ? 3.14159265358979323846 : 2.0 * std::atan(z.re);
}

// Two chords with endpoint angles interlace when exactly one endpoint of
// the second lies on the arc swept from the first chord's start to its end.
bool chords_interlace(double a1, double a2, double b1, double b2) {
  const double two_pi = 2.0 * 3.14159265358979323846;
  auto arc_pos = [&](double x) {
    double d = x - a1;
    while (d < 0) d += two_pi;
    while (d >= two_pi) d -= two_pi;
    return d;
  };
  const double span = arc_pos(a2);
  const bool in1 = arc_pos(b1) < span, in2 = arc_pos(b2) < span;
  return in1 != in2;
}

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (int n = 2; n <= 6; ++n) {
    const JetCurve C = one_example(n);
    ok = ok && jet_det(C) == 1 && euler_index(C) == 1;
  }
  const double secs = seconds_since(t0);
  report(1, ok && secs < 1.0, "monomial family n=2..6: exact det 1, index +1",
         secs);
}

// Criteria 2 and 5 share one corpus: the triple identity and the
// chord-diagram evaluation on the same 500 curves.
void criteria_2_and_5() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(9001);
  int done = 0, skipped_non_generic = 0;
  int triple_bad = 0, welsch_failed = 0, chord_bad = 0;
  while (done < 500) {
    const JetCurve C = generic_curve(rng, 3);
    SecantReport census;
    try {
      census = nodes_exact_n3(C);
    } catch (const Error&) {
      ++skipped_non_generic;  // outside the genericity hypothesis
      continue;
    }
    const int euler = euler_index(C);
    if (segre_index(C, census) != euler) ++triple_bad;
    try {
      if (welschinger_weight(C) != euler) ++triple_bad;
    } catch (const Error&) {
      ++welsch_failed;
    }
    if (chord_diagram_index_n3(C, census) != segre_index(C, census))
      ++chord_bad;
    ++done;
  }
  const double secs2 = seconds_since(t0);
  const bool ok2 = triple_bad == 0 && welsch_failed == 0 &&
                   skipped_non_generic < 5 && secs2 < 300.0;
  report(2, ok2, "500 random space sextics: Euler = Segre = Welschinger",
         secs2);

  // Worked curve: two crossings and a solitary point, one interlaced pair.
  t0 = std::chrono::steady_clock::now();
  JetCurve W;
  W.n = 3;
  W.p = {tutil::rf({0, 2, 0, 2, 0}), tutil::rf({1, 0, 0, 0, -1}),
         tutil::rf({0, 2, 0, -2, 0})};
  const auto wc = nodes_exact_n3(W);
  int cross = 0, solitary = 0;
  std::vector<std::pair<double, double>> chords;
  for (const auto& M : wc.secants) {
    if (!M.is_real) continue;
    bool imag_params = false;
    for (const auto& z : M.divisor.points)
      imag_params = imag_params || std::abs(z.im) > 1e-9;
    if (imag_params) {
      ++solitary;
    } else {
      ++cross;
      chords.emplace_back(circle_angle(M.divisor.points[0]),
                          circle_angle(M.divisor.points[1]));
    }
  }
  int interlaced = 0;
  for (size_t i = 0; i < chords.size(); ++i)
    for (size_t j = i + 1; j < chords.size(); ++j)
      interlaced += chords_interlace(chords[i].first, chords[i].second,
                                     chords[j].first, chords[j].second);
  const bool ok5 = chord_bad == 0 && cross == 2 && solitary == 1 &&
                   interlaced == 1 && chord_diagram_index_n3(W, wc) == -1;
  report(5, ok5,
         "chord diagrams match Segre; worked curve: cross/cross/solitary, "
         "one interlaced pair, index -1",
         secs2 + seconds_since(t0));
}

void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(8111);
  bool ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    const JetCurve C = generic_curve(rng, 3);
    SecantReport census;
    try {
      census = nodes_exact_n3(C);
    } catch (const Error&) {
      --trial;  // outside the genericity hypothesis
      continue;
    }
    ok = ok && census.total_with_multiplicity == 3 && census.certificate_ok;
  }
  std::mt19937_64 rng4(8222);
  SolverConfig cfg;
  cfg.dedupe_digits = 8;
  for (int trial = 0; trial < 20; ++trial) {
    const JetCurve C = generic_curve(rng4, 4);
    const auto census = secants_numeric(C, cfg);
    ok = ok && census.total_with_multiplicity == 6 && census.certificate_ok;
  }
  report(3, ok, "node totals 3 of 3 (exact) and quadrisecant totals 6 of 6 "
                "(certified numeric)",
         seconds_since(t0));
}

PlanePoint random_point(std::mt19937_64& rng,
                        std::uniform_int_distribution<int>& U) {
  PlanePoint p;
  p.re = RatVec(3);
  p.im = RatVec(3);
  for (int i = 0; i < 3; ++i) {
    p.re(i) = Rational(U(rng));
    p.im(i) = Rational(0);
  }
  return p;
}

RatMat circle_conic() {
  RatMat D = RatMat::Zero(3, 3);
  D(0, 0) = Rational(1);
  D(1, 1) = Rational(1);
  D(2, 2) = Rational(-1);
  return D;
}

PlaneConfig random_config(std::mt19937_64& rng, int points, bool move_conic) {
  std::uniform_int_distribution<int> U(-4, 4);
  PlaneConfig cfg;
  for (int k = 0; k < points; ++k) cfg.base.push_back(random_point(rng, U));
  cfg.conic = circle_conic();
  if (move_conic) {
    RatMat A(3, 3);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) = Rational(U(rng));
    } while (det_bareiss<Rational>(A) == 0);
    cfg.conic = A.transpose() * cfg.conic * A;
  }
  return cfg;
}

void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(424242);
  bool ok = true;
  int done = 0, attempts = 0;
  while (done < 100 && attempts < 300) {
    ++attempts;
    GeneratedCurve g;
    try {
      g = cremona_generate(random_config(rng, 3, true), 3);
    } catch (const Error&) {
      continue;  // degenerate configuration, redraw
    }
    SecantReport census;
    try {
      census = nodes_exact_n3(g.curve);
    } catch (const Error&) {
      continue;
    }
    ok = ok && segre_index(g.curve, census) == g.ground_truth;
    ++done;
  }
  ok = ok && done == 100;

  std::mt19937_64 rng4(515151);
  SolverConfig cfg;
  int done4 = 0, attempts4 = 0;
  while (done4 < 20 && attempts4 < 60) {
    ++attempts4;
    GeneratedCurve g;
    try {
      g = cremona_generate(random_config(rng4, 6, false), 4);
    } catch (const Error&) {
      continue;
    }
    SecantReport census;
    try {
      census = secants_numeric(g.curve, cfg);
    } catch (const Error&) {
      continue;
    }
    if (!census.certificate_ok) continue;  // only certified censuses count
    ok = ok && segre_index(g.curve, census) == g.ground_truth;
    ++done4;
  }
  ok = ok && done4 == 20;
  report(4, ok, "generated curves: Segre index = (-1)^(base points inside "
                "the conic), 100 exact + 20 certified numeric",
         seconds_since(t0));
}

void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(777);
  bool ok = true;
  int done = 0, skipped = 0, with_crossings = 0;
  while (done < 100) {
    const JetCurve C0 = generic_curve(rng, 3);
    const JetCurve C1 = generic_curve(rng, 3);
    CrossingReport r;
    try {
      r = wallcross_path(C0, C1, 4);
    } catch (const Error&) {
      ++skipped;  // wall tangency or non-reduced zero, outside the claim
      if (skipped > 10) break;
      continue;
    }
    ok = ok && r.indices_agree && r.alternate_ok && r.parity_ok;
    with_crossings += r.crossings.empty() ? 0 : 1;
    ++done;
  }
  ok = ok && done == 100 && with_crossings > 0;
  report(6, ok, "100 random segments: all indices flip at every simple wall, "
                "exact crossing parity",
         seconds_since(t0));
}

void criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  SolverConfig cfg;
  cfg.starts = 300;
  cfg.max_rounds = 10;
  for (std::uint64_t seed : {42ull, 7ull, 2026ull}) {
    cfg.seed = seed;
    const auto fermat = find_real_lines(fermat_hypersurface(2), cfg);
    ok = ok && fermat.stable && fermat.lines.size() == 3 &&
         signed_count(fermat_hypersurface(2), fermat.lines) == 3;
    const auto clebsch = find_real_lines(clebsch_cubic(), cfg);
    ok = ok && clebsch.stable && clebsch.lines.size() == 27 &&
         signed_count(clebsch_cubic(), clebsch.lines) == 3;
  }
  const double secs = seconds_since(t0);
  report(7, ok && secs < 240.0,
         "Fermat cubic: 3 real lines, signed 3; Clebsch cubic: 27 real "
         "lines, signed 3; stable over 3 seeds",
         secs);
}

void criterion_8() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  SolverConfig cfg;
  cfg.starts = 400;
  cfg.max_rounds = 12;
  const std::uint64_t coeff_seeds[] = {1000, 1001, 1002};
  const size_t expected_counts[] = {29, 25, 23};
  for (int k = 0; k < 3; ++k) {
    const Hypersurface X = random_hypersurface(3, coeff_seeds[k]);
    try {
      const auto found = find_real_lines(X, cfg);
      ok = ok && found.stable && found.lines.size() == expected_counts[k] &&
           signed_count(X, found.lines) == 15;
    } catch (const Error& e) {
      // An honest refusal is allowed by the claim, but these three
      // enumerations are known to stabilize.
      ok = ok && e.kind() == ErrorKind::IncompleteEnumeration;
    }
  }
  // A positive-dimensional family must be refused, not mis-summed.
  bool refused = false;
  try {
    SolverConfig small;
    small.starts = 120;
    small.max_rounds = 4;
    find_real_lines(fermat_hypersurface(3), small);
  } catch (const Error& e) {
    refused = e.kind() == ErrorKind::IncompleteEnumeration;
  }
  report(8, ok && refused,
         "3 random quintic threefolds: stable line sets, signed count 15; "
         "the Fermat quintic is refused",
         seconds_since(t0));
}

void criterion_9() {
  const auto t0 = std::chrono::steady_clock::now();

  // Index invariance under exact reparameterization and coordinate change.
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> d(-3, 3);
  bool gl_ok = true;
  for (int trial = 0; trial < 25; ++trial) {
    const JetCurve C = generic_curve(rng, 3);
    const int e = euler_index(C);
    Rational a(d(rng)), b(d(rng)), c(d(rng)), dd(d(rng));
    if (a * dd - b * c == 0) {
      --trial;
      continue;
    }
    JetCurve R;
    R.n = 3;
    for (const auto& f : C.p) R.p.push_back(compose_gl2(f, a, b, c, dd));
    gl_ok = gl_ok && euler_index(R) == e;

    RatMat M(3, 3);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = Rational(d(rng));
      RatMat Mc = M;
      if (det_exact(Mc) != 0) break;
    } while (true);
    JetCurve T;
    T.n = 3;
    T.p.assign(3, RatForm(4));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        T.p[static_cast<size_t>(i)] =
            T.p[static_cast<size_t>(i)] + M(i, j) * C.p[static_cast<size_t>(j)];
    gl_ok = gl_ok && euler_index(T) == e;
  }

  // Segre points are the double roots of the two degenerate pencil members.
  std::mt19937_64 prng(31415);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  bool branch_ok = true;
  int checked = 0, attempts = 0;
  using CD = std::complex<double>;
  while (checked < 50 && attempts < 200) {
    ++attempts;
    Vec<double> c0(3), c1(3);
    for (int k = 0; k < 3; ++k) {
      c0(k) = U(prng);
      c1(k) = U(prng);
    }
    ResidualPencilNum P;
    P.q0 = BinaryForm<double>::from_coeffs(c0);
    P.q1 = BinaryForm<double>::from_coeffs(c1);
    const auto S = segre_points_numeric(P);
    const double J0 = S.jacobian.coeff(0), J1 = S.jacobian.coeff(1),
                 J2 = S.jacobian.coeff(2);
    if (std::abs(J0) < 1e-2 || S.disc_sign == 0) continue;
    const double A2 = c1(1) * c1(1) - 4.0 * c1(0) * c1(2);
    const double A1 =
        2.0 * c0(1) * c1(1) - 4.0 * (c0(0) * c1(2) + c1(0) * c0(2));
    const double A0 = c0(1) * c0(1) - 4.0 * c0(0) * c0(2);
    if (std::abs(A2) < 1e-2) continue;
    const CD st = std::sqrt(CD(A1 * A1 - 4.0 * A2 * A0));
    const CD t1 = (-A1 + st) / (2.0 * A2), t2 = (-A1 - st) / (2.0 * A2);
    std::vector<CD> dbl;
    for (const CD& t : {t1, t2}) {
      const CD aa = c0(0) + t * c1(0), bb = c0(1) + t * c1(1);
      if (std::abs(aa) < 1e-4) {
        dbl.clear();
        break;
      }
      dbl.push_back(-bb / (2.0 * aa));
    }
    if (dbl.size() != 2) continue;
    const CD sj = std::sqrt(CD(J1 * J1 - 4.0 * J0 * J2));
    const CD x1 = (-J1 + sj) / (2.0 * J0), x2 = (-J1 - sj) / (2.0 * J0);
    auto close = [](CD p, CD q) { return std::abs(p - q) < 1e-6; };
    branch_ok = branch_ok && ((close(x1, dbl[0]) && close(x2, dbl[1])) ||
                              (close(x1, dbl[1]) && close(x2, dbl[0])));
    ++checked;
  }
  branch_ok = branch_ok && checked == 50;

  // Weight survives a change of the section basis and grid refinement.
  std::mt19937_64 wrng(606);
  bool basis_ok = true, refine_ok = true;
  for (int trial = 0; trial < 15; ++trial) {
    const JetCurve C = generic_curve(wrng, 3);
    const auto S = splitting_sections(C);
    const int w = welschinger_weight(C, S);
    Rational a(d(wrng)), b(d(wrng)), c(d(wrng)), e(d(wrng));
    if (a * e - b * c == 0) {
      --trial;
      continue;
    }
    SplittingSections T;
    T.n = 3;
    T.sections.assign(2, std::vector<RatForm>(3, RatForm(2)));
    for (size_t j = 0; j < 3; ++j) {
      T.sections[0][j] = a * S.sections[0][j] + b * S.sections[1][j];
      T.sections[1][j] = c * S.sections[0][j] + e * S.sections[1][j];
    }
    basis_ok = basis_ok && welschinger_weight(C, T) == w;
    refine_ok = refine_ok && welschinger_weight(C, nullptr, 128) == w &&
                welschinger_weight(C, nullptr, 256) == w;
  }

  // Non-real secants pair off under conjugation of their divisors.
  std::mt19937_64 crng(2718);
  bool conj_ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    const JetCurve C = generic_curve(crng, 3);
    SecantReport census;
    try {
      census = nodes_exact_n3(C);
    } catch (const Error&) {
      --trial;
      continue;
    }
    std::vector<const Secant*> imag;
    for (const auto& M : census.secants)
      if (!M.is_real) imag.push_back(&M);
    if (imag.size() % 2 != 0) {
      conj_ok = false;
      continue;
    }
    std::vector<bool> used(imag.size(), false);
    for (size_t i = 0; i < imag.size(); ++i) {
      if (used[i]) continue;
      bool matched = false;
      for (size_t j = i + 1; j < imag.size() && !matched; ++j) {
        if (used[j]) continue;
        const auto &A = imag[i]->divisor.approx, &B = imag[j]->divisor.approx;
        double dist = 0;
        for (int k = 0; k <= 2; ++k)
          dist = std::max(dist, std::abs(std::conj(A.coeff(k)) - B.coeff(k)));
        double dist_neg = 0;
        for (int k = 0; k <= 2; ++k)
          dist_neg =
              std::max(dist_neg, std::abs(std::conj(A.coeff(k)) + B.coeff(k)));
        if (dist < 1e-6 || dist_neg < 1e-6) {
          used[i] = used[j] = true;
          matched = true;
        }
      }
      conj_ok = conj_ok && matched;
    }
  }

  const bool ok = gl_ok && branch_ok && basis_ok && refine_ok && conj_ok;
  std::printf("   9 details: gl=%d branch=%d basis=%d refine=%d conj=%d\n",
              gl_ok, branch_ok, basis_ok, refine_ok, conj_ok);
  report(9, ok,
         "invariance properties: GL action, branch points, section basis, "
         "grid refinement, conjugate pairing",
         seconds_since(t0));
}

}  // namespace

int main() {
  criterion_1();
  criteria_2_and_5();
  criterion_3();
  criterion_4();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "OK" : "BAD",
              failures);
  return failures;
}
