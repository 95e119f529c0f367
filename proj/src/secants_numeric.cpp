#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "trisign/errors.hpp"
#include "trisign/exact_linalg.hpp"
#include "trisign/secants.hpp"

namespace trisign {

namespace {

using CD = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

struct ProjPoint {
  CD u, v;  // normalized representative on P^1
};

// Curve in a random parameter chart, dehomogenized and scaled per
// component so Newton works near unit magnitude.
struct Chart {
  std::array<int, 4> g{1, 0, 0, 1};  // (u,v) -> (g0 x + g1, g2 x + g3)
  std::vector<std::vector<CD>> desc, ddesc;  // descending coeffs + derivative
  std::vector<double> scale;                 // per-component normalization
};

Chart make_chart(const JetCurve& C, std::mt19937_64& rng) {
  Chart ch;
  std::uniform_int_distribution<int> d(-3, 3);
  do {
    for (auto& e : ch.g) e = d(rng);
  } while (ch.g[0] * ch.g[3] - ch.g[1] * ch.g[2] == 0);
  for (const auto& p : C.p) {
    RatForm q = compose_gl2(p, Rational(ch.g[0]), Rational(ch.g[1]),
                            Rational(ch.g[2]), Rational(ch.g[3]));
    std::vector<CD> c(static_cast<size_t>(q.degree()) + 1);
    double m = 0;
    for (Eigen::Index k = 0; k <= q.degree(); ++k) {
      c[static_cast<size_t>(k)] = CD(to_double(q.coeff(k)));
      m = std::max(m, std::abs(c[static_cast<size_t>(k)]));
    }
    if (m == 0) m = 1;
    for (auto& x : c) x /= m;
    std::vector<CD> dc(c.size() - 1);
    const auto deg = c.size() - 1;
    for (size_t k = 0; k + 1 < c.size(); ++k)
      dc[k] = c[k] * static_cast<double>(deg - k);
    ch.scale.push_back(m);
    ch.desc.push_back(std::move(c));
    ch.ddesc.push_back(std::move(dc));
  }
  return ch;
}

CD horner(const std::vector<CD>& c, CD x) {
  CD v(0);
  for (const CD& ck : c) v = v * x + ck;
  return v;
}

struct RawSolution {
  std::vector<ProjPoint> roots;  // divisor points in the original chart
  VectorXcd a, b;                // covectors for the original curve
};

// Newton on the square system in (x_1..x_k, a, b).
std::optional<RawSolution> newton_run(const Chart& ch, int n, double tol,
                                      const VectorXcd& gauge,
                                      std::mt19937_64& rng) {
  const int k = 2 * n - 4;
  const int m = k + 2 * n;
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto crand = [&]() { return CD(gauss(rng), gauss(rng)); };

  // Divisor points start uniformly on P^1 (quotient of two Gaussians);
  // the covectors start as the least-squares plane through those points.
  VectorXcd z(m);
  for (int i = 0; i < k; ++i) {
    CD den = crand();
    while (std::abs(den) < 1e-6) den = crand();
    z(i) = crand() / den;
  }
  MatrixXcd pts(k, n);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j)
      pts(i, j) = horner(ch.desc[static_cast<size_t>(j)], z(i));
  Eigen::JacobiSVD<MatrixXcd> svd(pts, Eigen::ComputeFullV);
  VectorXcd a0 = svd.matrixV().col(n - 1);
  VectorXcd b0 = svd.matrixV().col(n - 2);
  // Rough bilinear normalization of the initial covectors.
  const CD aa = (a0.transpose() * a0)(0);
  if (std::abs(aa) < 1e-3) return std::nullopt;
  a0 /= std::sqrt(aa);
  const CD ab = (a0.transpose() * b0)(0);
  b0 -= ab * a0;
  const CD bb = (b0.transpose() * b0)(0);
  if (std::abs(bb) < 1e-3) return std::nullopt;
  b0 /= std::sqrt(bb);
  z.segment(k, n) = a0;
  z.segment(k + n, n) = b0;

  MatrixXcd J(m, m);
  VectorXcd F(m);
  auto fill = [&](const VectorXcd& zz) {
    J.setZero();
    const auto a = zz.segment(k, n);
    const auto b = zz.segment(k + n, n);
    for (int i = 0; i < k; ++i) {
      const CD x = zz(i);
      CD fa(0), fb(0), dfa(0), dfb(0);
      for (int j = 0; j < n; ++j) {
        const CD pj = horner(ch.desc[static_cast<size_t>(j)], x);
        const CD dj = horner(ch.ddesc[static_cast<size_t>(j)], x);
        fa += a(j) * pj;
        fb += b(j) * pj;
        dfa += a(j) * dj;
        dfb += b(j) * dj;
        J(2 * i, k + j) = pj;
        J(2 * i + 1, k + n + j) = pj;
      }
      F(2 * i) = fa;
      F(2 * i + 1) = fb;
      J(2 * i, i) = dfa;
      J(2 * i + 1, i) = dfb;
    }
    F(2 * k) = (a.transpose() * a)(0) - 1.0;
    F(2 * k + 1) = (b.transpose() * b)(0) - 1.0;
    F(2 * k + 2) = (a.transpose() * b)(0);
    F(2 * k + 3) = (gauge.transpose() * a)(0) - 1.0;
    for (int j = 0; j < n; ++j) {
      J(2 * k, k + j) = 2.0 * a(j);
      J(2 * k + 1, k + n + j) = 2.0 * b(j);
      J(2 * k + 2, k + j) = b(j);
      J(2 * k + 2, k + n + j) = a(j);
      J(2 * k + 3, k + j) = gauge(j);
    }
  };
  VectorXcd Fonly(m);
  auto residual_at = [&](const VectorXcd& zz) {
    const auto a = zz.segment(k, n);
    const auto b = zz.segment(k + n, n);
    for (int i = 0; i < k; ++i) {
      CD fa(0), fb(0);
      for (int j = 0; j < n; ++j) {
        const CD pj = horner(ch.desc[static_cast<size_t>(j)], zz(i));
        fa += a(j) * pj;
        fb += b(j) * pj;
      }
      Fonly(2 * i) = fa;
      Fonly(2 * i + 1) = fb;
    }
    Fonly(2 * k) = (a.transpose() * a)(0) - 1.0;
    Fonly(2 * k + 1) = (b.transpose() * b)(0) - 1.0;
    Fonly(2 * k + 2) = (a.transpose() * b)(0);
    Fonly(2 * k + 3) = (gauge.transpose() * a)(0) - 1.0;
    return Fonly.lpNorm<Eigen::Infinity>();
  };

  double res = 1e300;
  for (int it = 0; it < 100; ++it) {
    fill(z);
    res = F.lpNorm<Eigen::Infinity>();
    if (res < 1e-13) break;
    Eigen::PartialPivLU<MatrixXcd> lu(J);
    const VectorXcd step = lu.solve(F);
    if (!step.allFinite()) return std::nullopt;
    // Damped step: back off while the residual refuses to drop.
    double h = 1.0;
    VectorXcd znext = z - step;
    for (int half = 0; half < 4; ++half) {
      if (residual_at(znext) < res) break;
      h *= 0.5;
      znext = z - h * step;
    }
    z = znext;
    if (z.lpNorm<Eigen::Infinity>() > 1e8) return std::nullopt;
  }
  if (!(res < tol)) return std::nullopt;
  // Isolated nondegenerate solutions only: the system also carries a
  // positive-dimensional spurious component along coincident parameters,
  // where the Jacobian degenerates.
  fill(z);
  Eigen::PartialPivLU<MatrixXcd> lu_final(J);
  if (!(lu_final.rcond() > 1e-10)) return std::nullopt;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (std::abs(z(i) - z(j)) <
          1e-5 * std::sqrt((1.0 + std::norm(z(i))) * (1.0 + std::norm(z(j)))))
        return std::nullopt;

  RawSolution s;
  for (int i = 0; i < k; ++i) {
    // back to the original chart
    const CD x = z(i);
    CD u = static_cast<double>(ch.g[0]) * x + static_cast<double>(ch.g[1]);
    CD v = static_cast<double>(ch.g[2]) * x + static_cast<double>(ch.g[3]);
    const double nr = std::sqrt(std::norm(u) + std::norm(v));
    if (nr == 0) return std::nullopt;
    s.roots.push_back({u / nr, v / nr});
  }
  // undo the per-component scaling: a . p_scaled = (a_j / m_j) . p) up to
  // the chart factor, which does not affect the covector.
  s.a = VectorXcd(n);
  s.b = VectorXcd(n);
  for (int j = 0; j < n; ++j) {
    s.a(j) = z(k + j) / ch.scale[static_cast<size_t>(j)];
    s.b(j) = z(k + n + j) / ch.scale[static_cast<size_t>(j)];
  }
  return s;
}

// Canonical phase: divide by the first coefficient whose modulus is within
// a whisker of the maximum.
void canonicalize(VectorXcd& v) {
  double m = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v(i)));
  if (m == 0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) >= m * (1.0 - 1e-9)) {
      v /= v(i);
      return;
    }
}

VectorXcd divisor_vector(const std::vector<ProjPoint>& roots) {
  std::vector<CD> q = {CD(1)};
  for (const auto& r : roots) {
    // multiply by (v_r u - u_r v)
    std::vector<CD> next(q.size() + 1, CD(0));
    for (size_t i = 0; i < q.size(); ++i) {
      next[i] += r.v * q[i];
      next[i + 1] -= r.u * q[i];
    }
    q = std::move(next);
  }
  VectorXcd out(static_cast<Eigen::Index>(q.size()));
  for (size_t i = 0; i < q.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = q[i];
  canonicalize(out);
  return out;
}

VectorXcd plucker_vector(const VectorXcd& a, const VectorXcd& b) {
  const Eigen::Index n = a.size();
  VectorXcd w(n * (n - 1) / 2);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      w(idx++) = a(i) * b(j) - a(j) * b(i);
  canonicalize(w);
  return w;
}

std::string vec_key(const VectorXcd& v, int digits) {
  std::string out;
  char buf[64];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.*f,%.*f;", digits,
                  v(i).real() + 0.0, digits, v(i).imag() + 0.0);
    out += buf;
  }
  return out;
}

double vec_dist(const VectorXcd& a, const VectorXcd& b) {
  if (a.size() != b.size()) return 1e300;
  return (a - b).lpNorm<Eigen::Infinity>();
}

struct Rep {
  VectorXcd divisor, plane;
  std::vector<ProjPoint> roots;
  VectorXcd a, b;
  int hits = 0;
};

bool conj_invariant(const VectorXcd& v, double tol) {
  VectorXcd c = v.conjugate();
  canonicalize(c);
  return vec_dist(c, v) < tol;
}

ComplexPoint to_point(const ProjPoint& r) {
  ComplexPoint p;
  if (std::abs(r.v) <= 1e-9 * std::abs(r.u)) {
    p.at_infinity = true;
  } else {
    const CD x = r.u / r.v;
    p.re = x.real();
    p.im = x.imag();
  }
  return p;
}

// Real 2-plane basis from a conjugation-invariant complex span.
std::pair<VectorXcd, VectorXcd> realify(const VectorXcd& a,
                                        const VectorXcd& b) {
  const Eigen::Index n = a.size();
  Eigen::MatrixXd rows(4, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    rows(0, j) = a(j).real();
    rows(1, j) = a(j).imag();
    rows(2, j) = b(j).real();
    rows(3, j) = b(j).imag();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  VectorXcd ra(n), rb(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    ra(j) = CD(svd.matrixV()(j, 0), 0.0);
    rb(j) = CD(svd.matrixV()(j, 1), 0.0);
  }
  return {ra, rb};
}

}  // namespace

SecantReport secants_numeric(const JetCurve& C, const SolverConfig& cfg) {
  validate(C);
  if (C.n < 3)
    fail(ErrorKind::InvalidInput, "secant enumeration requires n >= 3");
  const int n = C.n;
  RatMat coef(n, 2 * n - 1);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index r = 0; r < 2 * n - 1; ++r)
      coef(j, r) = C.p[static_cast<size_t>(j)].coeff(r);
  if (rank_exact(coef) < n)
    fail(ErrorKind::NonGenericCurve,
         "components are linearly dependent: secants are not isolated");

  const int expected = n * (n - 1) / 2;
  const double merge_tol = 3.0 * std::pow(10.0, -cfg.dedupe_digits);
  std::mt19937_64 rng(cfg.seed);

  std::vector<Rep> reps;
  std::map<std::string, size_t> index;
  SecantReport rep;
  rep.seed = cfg.seed;

  auto ingest = [&](const RawSolution& s) {
    Rep r;
    r.divisor = divisor_vector(s.roots);
    r.plane = plucker_vector(s.a, s.b);
    r.roots = s.roots;
    r.a = s.a;
    r.b = s.b;
    r.hits = 1;
    const std::string key = vec_key(r.divisor, cfg.dedupe_digits);
    auto it = index.find(key);
    if (it != index.end()) {
      ++reps[it->second].hits;
      return;
    }
    for (size_t i = 0; i < reps.size(); ++i)
      if (vec_dist(reps[i].divisor, r.divisor) < merge_tol) {
        ++reps[i].hits;
        index[key] = i;
        return;
      }
    index[key] = reps.size();
    reps.push_back(std::move(r));
  };

  auto assemble = [&]() {
    // Group divisor representatives by their secant plane.
    std::vector<size_t> order(reps.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
      return vec_key(reps[x].divisor, cfg.dedupe_digits) <
             vec_key(reps[y].divisor, cfg.dedupe_digits);
    });
    std::vector<std::vector<size_t>> groups;
    std::vector<bool> used(reps.size(), false);
    for (size_t oi = 0; oi < order.size(); ++oi) {
      const size_t i = order[oi];
      if (used[i]) continue;
      std::vector<size_t> g = {i};
      used[i] = true;
      for (size_t oj = oi + 1; oj < order.size(); ++oj) {
        const size_t j = order[oj];
        if (used[j]) continue;
        if (vec_dist(reps[i].plane, reps[j].plane) < 1e-6) {
          g.push_back(j);
          used[j] = true;
        }
      }
      groups.push_back(std::move(g));
    }
    rep.secants.clear();
    rep.warnings.clear();
    rep.total_with_multiplicity = 0;
    for (const auto& g : groups) {
      const Rep& r0 = reps[g.front()];
      Secant s;
      s.multiplicity = static_cast<int>(g.size());
      rep.total_with_multiplicity += s.multiplicity;
      s.divisor.approx = BinaryForm<CD>::from_coeffs(r0.divisor);
      for (const auto& rt : r0.roots)
        s.divisor.points.push_back(to_point(rt));
      const bool real_div = conj_invariant(r0.divisor, 1e-6);
      const bool real_plane = conj_invariant(r0.plane, 1e-6);
      s.is_real = real_div && real_plane;
      if (real_div != real_plane)
        rep.warnings.push_back(
            "secant reality flags disagree between divisor and plane");
      if (s.is_real) {
        auto [ra, rb] = realify(r0.a, r0.b);
        s.lambda_a = ra;
        s.lambda_b = rb;
      } else {
        s.lambda_a = r0.a / r0.a.norm();
        s.lambda_b = r0.b / r0.b.norm();
      }
      if (s.multiplicity > 1)
        rep.warnings.push_back(
            "secant with multiplicity " + std::to_string(s.multiplicity) +
            ": divisor representative is one of several");
      rep.secants.push_back(std::move(s));
    }
    // Conjugate matching across the report.
    for (const auto& s : rep.secants) {
      if (s.is_real) continue;
      VectorXcd cd(s.divisor.approx.coeffs().size());
      for (Eigen::Index i = 0; i < cd.size(); ++i)
        cd(i) = std::conj(s.divisor.approx.coeff(i));
      canonicalize(cd);
      bool found = false;
      for (const auto& t : rep.secants) {
        VectorXcd td(t.divisor.approx.coeffs().size());
        for (Eigen::Index i = 0; i < td.size(); ++i)
          td(i) = t.divisor.approx.coeff(i);
        if (vec_dist(cd, td) < 1e-6 && t.multiplicity == s.multiplicity)
          found = true;
      }
      if (!found)
        rep.warnings.push_back(
            "complex secant lacks a conjugate partner of equal multiplicity");
    }
    rep.certificate_ok = (rep.total_with_multiplicity == expected);
  };

  for (int round = 0; round < std::max(1, cfg.max_rounds); ++round) {
    const int starts = cfg.starts << round;
    const Chart ch = make_chart(C, rng);
    VectorXcd gauge(n);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int j = 0; j < n; ++j) gauge(j) = CD(gauss(rng), gauss(rng));
    for (int s = 0; s < starts; ++s) {
      auto sol = newton_run(ch, n, cfg.tol, gauge, rng);
      if (!sol) continue;
      ingest(*sol);
      // The curve and the chart are real, so the conjugate tuple is a
      // solution as well; ingesting it keeps the census conjugation-closed.
      RawSolution co;
      co.a = sol->a.conjugate();
      co.b = sol->b.conjugate();
      for (const auto& r : sol->roots)
        co.roots.push_back({std::conj(r.u), std::conj(r.v)});
      ingest(co);
    }
    assemble();
    if (rep.certificate_ok) break;
  }
  if (!rep.certificate_ok)
    rep.warnings.push_back(
        "enumeration certificate failed: found total " +
        std::to_string(rep.total_with_multiplicity) + ", expected " +
        std::to_string(expected));
  return rep;
}

namespace {

double chordal(const ComplexPoint& a, const ComplexPoint& b) {
  if (a.at_infinity && b.at_infinity) return 0.0;
  if (a.at_infinity) return 1.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.at_infinity) return 1.0 / std::sqrt(1.0 + std::norm(a.value()));
  return std::abs(a.value() - b.value()) /
         std::sqrt((1.0 + std::norm(a.value())) * (1.0 + std::norm(b.value())));
}

int count_common_roots(const std::vector<ComplexPoint>& ra,
                       const std::vector<ComplexPoint>& rb, double close,
                       double far, bool* ambiguous) {
  *ambiguous = false;
  std::vector<bool> usedb(rb.size(), false);
  int common = 0;
  for (const auto& x : ra) {
    double best = 1e300;
    size_t bj = rb.size();
    for (size_t j = 0; j < rb.size(); ++j) {
      if (usedb[j]) continue;
      const double d = chordal(x, rb[j]);
      if (d < best) {
        best = d;
        bj = j;
      }
    }
    if (bj == rb.size()) continue;
    if (best < close) {
      usedb[bj] = true;
      ++common;
    } else if (best < far) {
      *ambiguous = true;
    }
  }
  return common;
}

}  // namespace

int verify_secant(const JetCurve& C, const Secant& M) {
  validate_shape(C);
  const int n = C.n;

  // Exact route when rational covectors are available or recoverable.
  std::optional<RatVec> la = M.lambda_a_exact, lb = M.lambda_b_exact;
  if (!la || !lb) {
    auto try_rationalize = [&](const VectorXcd& v) -> std::optional<RatVec> {
      if (v.size() != n) return std::nullopt;
      VectorXcd w = v;
      canonicalize(w);
      RatVec out(n);
      for (int j = 0; j < n; ++j) {
        if (std::abs(w(j).imag()) > 1e-12) return std::nullopt;
        auto r = rationalize(w(j).real(), 1000000, 1e-13);
        if (!r) return std::nullopt;
        out(j) = *r;
      }
      return out;
    };
    la = try_rationalize(M.lambda_a);
    lb = try_rationalize(M.lambda_b);
  }
  if (la && lb) {
    RatForm A(2 * n - 2), B(2 * n - 2);
    for (int j = 0; j < n; ++j) {
      A = A + (*la)(j) * C.p[static_cast<size_t>(j)];
      B = B + (*lb)(j) * C.p[static_cast<size_t>(j)];
    }
    if (A.is_zero() && B.is_zero())
      fail(ErrorKind::InvalidSecant, "both covectors annihilate the curve");
    if (A.is_zero()) return static_cast<int>(B.degree());
    if (B.is_zero()) return static_cast<int>(A.degree());
    return static_cast<int>(bf_gcd(A, B).degree());
  }

  // Certified numeric route.
  VectorXcd va = M.lambda_a, vb = M.lambda_b;
  if (va.size() != n || vb.size() != n)
    fail(ErrorKind::InvalidSecant, "covectors have the wrong dimension");
  BinaryForm<CD> A(2 * n - 2), B(2 * n - 2);
  for (int j = 0; j < n; ++j) {
    BinaryForm<CD> pj(2 * n - 2);
    for (Eigen::Index k = 0; k <= 2 * n - 2; ++k)
      pj.coeff(k) = CD(to_double(C.p[static_cast<size_t>(j)].coeff(k)));
    A = A + va(j) * pj;
    B = B + vb(j) * pj;
  }
  if (A.is_zero() || B.is_zero())
    fail(ErrorKind::InvalidSecant, "covector annihilates the curve numerically");
  auto ra = complex_roots(A);
  auto rb = complex_roots(B);
  bool ambiguous = false;
  int k = count_common_roots(ra, rb, 3e-7, 3e-5, &ambiguous);
  if (!ambiguous) return k;

  // Escalate: polish both root sets in higher precision and re-match with
  // tighter bands.
  auto polish = [&](const BinaryForm<CD>& f, std::vector<ComplexPoint>& rs) {
    std::vector<Complex100> c(static_cast<size_t>(f.degree()) + 1);
    for (Eigen::Index i = 0; i <= f.degree(); ++i)
      c[static_cast<size_t>(i)] =
          Complex100(Float100(f.coeff(i).real()), Float100(f.coeff(i).imag()));
    for (auto& r : rs) {
      if (r.at_infinity) continue;
      Complex100 z(Float100(r.re), Float100(r.im));
      z = refine_root_newton(c, z, 200);
      r.re = static_cast<double>(z.real());
      r.im = static_cast<double>(z.imag());
    }
  };
  polish(A, ra);
  polish(B, rb);
  k = count_common_roots(ra, rb, 1e-9, 1e-7, &ambiguous);
  if (ambiguous)
    fail(ErrorKind::NumericFailure,
         "secant verification margins remain ambiguous after escalation");
  return k;
}

}  // namespace trisign
