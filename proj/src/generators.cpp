#include <algorithm>
#include <array>
#include <cstdlib>
#include <utility>
#include <vector>

#include "trisign/errors.hpp"
#include "trisign/exact_linalg.hpp"
#include "trisign/generators.hpp"
#include "trisign/secants.hpp"
#include "trisign/segre.hpp"
#include "trisign/welsch.hpp"

namespace trisign {

namespace {

// Complex rational scalar; enough arithmetic for point evaluations.
struct CRat {
  Rational re{0}, im{0};
  CRat operator*(const CRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  CRat operator+(const CRat& o) const { return {re + o.re, im + o.im}; }
  CRat operator-(const CRat& o) const { return {re - o.re, im - o.im}; }
  bool is_zero() const { return re == 0 && im == 0; }
};

using CVec3 = std::array<CRat, 3>;

CVec3 point_rep(const PlanePoint& p, bool conjugated) {
  CVec3 z;
  for (int k = 0; k < 3; ++k) {
    z[k].re = p.re(k);
    z[k].im = p.is_complex ? (conjugated ? -p.im(k) : p.im(k)) : Rational(0);
  }
  return z;
}

bool proj_equal(const CVec3& p, const CVec3& q) {
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      if (!(p[a] * q[b] - p[b] * q[a]).is_zero()) return false;
  return true;
}

CRat conic_value(const RatMat& Q, const CVec3& z) {
  CRat acc;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) acc = acc + CRat{Q(a, b), Rational(0)} * z[a] * z[b];
  return acc;
}

// Exponent triples of the degree-d monomials in (x, y, z), x-power first.
std::vector<std::array<int, 3>> monomials(int d) {
  std::vector<std::array<int, 3>> out;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
  return out;
}

CRat eval_monomial(const CVec3& z, const std::array<int, 3>& e) {
  CRat acc{Rational(1), Rational(0)};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < e[static_cast<size_t>(k)]; ++i) acc = acc * z[static_cast<size_t>(k)];
  return acc;
}

// Count of positive eigenvalues of a symmetric 3x3 rational matrix via
// Descartes' rule on the characteristic polynomial (all roots are real).
int positive_eigen_count(const RatMat& Q) {
  const Rational tr = Q(0, 0) + Q(1, 1) + Q(2, 2);
  const Rational m2 = Q(0, 0) * Q(1, 1) - Q(0, 1) * Q(1, 0) +
                      Q(0, 0) * Q(2, 2) - Q(0, 2) * Q(2, 0) +
                      Q(1, 1) * Q(2, 2) - Q(1, 2) * Q(2, 1);
  const Rational det = det_bareiss<Rational>(Q);
  const Rational coeffs[4] = {Rational(1), -tr, m2, -det};
  int variations = 0, prev = 0;
  for (const Rational& c : coeffs) {
    const int s = sign_of(c);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++variations;
    prev = s;
  }
  return variations;
}

// Flip the sign so the negative side of the form is the disc component.
RatMat normalize_signature(RatMat Q) {
  if (det_bareiss<Rational>(Q) == 0)
    fail(ErrorKind::DegenerateConfig, "conic is degenerate");
  const int pos = positive_eigen_count(Q);
  if (pos == 3 || pos == 0)
    fail(ErrorKind::DegenerateConfig, "conic has no real points");
  if (pos == 1) Q = -Q;
  return Q;
}

RatVec primitive(RatVec v) {
  Integer l(1), g(0);
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (v(k) != 0) l = lcm(l, denominator(v(k)));
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    v(k) *= Rational(l);
    if (v(k) != 0) g = gcd(g, numerator(v(k)));
  }
  if (g == 0) return v;
  int lead = 0;
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (v(k) != 0) {
      lead = sign_of(v(k));
      break;
    }
  if (lead < 0) g = -g;
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) /= Rational(g);
  return v;
}

Rational form_value(const RatMat& Q, const RatVec& x) {
  Rational acc(0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) acc += Q(a, b) * x(a) * x(b);
  return acc;
}

// Height-bounded deterministic search for a rational point of the conic.
std::optional<RatVec> search_point(const RatMat& Q) {
  for (int h = 1; h <= 24; ++h)
    for (int x = -h; x <= h; ++x)
      for (int y = -h; y <= h; ++y)
        for (int z = -h; z <= h; ++z) {
          if (std::max({std::abs(x), std::abs(y), std::abs(z)}) != h) continue;
          RatVec v(3);
          v << Rational(x), Rational(y), Rational(z);
          if (form_value(Q, v) == 0) return primitive(std::move(v));
        }
  return std::nullopt;
}

// Stereographic parameterization of the conic from the point q0: the second
// intersection of the line through q0 with direction u r1 + v r2.
std::array<RatForm, 3> parameterize(const RatMat& Q, const RatVec& q0) {
  static const std::array<std::pair<int, int>, 3> pairs = {
      {{0, 1}, {0, 2}, {1, 2}}};
  int i = -1, j = -1;
  for (const auto& [a, b] : pairs) {
    RatMat m(3, 3);
    for (int k = 0; k < 3; ++k) {
      m(0, k) = q0(k);
      m(1, k) = k == a ? Rational(1) : Rational(0);
      m(2, k) = k == b ? Rational(1) : Rational(0);
    }
    if (det_bareiss<Rational>(m) != 0) {
      i = a;
      j = b;
      break;
    }
  }
  if (i < 0) fail(ErrorKind::InvalidInput, "conic point is not projective");

  const RatVec w = Q * q0;  // alpha(u, v) = w_i u + w_j v
  RatForm alpha(1);
  alpha.coeff(0) = w(i);
  alpha.coeff(1) = w(j);
  RatForm beta(2);  // (u e_i + v e_j)^T Q (u e_i + v e_j)
  beta.coeff(0) = Q(i, i);
  beta.coeff(1) = Q(i, j) + Q(j, i);
  beta.coeff(2) = Q(j, j);

  std::array<RatForm, 3> X = {RatForm(2), RatForm(2), RatForm(2)};
  for (int k = 0; k < 3; ++k) {
    RatForm rk(1);
    if (k == i) rk.coeff(0) = Rational(1);
    if (k == j) rk.coeff(1) = Rational(1);
    X[static_cast<size_t>(k)] =
        Rational(2) * (alpha * rk) - q0(k) * beta;
  }

  // The image must satisfy the conic identically.
  RatForm check(4);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      check += Q(a, b) * (X[static_cast<size_t>(a)] * X[static_cast<size_t>(b)]);
  if (!check.is_zero())
    fail(ErrorKind::InvalidInput, "supplied point does not lie on the conic");
  return X;
}

RatForm compose(const RatVec& g, const std::vector<std::array<int, 3>>& mons,
                const std::vector<std::vector<RatForm>>& pow, int degree) {
  RatForm acc(2 * degree);
  for (size_t m = 0; m < mons.size(); ++m) {
    const Rational& c = g(static_cast<Eigen::Index>(m));
    if (c == 0) continue;
    RatForm term = pow[0][static_cast<size_t>(mons[m][0])] *
                   pow[1][static_cast<size_t>(mons[m][1])] *
                   pow[2][static_cast<size_t>(mons[m][2])];
    acc += c * term;
  }
  return acc;
}

}  // namespace

JetCurve one_example(int n) {
  if (n < 2) fail(ErrorKind::InvalidInput, "family starts at n = 2");
  JetCurve C;
  C.n = n;
  for (int k = 0; k < n; ++k) {
    RatForm p(2 * n - 2);
    p.coeff(2 * k) = Rational(1);
    C.p.push_back(std::move(p));
  }
  return C;
}

GeneratedCurve cremona_generate(const PlaneConfig& cfg, int n) {
  if (n < 2) fail(ErrorKind::InvalidInput, "need n >= 2");
  if (cfg.conic.rows() != 3 || cfg.conic.cols() != 3)
    fail(ErrorKind::InvalidInput, "conic matrix must be 3x3");
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (cfg.conic(a, b) != cfg.conic(b, a))
        fail(ErrorKind::InvalidInput, "conic matrix must be symmetric");

  // Expand conjugate pairs into explicit complex representatives.
  std::vector<CVec3> pts;
  int weight = 0;
  for (const auto& p : cfg.base) {
    if (p.re.size() != 3 || p.im.size() != 3)
      fail(ErrorKind::InvalidInput, "base points live in P^2");
    bool re_zero = true, im_zero = true;
    for (int k = 0; k < 3; ++k) {
      if (p.re(k) != 0) re_zero = false;
      if (p.im(k) != 0) im_zero = false;
    }
    if (p.is_complex && im_zero)
      fail(ErrorKind::InvalidInput, "conjugate pair with zero imaginary part");
    if (!p.is_complex && !im_zero)
      fail(ErrorKind::InvalidInput, "real base point with imaginary part");
    if (re_zero && im_zero)
      fail(ErrorKind::InvalidInput, "zero vector is not a point");
    pts.push_back(point_rep(p, false));
    if (p.is_complex) pts.push_back(point_rep(p, true));
    weight += p.is_complex ? 2 : 1;
  }
  if (weight != n * (n - 1) / 2)
    fail(ErrorKind::InvalidInput, "base locus must have C(n,2) points");
  for (size_t a = 0; a < pts.size(); ++a)
    for (size_t b = a + 1; b < pts.size(); ++b)
      if (proj_equal(pts[a], pts[b]))
        fail(ErrorKind::InvalidInput, "base points must be pairwise distinct");

  const RatMat Qn = normalize_signature(cfg.conic);
  for (const auto& z : pts)
    if (conic_value(cfg.conic, z).is_zero())
      fail(ErrorKind::InvalidInput, "base locus must avoid the conic");

  // Conditions on degree-(n-1) forms: one row per real point, a real and an
  // imaginary row per conjugate pair (keeping the system rational).
  const auto mons = monomials(n - 1);
  const Eigen::Index cols = static_cast<Eigen::Index>(mons.size());
  std::vector<RatVec> rows;
  for (const auto& p : cfg.base) {
    const CVec3 z = point_rep(p, false);
    RatVec row_re(cols), row_im(cols);
    for (Eigen::Index m = 0; m < cols; ++m) {
      const CRat v = eval_monomial(z, mons[static_cast<size_t>(m)]);
      row_re(m) = v.re;
      row_im(m) = v.im;
    }
    rows.push_back(std::move(row_re));
    if (p.is_complex) rows.push_back(std::move(row_im));
  }
  RatMat cond(static_cast<Eigen::Index>(rows.size()), cols);
  for (size_t r = 0; r < rows.size(); ++r) cond.row(static_cast<Eigen::Index>(r)) = rows[r];
  const auto basis = kernel_exact(cond);
  if (static_cast<int>(basis.size()) != n)
    fail(ErrorKind::DegenerateConfig,
         "base points impose dependent conditions on the linear system");

  RatVec q0;
  if (cfg.point_on_conic) {
    if (cfg.point_on_conic->size() != 3 ||
        form_value(cfg.conic, *cfg.point_on_conic) != 0)
      fail(ErrorKind::InvalidInput, "supplied point does not lie on the conic");
    q0 = primitive(*cfg.point_on_conic);
  } else if (auto found = search_point(cfg.conic)) {
    q0 = *found;
  } else {
    fail(ErrorKind::SupplyPointRequired,
         "no small rational point on the conic; supply one");
  }

  const auto X = parameterize(cfg.conic, q0);
  std::vector<std::vector<RatForm>> pow(3);
  for (int k = 0; k < 3; ++k) {
    pow[static_cast<size_t>(k)].push_back(RatForm::from_coeffs({Rational(1)}));
    for (int e = 1; e <= n - 1; ++e)
      pow[static_cast<size_t>(k)].push_back(pow[static_cast<size_t>(k)].back() *
                                            X[static_cast<size_t>(k)]);
  }

  GeneratedCurve out;
  out.curve.n = n;
  for (const auto& g : basis) {
    RatForm c = compose(g, mons, pow, n - 1);
    out.curve.p.push_back(RatForm::from_coeffs(primitive(c.coeffs())));
  }
  out.param_point = q0;

  // Genericity is re-checked rather than assumed.
  validate(out.curve);
  if (jet_det(out.curve) == 0)
    fail(ErrorKind::DegenerateConfig, "generated curve lies on the wall");
  if (n == 3) {
    try {
      node_parameter_sextic(out.curve);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NonGenericCurve)
        fail(ErrorKind::DegenerateConfig, "generated curve is not node-generic");
      throw;
    }
  }

  for (const auto& p : cfg.base) {
    if (p.is_complex) continue;
    if (sign_of(form_value(Qn, p.re)) < 0) ++out.inside_count;
  }
  out.ground_truth = out.inside_count % 2 == 0 ? 1 : -1;
  return out;
}

CrossingReport wallcross_path(const JetCurve& C0, const JetCurve& C1, int steps) {
  validate(C0);
  validate(C1);
  if (C0.n != C1.n) fail(ErrorKind::InvalidInput, "endpoint dimensions differ");
  const int n = C0.n;
  steps = std::clamp(steps, 0, 300);
  if (jet_det(C0) == 0 || jet_det(C1) == 0)
    fail(ErrorKind::DegenerateOnWall, "endpoint lies on the wall");

  const auto curve_at = [&](const Rational& t) {
    JetCurve C;
    C.n = n;
    const Rational s = Rational(1) - t;
    for (int j = 0; j < n; ++j)
      C.p.push_back(s * C0.p[static_cast<size_t>(j)] +
                    t * C1.p[static_cast<size_t>(j)]);
    return C;
  };

  // det A_{C_t} has degree at most 2n in t; interpolate it exactly.
  const Eigen::Index deg = 2 * n;
  std::vector<Rational> xs, ys;
  for (Eigen::Index k = 0; k <= deg; ++k) {
    const Rational t(k, deg);
    xs.push_back(t);
    ys.push_back(jet_det(curve_at(t)));
  }
  CrossingReport rep;
  rep.det_poly = interpolate_form(xs, ys, deg);

  // Every zero on the segment must be simple: a double zero means the path
  // touches a wall without crossing it.
  const RatForm dd = derivative_u(rep.det_poly);
  if (!dd.is_zero()) {
    const RatForm g = bf_gcd(rep.det_poly, dd);
    if (g.degree() > 0 &&
        !isolate_real_roots(squarefree_part(g), Rational(0), Rational(1)).empty())
      fail(ErrorKind::NonGenericPath, "det A has a multiple zero on the segment");
  }

  const RatForm S = squarefree_part(rep.det_poly);
  auto intervals = isolate_real_roots(S, Rational(0), Rational(1));

  Rational width(1, 64);
  for (int k = 0; k < steps; ++k) width /= 2;
  for (auto& [a, b] : intervals) {
    std::tie(a, b) = refine_isolating_interval(S, a, b, width);
    // Keep chamber samples strictly inside (0, 1).
    Rational w = width;
    while (a == 0 || b == 1) {
      w /= 2;
      std::tie(a, b) = refine_isolating_interval(S, a, b, w);
    }
  }
  for (const auto& [a, b] : intervals) rep.crossings.push_back({a, b});

  const auto sample_indices = [&](const Rational& t) {
    ChamberSample cs;
    cs.t = t;
    const JetCurve Ct = curve_at(t);
    cs.euler = euler_index(Ct);
    if (n >= 3) {
      // A chamber sample can be secant-non-generic (a self-path through a
      // curve on a conic, say) while its Euler index is still exact; the
      // sample then reports no Segre value instead of aborting the walk.
      try {
        const SecantReport census =
            n == 3 ? nodes_exact_n3(Ct) : secants_numeric(Ct, SolverConfig{});
        cs.segre = segre_index(Ct, census);
      } catch (const Error& e) {
        switch (e.kind()) {
          case ErrorKind::NonGenericCurve:
          case ErrorKind::IncompleteEnumeration:
          case ErrorKind::NumericFailure:
            break;
          default:
            throw;
        }
      }
    }
    if (n <= 3) cs.welsch = welschinger_weight(Ct);
    return cs;
  };

  Rational prev(0);
  for (const auto& c : rep.crossings) {
    rep.chambers.push_back(sample_indices((prev + c.t_lo) / 2));
    prev = c.t_hi;
  }
  rep.chambers.push_back(sample_indices((prev + Rational(1)) / 2));

  rep.indices_agree = true;
  for (const auto& cs : rep.chambers) {
    if (cs.segre && *cs.segre != cs.euler) rep.indices_agree = false;
    if (cs.welsch && *cs.welsch != cs.euler) rep.indices_agree = false;
  }
  rep.alternate_ok = true;
  for (size_t k = 1; k < rep.chambers.size(); ++k)
    if (rep.chambers[k].euler != -rep.chambers[k - 1].euler)
      rep.alternate_ok = false;
  const int flips = rep.crossings.size() % 2 == 0 ? 1 : -1;
  rep.parity_ok = euler_index(C1) == euler_index(C0) * flips;
  return rep;
}

}  // namespace trisign
