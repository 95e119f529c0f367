#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <cstdio>
#include <optional>
#include <vector>

#include "trisign/errors.hpp"
#include "trisign/exact_linalg.hpp"
#include "trisign/secants.hpp"

namespace trisign {

namespace {

using CD = std::complex<double>;

// Bihomogeneous forms in (s, t) as coefficient matrices: entry (a, b) is
// the coefficient of s_u^{ds-a} s_v^a t_u^{dt-b} t_v^b.

RatMat cross_numerator(const RatForm& pi, const RatForm& pj) {
  const Eigen::Index d = pi.degree();
  RatMat N = RatMat::Constant(d + 1, d + 1, Rational(0));
  for (Eigen::Index a = 0; a <= d; ++a)
    for (Eigen::Index b = 0; b <= d; ++b)
      N(a, b) =
          pi.coeffs()(a) * pj.coeffs()(b) - pj.coeffs()(a) * pi.coeffs()(b);
  return N;
}

// Exact division by the diagonal s_u t_v - s_v t_u, valid because the
// numerator vanishes on s = t.  N(a,b) = H(a,b-1) - H(a-1,b) with H zero
// outside its (rows-1) x (cols-1) range; verified by multiplying back.
RatMat divide_diagonal(const RatMat& N) {
  const Eigen::Index R = N.rows() - 1, Cc = N.cols() - 1;
  RatMat H = RatMat::Constant(R, Cc, Rational(0));
  for (Eigen::Index a = 0; a < R; ++a)
    for (Eigen::Index b = 1; b <= Cc; ++b) {
      Rational above = (a >= 1 && b < Cc) ? H(a - 1, b) : Rational(0);
      H(a, b - 1) = N(a, b) + above;
    }
  for (Eigen::Index a = 0; a < N.rows(); ++a)
    for (Eigen::Index b = 0; b < N.cols(); ++b) {
      Rational v(0);
      if (a < R && b >= 1) v += H(a, b - 1);
      if (a >= 1 && b < Cc) v -= H(a - 1, b);
      if (v != N(a, b))
        fail(ErrorKind::NumericFailure,
             "internal: diagonal division is inexact");
    }
  return H;
}

// Specialize s = (w, 1) and take the Sylvester resultant in t.
Rational eliminant_sample(const RatMat& H1, const RatMat& H2,
                          const Rational& w) {
  auto specialize = [&](const RatMat& H) {
    const Eigen::Index ds = H.rows() - 1, dt = H.cols() - 1;
    Vec<Rational> c(dt + 1);
    for (Eigen::Index b = 0; b <= dt; ++b) {
      Rational acc(0), pw(1);
      for (Eigen::Index a = ds; a >= 0; --a) {
        acc += H(a, b) * pw;
        pw *= w;
      }
      c(b) = acc;
    }
    return RatForm::from_coeffs(std::move(c));
  };
  const RatForm f1 = specialize(H1), f2 = specialize(H2);
  // A zero specialization happens when the pair behind H shares the root
  // s = (w, 1); the formal Sylvester determinant has a zero row block.
  if (f1.is_zero() || f2.is_zero()) return Rational(0);
  return resultant(f1, f2);
}

// Res_t for a pair of bidegree (3,3) forms: homogeneous of degree 18 in s,
// recovered exactly from 19 rational samples.
RatForm eliminant(const RatMat& H1, const RatMat& H2) {
  std::vector<Rational> xs, ys;
  xs.reserve(19);
  ys.reserve(19);
  for (int w = -9; w <= 9; ++w) {
    xs.emplace_back(w);
    ys.push_back(eliminant_sample(H1, H2, Rational(w)));
  }
  return interpolate_form(xs, ys, 18);
}

// Each root of p_k contributes a full spurious t-line to the (h_kj, h_kl)
// eliminant; p_k^3 divides it exactly.
std::optional<RatForm> strip_cube(RatForm E, const RatForm& pk) {
  if (E.is_zero()) return std::nullopt;
  for (int r = 0; r < 3; ++r) {
    auto q = divide_exact(E, pk);
    if (!q) return std::nullopt;
    E = *q;
  }
  if (E.degree() != 6 || E.is_zero()) return std::nullopt;
  return E;
}

struct Param {
  CD x;            // affine value u/v when finite
  bool inf;        // the point [1:0]
  bool real;
};

Eigen::Vector3cd image_of(const JetCurve& C, const Param& t) {
  Eigen::Vector3cd y;
  for (int j = 0; j < 3; ++j) {
    auto f = to_double_form(C.p[static_cast<size_t>(j)]);
    y(j) = t.inf ? CD(f.coeff(0)) : f.eval(t.x, CD(1.0));
  }
  const double n = y.norm();
  if (n == 0.0)
    fail(ErrorKind::NumericFailure, "curve image vanished at a parameter");
  return y / n;
}

// Projective distance: norm of the wedge of unit representatives.
double proj_dist(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) {
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      s += std::norm(a(i) * b(j) - a(j) * b(i));
  return std::sqrt(s);
}

}  // namespace

RatForm node_parameter_sextic(const JetCurve& C) {
  validate(C);
  if (C.n != 3)
    fail(ErrorKind::InvalidInput, "node elimination requires n = 3");
  RatMat coef(3, 5);
  for (Eigen::Index j = 0; j < 3; ++j)
    for (Eigen::Index k = 0; k < 5; ++k)
      coef(j, k) = C.p[static_cast<size_t>(j)].coeff(k);
  if (rank_exact(coef) < 3)
    fail(ErrorKind::NonGenericCurve,
         "components are linearly dependent: curve spans a line");

  const RatMat H12 = divide_diagonal(cross_numerator(C.p[0], C.p[1]));
  const RatMat H13 = divide_diagonal(cross_numerator(C.p[0], C.p[2]));
  const RatMat H23 = divide_diagonal(cross_numerator(C.p[1], C.p[2]));

  std::vector<RatForm> candidates;
  if (auto e = strip_cube(eliminant(H12, H13), C.p[0]))
    candidates.push_back(*e);
  if (candidates.empty() || !is_squarefree(candidates.front())) {
    if (auto e = strip_cube(eliminant(H12, H23), C.p[1]))
      candidates.push_back(*e);
    if (auto e = strip_cube(eliminant(H13, H23), C.p[2]))
      candidates.push_back(*e);
  }
  if (candidates.empty())
    fail(ErrorKind::NonGenericCurve,
         "node eliminant does not reduce to a sextic");
  RatForm sext = candidates.front();
  for (size_t i = 1; i < candidates.size(); ++i)
    sext = bf_gcd(sext, candidates[i]);
  if (sext.degree() != 6)
    fail(ErrorKind::NonGenericCurve,
         "node eliminant does not reduce to a sextic");
  if (!is_squarefree(sext))
    fail(ErrorKind::NonGenericCurve,
         "repeated node parameters: curve has a non-nodal singularity");
  return monic_normalized(sext);
}

std::vector<RatVec> divisor_pencil(const JetCurve& C, const RatForm& q) {
  validate_shape(C);
  if (q.degree() != 2 || q.is_zero())
    fail(ErrorKind::InvalidInput, "divisor candidate must be a quadratic");
  const int n = C.n;
  const Eigen::Index rows = 2 * n - 1;      // coefficients of degree 2n-2
  const Eigen::Index gdim = 2 * n - 3;      // quotient g of degree 2n-4
  RatMat M = RatMat::Constant(rows, n + gdim, Rational(0));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index r = 0; r < rows; ++r)
      M(r, j) = C.p[static_cast<size_t>(j)].coeff(r);
  for (Eigen::Index m = 0; m < gdim; ++m)
    for (Eigen::Index k = 0; k <= 2; ++k) M(m + k, n + m) = -q.coeff(k);
  auto ker = kernel_exact(M);
  if (ker.empty()) return {};
  RatMat proj(static_cast<Eigen::Index>(ker.size()), n);
  for (size_t i = 0; i < ker.size(); ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      proj(static_cast<Eigen::Index>(i), j) = ker[i](j);
  rref_exact(proj);
  std::vector<RatVec> basis;
  for (Eigen::Index r = 0; r < proj.rows(); ++r) {
    bool nonzero = false;
    for (Eigen::Index j = 0; j < n; ++j)
      if (proj(r, j) != 0) nonzero = true;
    if (nonzero) basis.push_back(proj.row(r).transpose());
  }
  return basis;
}

SecantReport nodes_exact_n3(const JetCurve& C) {
  validate(C);
  if (C.n != 3)
    fail(ErrorKind::InvalidInput, "exact node search requires n = 3");
  if (jet_det(C) == 0)
    fail(ErrorKind::NonGenericCurve,
         "unbalanced curve: singular locus is not three simple nodes");

  const RatForm sext = node_parameter_sextic(C);
  auto roots = complex_roots(sext);
  if (roots.size() != 6)
    fail(ErrorKind::NonGenericCurve, "expected six node parameters");

  std::vector<Param> params;
  for (const auto& r : roots) {
    Param t;
    t.inf = r.at_infinity;
    t.x = CD(r.re, r.im);
    t.real = r.at_infinity || r.im == 0.0;
    params.push_back(t);
  }

  // Pair the six parameters by image proximity in P^2.
  std::vector<Eigen::Vector3cd> images;
  for (const auto& t : params) images.push_back(image_of(C, t));
  std::vector<std::pair<int, int>> pairs;
  std::vector<bool> used(6, false);
  double worst_match = 0.0, best_cross = 1e9;
  for (int round = 0; round < 3; ++round) {
    double best = 1e9;
    int bi = -1, bj = -1;
    for (int i = 0; i < 6; ++i) {
      if (used[i]) continue;
      for (int j = i + 1; j < 6; ++j) {
        if (used[j]) continue;
        const double d = proj_dist(images[static_cast<size_t>(i)],
                                   images[static_cast<size_t>(j)]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    pairs.emplace_back(bi, bj);
    used[static_cast<size_t>(bi)] = used[static_cast<size_t>(bj)] = true;
    worst_match = std::max(worst_match, best);
  }
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      bool matched = false;
      for (auto& [a, b] : pairs)
        if (a == i && b == j) matched = true;
      if (!matched)
        best_cross = std::min(best_cross,
                              proj_dist(images[static_cast<size_t>(i)],
                                        images[static_cast<size_t>(j)]));
    }
  if (worst_match > 1e-6 ||
      best_cross < 10.0 * std::max(worst_match, 1e-8))
    fail(ErrorKind::NumericFailure,
         "node pairing margins too thin; images nearly collide");

  SecantReport rep;
  for (auto& [i, j] : pairs) {
    const Param& s = params[static_cast<size_t>(i)];
    const Param& t = params[static_cast<size_t>(j)];
    Secant sec;
    sec.multiplicity = 1;

    // Monic numeric quadratic with roots {s, t}.
    Vec<CD> qc(3);
    if (s.inf || t.inf) {
      const Param& fin = s.inf ? t : s;
      qc << CD(0), CD(1), -fin.x;  // v * (u - x v)
    } else {
      qc << CD(1), -(s.x + t.x), s.x * t.x;
    }
    sec.divisor.approx = BinaryForm<CD>::from_coeffs(qc);

    // Exact candidate: rationalize the monic coefficients, then verify by
    // exact division of the sextic and the exact pencil dimension.
    bool exact_ok = false;
    if (std::abs(qc(1).imag()) < 1e-9 && std::abs(qc(2).imag()) < 1e-9) {
      auto r1 = rationalize(qc(1).real());
      auto r2 = rationalize(qc(2).real());
      if (r1 && r2) {
        Vec<Rational> qe(3);
        if (s.inf || t.inf)
          qe << Rational(0), Rational(1), *r2;
        else
          qe << Rational(1), *r1, *r2;
        RatForm q = RatForm::from_coeffs(qe);
        if (divide_exact(sext, q).has_value()) {
          auto pencil = divisor_pencil(C, q);
          if (pencil.size() == 2) {
            sec.divisor.has_exact = true;
            sec.divisor.exact = monic_normalized(q);
            sec.lambda_a_exact = pencil[0];
            sec.lambda_b_exact = pencil[1];
            exact_ok = true;
          }
        }
      }
    }

    if (exact_ok) {
      sec.lambda_a = Eigen::VectorXcd(3);
      sec.lambda_b = Eigen::VectorXcd(3);
      for (int k = 0; k < 3; ++k) {
        sec.lambda_a(k) = CD(to_double((*sec.lambda_a_exact)(k)));
        sec.lambda_b(k) = CD(to_double((*sec.lambda_b_exact)(k)));
      }
      sec.is_real = true;
    } else {
      // Pencil of lines through the (possibly complex) image point: the
      // formal (unconjugated) null space of y^T.
      const Eigen::Vector3cd y = images[static_cast<size_t>(i)];
      Eigen::MatrixXcd yt(1, 3);
      yt << y(0), y(1), y(2);
      Eigen::FullPivLU<Eigen::MatrixXcd> lu(yt);
      const Eigen::MatrixXcd K = lu.kernel();
      if (K.cols() != 2)
        fail(ErrorKind::NumericFailure, "pencil extraction failed");
      // Real iff the divisor is conjugation-invariant.
      sec.is_real = std::abs(qc(1).imag()) < 1e-9 &&
                    std::abs(qc(2).imag()) < 1e-9;
      if (sec.is_real) {
        // The image point is projectively real even when its parameters are
        // not; hand out a real basis of the pencil through it.
        Eigen::MatrixXd rows(4, 3);
        rows.row(0) = K.col(0).real().transpose();
        rows.row(1) = K.col(0).imag().transpose();
        rows.row(2) = K.col(1).real().transpose();
        rows.row(3) = K.col(1).imag().transpose();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
        sec.lambda_a = svd.matrixV().col(0).cast<CD>();
        sec.lambda_b = svd.matrixV().col(1).cast<CD>();
      } else {
        sec.lambda_a = K.col(0).normalized();
        sec.lambda_b = K.col(1).normalized();
      }
    }

    // Divisor points.
    auto mk_point = [](const Param& t) {
      ComplexPoint cp;
      cp.at_infinity = t.inf;
      if (!t.inf) {
        cp.re = t.x.real();
        cp.im = t.x.imag();
      }
      return cp;
    };
    sec.divisor.points = {mk_point(s), mk_point(t)};
    rep.secants.push_back(std::move(sec));
  }

  // Deterministic order: by rounded divisor coefficients.
  auto key = [](const Secant& s) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.8f,%.8f,%.8f,%.8f,%.8f,%.8f",
                  s.divisor.approx.coeff(0).real(),
                  s.divisor.approx.coeff(0).imag(),
                  s.divisor.approx.coeff(1).real(),
                  s.divisor.approx.coeff(1).imag(),
                  s.divisor.approx.coeff(2).real(),
                  s.divisor.approx.coeff(2).imag());
    return std::string(buf);
  };
  std::sort(rep.secants.begin(), rep.secants.end(),
            [&](const Secant& a, const Secant& b) { return key(a) < key(b); });

  rep.total_with_multiplicity = 3;
  rep.certificate_ok = true;
  return rep;
}

}  // namespace trisign
