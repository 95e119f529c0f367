#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "trisign/errors.hpp"
#include "trisign/exact_linalg.hpp"
#include "trisign/segre.hpp"

namespace trisign {

namespace {

using CD = std::complex<double>;

void reject_hyperplane_curve(const JetCurve& C) {
  RatMat coef(C.n, 2 * C.n - 1);
  for (Eigen::Index j = 0; j < C.n; ++j)
    for (Eigen::Index k = 0; k < 2 * C.n - 1; ++k)
      coef(j, k) = C.p[static_cast<size_t>(j)].coeff(k);
  if (rank_exact(coef) < C.n)
    fail(ErrorKind::NonGenericCurve,
         "components are linearly dependent: residual pencils degenerate");
}

template <typename S>
S discriminant2(const BinaryForm<S>& q) {
  return q.coeff(1) * q.coeff(1) - S(4) * q.coeff(0) * q.coeff(2);
}

// Real combination lambda . p as a plain coefficient vector.
Eigen::VectorXd real_cut(const JetCurve& C, const Eigen::VectorXcd& lambda,
                         const char* which) {
  const int n = C.n;
  if (lambda.size() != n)
    fail(ErrorKind::InvalidSecant, "covector has the wrong dimension");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * n - 1);
  for (int j = 0; j < n; ++j) {
    if (std::abs(lambda(j).imag()) > 1e-6 * (1.0 + std::abs(lambda(j))))
      fail(ErrorKind::InvalidSecant,
           std::string("real secant carries a non-real covector ") + which);
    for (Eigen::Index k = 0; k <= 2 * n - 2; ++k)
      out(k) += lambda(j).real() *
                to_double(C.p[static_cast<size_t>(j)].coeff(k));
  }
  return out;
}

}  // namespace

ResidualPencil residual_pencil(const JetCurve& C, const Secant& M) {
  validate_shape(C);
  reject_hyperplane_curve(C);
  const int n = C.n;
  if (!M.lambda_a_exact || !M.lambda_b_exact || !M.divisor.has_exact)
    fail(ErrorKind::InvalidSecant,
         "exact residual pencil needs rational covectors and divisor");
  const int k = verify_secant(C, M);
  if (k > 2 * n - 4)
    fail(ErrorKind::DegenerateOnWall,
         "secant divisor degree exceeds 2n-4: long secant");
  if (M.divisor.exact.degree() != 2 * n - 4)
    fail(ErrorKind::InvalidSecant, "divisor has the wrong degree");
  RatForm A(2 * n - 2), B(2 * n - 2);
  for (int j = 0; j < n; ++j) {
    A = A + (*M.lambda_a_exact)(j)*C.p[static_cast<size_t>(j)];
    B = B + (*M.lambda_b_exact)(j)*C.p[static_cast<size_t>(j)];
  }
  auto q0 = divide_exact(A, M.divisor.exact);
  auto q1 = divide_exact(B, M.divisor.exact);
  if (!q0 || !q1)
    fail(ErrorKind::InvalidSecant, "divisor does not divide the cut pencil");
  return ResidualPencil{*q0, *q1};
}

ResidualPencilNum residual_pencil_numeric(const JetCurve& C, const Secant& M) {
  validate_shape(C);
  reject_hyperplane_curve(C);
  const int n = C.n;
  if (!M.is_real)
    fail(ErrorKind::InvalidSecant,
         "numeric residual pencil is defined for real secants");
  const Eigen::VectorXd A = real_cut(C, M.lambda_a, "lambda_a");
  const Eigen::VectorXd B = real_cut(C, M.lambda_b, "lambda_b");

  if (M.divisor.approx.coeffs().size() != 2 * n - 3)
    fail(ErrorKind::InvalidSecant, "divisor has the wrong degree");
  Eigen::VectorXd f(2 * n - 3);
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const CD c = M.divisor.approx.coeff(i);
    if (std::abs(c.imag()) > 1e-6 * (1.0 + std::abs(c)))
      fail(ErrorKind::InvalidSecant, "real secant carries a non-real divisor");
    f(i) = c.real();
  }

  // Least-squares division: columns of the convolution matrix are the
  // divisor shifted through the three quotient slots.
  Eigen::MatrixXd conv = Eigen::MatrixXd::Zero(2 * n - 1, 3);
  for (int j = 0; j < 3; ++j)
    for (Eigen::Index i = 0; i < f.size(); ++i) conv(i + j, j) = f(i);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(conv);
  const Eigen::VectorXd c0 = qr.solve(A);
  const Eigen::VectorXd c1 = qr.solve(B);
  const double sA = std::max(1.0, A.lpNorm<Eigen::Infinity>());
  const double sB = std::max(1.0, B.lpNorm<Eigen::Infinity>());
  if ((conv * c0 - A).lpNorm<Eigen::Infinity>() > 1e-6 * sA ||
      (conv * c1 - B).lpNorm<Eigen::Infinity>() > 1e-6 * sB)
    fail(ErrorKind::InvalidSecant,
         "divisor does not divide the cut pencil within tolerance");
  ResidualPencilNum P;
  P.q0 = BinaryForm<double>::from_coeffs(c0);
  P.q1 = BinaryForm<double>::from_coeffs(c1);

  // A residual base point means the secant divisor was not the full cut.
  const double r = P.q0.coeff(0) * P.q0.coeff(0) * P.q1.coeff(2) * P.q1.coeff(2) -
                   P.q0.coeff(0) * P.q0.coeff(1) * P.q1.coeff(1) * P.q1.coeff(2) +
                   P.q0.coeff(0) * P.q0.coeff(2) *
                       (P.q1.coeff(1) * P.q1.coeff(1) -
                        2.0 * P.q1.coeff(0) * P.q1.coeff(2)) -
                   P.q0.coeff(1) * P.q0.coeff(2) * P.q1.coeff(0) * P.q1.coeff(1) +
                   P.q0.coeff(1) * P.q0.coeff(1) * P.q1.coeff(0) * P.q1.coeff(2) +
                   P.q0.coeff(2) * P.q0.coeff(2) * P.q1.coeff(0) * P.q1.coeff(0);
  const double s0 = std::max({std::abs(P.q0.coeff(0)), std::abs(P.q0.coeff(1)),
                              std::abs(P.q0.coeff(2))});
  const double s1 = std::max({std::abs(P.q1.coeff(0)), std::abs(P.q1.coeff(1)),
                              std::abs(P.q1.coeff(2))});
  if (s0 == 0 || s1 == 0 || std::abs(r) < 1e-8 * s0 * s0 * s1 * s1)
    fail(ErrorKind::DegenerateOnWall,
         "residual pencil has a base point: long secant");
  return P;
}

SegrePoints segre_points(const ResidualPencil& P) {
  RatForm jac =
      derivative_u(P.q0) * derivative_v(P.q1) - derivative_v(P.q0) * derivative_u(P.q1);
  if (jac.is_zero())
    fail(ErrorKind::InvalidInput, "pencil members are proportional");
  SegrePoints S;
  S.jacobian = jac;
  S.disc_sign = sign_of(discriminant2(jac));
  return S;
}

SegrePointsNum segre_points_numeric(const ResidualPencilNum& P) {
  BinaryForm<double> jac =
      derivative_u(P.q0) * derivative_v(P.q1) - derivative_v(P.q0) * derivative_u(P.q1);
  const double s = std::max({std::abs(jac.coeff(0)), std::abs(jac.coeff(1)),
                             std::abs(jac.coeff(2))});
  if (s == 0) fail(ErrorKind::InvalidInput, "pencil members are proportional");
  const double d = discriminant2(jac);
  SegrePointsNum S;
  S.jacobian = jac;
  S.disc_sign = std::abs(d) < 1e-9 * s * s ? 0 : (d > 0 ? 1 : -1);
  return S;
}

int segre_weight(const ResidualPencil& P) {
  const SegrePoints S = segre_points(P);
  if (S.disc_sign == 0)
    fail(ErrorKind::DegenerateOnWall, "coincident Segre points");
  return S.disc_sign;
}

int segre_weight(const JetCurve& C, const Secant& M) {
  if (M.lambda_a_exact && M.lambda_b_exact && M.divisor.has_exact)
    return segre_weight(residual_pencil(C, M));
  const SegrePointsNum S = segre_points_numeric(residual_pencil_numeric(C, M));
  if (S.disc_sign == 0)
    fail(ErrorKind::NumericFailure,
         "Segre point discriminant is numerically borderline");
  return S.disc_sign;
}

bool secant_spans_deficient(const JetCurve& C, const SecantReport& report) {
  const int n = C.n;
  if (n <= 3) return false;
  std::vector<BinaryForm<double>> pd;
  for (const auto& p : C.p) pd.push_back(to_double_form(p));
  for (const auto& s : report.secants) {
    const auto& pts = s.divisor.points;
    Eigen::MatrixXcd M(n, static_cast<Eigen::Index>(pts.size()));
    for (size_t i = 0; i < pts.size(); ++i) {
      for (int j = 0; j < n; ++j)
        M(j, static_cast<Eigen::Index>(i)) =
            pts[i].at_infinity ? CD(pd[static_cast<size_t>(j)].coeff(0))
                               : pd[static_cast<size_t>(j)].eval(pts[i].value(), CD(1));
      const double nr = M.col(static_cast<Eigen::Index>(i)).norm();
      if (nr > 0) M.col(static_cast<Eigen::Index>(i)) /= nr;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-8 * sv(0)) ++rank;
    if (rank <= n - 3) return true;
  }
  return false;
}

int segre_index(const JetCurve& C, const SecantReport& report) {
  validate(C);
  if (jet_det(C) == 0)
    fail(ErrorKind::DegenerateOnWall,
         "det A_C = 0: Segre index undefined on the wall");
  if (!report.certificate_ok)
    fail(ErrorKind::IncompleteEnumeration,
         "secant census is not certified complete");
  if (secant_spans_deficient(C, report))
    fail(ErrorKind::NonGenericCurve,
         "a secant divisor spans a deficient plane; index not extended");
  int s = 1;
  for (const auto& M : report.secants) {
    if (!M.is_real) continue;  // conjugate pairs contribute +1
    if (M.multiplicity % 2 == 0) continue;
    s *= segre_weight(C, M);
  }
  return s;
}

namespace {

struct NodeClass {
  enum Kind { Chord, Solitary, Imag } kind;
  double a1 = 0, a2 = 0;  // chord endpoint angles on the parameter circle
  int half1 = 0, half2 = 0;  // half-plane signs for imaginary nodes
};

double circle_angle(const ComplexPoint& p) {
  if (p.at_infinity) return M_PI;
  return 2.0 * std::atan(p.re);
}

NodeClass classify_node(const Secant& s) {
  if (s.divisor.points.size() != 2)
    fail(ErrorKind::InvalidSecant, "node has the wrong divisor degree");
  const ComplexPoint& t1 = s.divisor.points[0];
  const ComplexPoint& t2 = s.divisor.points[1];
  auto imag_size = [](const ComplexPoint& p) {
    return p.at_infinity ? 0.0 : std::abs(p.im) / (1.0 + std::abs(p.re));
  };
  NodeClass out;
  if (s.is_real) {
    bool real_pair;
    if (s.divisor.has_exact) {
      const RatForm& fD = s.divisor.exact;
      if (fD.coeff(0) == 0) {
        // [1:0] lies on the divisor; the residual factor is linear, so the
        // other parameter is real too.
        if (fD.coeff(1) == 0)
          fail(ErrorKind::DegenerateOnWall, "node parameters collide");
        real_pair = true;
      } else {
        const int cnt = sturm_real_root_count(fD);
        if (cnt == 1)
          fail(ErrorKind::DegenerateOnWall, "node parameters collide");
        real_pair = cnt == 2;
      }
    } else {
      const double i1 = imag_size(t1), i2 = imag_size(t2);
      if (std::max(i1, i2) < 1e-7)
        real_pair = true;
      else if (std::min(i1, i2) > 1e-7)
        real_pair = false;
      else
        fail(ErrorKind::NumericFailure,
             "node parameter reality is numerically ambiguous");
    }
    if (real_pair) {
      out.kind = NodeClass::Chord;
      out.a1 = circle_angle(t1);
      out.a2 = circle_angle(t2);
    } else {
      out.kind = NodeClass::Solitary;
    }
    return out;
  }
  // Imaginary node: both parameters must sit strictly off the circle.
  if (t1.at_infinity || t2.at_infinity || imag_size(t1) < 1e-9 ||
      imag_size(t2) < 1e-9)
    fail(ErrorKind::NumericFailure,
         "imaginary node with a near-real parameter");
  out.kind = NodeClass::Imag;
  out.half1 = t1.im > 0 ? 1 : -1;
  out.half2 = t2.im > 0 ? 1 : -1;
  return out;
}

// Strictly-inside test for the open counterclockwise arc (a, b).
bool in_arc(double a, double b, double x) {
  auto wrap = [](double t) {
    while (t < 0) t += 2.0 * M_PI;
    while (t >= 2.0 * M_PI) t -= 2.0 * M_PI;
    return t;
  };
  const double span = wrap(b - a);
  const double off = wrap(x - a);
  return off > 0 && off < span;
}

bool interlaced(const NodeClass& c, const NodeClass& d) {
  const bool i1 = in_arc(c.a1, c.a2, d.a1);
  const bool i2 = in_arc(c.a1, c.a2, d.a2);
  return i1 != i2;
}

}  // namespace

int chord_diagram_index_n3(const JetCurve& C, const SecantReport& report) {
  validate(C);
  if (C.n != 3)
    fail(ErrorKind::InvalidInput, "chord diagrams are defined for n = 3");
  if (!report.certificate_ok)
    fail(ErrorKind::IncompleteEnumeration,
         "secant census is not certified complete");
  if (report.secants.size() != 3)
    fail(ErrorKind::NonGenericCurve, "nodes are not simple");
  for (const auto& s : report.secants)
    if (s.multiplicity != 1)
      fail(ErrorKind::NonGenericCurve, "nodes are not simple");

  std::vector<NodeClass> chords;
  std::vector<size_t> imag_nodes;
  std::vector<NodeClass> cls;
  for (size_t i = 0; i < report.secants.size(); ++i) {
    cls.push_back(classify_node(report.secants[i]));
    if (cls.back().kind == NodeClass::Chord)
      chords.push_back(cls.back());
    else if (cls.back().kind == NodeClass::Imag)
      imag_nodes.push_back(i);
  }

  // Chord endpoints must be separated for the cyclic order to be certain.
  std::vector<double> endpoints;
  for (const auto& c : chords) {
    endpoints.push_back(c.a1);
    endpoints.push_back(c.a2);
  }
  for (size_t i = 0; i < endpoints.size(); ++i)
    for (size_t j = i + 1; j < endpoints.size(); ++j) {
      double d = std::abs(endpoints[i] - endpoints[j]);
      d = std::min(d, 2.0 * M_PI - d);
      if (d < 1e-7)
        fail(ErrorKind::NumericFailure,
             "chord endpoints are numerically too close to order");
    }

  int interlace_count = 0;
  for (size_t i = 0; i < chords.size(); ++i)
    for (size_t j = i + 1; j < chords.size(); ++j)
      if (interlaced(chords[i], chords[j])) ++interlace_count;

  // Imaginary nodes come in conjugate pairs; a pair is essential when one
  // member keeps both parameters in the same half-plane.
  if (imag_nodes.size() % 2 != 0)
    fail(ErrorKind::NumericFailure, "imaginary nodes fail to pair up");
  int essential_count = 0;
  std::vector<bool> used(imag_nodes.size(), false);
  for (size_t i = 0; i < imag_nodes.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    // find the conjugate partner by matching conjugated divisors
    // Divisor normalizations differ between censuses; pin the phase of both
    // sides by the largest coefficient before comparing.
    auto canon = [](Eigen::VectorXcd v) {
      double m = 0;
      for (Eigen::Index t = 0; t < v.size(); ++t)
        m = std::max(m, std::abs(v(t)));
      for (Eigen::Index t = 0; t < v.size(); ++t)
        if (std::abs(v(t)) >= m * (1.0 - 1e-9)) {
          v /= v(t);
          break;
        }
      return v;
    };
    const Eigen::VectorXcd ci =
        canon(report.secants[imag_nodes[i]].divisor.approx.coeffs().conjugate());
    bool paired = false;
    for (size_t j = i + 1; j < imag_nodes.size(); ++j) {
      if (used[j]) continue;
      const Eigen::VectorXcd cj =
          canon(report.secants[imag_nodes[j]].divisor.approx.coeffs());
      if ((ci - cj).lpNorm<Eigen::Infinity>() < 1e-6) {
        used[j] = true;
        paired = true;
        break;
      }
    }
    if (!paired)
      fail(ErrorKind::NumericFailure, "imaginary nodes fail to pair up");
    if (cls[imag_nodes[i]].half1 == cls[imag_nodes[i]].half2)
      ++essential_count;
  }

  return (interlace_count + essential_count) % 2 == 0 ? 1 : -1;
}

}  // namespace trisign
