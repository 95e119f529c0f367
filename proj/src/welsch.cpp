#include "trisign/welsch.hpp"

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <cmath>
#include <list>

#include "trisign/errors.hpp"
#include "trisign/exact_linalg.hpp"

namespace trisign {

SplittingSections splitting_sections(const JetCurve& C) {
  validate(C);
  if (jet_det(C) == 0)
    fail(ErrorKind::NotBalanced, "normal bundle does not split evenly");
  const int n = C.n;
  // Unknowns: the 3 coefficients of each q_j.  Constraint rows: the 2n+1
  // coefficients of sum p_j q_j.
  RatMat M = RatMat::Constant(2 * n + 1, 3 * n, Rational(0));
  for (int j = 0; j < n; ++j) {
    const auto& a = C.p[static_cast<size_t>(j)].coeffs();
    for (int k = 0; k <= 2; ++k)
      for (Eigen::Index m = 0; m <= 2 * n - 2; ++m)
        M(m + k, 3 * j + k) = a(m);
  }
  auto ker = kernel_exact(M);
  if (static_cast<int>(ker.size()) != n - 1)
    fail(ErrorKind::NotBalanced,
         "splitting sections: syzygy space has dimension " +
             std::to_string(ker.size()) + ", expected " +
             std::to_string(n - 1));
  SplittingSections S;
  S.n = n;
  for (const auto& w : ker) {
    std::vector<RatForm> tup;
    tup.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      Vec<Rational> c(3);
      c << w(3 * j), w(3 * j + 1), w(3 * j + 2);
      tup.push_back(RatForm::from_coeffs(std::move(c)));
    }
    S.sections.push_back(std::move(tup));
  }
  return S;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Evaluate the sections at (cos t, sin t) and orthonormalize in order,
// then complete to a rotation.  No column pivoting: continuity in t
// matters more than conditioning here.
MatrixXd frame_at(const std::vector<std::vector<BinaryForm<double>>>& q,
                  double t) {
  const int n = static_cast<int>(q.size()) + 1;
  const double c = std::cos(t), s = std::sin(t);
  MatrixXd E(n, n);
  for (int i = 0; i < n - 1; ++i) {
    VectorXd v(n);
    for (int j = 0; j < n; ++j)
      v(j) = q[static_cast<size_t>(i)][static_cast<size_t>(j)].eval(c, s);
    for (int k = 0; k < i; ++k) v -= E.col(k).dot(v) * E.col(k);
    const double nv = v.norm();
    if (nv < 1e-10)
      fail(ErrorKind::NumericFailure,
           "frame degenerates at a sample parameter");
    E.col(i) = v / nv;
  }
  if (n == 2) {
    E(0, 1) = -E(1, 0);
    E(1, 1) = E(0, 0);
  } else {
    const Eigen::Vector3d a = E.col(0).head<3>();
    const Eigen::Vector3d b = E.col(1).head<3>();
    E.col(2) = a.cross(b);
  }
  return E;
}

double rotation_gap(const MatrixXd& a, const MatrixXd& b) {
  // Angle of a^T b, valid for SO(2) and SO(3).
  const MatrixXd r = a.transpose() * b;
  if (r.rows() == 2) return std::atan2(r(1, 0), r(0, 0));
  double tr = (r.trace() - 1.0) / 2.0;
  tr = std::min(1.0, std::max(-1.0, tr));
  return std::acos(tr);
}

}  // namespace

int welschinger_weight(const JetCurve& C, const SplittingSections& S,
                       WelschingerDiagnostics* diag, int initial_samples) {
  if (C.n >= 4)
    fail(ErrorKind::Unsupported,
         "weight lift implemented for n in {2, 3} only");
  if (initial_samples < 8) initial_samples = 8;
  const int n = C.n;

  std::vector<std::vector<BinaryForm<double>>> q;
  for (const auto& tup : S.sections) {
    std::vector<BinaryForm<double>> row;
    for (const auto& f : tup) row.push_back(to_double_form(f));
    q.push_back(std::move(row));
  }
  // Constant sign normalization: first nonzero coordinate of each section
  // positive at t = 0.  A constant flip translates the loop and keeps its
  // homotopy class.
  for (auto& row : q) {
    double lead = 0;
    for (auto& f : row) {
      const double val = f.eval(1.0, 0.0);
      if (std::abs(val) > 1e-12) {
        lead = val;
        break;
      }
    }
    if (lead < 0)
      for (auto& f : row) f = f * -1.0;
  }

  const double pi = std::acos(-1.0);
  std::list<std::pair<double, MatrixXd>> path;
  for (int i = 0; i <= initial_samples; ++i) {
    const double t = pi * i / initial_samples;
    path.emplace_back(t, frame_at(q, t));
  }
  // Bisect until consecutive rotations sit well inside the unique-lift
  // radius pi/2.
  const double max_gap = 1.2;
  for (auto it = path.begin(); std::next(it) != path.end();) {
    auto nx = std::next(it);
    if (std::abs(rotation_gap(it->second, nx->second)) > max_gap) {
      if (nx->first - it->first < 1e-12)
        fail(ErrorKind::NumericFailure, "frame path refinement stalled");
      const double mid = (it->first + nx->first) / 2.0;
      path.emplace(nx, mid, frame_at(q, mid));
    } else {
      ++it;
    }
  }

  double max_step = 0.0;
  int result;
  if (n == 2) {
    double total = 0.0;
    for (auto it = path.begin(); std::next(it) != path.end(); ++it) {
      const double d = rotation_gap(it->second, std::next(it)->second);
      total += d;
      max_step = std::max(max_step, std::abs(d));
    }
    const int winding =
        static_cast<int>(std::lround(total / (2.0 * pi)));
    if (std::abs(total - 2.0 * pi * winding) > 0.5)
      fail(ErrorKind::NumericFailure, "winding total far from a multiple");
    if (diag) diag->winding = winding;
    result = (winding % 2 == 0) ? 1 : -1;
  } else {
    Eigen::Quaterniond lift(Eigen::Matrix3d(path.front().second));
    const Eigen::Quaterniond start = lift;
    for (auto it = std::next(path.begin()); it != path.end(); ++it) {
      Eigen::Quaterniond cand(Eigen::Matrix3d(it->second));
      if (cand.dot(lift) < 0) cand.coeffs() *= -1.0;
      max_step =
          std::max(max_step, 2.0 * std::acos(std::min(
                                 1.0, std::abs(cand.dot(lift)))));
      lift = cand;
    }
    const double closure = lift.dot(start);
    if (std::abs(closure) < 0.9)
      fail(ErrorKind::NumericFailure, "lift endpoint is not near +-start");
    if (diag)
      diag->end_quaternion = {lift.w(), lift.x(), lift.y(), lift.z()};
    result = closure > 0 ? 1 : -1;
  }

  if (diag) {
    diag->thetas.clear();
    for (auto& [t, m] : path) diag->thetas.push_back(t);
    diag->max_step_angle = max_step;
  }
  return result;
}

int welschinger_weight(const JetCurve& C, WelschingerDiagnostics* diag,
                       int initial_samples) {
  if (C.n >= 4)
    fail(ErrorKind::Unsupported,
         "weight lift implemented for n in {2, 3} only");
  return welschinger_weight(C, splitting_sections(C), diag, initial_samples);
}

}  // namespace trisign
