#include "trisign/lines.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

#include "trisign/exact_linalg.hpp"

namespace trisign {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [-1.25, 1.25), bit-exact across platforms.
double start_coord(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.5 - 1.25;
}

template <typename T>
T from_rational(const Rational& r) {
  return to_real<T>(r);
}
template <>
Rational from_rational<Rational>(const Rational& r) {
  return r;
}

// d/dx_k as a term list of degree one less.
Hypersurface partial_derivative(const Hypersurface& X, int k) {
  Hypersurface D;
  D.n = X.n;
  for (const auto& t : X.terms) {
    const int e = t.exps[static_cast<size_t>(k)];
    if (e == 0) continue;
    HypersurfaceTerm s;
    s.exps = t.exps;
    s.exps[static_cast<size_t>(k)] -= 1;
    s.c = t.c * e;
    D.terms.push_back(std::move(s));
  }
  return D;
}

// Coefficients of F(u * row0 + v * row1) in the basis u^d, ..., v^d, where d
// is the common degree of the terms.  The work buffer shape makes this the
// Newton hot loop: prod is grown one linear factor at a time.
template <typename T>
void restrict_into(const Hypersurface& X, const Mat<T>& rows, Vec<T>& out) {
  const Eigen::Index nv = rows.cols();
  out.setZero();
  std::vector<T> prod, next;
  prod.reserve(static_cast<size_t>(out.size()));
  next.reserve(static_cast<size_t>(out.size()));
  for (const auto& t : X.terms) {
    prod.assign(1, from_rational<T>(t.c));
    for (Eigen::Index k = 0; k < nv; ++k) {
      const int e = t.exps[static_cast<size_t>(k)];
      if (e == 0) continue;
      const T a = rows(0, k);
      const T b = rows(1, k);
      for (int q = 0; q < e; ++q) {
        next.assign(prod.size() + 1, T(0));
        for (size_t m = 0; m < prod.size(); ++m) {
          next[m] += prod[m] * a;
          next[m + 1] += prod[m] * b;
        }
        prod.swap(next);
      }
    }
    if (static_cast<Eigen::Index>(prod.size()) != out.size())
      fail(ErrorKind::InvalidInput, "inhomogeneous term list");
    for (size_t m = 0; m < prod.size(); ++m) out(static_cast<Eigen::Index>(m)) += prod[m];
  }
}

template <typename T>
BinaryForm<T> restrict_form(const Hypersurface& X, const Mat<T>& rows) {
  int deg = 0;
  if (!X.terms.empty())
    for (int e : X.terms.front().exps) deg += e;
  Vec<T> c(deg + 1);
  restrict_into<T>(X, rows, c);
  return BinaryForm<T>::from_coeffs(std::move(c));
}

// The square system for one chart: unknowns are the 2n non-pivot entries,
// equations the 2n coefficients of the restricted form.  The column of the
// Jacobian for entry (r, k) is the u- or v-shift of the restriction of
// dF/dx_{c_k}, since dF(u r0 + v r1)/d r_r(c_k) = (u or v) * (dF/dx_{c_k}).
template <typename T>
struct ChartSystem {
  const Hypersurface* X = nullptr;
  const std::vector<Hypersurface>* partials = nullptr;
  int n = 0;
  int pi = 0, pj = 0;           // 0-based pivot columns
  std::vector<int> free_cols;   // ascending, size n
  T cmax{};

  Mat<T> rows;   // 2 x (n+2) workspace
  Vec<T> fbuf;   // 2n
  Vec<T> gbuf;   // 2n - 1

  void init(const Hypersurface& hx, const std::vector<Hypersurface>& dps,
            int a, int b) {
    X = &hx;
    partials = &dps;
    n = hx.n;
    pi = a;
    pj = b;
    free_cols.clear();
    for (int k = 0; k < n + 2; ++k)
      if (k != a && k != b) free_cols.push_back(k);
    cmax = T(0);
    for (const auto& t : hx.terms) {
      T c = from_rational<T>(t.c);
      using std::abs;
      if (abs(c) > cmax) cmax = abs(c);
    }
    rows.resize(2, n + 2);
    fbuf.resize(2 * n);
    gbuf.resize(2 * n - 1);
  }

  void set_rows(const Vec<T>& q) {
    rows.setZero();
    rows(0, pi) = T(1);
    rows(1, pj) = T(1);
    for (int k = 0; k < n; ++k) {
      rows(0, free_cols[static_cast<size_t>(k)]) = q(2 * k);
      rows(1, free_cols[static_cast<size_t>(k)]) = q(2 * k + 1);
    }
  }

  Vec<T> value(const Vec<T>& q) {
    set_rows(q);
    restrict_into<T>(*X, rows, fbuf);
    return fbuf;
  }

  Mat<T> jacobian(const Vec<T>& q) {
    set_rows(q);
    Mat<T> J = Mat<T>::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
      restrict_into<T>((*partials)[static_cast<size_t>(free_cols[static_cast<size_t>(k)])],
                       rows, gbuf);
      for (Eigen::Index r = 0; r < 2 * n - 1; ++r) {
        J(r, 2 * k) = gbuf(r);       // u * g
        J(r + 1, 2 * k + 1) = gbuf(r);  // v * g
      }
    }
    return J;
  }

  T scale(const Vec<T>& q) const {
    using std::abs;
    T m = T(1);
    for (Eigen::Index t = 0; t < q.size(); ++t)
      if (abs(q(t)) > m) m = abs(q(t));
    T s = cmax;
    for (int d = 0; d < 2 * n - 1; ++d) s *= (T(1) + m);
    return s;
  }
};

template <typename T>
T inf_norm(const Vec<T>& v) {
  using std::abs;
  T m = T(0);
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (abs(v(k)) > m) m = abs(v(k));
  return m;
}

// Damped Newton; true when the residual reached target * scale.
bool newton_run(ChartSystem<double>& sys, Eigen::VectorXd& q, int max_iter,
                double target) {
  Eigen::VectorXd f = sys.value(q);
  double fn = inf_norm<double>(f);
  for (int it = 0; it < max_iter; ++it) {
    if (!std::isfinite(fn) || inf_norm<double>(q) > 50.0) return false;
    if (fn <= target * sys.scale(q)) return true;
    Eigen::MatrixXd J = sys.jacobian(q);
    Eigen::VectorXd step = J.partialPivLu().solve(-f);
    if (!step.allFinite()) return false;
    double lambda = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 7; ++bt) {
      Eigen::VectorXd qn = q + lambda * step;
      Eigen::VectorXd fnew = sys.value(qn);
      const double fnn = inf_norm<double>(fnew);
      if (std::isfinite(fnn) && fnn < (1.0 - 0.25 * lambda) * fn) {
        q = qn;
        f = fnew;
        fn = fnn;
        moved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!moved) return false;
  }
  return fn <= target * sys.scale(q);
}

Eigen::Index minor_count(int nv) { return Eigen::Index(nv) * (nv - 1) / 2; }

// 2x2 minors in lexicographic column-pair order.
Eigen::VectorXd minors_of(const Eigen::MatrixXd& rows) {
  const int nv = static_cast<int>(rows.cols());
  Eigen::VectorXd m(minor_count(nv));
  Eigen::Index t = 0;
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b)
      m(t++) = rows(0, a) * rows(1, b) - rows(0, b) * rows(1, a);
  return m;
}

RatVec minors_of_exact(const RatMat& rows) {
  const int nv = static_cast<int>(rows.cols());
  RatVec m(minor_count(nv));
  Eigen::Index t = 0;
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b)
      m(t++) = rows(0, a) * rows(1, b) - rows(0, b) * rows(1, a);
  return m;
}

// Chart of the largest minor, lexicographically first on ties; the reduced
// matrix then has identity there and every other minor in [-1, 1].
RealLine canonical_from_rows(const Eigen::MatrixXd& rows) {
  const int nv = static_cast<int>(rows.cols());
  const int n = nv - 2;
  int ba = -1, bb = -1;
  double best = 0;
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b) {
      const double m = std::abs(rows(0, a) * rows(1, b) - rows(0, b) * rows(1, a));
      if (m > best) {
        best = m;
        ba = a;
        bb = b;
      }
    }
  if (best < 1e-8)
    fail(ErrorKind::InvalidInput, "spanning rows are numerically dependent");
  Eigen::Matrix2d G;
  G << rows(0, ba), rows(0, bb), rows(1, ba), rows(1, bb);
  Eigen::MatrixXd R = G.inverse() * rows;
  R(0, ba) = 1;
  R(1, ba) = 0;
  R(0, bb) = 0;
  R(1, bb) = 1;

  RealLine L;
  L.chart = {ba + 1, bb + 1};
  L.params.resize(2, n);
  int k = 0;
  for (int c = 0; c < nv; ++c) {
    if (c == ba || c == bb) continue;
    L.params(0, k) = R(0, c);
    L.params(1, k) = R(1, c);
    ++k;
  }
  Eigen::VectorXd key = minors_of(R);
  const double mx = key.cwiseAbs().maxCoeff();
  for (Eigen::Index t = 0; t < key.size(); ++t) {
    if (std::abs(key(t)) >= 1e-7 * mx) {
      key /= key(t);
      break;
    }
  }
  L.plucker_key = key;
  return L;
}

RealLine canonical_from_rows_exact(const RatMat& rows) {
  const int nv = static_cast<int>(rows.cols());
  const int n = nv - 2;
  int ba = -1, bb = -1;
  Rational best(0);
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b) {
      Rational m = rows(0, a) * rows(1, b) - rows(0, b) * rows(1, a);
      if (m < 0) m = -m;
      if (m > best) {
        best = m;
        ba = a;
        bb = b;
      }
    }
  if (best == 0) fail(ErrorKind::InvalidInput, "spanning rows are dependent");
  const Rational det = rows(0, ba) * rows(1, bb) - rows(0, bb) * rows(1, ba);
  RatMat R(2, nv);
  for (int c = 0; c < nv; ++c) {
    // inverse of the 2x2 pivot block times the column
    R(0, c) = (rows(1, bb) * rows(0, c) - rows(0, bb) * rows(1, c)) / det;
    R(1, c) = (rows(0, ba) * rows(1, c) - rows(1, ba) * rows(0, c)) / det;
  }

  RealLine L;
  L.chart = {ba + 1, bb + 1};
  RatMat P(2, n);
  L.params.resize(2, n);
  int k = 0;
  for (int c = 0; c < nv; ++c) {
    if (c == ba || c == bb) continue;
    P(0, k) = R(0, c);
    P(1, k) = R(1, c);
    L.params(0, k) = to_double(P(0, k));
    L.params(1, k) = to_double(P(1, k));
    ++k;
  }
  L.params_exact = std::move(P);
  RatVec key = minors_of_exact(R);
  for (Eigen::Index t = 0; t < key.size(); ++t) {
    if (key(t) != 0) {
      const Rational piv = key(t);
      for (Eigen::Index s = 0; s < key.size(); ++s) key(s) /= piv;
      break;
    }
  }
  L.plucker_key.resize(key.size());
  for (Eigen::Index t = 0; t < key.size(); ++t) L.plucker_key(t) = to_double(key(t));
  return L;
}

double key_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double s = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  return (a - b).cwiseAbs().maxCoeff() / s;
}

// All-or-nothing rationalization, verified by exact restriction.
void try_rationalize(const Hypersurface& X, RealLine& L) {
  const int n = X.n;
  RatMat P(2, n);
  for (int r = 0; r < 2; ++r)
    for (int k = 0; k < n; ++k) {
      const auto q = rationalize(L.params(r, k));
      if (!q) return;
      P(r, k) = *q;
    }
  RatMat rows = RatMat::Constant(2, n + 2, Rational(0));
  rows(0, L.chart.first - 1) = 1;
  rows(1, L.chart.second - 1) = 1;
  int k = 0;
  for (int c = 0; c < n + 2; ++c) {
    if (c == L.chart.first - 1 || c == L.chart.second - 1) continue;
    rows(0, c) = P(0, k);
    rows(1, c) = P(1, k);
    ++k;
  }
  if (!restrict_to_line_exact(X, rows).is_zero()) return;
  RealLine exact = canonical_from_rows_exact(rows);
  exact.residual = 0.0;
  L = std::move(exact);
}

int threads_for(const SolverConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("SEGRE_LINES_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// High-precision re-polish and margin-checked determinant sign for lines
// that did not rationalize.
int certified_index_f50(const Hypersurface& X,
                        const std::vector<Hypersurface>& partials,
                        const RealLine& L) {
  const int n = X.n;
  ChartSystem<Float50> sys;
  sys.init(X, partials, L.chart.first - 1, L.chart.second - 1);
  Vec<Float50> q(2 * n);
  for (int k = 0; k < n; ++k) {
    q(2 * k) = Float50(L.params(0, k));
    q(2 * k + 1) = Float50(L.params(1, k));
  }
  for (int it = 0; it < 3; ++it) {
    Vec<Float50> f = sys.value(q);
    Mat<Float50> J = sys.jacobian(q);
    Vec<Float50> step = J.partialPivLu().solve(-f);
    q += step;
  }
  const Vec<Float50> fres = sys.value(q);
  if (inf_norm<Float50>(fres) > Float50(1e-30) * sys.scale(q))
    fail(ErrorKind::NumericFailure, "line did not re-converge in high precision");

  sys.set_rows(q);
  Mat<Float50> A = Mat<Float50>::Zero(2 * n, 2 * n);
  Vec<Float50> g(2 * n - 1);
  for (int k = 0; k < n; ++k) {
    restrict_into<Float50>(partials[static_cast<size_t>(sys.free_cols[static_cast<size_t>(k)])],
                           sys.rows, g);
    for (Eigen::Index r = 0; r < 2 * n - 1; ++r) {
      A(r, 2 * k) = g(r);
      A(r + 1, 2 * k + 1) = g(r);
    }
  }
  const Float50 det = A.fullPivLu().determinant();
  Float50 bound(1);
  for (Eigen::Index r = 0; r < 2 * n; ++r) {
    Float50 rm(0);
    for (Eigen::Index c = 0; c < 2 * n; ++c)
      if (abs(A(r, c)) > rm) rm = abs(A(r, c));
    bound *= rm;
  }
  if (abs(det) <= Float50(1e-30) * bound)
    fail(ErrorKind::NumericFailure,
         "determinant sign of a numeric line cannot be certified");
  return det > 0 ? 1 : -1;
}

}  // namespace

void validate_general_form(const Hypersurface& X) {
  if (X.n < 2) fail(ErrorKind::InvalidInput, "n must be at least 2");
  if (X.terms.empty()) fail(ErrorKind::InvalidInput, "no terms");
  const int d = 2 * X.n - 1;
  bool nonzero = false;
  for (const auto& t : X.terms) {
    if (static_cast<int>(t.exps.size()) != X.n + 2)
      fail(ErrorKind::InvalidInput, "exponent vector has wrong length");
    int sum = 0;
    for (int e : t.exps) {
      if (e < 0) fail(ErrorKind::InvalidInput, "negative exponent");
      sum += e;
    }
    if (sum != d) fail(ErrorKind::InvalidInput, "term of wrong total degree");
    if (t.c != 0) nonzero = true;
  }
  if (!nonzero) fail(ErrorKind::InvalidInput, "zero form");
}

Eigen::MatrixXd spanning_rows(const RealLine& L, int n) {
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(2, n + 2);
  rows(0, L.chart.first - 1) = 1;
  rows(1, L.chart.second - 1) = 1;
  int k = 0;
  for (int c = 0; c < n + 2; ++c) {
    if (c == L.chart.first - 1 || c == L.chart.second - 1) continue;
    rows(0, c) = L.params(0, k);
    rows(1, c) = L.params(1, k);
    ++k;
  }
  return rows;
}

std::optional<RatMat> spanning_rows_exact(const RealLine& L, int n) {
  if (!L.params_exact) return std::nullopt;
  RatMat rows = RatMat::Constant(2, n + 2, Rational(0));
  rows(0, L.chart.first - 1) = 1;
  rows(1, L.chart.second - 1) = 1;
  int k = 0;
  for (int c = 0; c < n + 2; ++c) {
    if (c == L.chart.first - 1 || c == L.chart.second - 1) continue;
    rows(0, c) = (*L.params_exact)(0, k);
    rows(1, c) = (*L.params_exact)(1, k);
    ++k;
  }
  return rows;
}

BinaryForm<double> restrict_to_line(const Hypersurface& X,
                                    const Eigen::MatrixXd& rows) {
  validate_general_form(X);
  if (rows.rows() != 2 || rows.cols() != X.n + 2)
    fail(ErrorKind::InvalidInput, "spanning matrix must be 2 x (n+2)");
  return restrict_form<double>(X, rows);
}

BinaryForm<double> restrict_to_line(const Hypersurface& X, const RealLine& L) {
  return restrict_to_line(X, spanning_rows(L, X.n));
}

RatForm restrict_to_line_exact(const Hypersurface& X, const RatMat& rows) {
  validate_general_form(X);
  if (rows.rows() != 2 || rows.cols() != X.n + 2)
    fail(ErrorKind::InvalidInput, "spanning matrix must be 2 x (n+2)");
  return restrict_form<Rational>(X, rows);
}

RealLine line_from_rows(const RatMat& rows, int n) {
  if (n < 2 || rows.rows() != 2 || rows.cols() != n + 2)
    fail(ErrorKind::InvalidInput, "spanning matrix must be 2 x (n+2)");
  RatMat m = rows;
  if (rank_exact(m) != 2)
    fail(ErrorKind::InvalidInput, "spanning rows are dependent");
  return canonical_from_rows_exact(rows);
}

LinesReport find_real_lines(const Hypersurface& X, const SolverConfig& cfg) {
  return find_real_lines(X, cfg, {});
}

LinesReport find_real_lines(const Hypersurface& X, const SolverConfig& cfg,
                            const std::vector<std::pair<int, int>>& chart_filter) {
  validate_general_form(X);
  const int n = X.n;
  const int nv = n + 2;
  std::vector<Hypersurface> partials;
  partials.reserve(static_cast<size_t>(nv));
  for (int k = 0; k < nv; ++k) partials.push_back(partial_derivative(X, k));

  std::vector<std::pair<int, int>> charts;
  if (chart_filter.empty()) {
    for (int a = 0; a < nv; ++a)
      for (int b = a + 1; b < nv; ++b) charts.emplace_back(a, b);
  } else {
    for (const auto& [a, b] : chart_filter) {
      if (a < 1 || b <= a || b > nv)
        fail(ErrorKind::InvalidInput, "chart pair out of range");
      charts.emplace_back(a - 1, b - 1);
    }
  }

  const int pool = std::max(1, std::min<int>(threads_for(cfg),
                                             static_cast<int>(charts.size())));
  const double accept = std::max(cfg.tol, 1e-14);
  const int max_rounds = std::max(cfg.max_rounds, cfg.stability_rounds + 1);

  LinesReport rep;
  int streak = 0;
  for (int round = 0; round < max_rounds; ++round) {
    std::vector<std::vector<RealLine>> found(charts.size());
    std::atomic<size_t> cursor{0};
    auto worker = [&]() {
      for (;;) {
        const size_t ci = cursor.fetch_add(1);
        if (ci >= charts.size()) return;
        ChartSystem<double> sys;
        sys.init(X, partials, charts[ci].first, charts[ci].second);
        std::mt19937_64 rng(splitmix64(cfg.seed ^ (0x5851f42dULL * (ci + 1)) ^
                                       (0xda3e39cbULL * (round + 1))));
        std::vector<RealLine>& local = found[ci];
        for (int s = 0; s < cfg.starts; ++s) {
          Eigen::VectorXd q(2 * n);
          for (Eigen::Index t = 0; t < q.size(); ++t) q(t) = start_coord(rng);
          if (!newton_run(sys, q, 60, 1e-13)) continue;
          for (int polish = 0; polish < 2; ++polish) {
            Eigen::VectorXd f = sys.value(q);
            Eigen::VectorXd step = sys.jacobian(q).partialPivLu().solve(-f);
            if (step.allFinite()) q += step;
          }
          const double res = inf_norm<double>(sys.value(q)) / sys.scale(q);
          if (!(res <= accept)) continue;
          sys.set_rows(q);
          RealLine cand;
          try {
            cand = canonical_from_rows(sys.rows);
          } catch (const Error&) {
            continue;  // wandered to a rank-deficient matrix
          }
          cand.residual = res;
          bool dup = false;
          for (const auto& seen : local)
            if (key_distance(cand.plucker_key, seen.plucker_key) <= 1e-6) {
              dup = true;
              break;
            }
          if (!dup) local.push_back(std::move(cand));
        }
      }
    };
    std::vector<std::thread> ts;
    for (int w = 1; w < pool; ++w) ts.emplace_back(worker);
    worker();
    for (auto& t : ts) t.join();

    size_t added = 0;
    for (auto& chunk : found)
      for (auto& cand : chunk) {
        bool dup = false;
        for (const auto& seen : rep.lines)
          if (key_distance(cand.plucker_key, seen.plucker_key) <= 1e-6) {
            dup = true;
            break;
          }
        if (dup) continue;
        try_rationalize(X, cand);
        rep.lines.push_back(std::move(cand));
        ++added;
      }
    rep.rounds = round + 1;
    rep.starts_used += static_cast<long long>(cfg.starts) * static_cast<long long>(charts.size());
    streak = added == 0 ? streak + 1 : 0;
    if (streak >= cfg.stability_rounds) break;
  }
  rep.stable = streak >= cfg.stability_rounds;

  for (size_t a = 0; a < rep.lines.size(); ++a)
    for (size_t b = a + 1; b < rep.lines.size(); ++b) {
      const double d = key_distance(rep.lines[a].plucker_key, rep.lines[b].plucker_key);
      if (d > 1e-6 && d <= 1e-4)
        fail(ErrorKind::IncompleteEnumeration,
             "Plucker keys cluster below the resolution of the dedupe");
    }

  std::sort(rep.lines.begin(), rep.lines.end(),
            [](const RealLine& a, const RealLine& b) {
              for (Eigen::Index t = 0; t < a.plucker_key.size(); ++t) {
                if (a.plucker_key(t) < b.plucker_key(t)) return true;
                if (a.plucker_key(t) > b.plucker_key(t)) return false;
              }
              return false;
            });
  return rep;
}

std::optional<JetCurve> line_jet_exact(const Hypersurface& X, const RealLine& L) {
  validate_general_form(X);
  const auto rows = spanning_rows_exact(L, X.n);
  if (!rows) return std::nullopt;
  JetCurve C;
  C.n = X.n;
  int k = 0;
  for (int c = 0; c < X.n + 2; ++c) {
    if (c == L.chart.first - 1 || c == L.chart.second - 1) continue;
    C.p.push_back(restrict_form<Rational>(partial_derivative(X, c), *rows));
    ++k;
  }
  return C;
}

int line_index(const Hypersurface& X, const RealLine& L) {
  validate_general_form(X);
  if (L.params_exact) {
    const auto C = line_jet_exact(X, L);
    const Rational d = jet_det(*C);
    if (d == 0)
      fail(ErrorKind::DegenerateOnWall,
           "line has degenerate normal bundle (det A = 0)");
    return sign_of(d);
  }
  std::vector<Hypersurface> partials;
  for (int k = 0; k < X.n + 2; ++k) partials.push_back(partial_derivative(X, k));
  return certified_index_f50(X, partials, L);
}

int signed_count(const Hypersurface& X, const std::vector<RealLine>& lines) {
  int sum = 0;
  for (const auto& L : lines) sum += line_index(X, L);
  return sum;
}

}  // namespace trisign
