#include "trisign/roots.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace trisign {

namespace {

using CD = std::complex<double>;

double residual_at(const std::vector<double>& c, CD z, CD& der) {
  CD val(0), d(0);
  for (double ck : c) {
    d = d * z + val;
    val = val * z + ck;
  }
  der = d;
  return std::abs(val);
}

CD newton_refine(const std::vector<double>& c, CD z) {
  for (int it = 0; it < 60; ++it) {
    CD val(0), der(0);
    for (double ck : c) {
      der = der * z + val;
      val = val * z + ck;
    }
    if (std::abs(der) < 1e-300) break;
    const CD step = val / der;
    z -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

struct Cluster {
  CD z;
  int mult;
  double radius;
};

}  // namespace

std::vector<ComplexPoint> complex_roots(const BinaryForm<double>& f, double tol) {
  if (tol <= 0) fail(ErrorKind::InvalidInput, "complex_roots: tol must be positive");
  if (f.is_zero()) fail(ErrorKind::InvalidInput, "complex_roots of zero form");
  const Eigen::Index d = f.degree();
  Eigen::Index lead = 0;
  while (lead <= d && f.coeff(lead) == 0.0) ++lead;
  Eigen::Index last = d;
  while (last >= lead && f.coeff(last) == 0.0) --last;
  const int inf_mult = static_cast<int>(lead);       // roots [1:0]
  const int zero_mult = static_cast<int>(d - last);  // roots x = 0
  std::vector<ComplexPoint> out;

  const Eigen::Index m = last - lead;  // degree of the stripped interior part
  if (m > 0) {
    std::vector<double> c(m + 1);
    double scale = 0;
    for (Eigen::Index k = 0; k <= m; ++k) scale = std::max(scale, std::abs(f.coeff(lead + k)));
    for (Eigen::Index k = 0; k <= m; ++k) c[k] = f.coeff(lead + k) / scale;

    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i + 1 < m; ++i) comp(i + 1, i) = 1.0;
    for (Eigen::Index i = 0; i < m; ++i) comp(i, m - 1) = -c[m - i] / c[0];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    if (es.info() != Eigen::Success)
      fail(ErrorKind::NumericFailure, "complex_roots: eigensolver did not converge");

    std::vector<CD> zs(m);
    for (Eigen::Index i = 0; i < m; ++i) zs[i] = newton_refine(c, es.eigenvalues()(i));

    // cluster coincident roots; cluster size = multiplicity
    std::sort(zs.begin(), zs.end(), [](CD a, CD b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<Cluster> clusters;
    for (CD z : zs) {
      const double eps = 1e-6 * (1.0 + std::abs(z));
      if (!clusters.empty() && std::abs(z - clusters.back().z) < eps) {
        Cluster& cl = clusters.back();
        cl.radius = std::max(cl.radius, std::abs(z - cl.z));
        cl.z = cl.z + (z - cl.z) / static_cast<double>(cl.mult + 1);
        cl.mult += 1;
      } else {
        clusters.push_back({z, 1, 0.0});
      }
    }
    for (Cluster& cl : clusters) {
      if (cl.mult == 1) {
        cl.z = newton_refine(c, cl.z);
        CD der;
        const double res = residual_at(c, cl.z, der);
        cl.radius = std::abs(der) > 1e-12 ? static_cast<double>(m) * res / std::abs(der) : tol;
      }
      cl.radius = std::max(cl.radius, tol);
    }

    // conjugate closure: snap near-real roots, then pair the rest
    std::vector<Cluster> reals, pos, neg;
    for (Cluster& cl : clusters) {
      const double snap = 1e-8 * (1.0 + std::abs(cl.z));
      if (std::abs(cl.z.imag()) <= std::max(snap, cl.radius * 1e-3)) {
        cl.z = CD(cl.z.real(), 0.0);
        reals.push_back(cl);
      } else if (cl.z.imag() > 0) {
        pos.push_back(cl);
      } else {
        neg.push_back(cl);
      }
    }
    std::vector<Cluster> paired;
    std::vector<bool> used(neg.size(), false);
    for (const Cluster& a : pos) {
      int best = -1;
      double bestd = 1e300;
      for (std::size_t j = 0; j < neg.size(); ++j) {
        if (used[j]) continue;
        const double dist = std::abs(std::conj(a.z) - neg[j].z);
        if (dist < bestd) {
          bestd = dist;
          best = static_cast<int>(j);
        }
      }
      if (best < 0) {  // no partner: forced real snap keeps conjugation-stability
        Cluster r = a;
        r.z = CD(a.z.real(), 0.0);
        reals.push_back(r);
        continue;
      }
      used[best] = true;
      Cluster m1 = a, m2 = neg[best];
      const CD mean = (a.z + std::conj(m2.z)) * 0.5;
      m1.z = mean;
      m2.z = std::conj(mean);
      m1.radius = m2.radius = std::max({m1.radius, m2.radius, bestd});
      paired.push_back(m1);
      paired.push_back(m2);
    }
    for (std::size_t j = 0; j < neg.size(); ++j)
      if (!used[j]) {
        Cluster r = neg[j];
        r.z = CD(r.z.real(), 0.0);
        reals.push_back(r);
      }

    std::vector<Cluster> all;
    all.insert(all.end(), reals.begin(), reals.end());
    all.insert(all.end(), paired.begin(), paired.end());
    std::sort(all.begin(), all.end(), [](const Cluster& a, const Cluster& b) {
      if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
      return a.z.imag() < b.z.imag();
    });
    for (const Cluster& cl : all)
      for (int rep = 0; rep < cl.mult; ++rep) {
        ComplexPoint pt;
        pt.re = cl.z.real();
        pt.im = cl.z.imag();
        pt.certified_radius = cl.radius;
        pt.multiplicity = cl.mult;
        out.push_back(pt);
      }
  }

  for (int rep = 0; rep < zero_mult; ++rep) {
    ComplexPoint pt;  // exact root x = 0
    pt.multiplicity = zero_mult;
    out.push_back(pt);
  }
  for (int rep = 0; rep < inf_mult; ++rep) {
    ComplexPoint pt;
    pt.at_infinity = true;
    pt.multiplicity = inf_mult;
    out.push_back(pt);
  }
  return out;
}

std::vector<ComplexPoint> complex_roots(const BinaryForm<Rational>& f, double tol) {
  if (f.is_zero()) fail(ErrorKind::InvalidInput, "complex_roots of zero form");
  // normalize exactly before casting so huge coefficients survive the cast
  Rational scale(0);
  for (Eigen::Index k = 0; k <= f.degree(); ++k) {
    Rational a = f.coeff(k) < 0 ? Rational(-f.coeff(k)) : f.coeff(k);
    if (a > scale) scale = a;
  }
  BinaryForm<double> fd(f.degree());
  for (Eigen::Index k = 0; k <= f.degree(); ++k) fd.coeff(k) = to_double(f.coeff(k) / scale);
  auto roots = complex_roots(fd, tol);

  // the numeric real/imaginary split must reproduce the exact Sturm count
  int distinct_real = 0;
  {
    bool has_zero = false, has_inf = false, have_prev = false;
    double prev_re = 0;
    for (const auto& r : roots) {
      if (r.at_infinity)
        has_inf = true;
      else if (r.re == 0 && r.im == 0 && r.multiplicity >= 1 && r.certified_radius == 0)
        has_zero = true;
      else if (r.im == 0) {
        if (!have_prev || r.re != prev_re) ++distinct_real;
        prev_re = r.re;
        have_prev = true;
      }
    }
    distinct_real += (has_zero ? 1 : 0) + (has_inf ? 1 : 0);
  }
  if (distinct_real != sturm_real_root_count(f))
    fail(ErrorKind::NumericFailure, "complex_roots: real/imaginary split disagrees with exact count");
  return roots;
}

std::vector<ComplexPoint> complex_roots(const BinaryForm<CD>& f, double tol) {
  if (tol <= 0) fail(ErrorKind::InvalidInput, "complex_roots: tol must be positive");
  if (f.is_zero()) fail(ErrorKind::InvalidInput, "complex_roots of zero form");
  const Eigen::Index d = f.degree();
  Eigen::Index lead = 0;
  while (lead <= d && f.coeff(lead) == CD(0)) ++lead;
  Eigen::Index last = d;
  while (last >= lead && f.coeff(last) == CD(0)) --last;
  const int inf_mult = static_cast<int>(lead);
  const int zero_mult = static_cast<int>(d - last);
  std::vector<ComplexPoint> out;

  const Eigen::Index m = last - lead;
  if (m > 0) {
    std::vector<CD> c(static_cast<size_t>(m) + 1);
    double scale = 0;
    for (Eigen::Index k = 0; k <= m; ++k)
      scale = std::max(scale, std::abs(f.coeff(lead + k)));
    for (Eigen::Index k = 0; k <= m; ++k)
      c[static_cast<size_t>(k)] = f.coeff(lead + k) / scale;

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index i = 0; i + 1 < m; ++i) comp(i + 1, i) = 1.0;
    for (Eigen::Index i = 0; i < m; ++i)
      comp(i, m - 1) = -c[static_cast<size_t>(m - i)] / c[0];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success)
      fail(ErrorKind::NumericFailure, "complex_roots: eigensolver did not converge");

    std::vector<CD> zs(static_cast<size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i)
      zs[static_cast<size_t>(i)] = refine_root_newton(c, es.eigenvalues()(i));

    std::sort(zs.begin(), zs.end(), [](CD a, CD b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<Cluster> clusters;
    for (CD z : zs) {
      if (!clusters.empty() &&
          std::abs(z - clusters.back().z) <= 1e-6 * (1.0 + std::abs(z))) {
        Cluster& cl = clusters.back();
        cl.z = (cl.z * static_cast<double>(cl.mult) + z) /
               static_cast<double>(cl.mult + 1);
        ++cl.mult;
      } else {
        clusters.push_back({z, 1, 0.0});
      }
    }
    for (auto& cl : clusters) {
      CD der;
      CD val(0), dd(0);
      for (const CD& ck : c) {
        dd = dd * cl.z + val;
        val = val * cl.z + ck;
      }
      der = dd;
      const double res = std::abs(val);
      cl.radius = (std::abs(der) > 1e-300)
                      ? std::max(tol, cl.mult * res / std::abs(der))
                      : tol;
      for (int r = 0; r < cl.mult; ++r) {
        ComplexPoint p;
        p.re = cl.z.real();
        p.im = cl.z.imag();
        p.multiplicity = cl.mult;
        p.certified_radius = cl.radius;
        out.push_back(p);
      }
    }
  }
  for (int r = 0; r < zero_mult; ++r) {
    ComplexPoint p;
    p.multiplicity = zero_mult;
    out.push_back(p);
  }
  for (int r = 0; r < inf_mult; ++r) {
    ComplexPoint p;
    p.at_infinity = true;
    p.multiplicity = inf_mult;
    out.push_back(p);
  }
  return out;
}

}  // namespace trisign
