#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "trisign/errors.hpp"
#include "trisign/exact_linalg.hpp"
#include "trisign/rational.hpp"

namespace trisign {

// Homogeneous form in (u, v). coeffs()[k] is the coefficient of u^{d-k} v^k.
// The zero form of degree d is the all-zero vector of length d+1 (is_zero()
// reads the flag off the coefficients; the degree stays recorded).
//
// Chart conventions used project-wide:
//   - dehomogenize at v = 1, so the coefficient vector doubles as the
//     descending-power coefficient list of f(x, 1) with x = u/v;
//   - [1:0] is the point at infinity of this chart, visible as coeff(0) = 0;
//   - a factor v^b shows up as b leading zero coefficients, a factor u^a as
//     a trailing zero coefficients.
template <typename S>
class BinaryForm {
 public:
  explicit BinaryForm(Eigen::Index degree = 0) : c_(Vec<S>::Zero(degree + 1)) {}

  static BinaryForm from_coeffs(Vec<S> c) {
    if (c.size() == 0) fail(ErrorKind::InvalidInput, "empty coefficient vector");
    BinaryForm f;
    f.c_ = std::move(c);
    return f;
  }
  static BinaryForm from_coeffs(std::initializer_list<S> c) {
    Vec<S> v(static_cast<Eigen::Index>(c.size()));
    Eigen::Index i = 0;
    for (const S& x : c) v(i++) = x;
    return from_coeffs(std::move(v));
  }

  Eigen::Index degree() const { return c_.size() - 1; }
  const Vec<S>& coeffs() const { return c_; }
  const S& coeff(Eigen::Index k) const { return c_(k); }
  S& coeff(Eigen::Index k) { return c_(k); }

  bool is_zero() const {
    for (Eigen::Index k = 0; k < c_.size(); ++k)
      if (c_(k) != S(0)) return false;
    return true;
  }

  template <typename T>
  T eval(const T& u, const T& v) const {
    // two-sided Horner: sum_k c_k u^{d-k} v^k
    const Eigen::Index d = degree();
    T acc = T(0), vpow = T(1);
    std::vector<T> upow(d + 1);
    upow[0] = T(1);
    for (Eigen::Index k = 1; k <= d; ++k) upow[k] = upow[k - 1] * u;
    for (Eigen::Index k = 0; k <= d; ++k) {
      acc += T(c_(k)) * upow[d - k] * vpow;
      vpow = vpow * v;
    }
    return acc;
  }

  BinaryForm& operator+=(const BinaryForm& o) {
    if (o.degree() != degree()) fail(ErrorKind::InvalidInput, "degree mismatch in form sum");
    c_ += o.c_;
    return *this;
  }
  BinaryForm& operator-=(const BinaryForm& o) {
    if (o.degree() != degree()) fail(ErrorKind::InvalidInput, "degree mismatch in form sum");
    c_ -= o.c_;
    return *this;
  }
  BinaryForm& operator*=(const S& s) {
    c_ *= s;
    return *this;
  }

  friend BinaryForm operator+(BinaryForm a, const BinaryForm& b) { return a += b; }
  friend BinaryForm operator-(BinaryForm a, const BinaryForm& b) { return a -= b; }
  friend BinaryForm operator-(BinaryForm a) {
    a.c_ = -a.c_;
    return a;
  }
  friend BinaryForm operator*(BinaryForm a, const S& s) { return a *= s; }
  friend BinaryForm operator*(const S& s, BinaryForm a) { return a *= s; }

  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    BinaryForm r(a.degree() + b.degree());
    for (Eigen::Index i = 0; i <= a.degree(); ++i) {
      if (a.c_(i) == S(0)) continue;
      for (Eigen::Index j = 0; j <= b.degree(); ++j) r.c_(i + j) += a.c_(i) * b.c_(j);
    }
    return r;
  }

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    return a.degree() == b.degree() && a.c_ == b.c_;
  }

 private:
  Vec<S> c_;
};

template <typename S>
BinaryForm<S> derivative_u(const BinaryForm<S>& f) {
  const Eigen::Index d = f.degree();
  if (d == 0) return BinaryForm<S>(0);
  BinaryForm<S> r(d - 1);
  for (Eigen::Index k = 0; k < d; ++k) r.coeff(k) = f.coeff(k) * S(d - k);
  return r;
}

template <typename S>
BinaryForm<S> derivative_v(const BinaryForm<S>& f) {
  const Eigen::Index d = f.degree();
  if (d == 0) return BinaryForm<S>(0);
  BinaryForm<S> r(d - 1);
  for (Eigen::Index k = 0; k < d; ++k) r.coeff(k) = f.coeff(k + 1) * S(k + 1);
  return r;
}

// f(a u + b v, c u + d v)
template <typename S>
BinaryForm<S> compose_gl2(const BinaryForm<S>& f, const S& a, const S& b, const S& c, const S& d) {
  const Eigen::Index deg = f.degree();
  // powers of the two images, built by convolution
  std::vector<Vec<S>> P(deg + 1), Q(deg + 1);
  P[0] = Vec<S>::Ones(1);
  Q[0] = Vec<S>::Ones(1);
  for (Eigen::Index k = 1; k <= deg; ++k) {
    P[k] = Vec<S>::Zero(k + 1);
    Q[k] = Vec<S>::Zero(k + 1);
    for (Eigen::Index i = 0; i < k; ++i) {
      P[k](i) += P[k - 1](i) * a;
      P[k](i + 1) += P[k - 1](i) * b;
      Q[k](i) += Q[k - 1](i) * c;
      Q[k](i + 1) += Q[k - 1](i) * d;
    }
  }
  BinaryForm<S> r(deg);
  for (Eigen::Index k = 0; k <= deg; ++k) {
    if (f.coeff(k) == S(0)) continue;
    const Vec<S>& pu = P[deg - k];
    const Vec<S>& qv = Q[k];
    for (Eigen::Index i = 0; i < pu.size(); ++i)
      for (Eigen::Index j = 0; j < qv.size(); ++j) r.coeff(i + j) += f.coeff(k) * pu(i) * qv(j);
  }
  return r;
}

template <typename S>
BinaryForm<S> pow_form(const BinaryForm<S>& f, int e) {
  BinaryForm<S> r = BinaryForm<S>::from_coeffs({S(1)});
  for (int i = 0; i < e; ++i) r = r * f;
  return r;
}

template <typename To, typename From, typename Fn>
BinaryForm<To> map_form(const BinaryForm<From>& f, Fn fn) {
  BinaryForm<To> r(f.degree());
  for (Eigen::Index k = 0; k <= f.degree(); ++k) r.coeff(k) = fn(f.coeff(k));
  return r;
}

inline BinaryForm<double> to_double_form(const BinaryForm<Rational>& f) {
  return map_form<double>(f, [](const Rational& r) { return to_double(r); });
}

template <typename Real>
BinaryForm<Real> to_real_form(const BinaryForm<Rational>& f) {
  return map_form<Real>(f, [](const Rational& r) { return to_real<Real>(r); });
}

// ---------------------------------------------------------------------------
// Exact (rational) form algebra
// ---------------------------------------------------------------------------

using RatForm = BinaryForm<Rational>;

inline Eigen::Index leading_index(const RatForm& f) {
  for (Eigen::Index k = 0; k <= f.degree(); ++k)
    if (f.coeff(k) != 0) return k;
  fail(ErrorKind::InvalidInput, "leading index of zero form");
}

// Canonical projective representative: first nonzero coefficient scaled to 1.
inline RatForm monic_normalized(const RatForm& f) {
  if (f.is_zero()) fail(ErrorKind::InvalidInput, "cannot normalize zero form");
  RatForm r = f;
  const Rational lead = f.coeff(leading_index(f));
  for (Eigen::Index k = 0; k <= r.degree(); ++k) r.coeff(k) /= lead;
  return r;
}

namespace detail {

// Univariate polynomials as descending-power rational coefficient vectors
// with nonzero leading coefficient; the zero polynomial is the empty vector.

inline RatVec trim(const RatVec& p) {
  Eigen::Index first = 0;
  while (first < p.size() && p(first) == 0) ++first;
  return p.tail(p.size() - first).eval();
}

inline Rational poly_eval(const RatVec& p, const Rational& x) {
  Rational acc(0);
  for (Eigen::Index k = 0; k < p.size(); ++k) acc = acc * x + p(k);
  return acc;
}

inline RatVec poly_derivative(const RatVec& p) {
  const Eigen::Index d = p.size() - 1;
  if (d <= 0) return RatVec();
  RatVec r(d);
  for (Eigen::Index k = 0; k < d; ++k) r(k) = p(k) * Rational(d - k);
  return trim(r);
}

// (quotient, remainder) of num / den; den nonzero with nonzero lead.
inline std::pair<RatVec, RatVec> poly_divmod(RatVec num, const RatVec& den) {
  num = trim(num);
  if (num.size() < den.size()) return {RatVec(), num};
  RatVec quot = RatVec::Zero(num.size() - den.size() + 1);
  for (Eigen::Index k = 0; k + den.size() <= num.size(); ++k) {
    const Rational q = num(k) / den(0);
    quot(k) = q;
    if (q == 0) continue;
    for (Eigen::Index j = 0; j < den.size(); ++j) num(k + j) -= q * den(j);
  }
  return {quot, trim(num)};
}

inline RatVec poly_monic(const RatVec& p) {
  if (p.size() == 0) return p;
  return (p / p(0)).eval();
}

inline RatVec poly_gcd(RatVec a, RatVec b) {
  a = trim(a);
  b = trim(b);
  while (b.size() != 0) {
    RatVec r = poly_divmod(a, b).second;
    a = std::move(b);
    b = poly_monic(r);
  }
  return poly_monic(a);
}

// Sturm chain of a nonzero polynomial.
struct SturmChain {
  std::vector<RatVec> seq;

  explicit SturmChain(RatVec p) {
    p = trim(p);
    seq.push_back(p);
    RatVec d = poly_derivative(p);
    if (d.size() != 0) {
      seq.push_back(d);
      while (true) {
        const RatVec& a = seq[seq.size() - 2];
        const RatVec& b = seq.back();
        RatVec r = poly_divmod(a, b).second;
        if (r.size() == 0) break;
        seq.push_back((-r).eval());
      }
    }
  }

  static int sign_changes(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  }

  int variations_at(const Rational& x) const {
    std::vector<int> signs;
    for (const auto& p : seq) signs.push_back(sign_of(poly_eval(p, x)));
    return sign_changes(signs);
  }

  int variations_at_pos_inf() const {
    std::vector<int> signs;
    for (const auto& p : seq) signs.push_back(p.size() ? sign_of(p(0)) : 0);
    return sign_changes(signs);
  }

  int variations_at_neg_inf() const {
    std::vector<int> signs;
    for (const auto& p : seq) {
      if (p.size() == 0) {
        signs.push_back(0);
        continue;
      }
      const int lead = sign_of(p(0));
      signs.push_back((p.size() - 1) % 2 == 0 ? lead : -lead);
    }
    return sign_changes(signs);
  }

  // number of distinct real roots in (a, b]
  int count_interval(const Rational& a, const Rational& b) const {
    return variations_at(a) - variations_at(b);
  }

  int count_all() const { return variations_at_neg_inf() - variations_at_pos_inf(); }
};

}  // namespace detail

// Exact division; nullopt when g does not divide f.
inline std::optional<RatForm> divide_exact(const RatForm& f, const RatForm& g) {
  if (g.is_zero()) fail(ErrorKind::InvalidInput, "division by zero form");
  if (f.is_zero()) return RatForm(std::max<Eigen::Index>(f.degree() - g.degree(), 0));
  if (f.degree() < g.degree()) return std::nullopt;
  // strip v-powers (leading zeros) and u-powers (trailing zeros)
  const auto strip = [](const RatForm& h, Eigen::Index& lead, Eigen::Index& trail) {
    lead = 0;
    while (h.coeff(lead) == 0) ++lead;
    trail = h.degree();
    while (h.coeff(trail) == 0) --trail;
    return h.coeffs().segment(lead, trail - lead + 1).eval();
  };
  Eigen::Index fl, ft, gl, gt;
  const RatVec fs = strip(f, fl, ft);
  const RatVec gs = strip(g, gl, gt);
  const Eigen::Index fu = f.degree() - ft, gu = g.degree() - gt;  // u-powers
  if (fl < gl || fu < gu) return std::nullopt;
  auto [quot, rem] = detail::poly_divmod(fs, gs);
  if (rem.size() != 0) return std::nullopt;
  RatForm r(f.degree() - g.degree());
  const Eigen::Index offset = fl - gl;
  for (Eigen::Index k = 0; k < quot.size(); ++k) r.coeff(offset + k) = quot(k);
  return r;
}

// Monic greatest common divisor of binary forms (degree-0 result: coprime).
inline RatForm bf_gcd(const RatForm& f, const RatForm& g) {
  if (f.is_zero() && g.is_zero()) fail(ErrorKind::InvalidInput, "gcd of two zero forms");
  if (f.is_zero()) return monic_normalized(g);
  if (g.is_zero()) return monic_normalized(f);
  const auto split = [](const RatForm& h, Eigen::Index& vpow, Eigen::Index& upow) {
    vpow = 0;
    while (h.coeff(vpow) == 0) ++vpow;
    Eigen::Index last = h.degree();
    while (h.coeff(last) == 0) --last;
    upow = h.degree() - last;
    return h.coeffs().segment(vpow, last - vpow + 1).eval();
  };
  Eigen::Index fv, fu, gv, gu;
  const RatVec fs = split(f, fv, fu);
  const RatVec gs = split(g, gv, gu);
  const RatVec core = detail::poly_gcd(fs, gs);
  const Eigen::Index vp = std::min(fv, gv), up = std::min(fu, gu);
  RatForm r(static_cast<Eigen::Index>(core.size()) - 1 + vp + up);
  for (Eigen::Index k = 0; k < core.size(); ++k) r.coeff(vp + k) = core(k);
  return monic_normalized(r);
}

// Sylvester resultant in the fixed row convention: the first deg(g) rows hold
// shifted coefficients of f, the next deg(f) rows shifted coefficients of g,
// each listed from the u-leading to the v-leading coefficient.
inline Rational resultant(const RatForm& f, const RatForm& g) {
  if (f.is_zero() || g.is_zero()) fail(ErrorKind::InvalidInput, "resultant of zero form");
  const Eigen::Index df = f.degree(), dg = g.degree();
  const Eigen::Index n = df + dg;
  if (n == 0) return Rational(1);
  RatMat m = RatMat::Zero(n, n);
  for (Eigen::Index i = 0; i < dg; ++i)
    for (Eigen::Index k = 0; k <= df; ++k) m(i, i + k) = f.coeff(k);
  for (Eigen::Index i = 0; i < df; ++i)
    for (Eigen::Index k = 0; k <= dg; ++k) m(dg + i, i + k) = g.coeff(k);
  return det_bareiss<Rational>(m);
}

// product of multiple factors stripped: f / gcd(f, f_u', f_v')
inline RatForm squarefree_part(const RatForm& f) {
  if (f.is_zero()) fail(ErrorKind::InvalidInput, "squarefree part of zero form");
  if (f.degree() == 0) return monic_normalized(f);
  RatForm g = bf_gcd(f, derivative_u(f));
  if (g.degree() > 0 || !derivative_v(f).is_zero()) g = bf_gcd(g, derivative_v(f));
  if (g.degree() == 0) return monic_normalized(f);
  auto q = divide_exact(f, g);
  if (!q) fail(ErrorKind::InvalidInput, "internal: gcd does not divide");
  return monic_normalized(*q);
}

inline bool is_squarefree(const RatForm& f) {
  if (f.degree() == 0) return true;
  RatForm g = bf_gcd(f, derivative_u(f));
  g = bf_gcd(g, derivative_v(f));
  return g.degree() == 0;
}

// Number of distinct real roots on the projective line; the root [1:0] is
// detected by vanishing of the u-leading coefficient.
inline int sturm_real_root_count(const RatForm& f, bool squarefree = false) {
  if (f.is_zero()) fail(ErrorKind::InvalidInput, "root count of zero form");
  RatForm g = f;
  if (squarefree) {
    if (!is_squarefree(f)) fail(ErrorKind::InvalidInput, "form asserted squarefree is not");
  } else {
    g = squarefree_part(f);
  }
  if (g.degree() == 0) return 0;
  const int at_infinity = g.coeff(0) == 0 ? 1 : 0;
  const RatVec p = detail::trim(g.coeffs());
  if (p.size() <= 1) return at_infinity;  // constant after dehomogenizing
  return detail::SturmChain(p).count_all() + at_infinity;
}

// Isolating intervals for the real roots of a squarefree polynomial (given as
// a binary form, read in the affine chart x = u/v) inside (lo, hi]. Point
// intervals [r, r] mark exact rational roots; every widened interval [a, b]
// satisfies sign f(a) = -sign f(b) != 0. Requires f(lo) != 0.
inline std::vector<std::pair<Rational, Rational>> isolate_real_roots(const RatForm& f,
                                                                     const Rational& lo,
                                                                     const Rational& hi) {
  if (!is_squarefree(f)) fail(ErrorKind::InvalidInput, "root isolation needs squarefree input");
  const RatVec p = detail::trim(f.coeffs());
  if (p.size() <= 1) return {};
  const detail::SturmChain chain(p);
  if (detail::poly_eval(p, lo) == 0)
    fail(ErrorKind::InvalidInput, "root isolation: root at left endpoint");
  std::vector<std::pair<Rational, Rational>> out;
  const auto rec = [&](auto&& self, const Rational& a, const Rational& b, int count) -> void {
    if (count == 0) return;
    const int sb = sign_of(detail::poly_eval(p, b));
    int interior = count;
    if (sb == 0) {
      out.emplace_back(b, b);
      --interior;
    }
    if (interior == 0) return;
    const int sa = sign_of(detail::poly_eval(p, a));
    if (interior == 1 && sb != 0 && sa != sb) {
      out.emplace_back(a, b);
      return;
    }
    const Rational mid = (a + b) / 2;
    const int left = chain.count_interval(a, mid);
    self(self, a, mid, left);
    self(self, mid, b, count - left);
  };
  rec(rec, lo, hi, chain.count_interval(lo, hi));
  std::sort(out.begin(), out.end());
  return out;
}

// Exact Lagrange interpolation: the unique form F of the given degree with
// F(x_j, 1) = y_j.  Requires degree+1 distinct sample points.
inline RatForm interpolate_form(const std::vector<Rational>& xs,
                                const std::vector<Rational>& ys,
                                Eigen::Index degree) {
  if (xs.size() != ys.size() || static_cast<Eigen::Index>(xs.size()) != degree + 1)
    fail(ErrorKind::InvalidInput, "interpolation needs degree+1 samples");
  // Accumulate sum_j y_j * prod_{k != j} (x - x_k) / (x_j - x_k) with
  // dehomogenized descending-coefficient vectors.
  const size_t m = xs.size();
  RatVec acc = RatVec::Constant(static_cast<Eigen::Index>(m), Rational(0));
  for (size_t j = 0; j < m; ++j) {
    RatVec num(1);
    num(0) = Rational(1);
    Rational den(1);
    for (size_t k = 0; k < m; ++k) {
      if (k == j) continue;
      RatVec next = RatVec::Constant(num.size() + 1, Rational(0));
      for (Eigen::Index i = 0; i < num.size(); ++i) {
        next(i) += num(i);
        next(i + 1) -= xs[k] * num(i);
      }
      num = next;
      den *= xs[j] - xs[k];
      if (den == 0)
        fail(ErrorKind::InvalidInput, "interpolation samples must be distinct");
    }
    const Rational w = ys[j] / den;
    const Eigen::Index off = static_cast<Eigen::Index>(m) - num.size();
    for (Eigen::Index i = 0; i < num.size(); ++i) acc(off + i) += w * num(i);
  }
  Vec<Rational> c(degree + 1);
  for (Eigen::Index i = 0; i <= degree; ++i) c(i) = acc(i);
  return RatForm::from_coeffs(std::move(c));
}

// Shrinks an isolating interval until its width is at most `width`, keeping
// the sign-change property.
inline std::pair<Rational, Rational> refine_isolating_interval(const RatForm& f, Rational a,
                                                               Rational b, const Rational& width) {
  if (a == b) return {a, b};
  const RatVec p = detail::trim(f.coeffs());
  int sa = sign_of(detail::poly_eval(p, a));
  while (b - a > width) {
    const Rational mid = (a + b) / 2;
    const int sm = sign_of(detail::poly_eval(p, mid));
    if (sm == 0) return {mid, mid};
    if (sm == sa)
      a = mid;
    else
      b = mid;
  }
  return {a, b};
}

}  // namespace trisign
