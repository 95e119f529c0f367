#include "trisign/surfaces.hpp"

#include <random>
#include <vector>

#include "trisign/errors.hpp"

namespace trisign {

namespace {

// All exponent vectors of total degree d in nv variables, lexicographic.
void enumerate_exps(int nv, int d, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == nv - 1) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur.push_back(e);
    enumerate_exps(nv, d - e, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> all_exps(int nv, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  enumerate_exps(nv, d, cur, out);
  return out;
}

}  // namespace

Hypersurface fermat_hypersurface(int n) {
  if (n < 2) fail(ErrorKind::InvalidInput, "n must be at least 2");
  Hypersurface X;
  X.n = n;
  const int d = 2 * n - 1;
  for (int i = 0; i < n + 2; ++i) {
    HypersurfaceTerm t;
    t.exps.assign(static_cast<size_t>(n + 2), 0);
    t.exps[static_cast<size_t>(i)] = d;
    t.c = Rational(1);
    X.terms.push_back(std::move(t));
  }
  return X;
}

Hypersurface clebsch_cubic() {
  // sum y_i^3 - (y_0+y_1+y_2+y_3)^3: the pure cubes cancel and every mixed
  // monomial keeps -multinomial(3; e).
  Hypersurface X;
  X.n = 2;
  for (const auto& e : all_exps(4, 3)) {
    int fact = 6;  // 3!
    bool pure = false;
    for (int k = 0; k < 4; ++k) {
      if (e[static_cast<size_t>(k)] == 3) pure = true;
      for (int q = 2; q <= e[static_cast<size_t>(k)]; ++q) fact /= q;
    }
    if (pure) continue;
    HypersurfaceTerm t;
    t.exps = e;
    t.c = Rational(-fact);
    X.terms.push_back(std::move(t));
  }
  return X;
}

Hypersurface random_hypersurface(int n, std::uint64_t seed, int bound) {
  if (n < 2 || bound < 1) fail(ErrorKind::InvalidInput, "bad generator arguments");
  Hypersurface X;
  X.n = n;
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  for (const auto& e : all_exps(n + 2, 2 * n - 1)) {
    const int c = static_cast<int>(rng() % span) - bound;
    if (c == 0) continue;
    HypersurfaceTerm t;
    t.exps = e;
    t.c = Rational(c);
    X.terms.push_back(std::move(t));
  }
  if (X.terms.empty()) fail(ErrorKind::InvalidInput, "empty draw");
  return X;
}

}  // namespace trisign
