#pragma once

#include <optional>
#include <vector>

#include "trisign/jet.hpp"

namespace trisign {

// A point of P^2 with rational coordinates. A conjugate pair z, conj(z) is
// stored once with is_complex set; it counts twice toward the base locus.
struct PlanePoint {
  RatVec re;  // size 3
  RatVec im;  // size 3, zero unless is_complex
  bool is_complex = false;
};

// Base locus of C(n,2) points together with a conic that misses it. The
// degree-(n-1) curves through the base locus map the conic to a jet curve.
struct PlaneConfig {
  std::vector<PlanePoint> base;
  RatMat conic;  // symmetric 3x3, nondegenerate, with real points
  // Optional rational point of the conic; consulted when the built-in
  // height-bounded search cannot find one.
  std::optional<RatVec> point_on_conic;
};

struct GeneratedCurve {
  JetCurve curve;
  // (-1)^{# real base points strictly inside the real conic}; the curve's
  // signed count equals this by construction.
  int ground_truth = 0;
  int inside_count = 0;
  RatVec param_point;  // the rational point used to parameterize the conic
};

struct WallCrossing {
  Rational t_lo, t_hi;  // exact isolating interval of a simple det zero
};

struct ChamberSample {
  Rational t;
  int euler = 0;
  std::optional<int> segre;    // n >= 3
  std::optional<int> welsch;   // n <= 3
};

struct CrossingReport {
  RatForm det_poly;  // det A_{C_t} in t, descending coefficients
  std::vector<WallCrossing> crossings;
  std::vector<ChamberSample> chambers;  // one sample per chamber of (0,1)
  bool indices_agree = false;  // all computed indices coincide per chamber
  bool alternate_ok = false;   // consecutive chambers carry opposite signs
  bool parity_ok = false;      // euler(C1) = euler(C0) * (-1)^{#crossings}
};

// The monomial family (u^{2n-2}, u^{2n-4}v^2, ..., v^{2n-2}).
JetCurve one_example(int n);

// Degree-(n-1) plane curves through the base locus, restricted to the conic.
GeneratedCurve cremona_generate(const PlaneConfig& cfg, int n);

// Walks the segment (1-t)C0 + tC1, isolates every zero of det A_{C_t}
// exactly, and samples all three indices in each chamber. `steps` adds
// bisection rounds to each crossing interval beyond the default width.
CrossingReport wallcross_path(const JetCurve& C0, const JetCurve& C1, int steps);

}  // namespace trisign
