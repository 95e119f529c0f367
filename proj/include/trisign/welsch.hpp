#pragma once

// Welschinger weight from the normal-bundle splitting: degree-2 syzygy
// sections frame the bundle along the real line; the weight is the parity
// of the induced loop in the rotation group (n = 2, 3).

#include <array>
#include <vector>

#include "trisign/binary_form.hpp"
#include "trisign/jet.hpp"
#include "trisign/rational.hpp"

namespace trisign {

struct SplittingSections {
  int n = 0;
  // n-1 sections, each an n-tuple of degree-2 forms q with sum p_j q_j = 0.
  std::vector<std::vector<RatForm>> sections;
};

// Exact basis of the degree-2 syzygy space.  Throws NotBalanced when its
// dimension differs from n-1 (equivalently det of the jet matrix is 0).
SplittingSections splitting_sections(const JetCurve& C);

struct WelschingerDiagnostics {
  std::vector<double> thetas;           // final sample grid on [0, pi]
  std::array<double, 4> end_quaternion{};  // w, x, y, z (n = 3)
  int winding = 0;                      // n = 2
  double max_step_angle = 0.0;          // largest consecutive rotation angle
};

// +1 if the frame loop lifts to a closed loop in the double cover, -1 if
// the lift ends at the antipode.  n >= 4 throws Unsupported.
int welschinger_weight(const JetCurve& C,
                       WelschingerDiagnostics* diag = nullptr,
                       int initial_samples = 64);

// Same computation starting from a precomputed section basis; used by the
// basis-independence checks.
int welschinger_weight(const JetCurve& C, const SplittingSections& S,
                       WelschingerDiagnostics* diag = nullptr,
                       int initial_samples = 64);

}  // namespace trisign
