#pragma once

// Jet curves of hypersurfaces that contain the line {x_1 = ... = x_n = 0},
// the 2n x 2n coefficient matrix of a curve, and the Euler index.

#include <functional>
#include <optional>
#include <vector>

#include "trisign/binary_form.hpp"
#include "trisign/rational.hpp"

namespace trisign {

// Degree 2n-1 hypersurface in variables (u, v, x_1, ..., x_n) containing
// the line {x = 0}.  Exponent vectors are (e_u, e_v, e_{x_1}, ..., e_{x_n}).
struct HypersurfaceTerm {
  std::vector<int> exps;
  Rational c;
};

struct Hypersurface {
  int n = 0;
  std::vector<HypersurfaceTerm> terms;
};

// Throws InvalidInput unless every term is homogeneous of degree 2n-1 with
// x-degree >= 1 (x-degree 0 would put a pure (u,v) monomial in F, so the
// distinguished line would not lie on the hypersurface).
void validate(const Hypersurface& X);

// Rational curve of degree 2n-2 in P^{n-1}, given by its n components.
struct JetCurve {
  int n = 0;
  std::vector<RatForm> p;
};

// Throws InvalidInput on shape violations (wrong count, wrong degrees).
void validate_shape(const JetCurve& C);

// Shape check plus SingularAlongLine when the components share a root
// (including all-zero).  Index computations require this; the classifier
// and the matrix builders accept any shape-valid curve.
void validate(const JetCurve& C);

struct DiscriminantFlags {
  bool in_DP = false;    // det of the jet matrix vanishes
  bool in_DP1 = false;   // components linearly dependent
  bool in_Dinf1 = false; // advisory: excess secant family (numeric probe)
  bool balanced = false; // normal bundle splits evenly; equals !in_DP
};

// Coefficient forms of the x-linear part of F; terms of x-degree >= 2 are
// dropped.  Throws SingularAlongLine if the components share a root.
JetCurve extract_jet(const Hypersurface& X);

// Columns 2j-1, 2j (1-based) hold the coefficients of u*p_j and v*p_j in
// the basis u^{2n-1}, u^{2n-2}v, ..., v^{2n-1}.
RatMat jet_matrix(const JetCurve& C);

Rational jet_det(const JetCurve& C);

// Sign of the exact determinant in the fixed chart above.
// Throws Degenerate when the determinant vanishes.
int euler_index(const JetCurve& C);

// If det = 0, a nonzero tuple L of linear forms with sum p_j L_j = 0,
// decoded from an exact kernel vector; empty otherwise.
std::optional<std::vector<RatForm>> linear_syzygy(const JetCurve& C);

// in_Dinf1 is filled by the probe when one is supplied (the secant search
// lives in a higher layer); it defaults to false.
DiscriminantFlags classify_discriminants(
    const JetCurve& C,
    const std::function<bool(const JetCurve&)>& dinf1_probe = {});

}  // namespace trisign
