#pragma once

// Real lines on a real hypersurface of degree 2n-1 in P^{n+1}: chart-atlas
// multistart Newton enumeration, Plucker deduplication, and the per-line
// Euler index obtained by moving each line to the standard chart.

#include <optional>
#include <utility>
#include <vector>

#include "trisign/jet.hpp"
#include "trisign/secants.hpp"

namespace trisign {

// A real line in P^{n+1}, stored row-reduced: the 2 x (n+2) spanning matrix
// is the identity on the two chart columns and `params` elsewhere.  The
// Plucker key is the vector of 2x2 minors in lexicographic column order,
// scaled so the first significant entry is +1; it does not depend on the
// chart and is the deduplication key.
struct RealLine {
  std::pair<int, int> chart;            // 1-based pivot columns, first < second
  Eigen::MatrixXd params;               // 2 x n block at the non-pivot columns
  std::optional<RatMat> params_exact;   // set when the line rationalizes
  Eigen::VectorXd plucker_key;
  double residual = 0.0;                // relative size of the restricted form
};

struct LinesReport {
  std::vector<RealLine> lines;          // sorted by Plucker key
  bool stable = false;                  // census unchanged over the last
                                        // stability_rounds escalations
  int rounds = 0;
  long long starts_used = 0;
};

// A general form of degree 2n-1 in the n+2 homogeneous variables; unlike the
// jet-side validation this does not require any distinguished line to lie on
// the hypersurface.  Throws InvalidInput.
void validate_general_form(const Hypersurface& X);

// The 2 x (n+2) spanning matrix reconstructed from chart + params.
Eigen::MatrixXd spanning_rows(const RealLine& L, int n);
// Exact variant; empty unless the line rationalized.
std::optional<RatMat> spanning_rows_exact(const RealLine& L, int n);

// Substitutes (u, v) -> u * row0 + v * row1 into X.  The line lies on X
// exactly when the result is identically zero.
BinaryForm<double> restrict_to_line(const Hypersurface& X,
                                    const Eigen::MatrixXd& rows);
BinaryForm<double> restrict_to_line(const Hypersurface& X, const RealLine& L);
RatForm restrict_to_line_exact(const Hypersurface& X, const RatMat& rows);

// Builds the row-reduced line spanned by the rows of a rational 2 x (n+2)
// matrix, canonicalizing the chart to the largest minor.  Exact throughout.
RealLine line_from_rows(const RatMat& rows, int n);

// Multistart Newton over all C(n+2,2) charts, escalated round by round until
// the deduplicated census stops changing.  Best effort: the report carries a
// stability flag instead of a completeness proof.  Unresolvable Plucker-key
// clusters throw IncompleteEnumeration.
LinesReport find_real_lines(const Hypersurface& X, const SolverConfig& cfg = {});
// Same, scanning only the listed 1-based chart pairs (empty = all).
LinesReport find_real_lines(const Hypersurface& X, const SolverConfig& cfg,
                            const std::vector<std::pair<int, int>>& chart_filter);

// Jet curve of X along an exactly represented line; empty for numeric lines.
std::optional<JetCurve> line_jet_exact(const Hypersurface& X, const RealLine& L);

// Euler index of the line: exact when the line rationalized, otherwise
// high-precision with a margin-checked determinant sign.  Throws
// DegenerateOnWall on an exact zero determinant and NumericFailure when the
// sign cannot be certified.
int line_index(const Hypersurface& X, const RealLine& L);

// Sum of line_index over the list; the deformation invariant equals
// (2n-1)!! when the enumeration is complete.
int signed_count(const Hypersurface& X, const std::vector<RealLine>& lines);

}  // namespace trisign
