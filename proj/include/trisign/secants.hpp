#pragma once

// Secants of a jet curve cutting an improper divisor of degree 2n-4:
// exact nodes for plane quartics (n=3), a certified multistart Newton
// enumeration for general n, and the secant degree verifier.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trisign/binary_form.hpp"
#include "trisign/jet.hpp"
#include "trisign/rational.hpp"
#include "trisign/roots.hpp"

namespace trisign {

struct SolverConfig {
  int starts = 500;
  int max_rounds = 4;
  double tol = 1e-10;
  int dedupe_digits = 8;
  std::uint64_t seed = 42;
  // Line search only: rounds without census change before the report is
  // declared stable, and worker count (0 reads SEGRE_LINES_THREADS, then
  // hardware concurrency).
  int stability_rounds = 3;
  int threads = 0;
};

// Divisor cut on the curve by a secant plane.
struct Divisor {
  bool has_exact = false;
  RatForm exact;  // monic-normalized, degree 2n-4, when has_exact
  // Numeric form normalized so its largest-modulus coefficient is 1.
  BinaryForm<std::complex<double>> approx{0};
  std::vector<ComplexPoint> points;  // roots with multiplicities
};

struct Secant {
  Eigen::VectorXcd lambda_a, lambda_b;  // independent covectors cutting M
  std::optional<RatVec> lambda_a_exact, lambda_b_exact;
  Divisor divisor;
  int multiplicity = 1;
  bool is_real = false;
};

struct SecantReport {
  std::vector<Secant> secants;
  int total_with_multiplicity = 0;
  bool certificate_ok = false;  // total equals C(n,2)
  std::vector<std::string> warnings;
  std::uint64_t seed = 0;
};

// The degree-6 form whose roots are the six node parameters of a plane
// quartic (n=3), computed by exact elimination.  Throws NonGenericCurve
// when the eliminant does not reduce to a squarefree sextic.
RatForm node_parameter_sextic(const JetCurve& C);

// The three nodes of a generic rational plane quartic, exactly.
SecantReport nodes_exact_n3(const JetCurve& C);

// Certified numeric enumeration for n >= 3.
SecantReport secants_numeric(const JetCurve& C, const SolverConfig& cfg = {});

// Degree of the divisor the two covectors cut on C: deg gcd of the two
// pullbacks, exact when the covectors are (or rationalize to) rational,
// certified numeric otherwise.
int verify_secant(const JetCurve& C, const Secant& M);

// Covectors lambda with q dividing lambda . p, as an exact kernel
// projection.  q is a node divisor of an n=3 curve iff the result has
// dimension 2; the basis spans the pencil of lines through the node.
std::vector<RatVec> divisor_pencil(const JetCurve& C, const RatForm& q);

}  // namespace trisign
