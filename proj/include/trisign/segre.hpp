#pragma once

// Residual pencils of secants, their Segre points (fixed points of the
// pencil's involution), the local hyperbolic/elliptic weight, and the
// global Segre index as a product over real secants.

#include <complex>

#include "trisign/binary_form.hpp"
#include "trisign/jet.hpp"
#include "trisign/secants.hpp"

namespace trisign {

// The degree-2 pencil left after splitting the secant divisor off the
// hyperplane sections through the secant.
template <typename S>
struct ResidualPencilT {
  BinaryForm<S> q0{2}, q1{2};
};
using ResidualPencil = ResidualPencilT<Rational>;
using ResidualPencilNum = ResidualPencilT<double>;

template <typename S>
struct SegrePointsT {
  BinaryForm<S> jacobian{2};  // roots are the two Segre points
  int disc_sign = 0;          // +1 two real, -1 conjugate imaginary
};
using SegrePoints = SegrePointsT<Rational>;
using SegrePointsNum = SegrePointsT<double>;

// Exact residual pencil of a verified secant carrying rational covectors
// and a rational divisor. q0 = (lambda_a . p) / f_D, q1 likewise.
ResidualPencil residual_pencil(const JetCurve& C, const Secant& M);

// Numeric residual pencil of a real secant: division by the divisor's
// linear factors with certified remainder margins.
ResidualPencilNum residual_pencil_numeric(const JetCurve& C, const Secant& M);

// Homogeneous Jacobian determinant of the pencil; its roots are the
// parameters where some member acquires a double root.
SegrePoints segre_points(const ResidualPencil& P);
SegrePointsNum segre_points_numeric(const ResidualPencilNum& P);

// +1 when the pencil is hyperbolic (both Segre points real), -1 when
// elliptic (conjugate imaginary).
int segre_weight(const ResidualPencil& P);
int segre_weight(const JetCurve& C, const Secant& M);

// Product of local weights over the real secants of a certified report,
// each raised to its multiplicity; conjugate pairs contribute +1.
int segre_index(const JetCurve& C, const SecantReport& report);

// Census-based probe for a secant whose divisor image spans one dimension
// less than a generic codimension-2 plane section. Never fires for n = 3.
bool secant_spans_deficient(const JetCurve& C, const SecantReport& report);

// Chord-diagram evaluation of the n = 3 index: real nodes give chords on
// the real parameter circle, imaginary node pairs are essential when one
// member's parameters share a half-plane; the index is
// (-1)^(interlaced chord pairs + essential pairs).
int chord_diagram_index_n3(const JetCurve& C, const SecantReport& report);

}  // namespace trisign
