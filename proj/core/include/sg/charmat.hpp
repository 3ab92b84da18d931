#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "sg/datum.hpp"
#include "sg/problem.hpp"

namespace sg {

// Everything the spectral layers need about one operator: the boundary
// matrix, its adjoint, both classifications, and (when the non-Robin and
// symmetry conditions hold) the column correspondence between the two
// characteristic matrices together with the identity constants C_j.
struct CharContext {
  int n{0};
  cplx a{0.0, 1.0};  // direction coefficient, +i or -i
  BoundaryMatrix A;
  BoundaryMatrix Astar;
  Classification cls;
  Classification cls_star;
  cplx omega{0.0, 0.0};  // exp(2 pi i / n)

  // Column j of the characteristic matrix (a row of Astar) pairs with
  // column pi[j] of the adjoint-side characteristic matrix (a row of A):
  // same derivative order, left/right kinds swapped. Empty when the
  // conditions fail.
  std::vector<int> pi;
  // Effective constants making the conjugation identities exact:
  // conj(psi^j(1-x)) = C[j] * phi^j(x) and the minor/zeta identities below.
  std::vector<double> C;

  bool conditions_hold() const { return !pi.empty(); }
};

CharContext make_context(const BoundaryMatrix& A, cplx a);

// Characteristic matrix of the boundary-value transform, built from the
// *adjoint* boundary coefficients: row k carries mu_k = -i omega^k rho,
// entry(k,j) = sum_r mu_k^r (alpha*_j^r + beta*_j^r e^{mu_k}).
SCMatrix char_matrix_pde(const BoundaryMatrix& coeffs, int n, cplx rho);

// One-sided polynomial pieces of row k: (plus_j, minus_j) with
// entry = plus + minus * e^{mu_k}.
std::pair<std::vector<cplx>, std::vector<cplx>> char_row_pieces(
    const BoundaryMatrix& coeffs, int n, cplx rho, int k);

ScaledComplex delta_pde(const CharContext& ctx, cplx rho);

// Determinant whose nonzero zeros' n-th powers are the operator's
// eigenvalues; built from the original coefficients with e^{+i omega^k rho}
// attached to the right-endpoint part.
ScaledComplex char_det_S(const CharContext& ctx, cplx rho);

// Signed first minor (cofactor) of the characteristic matrix.
ScaledComplex minor_X(const CharContext& ctx, cplx rho, int r, int j);

// zeta_j(rho, f) = sum_r cof_{rj} * fhat(omega^r rho).
ScaledComplex zeta_j(const CharContext& ctx, cplx rho, const Datum& f, int j);
std::vector<ScaledComplex> zeta_all(const CharContext& ctx, cplx rho, const Datum& f);

// (zeta^+, zeta^-): the row-0 plus/minus pieces contracted with zeta_j.
std::pair<ScaledComplex, ScaledComplex> zeta_pm(const CharContext& ctx, cplx rho,
                                                const Datum& f);

// Same objects for the adjoint problem (characteristic matrix built from the
// original coefficients, since adjoint-of-adjoint returns A).
ScaledComplex adjoint_minor_X(const CharContext& ctx, cplx rho, int r, int j);
ScaledComplex adjoint_zeta_j(const CharContext& ctx, cplx rho, const Datum& f, int j);

}  // namespace sg
