#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "sg/datum.hpp"

namespace sg {

// Boundary coefficient matrix for (-i d/dx)^n on [0,1]: n rows, 2n columns in
// the order (alpha^{(n-1)}, beta^{(n-1)}, ..., alpha^{(0)}, beta^{(0)}),
// i.e. column 2(n-1-r)+e holds the coefficient of u^{(r)} at endpoint e.
// Always stored in reduced row-echelon form of rank n.
struct BoundaryMatrix {
  int n{0};
  std::vector<std::vector<double>> rows;
  std::vector<int> pivots;  // pivot column of each row, strictly increasing
};

enum class RowKind { LeftOnly, RightOnly, Coupled };

struct RowClass {
  std::optional<int> order;  // absent when the row mixes derivative orders
  RowKind kind{RowKind::LeftOnly};
  double coupling{1.0};  // 1 when uncoupled
};

struct Classification {
  bool non_robin{false};
  bool symmetric{false};
  std::vector<RowClass> row;
};

// Entries below this are treated as exact zeros; inputs are human-entered
// rationals and RREF detection should not chase rounding dust.
inline constexpr double kCoeffZeroTol = 1e-12;

// Rejects anything that is not an RREF rank-n matrix of the right shape.
BoundaryMatrix validate(int n, const std::vector<std::vector<double>>& raw);

Classification classify(const BoundaryMatrix& A);

// Boundary coefficient matrix of the adjoint operator: rows span the
// annihilator of ker(A) under the boundary bilinear form of (-i d/dx)^n,
// renormalized to RREF.
BoundaryMatrix adjoint(const BoundaryMatrix& A);

// max-norm of A applied to the boundary vector of q0 (0 means admissible).
double compatibility_residual(const BoundaryMatrix& A, const Datum& q0);

// The 2n x 2n boundary bilinear form B with
//   <Su,v> - <u,S*v> = (-i)^n * bv(u)^T B conj(bv(v)).
std::vector<std::vector<double>> boundary_form(int n);

}  // namespace sg
