#include "sg/problem.hpp"

#include <cmath>
#include <set>
#include <string>

#include "sg/errors.hpp"

namespace sg {
namespace {

using Mat = std::vector<std::vector<double>>;

bool near_zero(double x) { return std::abs(x) < kCoeffZeroTol; }

// Plain Gauss-Jordan to RREF with partial pivoting; tolerance as above.
Mat rref(Mat m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    double best = kCoeffZeroTol;
    for (int i = r; i < rows; ++i) {
      if (std::abs(m[i][c]) > best) { best = std::abs(m[i][c]); piv = i; }
    }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    const double lead = m[r][c];
    for (int j = 0; j < cols; ++j) m[r][j] /= lead;
    m[r][c] = 1.0;
    for (int i = 0; i < rows; ++i) {
      if (i == r || near_zero(m[i][c])) continue;
      const double f = m[i][c];
      for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
      m[i][c] = 0.0;
    }
    ++r;
  }
  // Snap dust to zero so downstream classification reads clean constants.
  for (auto& row : m)
    for (double& x : row)
      if (near_zero(x)) x = 0.0;
  return m;
}

int order_of_column(int n, int c) { return n - 1 - c / 2; }

}  // namespace

BoundaryMatrix validate(int n, const Mat& raw) {
  if (n < 2) throw Error("BadShape", "operator order n must be >= 2, got " + std::to_string(n));
  if (static_cast<int>(raw.size()) != n) {
    throw Error("BadShape", "expected " + std::to_string(n) + " rows, got " +
                                std::to_string(raw.size()));
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(raw[i].size()) != 2 * n) {
      throw Error("BadShape", "row " + std::to_string(i + 1) + " has " +
                                  std::to_string(raw[i].size()) + " columns, expected " +
                                  std::to_string(2 * n));
    }
  }

  BoundaryMatrix A;
  A.n = n;
  A.rows = raw;
  int prev_pivot = -1;
  for (int i = 0; i < n; ++i) {
    int lead = -1;
    for (int j = 0; j < 2 * n; ++j) {
      if (!near_zero(raw[i][j])) { lead = j; break; }
    }
    if (lead < 0) {
      throw Error("RankDeficient", "row " + std::to_string(i + 1) + " is zero");
    }
    if (std::abs(raw[i][lead] - 1.0) > kCoeffZeroTol) {
      throw Error("NotRREF", "row " + std::to_string(i + 1) + " leading entry at column " +
                                 std::to_string(lead + 1) + " is not 1");
    }
    if (lead <= prev_pivot) {
      throw Error("NotRREF", "pivot of row " + std::to_string(i + 1) +
                                 " does not advance past previous row");
    }
    for (int r = 0; r < n; ++r) {
      if (r != i && !near_zero(raw[r][lead])) {
        throw Error("NotRREF", "pivot column " + std::to_string(lead + 1) +
                                   " has a nonzero entry in row " + std::to_string(r + 1));
      }
    }
    prev_pivot = lead;
    A.pivots.push_back(lead);
  }
  return A;
}

Classification classify(const BoundaryMatrix& A) {
  const int n = A.n;
  Classification out;
  out.row.resize(n);
  out.non_robin = true;

  for (int l = 0; l < n; ++l) {
    std::set<int> orders;
    bool has_left = false, has_right = false;
    for (int c = 0; c < 2 * n; ++c) {
      if (near_zero(A.rows[l][c])) continue;
      orders.insert(order_of_column(n, c));
      (c % 2 == 0 ? has_left : has_right) = true;
    }
    RowClass rc;
    if (orders.size() == 1) {
      const int m = *orders.begin();
      rc.order = m;
      if (has_left && has_right) {
        rc.kind = RowKind::Coupled;
        // RREF gives the left coefficient 1, so the right one is the
        // coupling constant directly.
        rc.coupling = A.rows[l][2 * (n - 1 - m) + 1];
      } else if (has_left) {
        rc.kind = RowKind::LeftOnly;
        rc.coupling = 1.0;
      } else {
        rc.kind = RowKind::RightOnly;
        rc.coupling = 1.0;
      }
    } else {
      out.non_robin = false;
      rc.order.reset();
      rc.kind = has_left ? (has_right ? RowKind::Coupled : RowKind::LeftOnly)
                         : RowKind::RightOnly;
    }
    out.row[l] = rc;
  }

  // Symmetry: a pivot at (order r, end e) forbids a pivot at
  // (order n-1-r, other end), and coupled rows of complementary orders must
  // carry equal coupling constants.
  out.symmetric = out.non_robin;
  if (out.symmetric) {
    std::set<int> pivot_cols(A.pivots.begin(), A.pivots.end());
    for (int col : A.pivots) {
      const int r = order_of_column(n, col);
      const int e = col % 2;
      // Order n-1-r at the other end lives in column 2r + (1-e).
      const int partner_col = 2 * r + (1 - e);
      if (pivot_cols.count(partner_col)) { out.symmetric = false; break; }
    }
  }
  if (out.symmetric) {
    for (int l = 0; l < n && out.symmetric; ++l) {
      if (out.row[l].kind != RowKind::Coupled) continue;
      const int r = *out.row[l].order;
      for (int l2 = 0; l2 < n; ++l2) {
        if (out.row[l2].kind != RowKind::Coupled) continue;
        if (*out.row[l2].order != n - 1 - r) continue;
        if (std::abs(out.row[l2].coupling - out.row[l].coupling) > kCoeffZeroTol) {
          out.symmetric = false;
          break;
        }
      }
    }
  }
  return out;
}

std::vector<std::vector<double>> boundary_form(int n) {
  Mat B(2 * n, std::vector<double>(2 * n, 0.0));
  // From n integrations by parts:
  //   [sum_m (-1)^m u^{(n-1-m)} conj(v)^{(m)}] at 1 minus at 0,
  // with u^{(n-1-m)}(e) sitting at boundary slot 2m+e and v^{(m)}(e) at
  // slot 2(n-1-m)+e.
  for (int m = 0; m < n; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    for (int e = 0; e < 2; ++e) {
      B[2 * m + e][2 * (n - 1 - m) + e] = sign * (e == 1 ? 1.0 : -1.0);
    }
  }
  return B;
}

BoundaryMatrix adjoint(const BoundaryMatrix& A) {
  const int n = A.n;
  // Kernel of A: free columns parameterize; pivot columns back-substitute.
  std::vector<bool> is_pivot(2 * n, false);
  for (int p : A.pivots) is_pivot[p] = true;
  Mat K;  // n kernel basis vectors, each of length 2n
  for (int c = 0; c < 2 * n; ++c) {
    if (is_pivot[c]) continue;
    std::vector<double> v(2 * n, 0.0);
    v[c] = 1.0;
    for (int r = 0; r < n; ++r) v[A.pivots[r]] = -A.rows[r][c];
    K.push_back(v);
  }
  if (static_cast<int>(K.size()) != n) {
    throw Error("DegenerateForm", "kernel dimension mismatch");
  }

  const Mat B = boundary_form(n);
  Mat M(n, std::vector<double>(2 * n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 2 * n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 2 * n; ++k) acc += K[i][k] * B[k][j];
      M[i][j] = acc;
    }
  }
  Mat R = rref(M);
  // Reuse validate for the invariant checks; rank loss here means the
  // bilinear form construction itself broke.
  try {
    return validate(n, R);
  } catch (const Error& e) {
    throw Error("DegenerateForm", std::string("adjoint rows not full rank: ") + e.what());
  }
}

double compatibility_residual(const BoundaryMatrix& A, const Datum& q0) {
  const auto bv = q0.boundary_vector(A.n);
  double worst = 0.0;
  for (int r = 0; r < A.n; ++r) {
    cplx acc(0.0, 0.0);
    for (int c = 0; c < 2 * A.n; ++c) acc += A.rows[r][c] * bv[c];
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

}  // namespace sg
