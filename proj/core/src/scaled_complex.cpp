#include "sg/scaled_complex.hpp"

#include <limits>

namespace sg {

ScaledComplex SCMatrix::det() const {
  const int n = n_;
  SCMatrix lu = *this;
  ScaledComplex result = ScaledComplex::one();
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = lu.at(col, col).log_abs();
    for (int r = col + 1; r < n; ++r) {
      double cand = lu.at(r, col).log_abs();
      if (cand > best) { best = cand; piv = r; }
    }
    if (lu.at(piv, col).is_zero()) return ScaledComplex::zero();
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(lu.at(piv, c), lu.at(col, c));
      result = -result;
    }
    const ScaledComplex& p = lu.at(col, col);
    result = result * p;
    for (int r = col + 1; r < n; ++r) {
      if (lu.at(r, col).is_zero()) continue;
      ScaledComplex f = lu.at(r, col) / p;
      for (int c = col + 1; c < n; ++c) {
        lu.at(r, c) = lu.at(r, c) - f * lu.at(col, c);
      }
      lu.at(r, col) = ScaledComplex::zero();
    }
  }
  return result;
}

ScaledComplex SCMatrix::cofactor(int r, int c) const {
  const int n = n_;
  SCMatrix minor(n - 1);
  for (int i = 0, mi = 0; i < n; ++i) {
    if (i == r) continue;
    for (int j = 0, mj = 0; j < n; ++j) {
      if (j == c) continue;
      minor.at(mi, mj) = at(i, j);
      ++mj;
    }
    ++mi;
  }
  ScaledComplex d = (n == 1) ? ScaledComplex::one() : minor.det();
  return ((r + c) % 2 == 0) ? d : -d;
}

}  // namespace sg
