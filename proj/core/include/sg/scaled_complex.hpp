#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

namespace sg {

using cplx = std::complex<double>;

// Complex value stored as mantissa * 2^k with an integer exponent. The
// determinant of an n x n matrix whose entries contain factors like
// exp(i*w*rho) leaves double range once |rho| grows past ~700/n, so every
// quantity multiplying such entries is kept in this form. A binary exponent
// (rather than a logarithmic scale) keeps all rescaling exact: ldexp never
// rounds, so equal values cancel to exact zero in sums and eliminations.
struct ScaledComplex {
  cplx m{0.0, 0.0};
  long long k{0};

  ScaledComplex() = default;
  ScaledComplex(cplx mantissa, long long bexp) : m(mantissa), k(bexp) { normalize(); }

  static ScaledComplex of(cplx z) { return ScaledComplex(z, 0); }
  static ScaledComplex zero() { return ScaledComplex(); }
  static ScaledComplex one() { return ScaledComplex(cplx(1.0, 0.0), 0); }

  // exp(w) without overflow. The real part is split against ln2 in two
  // pieces (Cody-Waite) so the remainder stays accurate to ~1 ulp even for
  // |Re w| in the 1e5 range.
  static ScaledComplex expc(cplx w) {
    const double ln2_hi = 6.93147180369123816490e-01;
    const double ln2_lo = 1.90821492927058770002e-10;
    double t = std::floor(w.real() / std::numbers::ln2);
    double rem = (w.real() - t * ln2_hi) - t * ln2_lo;
    return ScaledComplex(std::polar(std::exp(rem), w.imag()),
                         static_cast<long long>(t));
  }

  bool is_zero() const { return m == cplx(0.0, 0.0); }

  void normalize() {
    if (m == cplx(0.0, 0.0)) { k = 0; return; }
    double a = std::abs(m);
    if (a >= 0.5 && a < 2.0) return;
    int e = 0;
    std::frexp(a, &e);
    m = cplx(std::ldexp(m.real(), -e), std::ldexp(m.imag(), -e));
    k += e;
  }

  double log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(m)) + static_cast<double>(k) * std::numbers::ln2;
  }
  double arg() const { return std::arg(m); }

  // May overflow/underflow to inf/0 by design; callers that care use log_abs.
  cplx to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    int e = static_cast<int>(std::clamp(k, -4000LL, 4000LL));
    return cplx(std::ldexp(m.real(), e), std::ldexp(m.imag(), e));
  }

  ScaledComplex operator-() const { return ScaledComplex(-m, k); }

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return ScaledComplex(a.m * b.m, a.k + b.k);
  }
  friend ScaledComplex operator*(const ScaledComplex& a, cplx c) {
    return a * of(c);
  }
  friend ScaledComplex operator*(cplx c, const ScaledComplex& a) { return a * of(c); }
  friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
    return ScaledComplex(a.m / b.m, a.k - b.k);
  }
  friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ScaledComplex& hi = (a.k >= b.k) ? a : b;
    const ScaledComplex& lo = (a.k >= b.k) ? b : a;
    long long d = lo.k - hi.k;
    if (d < -1100) return hi;  // addend entirely below representable range
    int e = static_cast<int>(d);
    cplx shifted(std::ldexp(lo.m.real(), e), std::ldexp(lo.m.imag(), e));
    return ScaledComplex(hi.m + shifted, hi.k);
  }
  friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) {
    return a + (-b);
  }
  ScaledComplex& operator+=(const ScaledComplex& o) { *this = *this + o; return *this; }
  ScaledComplex& operator*=(const ScaledComplex& o) { *this = *this * o; return *this; }

  ScaledComplex conj() const { return ScaledComplex(std::conj(m), k); }

  ScaledComplex pow_int(int p) const {
    ScaledComplex r = one();
    ScaledComplex base = *this;
    int e = p;
    if (e < 0) { base = one() / base; e = -e; }
    while (e > 0) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }
};

// Dense column-major n x n matrix of scaled entries, just enough for the
// characteristic matrices (n stays single digit).
class SCMatrix {
 public:
  explicit SCMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}
  int size() const { return n_; }
  ScaledComplex& at(int r, int c) { return a_[static_cast<size_t>(c) * n_ + r]; }
  const ScaledComplex& at(int r, int c) const { return a_[static_cast<size_t>(c) * n_ + r]; }

  // Determinant by LU with partial pivoting on log-magnitude.
  ScaledComplex det() const;
  // Signed cofactor (-1)^{r+c} * det(minor with row r, column c removed).
  ScaledComplex cofactor(int r, int c) const;

 private:
  int n_;
  std::vector<ScaledComplex> a_;
};

}  // namespace sg
