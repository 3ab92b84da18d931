#include "sg/scaled_complex.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using sg::cplx;
using sg::ScaledComplex;
using sg::SCMatrix;

namespace {

double rel_err(cplx got, cplx want) {
  double scale = std::max(1e-300, std::abs(want));
  return std::abs(got - want) / scale;
}

}  // namespace

TEST_CASE("scaled arithmetic round-trips against std::complex") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    cplx a(U(rng), U(rng)), b(U(rng), U(rng));
    if (std::abs(b) < 1e-3) continue;
    auto sa = ScaledComplex::of(a), sb = ScaledComplex::of(b);
    CHECK(rel_err((sa * sb).to_complex(), a * b) < 1e-14);
    CHECK(rel_err((sa / sb).to_complex(), a / b) < 1e-14);
    CHECK(rel_err((sa + sb).to_complex(), a + b) < 1e-13);
    CHECK(rel_err((sa - sb).to_complex(), a - b) < 1e-13);
  }
}

TEST_CASE("exp of large arguments stays finite in scaled form") {
  // e^{900} overflows double, but log_abs must still be exact.
  auto big = ScaledComplex::expc(cplx(900.0, 2.5));
  CHECK(big.log_abs() == doctest::Approx(900.0).epsilon(1e-14));
  CHECK(big.arg() == doctest::Approx(2.5).epsilon(1e-12));

  auto prod = big * ScaledComplex::expc(cplx(-1800.0, 0.0));
  CHECK(prod.log_abs() == doctest::Approx(-900.0).epsilon(1e-14));
  CHECK(std::abs(prod.to_complex()) == doctest::Approx(std::exp(-900.0)));
}

TEST_CASE("addition keeps the dominant scale") {
  auto x = ScaledComplex::expc(cplx(500.0, 0.0));
  auto y = ScaledComplex::expc(cplx(-500.0, 0.0));
  auto s = x + y;
  CHECK(s.log_abs() == doctest::Approx(500.0).epsilon(1e-14));
  // Exact cancellation returns a true zero.
  auto z = x - x;
  CHECK(z.is_zero());
  CHECK(std::isinf(z.log_abs()));
}

TEST_CASE("pow_int matches repeated multiplication") {
  auto base = ScaledComplex::of(cplx(1.5, -0.7));
  auto p = base.pow_int(11);
  cplx want = std::pow(cplx(1.5, -0.7), 11);
  CHECK(rel_err(p.to_complex(), want) < 1e-13);
  auto inv = base.pow_int(-3);
  CHECK(rel_err(inv.to_complex(), 1.0 / std::pow(cplx(1.5, -0.7), 3)) < 1e-13);
}

TEST_CASE("determinant agrees with cofactor expansion on random matrices") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3;
    SCMatrix M(n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        M.at(r, c) = ScaledComplex::of(cplx(U(rng), U(rng)));
    // Laplace expansion along every row must reproduce det.
    cplx d = M.det().to_complex();
    for (int r = 0; r < n; ++r) {
      cplx acc(0.0, 0.0);
      for (int c = 0; c < n; ++c) {
        acc += M.at(r, c).to_complex() * M.cofactor(r, c).to_complex();
      }
      CHECK(rel_err(acc, d) < 1e-12);
    }
  }
}

TEST_CASE("determinant survives wildly scaled rows") {
  SCMatrix M(2);
  // [[e^600 a, e^600 b], [c, d]]: det = e^600 (ad - bc)
  cplx a(1.0, 0.5), b(-0.3, 0.2), c(0.7, -1.1), d(0.4, 0.9);
  auto e600 = ScaledComplex::expc(cplx(600.0, 0.0));
  M.at(0, 0) = ScaledComplex::of(a) * e600;
  M.at(0, 1) = ScaledComplex::of(b) * e600;
  M.at(1, 0) = ScaledComplex::of(c);
  M.at(1, 1) = ScaledComplex::of(d);
  auto det = M.det();
  cplx want = a * d - b * c;
  CHECK(det.log_abs() == doctest::Approx(600.0 + std::log(std::abs(want))).epsilon(1e-13));
  CHECK(det.arg() == doctest::Approx(std::arg(want)).epsilon(1e-12));
}

TEST_CASE("singular matrix gives exact zero determinant") {
  SCMatrix M(3);
  for (int c = 0; c < 3; ++c) {
    auto v = ScaledComplex::of(cplx(1.0 + c, 2.0 - c));
    M.at(0, c) = v;
    M.at(1, c) = v * cplx(2.0, 0.0);  // row 1 = 2 * row 0
    M.at(2, c) = ScaledComplex::of(cplx(0.3 * c, 1.0));
  }
  CHECK(M.det().is_zero());
}
