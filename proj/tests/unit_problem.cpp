#include "sg/problem.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "sg/errors.hpp"

using sg::BoundaryMatrix;
using sg::cplx;
using sg::Datum;
using sg::RowKind;

namespace {

using Mat = std::vector<std::vector<double>>;

Mat dirichlet2() { return {{0, 0, 1, 0}, {0, 0, 0, 1}}; }

Mat family3(double beta) {
  return {{0, 0, 1, beta, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}};
}

Mat pseudoperiodic3(double beta) {
  return {{1, -1, 0, 0, 0, 0}, {0, 0, 1, beta, 0, 0}, {0, 0, 0, 0, 1, -1}};
}

// Random smooth function in the kernel of the boundary rows: take a few
// atoms, solve for a coefficient combination annihilated by every row.
Datum random_in_domain(const BoundaryMatrix& A, std::mt19937& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const int n = A.n;
  const int k = n + 2;
  std::vector<Datum> basis;
  for (int i = 0; i < k; ++i) {
    basis.push_back(Datum({{cplx(1.0, 0.0), i % 3, cplx(U(rng), U(rng))}}));
  }
  // rows: A * bv(atom_i) stacked as columns -> n x k complex system
  std::vector<std::vector<cplx>> M(n, std::vector<cplx>(k));
  for (int i = 0; i < k; ++i) {
    auto bv = basis[i].boundary_vector(n);
    for (int r = 0; r < n; ++r) {
      cplx acc(0.0, 0.0);
      for (int c = 0; c < 2 * n; ++c) acc += A.rows[r][c] * bv[c];
      M[r][i] = acc;
    }
  }
  // Gaussian elimination to echelon form, then back-substitute a kernel
  // vector with free coordinates set to random values.
  std::vector<int> pivots;
  int rr = 0;
  for (int c = 0; c < k && rr < n; ++c) {
    int best = -1;
    double mag = 1e-11;
    for (int r = rr; r < n; ++r) {
      if (std::abs(M[r][c]) > mag) { mag = std::abs(M[r][c]); best = r; }
    }
    if (best < 0) continue;
    std::swap(M[best], M[rr]);
    for (int r = 0; r < n; ++r) {
      if (r == rr) continue;
      cplx f = M[r][c] / M[rr][c];
      for (int j = c; j < k; ++j) M[r][j] -= f * M[rr][j];
    }
    pivots.push_back(c);
    ++rr;
  }
  std::vector<cplx> coeff(k);
  std::vector<bool> is_pivot(k, false);
  for (int p : pivots) is_pivot[p] = true;
  for (int c = 0; c < k; ++c) {
    if (!is_pivot[c]) coeff[c] = cplx(U(rng), U(rng));
  }
  for (int r = static_cast<int>(pivots.size()) - 1; r >= 0; --r) {
    int pc = pivots[r];
    cplx acc(0.0, 0.0);
    for (int c = pc + 1; c < k; ++c) acc += M[r][c] * coeff[c];
    coeff[pc] = -acc / M[r][pc];
  }
  Datum out;
  for (int i = 0; i < k; ++i) out = out + basis[i].scaled(coeff[i]);
  return out;
}

Datum op_datum(const Datum& u, int n) {
  cplx factor = std::pow(cplx(0.0, -1.0), n);
  return u.derivative(n).scaled(factor);
}

}  // namespace

TEST_CASE("validate accepts the classical and family matrices") {
  auto D = sg::validate(2, dirichlet2());
  CHECK(D.pivots == std::vector<int>({2, 3}));
  auto F = sg::validate(3, family3(0.7));
  CHECK(F.pivots == std::vector<int>({2, 4, 5}));
  auto P = sg::validate(3, pseudoperiodic3(2.0));
  CHECK(P.pivots == std::vector<int>({0, 2, 4}));
}

TEST_CASE("validate rejects malformed input with named errors") {
  // duplicate row -> rank deficient (second row zero after leading check)
  try {
    sg::validate(2, {{1, 0, 0, 0}, {2, 0, 0, 0}});
    FAIL("expected throw");
  } catch (const sg::Error& e) {
    // the duplicate leading entry violates RREF before rank is at issue
    CHECK((e.code() == "NotRREF" || e.code() == "RankDeficient"));
  }
  try {
    sg::validate(2, {{0, 0, 1, 0}});
    FAIL("expected throw");
  } catch (const sg::Error& e) {
    CHECK(e.code() == "BadShape");
  }
  try {
    sg::validate(2, {{0, 0, 2, 0}, {0, 0, 0, 1}});
    FAIL("expected throw");
  } catch (const sg::Error& e) {
    CHECK(e.code() == "NotRREF");
  }
  try {
    sg::validate(2, {{0, 0, 0, 0}, {0, 0, 0, 1}});
    FAIL("expected throw");
  } catch (const sg::Error& e) {
    CHECK(e.code() == "RankDeficient");
  }
}

TEST_CASE("classification of the worked families") {
  auto F = sg::validate(3, family3(0.5));
  auto c = sg::classify(F);
  CHECK(c.non_robin);
  CHECK(c.symmetric);
  REQUIRE(c.row.size() == 3);
  CHECK(*c.row[0].order == 1);
  CHECK(c.row[0].kind == RowKind::Coupled);
  CHECK(c.row[0].coupling == doctest::Approx(0.5));
  CHECK(*c.row[1].order == 0);
  CHECK(c.row[1].kind == RowKind::LeftOnly);
  CHECK(*c.row[2].order == 0);
  CHECK(c.row[2].kind == RowKind::RightOnly);

  auto P = sg::classify(sg::validate(3, pseudoperiodic3(2.0)));
  CHECK(P.non_robin);
  CHECK(P.symmetric);
  CHECK(P.row[0].coupling == doctest::Approx(-1.0));
  CHECK(P.row[1].coupling == doctest::Approx(2.0));
  CHECK(P.row[2].coupling == doctest::Approx(-1.0));

  // A row mixing two derivative orders is Robin.
  auto R = sg::classify(sg::validate(2, {{1, 0, 1, 0}, {0, 1, 0, 0}}));
  CHECK_FALSE(R.non_robin);
  CHECK_FALSE(R.row[0].order.has_value());
}

TEST_CASE("symmetry condition rejects clashing pivot pattern") {
  // u'(1)=0, u(0)=0: pivot at (order 0, left) clashes with pivot at
  // (order 1, right).
  auto A = sg::validate(2, {{0, 1, 0, 0}, {0, 0, 1, 0}});
  auto c = sg::classify(A);
  CHECK(c.non_robin);
  CHECK_FALSE(c.symmetric);
}

TEST_CASE("adjoint: Dirichlet is selfadjoint, coupling inverts for the pseudoperiodic family") {
  auto D = sg::validate(2, dirichlet2());
  auto Ds = sg::adjoint(D);
  CHECK(Ds.rows == dirichlet2());

  auto P = sg::validate(3, pseudoperiodic3(2.0));
  auto Ps = sg::adjoint(P);
  auto c = sg::classify(Ps);
  // adjoint of the beta member is the 1/beta member
  CHECK(c.row[0].coupling == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(c.row[1].coupling == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.row[2].coupling == doctest::Approx(-1.0).epsilon(1e-12));

  // beta = -1 member is periodic and selfadjoint.
  auto Per = sg::validate(3, pseudoperiodic3(-1.0));
  CHECK(sg::adjoint(Per).rows == pseudoperiodic3(-1.0));
}

TEST_CASE("adjoint of the first-family matrix pins the known rows") {
  // beta=0: boundary conditions u'(0)=u(0)=u(1)=0; adjoint conditions are
  // v'(1)=v(0)=v(1)=0.
  auto A = sg::validate(3, family3(0.0));
  auto As = sg::adjoint(A);
  Mat want = {{0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}};
  REQUIRE(As.rows.size() == 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 6; ++c)
      CHECK(As.rows[r][c] == doctest::Approx(want[r][c]).epsilon(1e-12));
}

TEST_CASE("adjoint is an involution on row spaces") {
  for (const Mat& m : {dirichlet2()}) {
    auto A = sg::validate(2, m);
    auto back = sg::adjoint(sg::adjoint(A));
    for (size_t r = 0; r < m.size(); ++r)
      for (size_t c = 0; c < m[r].size(); ++c)
        CHECK(back.rows[r][c] == doctest::Approx(m[r][c]).epsilon(1e-10));
  }
  for (double beta : {0.0, -0.5, 0.7}) {
    auto A = sg::validate(3, family3(beta));
    auto back = sg::adjoint(sg::adjoint(A));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 6; ++c)
        CHECK(back.rows[r][c] == doctest::Approx(family3(beta)[r][c]).epsilon(1e-10));
  }
  for (double beta : {2.0, -1.0, 1.7}) {
    auto A = sg::validate(3, pseudoperiodic3(beta));
    auto back = sg::adjoint(sg::adjoint(A));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 6; ++c)
        CHECK(back.rows[r][c] == doctest::Approx(pseudoperiodic3(beta)[r][c]).epsilon(1e-10));
  }
}

TEST_CASE("adjoint preserves the classification conditions") {
  for (double beta : {0.0, -0.5}) {
    auto A = sg::validate(3, family3(beta));
    auto cs = sg::classify(sg::adjoint(A));
    CHECK(cs.non_robin);
    CHECK(cs.symmetric);
  }
}

TEST_CASE("Green's identity holds for random domain pairs") {
  std::mt19937 rng(2024);
  std::vector<std::pair<int, Mat>> cases = {
      {2, dirichlet2()}, {3, family3(-0.5)}, {3, family3(0.0)}, {3, pseudoperiodic3(2.0)}};
  for (auto& [n, m] : cases) {
    auto A = sg::validate(n, m);
    auto As = sg::adjoint(A);
    for (int trial = 0; trial < 25; ++trial) {
      Datum u = random_in_domain(A, rng);
      Datum v = random_in_domain(As, rng);
      Datum Su = op_datum(u, n);
      Datum Sv = op_datum(v, n);
      cplx lhs = Su.inner_product(v);
      cplx rhs = u.inner_product(Sv);
      double scale = Su.norm() * v.norm() + u.norm() * Sv.norm();
      if (scale < 1e-12) continue;
      CHECK(std::abs(lhs - rhs) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("compatibility residual flags bad initial data") {
  auto D = sg::validate(2, dirichlet2());
  CHECK(sg::compatibility_residual(D, Datum::named("sinpi")) < 1e-12);
  Datum one({{cplx(1.0, 0.0), 0, cplx(0.0, 0.0)}});
  CHECK(sg::compatibility_residual(D, one) == doctest::Approx(1.0));

  auto F = sg::validate(3, family3(0.0));
  CHECK(sg::compatibility_residual(F, Datum::named("bump-poly")) < 1e-12);
}
