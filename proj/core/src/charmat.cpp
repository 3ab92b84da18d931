#include "sg/charmat.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sg/errors.hpp"

namespace sg {
namespace {

int perm_sign(std::vector<int> p) {
  int s = 1;
  for (int i = 0; i < static_cast<int>(p.size()); ++i) {
    while (p[i] != i) {
      std::swap(p[i], p[p[i]]);
      s = -s;
    }
  }
  return s;
}

double row_gamma(const RowClass& rc) {
  return rc.kind == RowKind::Coupled ? rc.coupling : 1.0;
}

}  // namespace

CharContext make_context(const BoundaryMatrix& A, cplx a) {
  if (std::abs(std::abs(a.imag()) - 1.0) > 1e-14 || std::abs(a.real()) > 1e-14) {
    throw Error("BadShape", "direction coefficient must be +i or -i");
  }
  CharContext ctx;
  ctx.n = A.n;
  ctx.a = a;
  ctx.A = A;
  ctx.Astar = adjoint(A);
  ctx.cls = classify(A);
  ctx.cls_star = classify(ctx.Astar);
  ctx.omega = std::polar(1.0, 2.0 * std::numbers::pi / A.n);

  if (!(ctx.cls.non_robin && ctx.cls.symmetric && ctx.cls_star.non_robin &&
        ctx.cls_star.symmetric)) {
    return ctx;  // pi/C stay empty; eigenfunction layers gate on this
  }

  const int n = A.n;
  ctx.pi.assign(n, -1);
  std::vector<bool> used(n, false);
  for (int j = 0; j < n; ++j) {
    const RowClass& rs = ctx.cls_star.row[j];
    RowKind want = rs.kind == RowKind::LeftOnly    ? RowKind::RightOnly
                   : rs.kind == RowKind::RightOnly ? RowKind::LeftOnly
                                                   : RowKind::Coupled;
    for (int jp = 0; jp < n; ++jp) {
      if (used[jp]) continue;
      if (*ctx.cls.row[jp].order == *rs.order && ctx.cls.row[jp].kind == want) {
        ctx.pi[j] = jp;
        used[jp] = true;
        break;
      }
    }
    if (ctx.pi[j] < 0) {
      // Shapes that pass the symmetry condition always pair up; treat a
      // failure as the conditions not holding rather than guessing.
      ctx.pi.clear();
      return ctx;
    }
  }

  const int sgn = perm_sign(ctx.pi);
  ctx.C.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    // Base product over the adjoint rows' coupling constants...
    double inv = (((n + 1) / 2 - 1) % 2 == 0) ? 1.0 : -1.0;  // (-1)^(ceil(n/2)-1)
    for (int l = 0; l < n; ++l) {
      if (l == j) continue;
      inv *= 1.0 / row_gamma(ctx.cls_star.row[l]);
    }
    double c = 1.0 / inv;
    // ...then the frame correction: RREF columns differ from unit-normalized
    // ones by (-i rho)^{m_l} gamma_l, so the surviving constant picks up the
    // correspondence parity, the complementary order sum, and both gamma
    // products.
    int order_sum = 0;
    double ratio = 1.0;
    for (int l = 0; l < n; ++l) {
      if (l != ctx.pi[j]) {
        order_sum += *ctx.cls.row[l].order;
        ratio *= row_gamma(ctx.cls.row[l]);
      }
      if (l != j) ratio /= row_gamma(ctx.cls_star.row[l]);
    }
    c *= sgn * ((order_sum % 2 == 0) ? 1.0 : -1.0) * ratio;
    ctx.C[j] = c;
  }
  return ctx;
}

SCMatrix char_matrix_pde(const BoundaryMatrix& coeffs, int n, cplx rho) {
  SCMatrix M(n);
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / n);
  cplx wk(1.0, 0.0);
  for (int k = 0; k < n; ++k, wk *= w) {
    const cplx mu = cplx(0.0, -1.0) * wk * rho;
    const ScaledComplex E = ScaledComplex::expc(mu);
    for (int j = 0; j < n; ++j) {
      cplx plus(0.0, 0.0), minus(0.0, 0.0);
      cplx mur(1.0, 0.0);
      for (int r = 0; r < n; ++r, mur *= mu) {
        plus += mur * coeffs.rows[j][2 * (n - 1 - r)];
        minus += mur * coeffs.rows[j][2 * (n - 1 - r) + 1];
      }
      M.at(k, j) = ScaledComplex::of(plus) + ScaledComplex::of(minus) * E;
    }
  }
  return M;
}

std::pair<std::vector<cplx>, std::vector<cplx>> char_row_pieces(
    const BoundaryMatrix& coeffs, int n, cplx rho, int k) {
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / n);
  const cplx mu = cplx(0.0, -1.0) * std::pow(w, k) * rho;
  std::vector<cplx> plus(n, cplx(0.0, 0.0)), minus(n, cplx(0.0, 0.0));
  for (int j = 0; j < n; ++j) {
    cplx mur(1.0, 0.0);
    for (int r = 0; r < n; ++r, mur *= mu) {
      plus[j] += mur * coeffs.rows[j][2 * (n - 1 - r)];
      minus[j] += mur * coeffs.rows[j][2 * (n - 1 - r) + 1];
    }
  }
  return {plus, minus};
}

ScaledComplex delta_pde(const CharContext& ctx, cplx rho) {
  return char_matrix_pde(ctx.Astar, ctx.n, rho).det();
}

ScaledComplex char_det_S(const CharContext& ctx, cplx rho) {
  const int n = ctx.n;
  SCMatrix M(n);
  cplx wk(1.0, 0.0);
  for (int k = 0; k < n; ++k, wk *= ctx.omega) {
    const cplx nu = cplx(0.0, 1.0) * wk * rho;  // +i omega^k rho
    const ScaledComplex E = ScaledComplex::expc(nu);
    for (int j = 0; j < n; ++j) {
      cplx left(0.0, 0.0), right(0.0, 0.0);
      cplx nur(1.0, 0.0);
      for (int r = 0; r < n; ++r, nur *= nu) {
        left += nur * ctx.A.rows[j][2 * (n - 1 - r)];
        right += nur * ctx.A.rows[j][2 * (n - 1 - r) + 1];
      }
      M.at(k, j) = ScaledComplex::of(left) + ScaledComplex::of(right) * E;
    }
  }
  return M.det();
}

ScaledComplex minor_X(const CharContext& ctx, cplx rho, int r, int j) {
  return char_matrix_pde(ctx.Astar, ctx.n, rho).cofactor(r, j);
}

std::vector<ScaledComplex> zeta_all(const CharContext& ctx, cplx rho, const Datum& f) {
  const int n = ctx.n;
  const SCMatrix M = char_matrix_pde(ctx.Astar, n, rho);
  std::vector<ScaledComplex> hats(n);
  cplx wr(1.0, 0.0);
  for (int r = 0; r < n; ++r, wr *= ctx.omega) {
    hats[r] = f.half_transform_scaled(wr * rho);
  }
  std::vector<ScaledComplex> z(n, ScaledComplex::zero());
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < n; ++r) {
      z[j] += M.cofactor(r, j) * hats[r];
    }
  }
  return z;
}

ScaledComplex zeta_j(const CharContext& ctx, cplx rho, const Datum& f, int j) {
  return zeta_all(ctx, rho, f)[j];
}

std::pair<ScaledComplex, ScaledComplex> zeta_pm(const CharContext& ctx, cplx rho,
                                                const Datum& f) {
  const auto z = zeta_all(ctx, rho, f);
  const auto [plus, minus] = char_row_pieces(ctx.Astar, ctx.n, rho, 0);
  ScaledComplex zp = ScaledComplex::zero(), zm = ScaledComplex::zero();
  for (int j = 0; j < ctx.n; ++j) {
    zp += ScaledComplex::of(plus[j]) * z[j];
    zm += ScaledComplex::of(minus[j]) * z[j];
  }
  return {zp, zm};
}

ScaledComplex adjoint_minor_X(const CharContext& ctx, cplx rho, int r, int j) {
  return char_matrix_pde(ctx.A, ctx.n, rho).cofactor(r, j);
}

ScaledComplex adjoint_zeta_j(const CharContext& ctx, cplx rho, const Datum& f, int j) {
  const int n = ctx.n;
  const SCMatrix M = char_matrix_pde(ctx.A, n, rho);
  ScaledComplex z = ScaledComplex::zero();
  cplx wr(1.0, 0.0);
  for (int r = 0; r < n; ++r, wr *= ctx.omega) {
    z += M.cofactor(r, j) * f.half_transform_scaled(wr * rho);
  }
  return z;
}

}  // namespace sg
