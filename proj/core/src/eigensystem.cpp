#include "sg/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "sg/errors.hpp"
#include "sg/parallel.hpp"

namespace sg {

namespace {

constexpr double kLn2 = 0.6931471805599453;

void require_conditions(const CharContext& ctx) {
  if (!ctx.conditions_hold())
    throw Error("ConditionsViolated",
                "boundary conditions are Robin or asymmetric; no column "
                "correspondence exists");
}

void require_column(const CharContext& ctx, int j) {
  if (j < 0 || j >= ctx.n) throw Error("BadIndex", "column out of range");
}

// Cofactor column j of the characteristic matrix built from coeffs at rho.
std::vector<ScaledComplex> cofactor_column(const BoundaryMatrix& coeffs, int n,
                                           cplx rho, int j) {
  const SCMatrix M = char_matrix_pde(coeffs, n, rho);
  std::vector<ScaledComplex> col(n);
  for (int r = 0; r < n; ++r) col[r] = M.cofactor(r, j);
  return col;
}

// log of the euclidean length of a scaled vector, or -inf when all zero.
double log_column_norm(const std::vector<ScaledComplex>& col) {
  double lead = -std::numeric_limits<double>::infinity();
  for (const auto& v : col)
    if (!v.is_zero()) lead = std::max(lead, v.log_abs());
  if (!std::isfinite(lead)) return lead;
  double s = 0.0;
  for (const auto& v : col) {
    if (v.is_zero()) continue;
    const double t = std::exp(v.log_abs() - lead);
    s += t * t;
  }
  return lead + 0.5 * std::log(s);
}

// Raw eigenfunction coefficients w_r = cof_r * exp(-i omega^r rho) in
// scaled form, plus the atom exponents mu_r = i omega^r rho.
struct RawCoefficients {
  std::vector<ScaledComplex> w;
  std::vector<cplx> mu;
};

RawCoefficients raw_coefficients(const std::vector<ScaledComplex>& cofs,
                                 cplx omega, cplx rho) {
  const int n = static_cast<int>(cofs.size());
  RawCoefficients rc;
  rc.w.resize(n);
  rc.mu.resize(n);
  cplx wr(1.0, 0.0);
  for (int r = 0; r < n; ++r, wr *= omega) {
    const cplx mu = cplx(0.0, 1.0) * wr * rho;
    rc.mu[r] = mu;
    rc.w[r] = cofs[r] * ScaledComplex::expc(-mu);
  }
  return rc;
}

Datum assemble_datum(const RawCoefficients& rc) {
  std::vector<Atom> atoms;
  for (std::size_t r = 0; r < rc.w.size(); ++r) {
    if (rc.w[r].is_zero()) continue;
    atoms.push_back(Atom{rc.w[r].to_complex(), 0, rc.mu[r]});
  }
  return Datum(std::move(atoms));
}

// log L2 norm of the atom sum with the given scaled coefficients, computed
// on a power-of-two rescaled copy so huge |sigma| cannot overflow.
double log_datum_norm(const RawCoefficients& rc) {
  long long kmax = std::numeric_limits<long long>::min();
  bool any = false;
  for (const auto& v : rc.w) {
    if (v.is_zero()) continue;
    any = true;
    kmax = std::max(kmax, v.k);
  }
  if (!any) return -std::numeric_limits<double>::infinity();
  const ScaledComplex scale(cplx(1.0, 0.0), kmax);
  std::vector<Atom> atoms;
  for (std::size_t r = 0; r < rc.w.size(); ++r) {
    if (rc.w[r].is_zero()) continue;
    atoms.push_back(Atom{(rc.w[r] / scale).to_complex(), 0, rc.mu[r]});
  }
  const double nrm = Datum(std::move(atoms)).norm();
  if (nrm <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(nrm) + static_cast<double>(kmax) * kLn2;
}

}  // namespace

int auto_column(const CharContext& ctx, cplx sigma) {
  require_conditions(ctx);
  const int n = ctx.n;
  const SCMatrix M = char_matrix_pde(ctx.Astar, n, sigma);

  struct Candidate {
    int j;
    double metric;  // log(norm of phi with unit cofactor column)
  };

  // At a simple zero the cofactor matrix has rank one, so its columns are
  // multiples of a single coefficient vector. A column whose length is at
  // the roundoff floor relative to the largest column is a numerically
  // blurred zero multiple; building a function from it would amplify noise.
  std::vector<double> log_mcol(n, -std::numeric_limits<double>::infinity());
  double log_mmax = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    std::vector<ScaledComplex> cofs(n);
    for (int r = 0; r < n; ++r) cofs[r] = M.cofactor(r, j);
    log_mcol[j] = log_column_norm(cofs);
    log_mmax = std::max(log_mmax, log_mcol[j]);
  }
  std::vector<Candidate> cands;
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(log_mcol[j])) continue;  // null column
    if (log_mcol[j] < log_mmax + std::log(1e-10)) continue;
    std::vector<ScaledComplex> cofs(n);
    for (int r = 0; r < n; ++r) cofs[r] = M.cofactor(r, j);
    const RawCoefficients rc = raw_coefficients(cofs, ctx.omega, sigma);
    const double log_norm = log_datum_norm(rc);
    if (!std::isfinite(log_norm)) continue;
    cands.push_back({j, log_norm - log_mcol[j]});
  }
  if (cands.empty())
    throw Error("DegenerateEigenfunction",
                "every cofactor column gives a null eigenfunction");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : cands) best = std::max(best, c.metric);
  int pick = -1;
  double pick_key = std::numeric_limits<double>::infinity();
  for (const auto& c : cands) {
    if (c.metric < best - 1e-9) continue;
    const double key = std::abs(ctx.C[c.j] + 1.0);
    if (key < pick_key - 1e-12 || (std::abs(key - pick_key) <= 1e-12 &&
                                   (pick < 0 || c.j < pick))) {
      pick = c.j;
      pick_key = key;
    }
  }
  return pick;
}

Datum eigenfunction(const CharContext& ctx, cplx sigma, int j) {
  require_conditions(ctx);
  if (j == kAutoColumn) j = auto_column(ctx, sigma);
  require_column(ctx, j);
  const auto cofs = cofactor_column(ctx.Astar, ctx.n, sigma, j);
  return assemble_datum(raw_coefficients(cofs, ctx.omega, sigma));
}

Datum adjoint_eigenfunction(const CharContext& ctx, cplx sigma, int j) {
  require_conditions(ctx);
  if (j == kAutoColumn) j = auto_column(ctx, sigma);
  require_column(ctx, j);
  const cplx sbar = std::conj(sigma);
  const auto cofs = cofactor_column(ctx.A, ctx.n, sbar, ctx.pi[j]);
  return assemble_datum(raw_coefficients(cofs, ctx.omega, sbar));
}

double constant_C(const CharContext& ctx, int j) {
  require_conditions(ctx);
  require_column(ctx, j);
  return ctx.C[j];
}

Eigenpair eigenpair(const CharContext& ctx, const ZeroCatalogue& cat, int k,
                    int j) {
  require_conditions(ctx);
  if (k < 0 || k >= static_cast<int>(cat.zeros.size()))
    throw Error("BadIndex", "catalogue index out of range");
  const CataloguedZero& zc = cat.zeros[k];
  if (zc.order != 1)
    throw Error("NonSimpleZero",
                "eigenpair assembly requires a simple zero");
  Eigenpair ep;
  ep.k = k;
  ep.sigma = zc.sigma;
  ep.j = (j == kAutoColumn) ? auto_column(ctx, zc.sigma) : j;
  require_column(ctx, ep.j);
  ep.phi = eigenfunction(ctx, zc.sigma, ep.j);
  ep.psi = adjoint_eigenfunction(ctx, zc.sigma, ep.j);
  ep.Cj = ctx.C[ep.j];
  ep.pairing = ep.psi.inner_product(ep.phi);
  ep.norm_phi = ep.phi.norm();
  ep.norm_psi = ep.psi.norm();
  const double scale = ep.norm_phi * ep.norm_psi;
  ep.zero_pairing = std::abs(ep.pairing) < 1e-13 * scale;
  ep.Qnorm = ep.zero_pairing && std::abs(ep.pairing) == 0.0
                 ? std::numeric_limits<double>::infinity()
                 : scale / std::abs(ep.pairing);
  return ep;
}

std::vector<Eigenpair> eigenpairs(const CharContext& ctx,
                                  const ZeroCatalogue& cat, int j) {
  require_conditions(ctx);
  std::vector<int> ks;
  for (int k = 0; k < static_cast<int>(cat.zeros.size()); ++k)
    if (cat.zeros[k].order == 1) ks.push_back(k);
  std::vector<Eigenpair> out(ks.size());
  parallel_for_index(ks.size(), [&](std::size_t i) {
    out[i] = eigenpair(ctx, cat, ks[i], j);
  });
  return out;
}

WildnessReport wildness(const CharContext& ctx, const ZeroCatalogue& cat,
                        int k_max, int min_ordinal) {
  require_conditions(ctx);
  const auto pairs = eigenpairs(ctx, cat);
  std::map<int, const Eigenpair*> by_k;
  for (const auto& ep : pairs) by_k[ep.k] = &ep;

  WildnessReport rep;
  const auto clusters = branch_clusters(cat);
  for (std::size_t b = 0; b < clusters.size(); ++b) {
    int ordinal = 0;
    for (int idx : clusters[b]) {
      ++ordinal;
      if (ordinal > k_max) break;
      const auto it = by_k.find(idx);
      if (it == by_k.end()) continue;  // non-simple zero, no pair
      const Eigenpair& ep = *it->second;
      rep.table.push_back(WildnessRow{idx, static_cast<int>(b), ordinal,
                                      ep.sigma, ep.norm_phi, ep.norm_psi,
                                      std::abs(ep.pairing), ep.Qnorm});
    }
  }

  std::vector<double> xs, ys;
  for (const auto& row : rep.table) {
    if (row.ordinal < min_ordinal) continue;
    if (!(row.Qnorm > 0.0) || !std::isfinite(row.Qnorm)) continue;
    xs.push_back(static_cast<double>(row.ordinal));
    ys.push_back(std::log(row.Qnorm));
  }
  if (xs.size() < 6)
    throw Error("TooFewPairs",
                "need at least 6 eigenpairs inside the fit window");

  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = m * sxx - sx * sx;
  rep.slope = (m * sxy - sx * sy) / det;
  rep.intercept = (sy * sxx - sx * sxy) / det;
  const double mean = sy / m;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fit = rep.slope * xs[i] + rep.intercept;
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += (ys[i] - mean) * (ys[i] - mean);
  }
  rep.r2 = ss_tot > 1e-30 ? 1.0 - ss_res / ss_tot : 1.0;
  rep.wild = rep.slope > 0.05 && rep.r2 > 0.9;
  return rep;
}

PairingResiduals verify_pairing_identities(const CharContext& ctx, cplx sigma,
                                           int j, const Datum& f) {
  require_conditions(ctx);
  require_column(ctx, j);
  const Datum phi = eigenfunction(ctx, sigma, j);
  const Datum psi = adjoint_eigenfunction(ctx, sigma, j);
  const double C = ctx.C[j];

  auto rel = [](cplx a, cplx b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
  };

  PairingResiduals out;
  const cplx z1 = zeta_j(ctx, sigma, f, j).to_complex();
  out.transform_vs_pairing = rel(z1, f.inner_product(psi) / C);

  const cplx z2 =
      adjoint_zeta_j(ctx, std::conj(sigma), f, ctx.pi[j]).to_complex();
  out.adjoint_transform_vs_pairing = rel(z2, C * f.inner_product(phi));

  const cplx zpsi = zeta_j(ctx, sigma, psi, j).to_complex();
  const cplx zphi = zeta_j(ctx, sigma, phi, j).to_complex();
  const cplx lhs = psi.norm_sq() / phi.inner_product(psi);
  const cplx rhs = C * zpsi / (-std::conj(zphi));
  out.norm_ratio = rel(lhs, rhs);
  return out;
}

SpectralRatioReport spectral_ratio_bound(const CharContext& ctx,
                                         const ZeroCatalogue& cat,
                                         const std::vector<cplx>& test_points,
                                         double delta) {
  require_conditions(ctx);
  if (cat.zeros.empty())
    throw Error("BadSequence", "catalogue has no zeros to compare against");
  if (delta < 0.0) delta = cat.epsilon;

  std::vector<int> nearest(test_points.size());
  double prev = -1.0;
  for (std::size_t i = 0; i < test_points.size(); ++i) {
    const double mod = std::abs(test_points[i]);
    if (mod <= prev)
      throw Error("BadSequence", "test point moduli must increase strictly");
    prev = mod;
    double dmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < static_cast<int>(cat.zeros.size()); ++k) {
      const double d = std::abs(test_points[i] - cat.zeros[k].sigma);
      if (d < dmin) {
        dmin = d;
        nearest[i] = k;
      }
    }
    if (!(dmin > delta))
      throw Error("BadSequence",
                  "test point closer than delta to a catalogued zero");
  }

  SpectralRatioReport rep;
  rep.rows.resize(test_points.size());
  std::map<int, Eigenpair> cache;
  for (std::size_t i = 0; i < test_points.size(); ++i)
    if (!cache.count(nearest[i]))
      cache.emplace(nearest[i], eigenpair(ctx, cat, nearest[i]));

  parallel_for_index(test_points.size(), [&](std::size_t i) {
    const cplx rho = test_points[i];
    const Eigenpair& ep = cache.at(nearest[i]);
    const ScaledComplex zpsi = zeta_j(ctx, rho, ep.psi, ep.j);
    const ScaledComplex zphi = zeta_j(ctx, rho, ep.phi, ep.j);
    const ScaledComplex d = delta_pde(ctx, rho);
    SpectralRatioRow row;
    row.rho = rho;
    row.k = nearest[i];
    row.log_ratio = zpsi.log_abs() - zphi.log_abs();
    row.log_ratio_unreduced = (zpsi / d).log_abs() - (zphi / d).log_abs();
    row.Qnorm = ep.Qnorm;
    rep.rows[i] = row;
  });

  rep.sup_log_ratio = -std::numeric_limits<double>::infinity();
  for (const auto& row : rep.rows)
    rep.sup_log_ratio = std::max(rep.sup_log_ratio, row.log_ratio);
  rep.sup_ratio = std::exp(rep.sup_log_ratio);
  return rep;
}

}  // namespace sg
