#pragma once

#include <string>
#include <vector>

#include "sg/charmat.hpp"
#include "sg/spectrum.hpp"

namespace sg {

// Column selector value meaning "scan all columns and pick the best one".
inline constexpr int kAutoColumn = -1;

// One catalogued zero promoted to a full spectral object. phi and psi keep
// the raw cofactor-built coefficients (no normalization), so their sizes
// grow with |sigma|; Qnorm and the identity residuals are scale invariant.
struct Eigenpair {
  int k{0};  // catalogue index of sigma
  int j{0};  // characteristic-matrix column the cofactors came from
  cplx sigma{0.0, 0.0};
  Datum phi;  // eigenfunction of the operator, eigenvalue sigma^n
  Datum psi;  // eigenfunction of the adjoint, eigenvalue conj(sigma)^n
  double Cj{0.0};
  cplx pairing{0.0, 0.0};  // <psi, phi> = integral of psi * conj(phi)
  double norm_phi{0.0};
  double norm_psi{0.0};
  double Qnorm{0.0};  // norm_phi * norm_psi / |pairing|
  // |pairing| < 1e-13 * norm_phi * norm_psi: the pair is useless for a
  // biorthogonal expansion but still listed (Qnorm is +inf then).
  bool zero_pairing{false};
};

// Column whose cofactor column yields the largest eigenfunction norm after
// the cofactor magnitudes are normalized to unit length. Ties (all
// non-degenerate columns give the same function up to scale at a simple
// zero) are broken toward the column with C[j] closest to -1, then the
// smallest j. Throws DegenerateEigenfunction when every column is null.
int auto_column(const CharContext& ctx, cplx sigma);

// phi^j(x) = sum_r cof_{rj}(sigma) e^{-i omega^r sigma (1-x)}: an exact sum
// of exponential atoms annihilated by every boundary row, with eigenvalue
// sigma^n. Requires the non-Robin/symmetry conditions (ConditionsViolated).
Datum eigenfunction(const CharContext& ctx, cplx sigma, int j = kAutoColumn);

// Adjoint-side companion built from column pi[j] of the adjoint
// characteristic matrix at conj(sigma); satisfies the adjoint boundary rows
// and conj(psi^j(1-x)) = C[j] * phi^j(x) with the same constant.
Datum adjoint_eigenfunction(const CharContext& ctx, cplx sigma,
                            int j = kAutoColumn);

// The identity constant C[j] of the context (the unique real constant in
// the conjugation law above). Throws ConditionsViolated when the context
// has none.
double constant_C(const CharContext& ctx, int j);

// Assembles the full Eigenpair at catalogue entry k (must be a simple
// zero; throws NonSimpleZero otherwise).
Eigenpair eigenpair(const CharContext& ctx, const ZeroCatalogue& cat, int k,
                    int j = kAutoColumn);

// All catalogued simple zeros, assembled in parallel (SPECTRAL_GAUGE_THREADS
// caps the worker count) with deterministic catalogue ordering.
std::vector<Eigenpair> eigenpairs(const CharContext& ctx,
                                  const ZeroCatalogue& cat,
                                  int j = kAutoColumn);

struct WildnessRow {
  int k{0};        // catalogue index
  int branch{0};   // branch_clusters group
  int ordinal{0};  // 1-based position within the branch, by modulus
  cplx sigma{0.0, 0.0};
  double norm_phi{0.0};
  double norm_psi{0.0};
  double abs_pairing{0.0};
  double Qnorm{0.0};
};

struct WildnessReport {
  bool wild{false};
  double slope{0.0};  // log Qnorm ~ slope * ordinal + intercept
  double intercept{0.0};
  double r2{0.0};
  std::vector<WildnessRow> table;  // every assembled pair, fit window or not
};

// Projection-norm growth classification: log Qnorm is fitted linearly
// against the branch ordinal over all branches, using ordinals in
// [min_ordinal, k_max] (the first entries of a branch are routinely
// anomalous). Wild iff slope > 0.05 and the fit explains the data
// (R^2 > 0.9). Throws TooFewPairs when fewer than 6 pairs enter the fit.
WildnessReport wildness(const CharContext& ctx, const ZeroCatalogue& cat,
                        int k_max, int min_ordinal = 3);

struct PairingResiduals {
  // zeta_j(sigma, f) vs <f, psi>/C_j
  double transform_vs_pairing{0.0};
  // adjoint zeta at conj(sigma), column pi[j], vs C_j <f, phi>
  double adjoint_transform_vs_pairing{0.0};
  // |psi|^2/<phi,psi> vs C_j zeta_j(sigma,psi)/(-conj(zeta_j(sigma,phi))).
  // Exact only when the pairing's phase matches -C_j (e.g. real pairing and
  // C_j = -1); reported as measured otherwise.
  double norm_ratio{0.0};
};

// Relative residuals of the three transform/inner-product identities at a
// simple zero, for a caller-chosen column and test datum.
PairingResiduals verify_pairing_identities(const CharContext& ctx, cplx sigma,
                                           int j, const Datum& f);

struct SpectralRatioRow {
  cplx rho{0.0, 0.0};
  int k{0};  // catalogue index of the nearest zero (supplies the eigenpair)
  double log_ratio{0.0};  // log |zeta_j(rho,psi_k) / zeta_j(rho,phi_k)|
  // Same quantity without cancelling the determinant: both numerator and
  // denominator divided by delta_pde first. Agreement is a consistency
  // check, not new information.
  double log_ratio_unreduced{0.0};
  double Qnorm{0.0};  // of the associated eigenpair
};

struct SpectralRatioReport {
  double sup_ratio{0.0};      // exp of the largest log_ratio (may overflow)
  double sup_log_ratio{0.0};
  std::vector<SpectralRatioRow> rows;
};

// Transform-ratio bound probe: each test point is assigned the eigenpair of
// its nearest catalogued zero and the ratio above is evaluated in scaled
// arithmetic. Preconditions (BadSequence): |rho| strictly increasing, and
// every point at complex distance > delta from all catalogued zeros
// (delta < 0 selects the catalogue's epsilon).
SpectralRatioReport spectral_ratio_bound(const CharContext& ctx,
                                         const ZeroCatalogue& cat,
                                         const std::vector<cplx>& test_points,
                                         double delta = -1.0);

}  // namespace sg
