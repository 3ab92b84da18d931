#pragma once

#include <vector>

#include "sg/charmat.hpp"
#include "sg/datum.hpp"
#include "sg/spectrum.hpp"

namespace sg {

// Open angular sector lo < arg(rho) < hi, with 0 <= lo < hi <= 2*pi.
struct Sector {
  double lo{0.0};
  double hi{0.0};
  double width() const { return hi - lo; }
  bool contains(double theta) const;
};

// The circle of ray directions splits into 2n alternating sectors of width
// pi/n by the sign of Re(a rho^n). Solution contours enclose the sectors
// where it is positive; on the exterior ones the data-to-determinant ratios
// have to stay controlled for the contour representation to be usable.
struct SectorSet {
  std::vector<Sector> enclosed;  // Re(a rho^n) > 0
  std::vector<Sector> exterior;  // Re(a rho^n) < 0
};

// Sector geometry for direction coefficient a = +i or -i: n enclosed and n
// exterior sectors, each of width pi/n, listed by increasing lo. Flipping
// the sign of a swaps the two lists.
SectorSet decay_sectors(int n, cplx a);

// Which numerator a ray probes against the transform-side determinant: one
// of the two one-sided row combinations, or a single column function.
struct RayNumerator {
  enum class Kind { PlusSided, MinusSided, Column };
  Kind kind{Kind::PlusSided};
  int column{-1};  // meaningful only when kind == Column

  static RayNumerator plus_sided() { return {Kind::PlusSided, -1}; }
  static RayNumerator minus_sided() { return {Kind::MinusSided, -1}; }
  static RayNumerator col(int j) { return {Kind::Column, j}; }
};

enum class GrowthVerdict { Decay, Bounded, Blowup };

struct RayOptions {
  double r_lo{20.0};
  double r_hi{150.0};
  int samples{40};   // requested grid size, 20..400
  double delta{0.6}; // keep-out distance from catalogued |sigma_k|
};

// Growth of log max_f |numerator| - log |determinant| along rho = R e^{i
// theta}, sampled on an even radius grid with catalogued-zero moduli
// avoided, then fitted as g*R + c*log(R) + b by least squares.
struct RayDiagnostic {
  RayNumerator numerator;
  double theta{0.0};
  std::vector<double> radii;      // admissible radii, strictly increasing
  std::vector<double> log_ratio;  // one value per radius
  double g{0.0};
  double c{0.0};
  double b{0.0};
  // Exponential rate refitted (two-parameter g*R + b) on the radii in the
  // upper half of [r_lo, r_hi]; a blow-up call must persist there.
  double g_tail{0.0};
  GrowthVerdict verdict{GrowthVerdict::Bounded};
};

// Samples and classifies one ray. The catalogue supplies the zero moduli to
// avoid; it should reach out to opt.r_hi or the unscreened tail may hit a
// determinant zero. Throws BadIndex for an out-of-range grid or column, and
// NoAdmissibleRadii when avoidance leaves fewer than 8 sample points.
RayDiagnostic ray_diagnostic(const CharContext& ctx, RayNumerator num,
                             const std::vector<Datum>& data, double theta,
                             const ZeroCatalogue& cat,
                             const RayOptions& opt = {});

struct ConditioningReport {
  bool well_conditioned{true};
  SectorSet sectors;                    // geometry for the probed direction
  std::vector<RayDiagnostic> evidence;  // 5 rays per exterior sector
};

// Probes every exterior sector of direction a on 5 interior rays (at
// fractions .15 .3 .5 .7 .85 of the sector) with the one-sided numerator of
// the containing half-plane, maximized over the data basket. Empty data
// defaults to the polynomial basket {1, x, x^2}. Ill-conditioned as soon as
// any ray blows up. Rays are sampled in parallel; assembly is deterministic.
ConditioningReport classify_conditioning(const CharContext& ctx, cplx a,
                                         const ZeroCatalogue& cat,
                                         std::vector<Datum> data = {},
                                         const RayOptions& opt = {});

// One radius of the coupled-family blow-up probe: the final-time numerator
// eta2 and the determinant evaluated in closed form at rho = Rk e^{i pi/6},
// Rk = 4 k pi / sqrt(3), against the reference magnitude
//   predicted = (-1)^k (qT(0) - 2 qT(1)) e^{Rk/2} / (6 Rk^2).
struct PseudoBlowupRow {
  int k{0};
  double Rk{0.0};
  cplx rho;
  ScaledComplex eta2;
  ScaledComplex delta;
  ScaledComplex predicted;       // signed real reference value
  cplx ratio_over_predicted;     // (eta2/delta) / predicted; NaN when the
                                 // reference coefficient vanishes
  double log_abs_ratio{0.0};     // log |eta2 / delta|
};

// Closed-form numerator-to-determinant ratio of the coupled third-order
// family at one point, without the reference comparison. Exposed so growth
// along other radius sequences can be measured with the same formulas.
ScaledComplex pseudo_ratio(const CharContext& ctx, const Datum& qT, cplx rho);

// Evaluates the probe rows for k in [k_lo, k_hi]. Requires the coupled
// third-order family rows {u''(0)-u''(1), u'(0)+beta u'(1), u(0)-u(1)}
// (throws BadShape otherwise); beta is read off the coefficient matrix.
std::vector<PseudoBlowupRow> pseudo_blowup_probe(const CharContext& ctx,
                                                 const Datum& qT, int k_lo,
                                                 int k_hi);

}  // namespace sg
