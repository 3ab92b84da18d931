#pragma once

#include <string>
#include <vector>

#include "sg/charmat.hpp"

namespace sg {

enum class HalfPlane { UpperClosed, LowerOpen };

struct CataloguedZero {
  cplx sigma;
  int order{1};
  HalfPlane halfplane{HalfPlane::UpperClosed};
};

struct ZeroCatalogue {
  std::vector<CataloguedZero> zeros;
  // One third of the smallest observed pairwise distance: a lower-bound
  // estimate of the separation radius, not a certified infimum.
  double epsilon{0.0};
  double r_max{0.0};
  bool simple_only{true};
};

struct Rect {
  double x0, x1, y0, y1;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

// Number of nonzero zeros of the transform-side determinant strictly inside
// the rectangle, counted with multiplicity by the argument principle along
// an adaptively refined boundary polyline. A zero at rho = 0 never counts
// (catalogues exclude it, and sub-rectangle counts must tile consistently
// against catalogues). Throws BoundaryZero when refinement keeps failing
// after nudging the rectangle eight times.
int count_zeros(const CharContext& ctx, Rect rect);

// Catalogue of all nonzero zeros with |sigma| <= r_max: recursive rectangle
// subdivision down to single-zero cells, Newton refinement with a
// circle-quadrature derivative, and a deterministic (|sigma|, arg sigma)
// ordering. Zeros that resist isolation are reported with their cluster
// order and flip simple_only to false.
ZeroCatalogue locate_zeros(const CharContext& ctx, double r_max);

// Angular clustering of catalogued zeros into branches: indices grouped so
// that consecutive (sorted) arguments within a group differ by < tol.
std::vector<std::vector<int>> branch_clusters(const ZeroCatalogue& cat,
                                              double tol = 0.1);

struct BranchFit {
  std::vector<int> members;   // catalogue indices, sorted by modulus
  cplx slope;                 // sigma ~ slope * k + offset, k = 1-based ordinal
  cplx offset;
  std::vector<double> residuals;
};

// Per-branch least-squares line through sigma as a function of the ordinal
// index within the branch. Only "linear-in-k" is supported; branches with
// fewer than 6 members are skipped, and TooFewZeros is thrown when no
// branch qualifies.
std::vector<BranchFit> asymptotic_fit(const ZeroCatalogue& cat,
                                      const std::string& model);

}  // namespace sg
