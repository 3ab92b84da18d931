#include "sg/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sg/errors.hpp"
#include "sg/solver.hpp"

namespace sg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_pi(double a) {
  while (a > std::numbers::pi) a -= kTwoPi;
  while (a <= -std::numbers::pi) a += kTwoPi;
  return a;
}

struct PathZeroSuspect {};  // refinement stopped converging: zero on the path

// Total argument variation of f along the straight segment [za, zb],
// bisecting until consecutive samples differ by < pi/2. An analytic f with
// no zero near the path always settles; hitting the depth cap means a zero
// sits on (or hugs) the segment.
double arg_sweep(const std::function<ScaledComplex(cplx)>& f, cplx za, cplx zb,
                 double arga, double argb, int depth) {
  double d = wrap_pi(argb - arga);
  if (std::abs(d) < 0.5 * std::numbers::pi) return d;
  if (depth > 44) throw PathZeroSuspect{};
  cplx zm = 0.5 * (za + zb);
  ScaledComplex vm = f(zm);
  if (vm.is_zero()) throw PathZeroSuspect{};
  double argm = vm.arg();
  return arg_sweep(f, za, zm, arga, argm, depth + 1) +
         arg_sweep(f, zm, zb, argm, argb, depth + 1);
}

// Winding number of f over a closed polyline through the given vertices.
// The bisection criterion alone can alias a full 2 pi turn away when a
// segment is long, so every edge is first split to at most `step` length:
// the determinant is a sum of terms P(rho) e^{i c rho} with |c| <= n, which
// bounds the off-zero phase rate and makes that spacing alias-free.
int winding_number(const std::function<ScaledComplex(cplx)>& f,
                   const std::vector<cplx>& verts, double step) {
  std::vector<cplx> pts;
  for (size_t i = 0; i < verts.size(); ++i) {
    cplx a = verts[i];
    cplx b = verts[(i + 1) % verts.size()];
    int m = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / step)));
    for (int j = 0; j < m; ++j) pts.push_back(a + (b - a) * (static_cast<double>(j) / m));
  }
  std::vector<double> args(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    ScaledComplex v = f(pts[i]);
    if (v.is_zero()) throw PathZeroSuspect{};
    args[i] = v.arg();
  }
  double total = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    size_t j = (i + 1) % pts.size();
    total += arg_sweep(f, pts[i], pts[j], args[i], args[j], 0);
  }
  double w = total / kTwoPi;
  long r = std::lround(w);
  if (std::abs(w - static_cast<double>(r)) > 0.25) throw PathZeroSuspect{};
  return static_cast<int>(r);
}

int winding_rect(const std::function<ScaledComplex(cplx)>& f, const Rect& q,
                 double step) {
  return winding_number(f,
                        {cplx(q.x0, q.y0), cplx(q.x1, q.y0), cplx(q.x1, q.y1),
                         cplx(q.x0, q.y1)},
                        step);
}

int winding_circle(const std::function<ScaledComplex(cplx)>& f, cplx c, double r,
                   double step) {
  std::vector<cplx> verts;
  for (int i = 0; i < 16; ++i) {
    double t = kTwoPi * i / 16.0;
    verts.push_back(c + std::polar(r, t));
  }
  return winding_number(f, verts, step);
}

// Multiplicity of the zero of delta_pde at rho = 0 (0 when delta(0) != 0).
int origin_order(const CharContext& ctx) {
  auto f = [&](cplx z) { return delta_pde(ctx, z); };
  double step = 1.0 / (ctx.n + 2);
  // No nonzero zero of the studied operators comes near the origin, but be
  // conservative: shrink once if the two counts disagree.
  int c1 = winding_circle(f, cplx(0.0, 0.0), 0.35, step);
  int c2 = winding_circle(f, cplx(0.0, 0.0), 0.18, step);
  if (c1 == c2) return c1;
  int c3 = winding_circle(f, cplx(0.0, 0.0), 0.09, step);
  return c3;
}

struct Located {
  cplx z;
  int order;
};

struct SearchState {
  const std::function<ScaledComplex(cplx)>& f;
  double step;
  std::vector<Located> found;
};

bool inside(const Rect& q, cplx z, double slack) {
  return z.real() >= q.x0 - slack && z.real() <= q.x1 + slack &&
         z.imag() >= q.y0 - slack && z.imag() <= q.y1 + slack;
}

// Newton from the cell centre; the Cauchy-circle derivative keeps working
// at the huge |f| scales the determinant reaches far from the real axis.
bool newton_polish(const std::function<ScaledComplex(cplx)>& f, const Rect& cell,
                   cplx& z) {
  z = cplx(0.5 * (cell.x0 + cell.x1), 0.5 * (cell.y0 + cell.y1));
  double slack = 0.25 * std::max(cell.width(), cell.height());
  for (int it = 0; it < 80; ++it) {
    ScaledComplex v = f(z);
    if (v.is_zero()) return true;
    double r = std::max(1e-7, std::min(0.08, 0.02 * (1.0 + std::abs(z))));
    ScaledComplex d = derivative_at(f, z, 1, r);
    if (d.is_zero()) return false;
    cplx step = (v / d).to_complex();
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
    // damp wild first steps so the iterate cannot tunnel into another cell
    double cap = 0.6 * std::max(cell.width(), cell.height());
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    z -= step;
    if (!inside(cell, z, slack)) return false;
    if (std::abs(step) < 1e-12 * (1.0 + std::abs(z))) {
      // the converged point must genuinely belong to this cell, otherwise a
      // zero hugging a shared edge would be double-counted and its cell's
      // own zero lost
      return inside(cell, z, 1e-6 * (1.0 + std::abs(z)));
    }
  }
  return false;
}

void subdivide(SearchState& st, const Rect& q, int count, int depth) {
  if (count == 0) return;
  double diam = std::max(q.width(), q.height());
  if (count == 1 && diam < 2.0) {
    cplx z;
    if (newton_polish(st.f, q, z)) {
      st.found.push_back({z, 1});
      return;
    }
  }
  if (diam < 1e-6 || depth > 60) {
    // unresolvable cluster: report its centre with the full multiplicity
    st.found.push_back({cplx(0.5 * (q.x0 + q.x1), 0.5 * (q.y0 + q.y1)), count});
    return;
  }
  double xm = 0.5 * (q.x0 + q.x1);
  double ym = 0.5 * (q.y0 + q.y1);
  Rect quads[4] = {{q.x0, xm, q.y0, ym},
                   {xm, q.x1, q.y0, ym},
                   {q.x0, xm, ym, q.y1},
                   {xm, q.x1, ym, q.y1}};
  int seen = 0;
  for (int i = 0; i < 4; ++i) {
    // nudge any sub-boundary that lands on a zero
    Rect cell = quads[i];
    int c = 0;
    bool ok = false;
    for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
      try {
        c = winding_rect(st.f, cell, st.step);
        ok = true;
      } catch (const PathZeroSuspect&) {
        double h = 3e-7 * (attempt + 1) * diam;
        cell = Rect{quads[i].x0 - h, quads[i].x1 + 1.7 * h, quads[i].y0 - 1.3 * h,
                    quads[i].y1 + 2.1 * h};
      }
    }
    if (!ok) throw Error("BoundaryZero", "zero persists on subdivision boundary");
    seen += c;
    subdivide(st, cell, c, depth + 1);
  }
  (void)seen;
}

}  // namespace

int count_zeros(const CharContext& ctx, Rect rect) {
  int m0 = origin_order(ctx);
  auto f = [&](cplx z) {
    ScaledComplex v = delta_pde(ctx, z);
    if (m0 > 0) v = v / ScaledComplex::of(z).pow_int(m0);
    return v;
  };
  Rect q = rect;
  double step = 1.0 / (ctx.n + 2);
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      return winding_rect(f, q, step);
    } catch (const PathZeroSuspect&) {
      double h = 2e-7 * (attempt + 1) * std::max(1.0, std::max(q.width(), q.height()));
      q = Rect{rect.x0 - h, rect.x1 + 1.7 * h, rect.y0 - 1.3 * h, rect.y1 + 2.1 * h};
    }
  }
  throw Error("BoundaryZero", "zero within 1e-8 of the rectangle boundary");
}

ZeroCatalogue locate_zeros(const CharContext& ctx, double r_max) {
  if (r_max < 1.0) throw Error("BadShape", "r_max must be >= 1");
  int m0 = origin_order(ctx);
  auto f = [&](cplx z) {
    ScaledComplex v = delta_pde(ctx, z);
    if (m0 > 0) v = v / ScaledComplex::of(z).pow_int(m0);
    return v;
  };
  double step = 1.0 / (ctx.n + 2);
  SearchState st{f, step, {}};
  // slightly off-centre so subdivision gridlines never pass through 0
  const double off = 0.0371;
  double half = r_max + 0.75;
  Rect root{-half + off, half + off, -half + off, half + off};
  int total = 0;
  bool ok = false;
  for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
    try {
      total = winding_rect(f, root, step);
      ok = true;
    } catch (const PathZeroSuspect&) {
      double h = 1e-6 * (attempt + 1);
      root = Rect{root.x0 - h, root.x1 + 1.7 * h, root.y0 - 1.3 * h, root.y1 + 2.1 * h};
    }
  }
  if (!ok) throw Error("BoundaryZero", "zero on the outer search boundary");
  subdivide(st, root, total, 0);

  // keep |sigma| <= r_max, merge duplicates found from neighbouring cells
  std::vector<Located> kept;
  for (const Located& cand : st.found) {
    if (std::abs(cand.z) > r_max) continue;
    bool merged = false;
    for (Located& prev : kept) {
      if (std::abs(prev.z - cand.z) < 1e-6 * (1.0 + std::abs(cand.z))) {
        prev.order = std::max(prev.order, cand.order);
        merged = true;
        break;
      }
    }
    if (!merged) kept.push_back(cand);
  }

  // Zeros whose imaginary part is below the location accuracy are treated as
  // sitting on the real axis exactly; otherwise roundoff in the polish step
  // would make the half-plane tag (and the argument used for ordering) depend
  // on the sign of a ~1e-15 residue.
  for (Located& zc : kept) {
    if (std::abs(zc.z.imag()) <= 1e-9 * (1.0 + std::abs(zc.z)))
      zc.z = cplx(zc.z.real(), 0.0);
  }

  std::sort(kept.begin(), kept.end(), [](const Located& a, const Located& b) {
    double ma = std::abs(a.z), mb = std::abs(b.z);
    if (ma != mb) return ma < mb;
    return std::arg(a.z) < std::arg(b.z);
  });

  double min_pair = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < kept.size(); ++i)
    for (size_t j = i + 1; j < kept.size(); ++j)
      min_pair = std::min(min_pair, std::abs(kept[i].z - kept[j].z));

  ZeroCatalogue cat;
  cat.r_max = r_max;
  cat.epsilon = kept.size() > 1 ? min_pair / 3.0 : r_max;
  for (const Located& zc : kept) {
    // confirm the multiplicity on a small circle once the neighbourhood is known
    double r_ord = std::min(0.2, (kept.size() > 1 ? 0.45 * min_pair : 0.2));
    int order = zc.order;
    try {
      order = winding_circle(f, zc.z, r_ord, step);
    } catch (const PathZeroSuspect&) {
      // keep the subdivision count if the probe circle is unlucky
    }
    if (order < 1) order = zc.order;
    CataloguedZero entry;
    entry.sigma = zc.z;
    entry.order = order;
    entry.halfplane =
        zc.z.imag() >= 0.0 ? HalfPlane::UpperClosed : HalfPlane::LowerOpen;
    if (order != 1) cat.simple_only = false;
    cat.zeros.push_back(entry);
  }
  return cat;
}

std::vector<std::vector<int>> branch_clusters(const ZeroCatalogue& cat, double tol) {
  const int m = static_cast<int>(cat.zeros.size());
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::arg(cat.zeros[a].sigma) < std::arg(cat.zeros[b].sigma);
  });
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < m; ++i) {
    double ang = std::arg(cat.zeros[idx[i]].sigma);
    if (!groups.empty()) {
      double prev = std::arg(cat.zeros[groups.back().back()].sigma);
      if (ang - prev <= tol) {
        groups.back().push_back(idx[i]);
        continue;
      }
    }
    groups.push_back({idx[i]});
  }
  // the argument axis wraps: merge the first and last groups when they meet
  if (groups.size() > 1) {
    double lo = std::arg(cat.zeros[groups.front().front()].sigma);
    double hi = std::arg(cat.zeros[groups.back().back()].sigma);
    if (lo + kTwoPi - hi <= tol) {
      for (int i : groups.back()) groups.front().push_back(i);
      groups.pop_back();
    }
  }
  for (auto& g : groups) {
    std::sort(g.begin(), g.end(), [&](int a, int b) {
      return std::abs(cat.zeros[a].sigma) < std::abs(cat.zeros[b].sigma);
    });
  }
  return groups;
}

std::vector<BranchFit> asymptotic_fit(const ZeroCatalogue& cat,
                                      const std::string& model) {
  if (model != "linear-in-k")
    throw Error("BadShape", "unknown fit model: " + model);
  auto groups = branch_clusters(cat, 0.1);
  std::vector<BranchFit> fits;
  for (const auto& g : groups) {
    if (g.size() < 6) continue;
    const int m = static_cast<int>(g.size());
    // least squares sigma = slope*k + offset over k = 1..m
    double sk = 0.0, skk = 0.0;
    cplx ss(0.0, 0.0), sks(0.0, 0.0);
    for (int i = 0; i < m; ++i) {
      double k = i + 1.0;
      cplx s = cat.zeros[g[i]].sigma;
      sk += k;
      skk += k * k;
      ss += s;
      sks += k * s;
    }
    double det = m * skk - sk * sk;
    BranchFit fit;
    fit.members = g;
    fit.slope = (static_cast<double>(m) * sks - sk * ss) / det;
    fit.offset = (skk * ss - sk * sks) / det;
    for (int i = 0; i < m; ++i) {
      cplx pred = fit.slope * (i + 1.0) + fit.offset;
      fit.residuals.push_back(std::abs(cat.zeros[g[i]].sigma - pred));
    }
    fits.push_back(std::move(fit));
  }
  if (fits.empty()) throw Error("TooFewZeros", "no branch has 6 zeros to fit");
  return fits;
}

}  // namespace sg
