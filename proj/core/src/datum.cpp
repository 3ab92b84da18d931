#include "sg/datum.hpp"

#include <cmath>
#include <string>

#include "sg/errors.hpp"

namespace sg {
namespace {

// exp(lambda) - 1 without cancellation near zero.
ScaledComplex cexpm1(cplx lambda) {
  if (std::abs(lambda) < 0.5) {
    cplx term(1.0, 0.0);
    cplx sum(0.0, 0.0);
    for (int k = 1; k <= 24; ++k) {
      term *= lambda / static_cast<double>(k);
      sum += term;
    }
    return ScaledComplex::of(sum);
  }
  return ScaledComplex::expc(lambda) - ScaledComplex::one();
}

}  // namespace

ScaledComplex exp_poly_moment(cplx lambda, int d) {
  const double al = std::abs(lambda);
  // Removable point: truncated power series, fixed at 12 terms below 1e-3
  // so evaluations are reproducible across call sites.
  if (al < 1e-3) {
    cplx term(1.0, 0.0);
    cplx sum = term / static_cast<double>(d + 1);
    for (int m = 1; m < 12; ++m) {
      term *= lambda / static_cast<double>(m);
      sum += term / static_cast<double>(d + m + 1);
    }
    return ScaledComplex::of(sum);
  }
  const ScaledComplex E = ScaledComplex::expc(lambda);
  const ScaledComplex L = ScaledComplex::of(lambda);
  if (d == 0) return cexpm1(lambda) / L;
  if (al >= std::max(4.0, 1.5 * d)) {
    // Upward integration by parts, damped because every step divides by
    // lambda with |lambda| > k.
    ScaledComplex J = cexpm1(lambda) / L;
    for (int k = 1; k <= d; ++k) {
      J = (E - static_cast<double>(k) * J) / L;
    }
    return J;
  }
  // Downward recurrence from a zero seed: the seed error is damped by
  // |lambda|/k < 1 at every level above d, and 48 spare levels crush it.
  ScaledComplex J = ScaledComplex::zero();
  for (int k = d + 48; k > d; --k) {
    J = (E - L * J) * ScaledComplex::of(1.0 / static_cast<double>(k));
  }
  return J;
}

Datum::Datum(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const Atom& a : atoms_) {
    if (a.d < 0 || a.d > kMaxAtomDegree) {
      throw Error("DegreeOverflow",
                  "atom degree " + std::to_string(a.d) + " outside [0, " +
                      std::to_string(kMaxAtomDegree) + "]");
    }
  }
}

Datum Datum::named(const std::string& name) {
  if (name == "sinpi") {
    const double pi = 3.14159265358979323846;
    return Datum({{cplx(0.0, -0.5), 0, cplx(0.0, pi)},
                  {cplx(0.0, 0.5), 0, cplx(0.0, -pi)}});
  }
  if (name == "bump-poly") {
    // x^2 (1-x)^2, compatible with every preset's boundary rows.
    return Datum({{cplx(1.0, 0.0), 2, cplx(0.0, 0.0)},
                  {cplx(-2.0, 0.0), 3, cplx(0.0, 0.0)},
                  {cplx(1.0, 0.0), 4, cplx(0.0, 0.0)}});
  }
  throw Error("BadShape", "unknown named datum '" + name + "'");
}

cplx Datum::eval(double x) const {
  cplx v(0.0, 0.0);
  for (const Atom& a : atoms_) {
    v += a.c * std::pow(x, a.d) * std::exp(a.mu * x);
  }
  return v;
}

Datum Datum::operator+(const Datum& o) const {
  std::vector<Atom> out = atoms_;
  out.insert(out.end(), o.atoms_.begin(), o.atoms_.end());
  return Datum(std::move(out));
}

Datum Datum::scaled(cplx factor) const {
  std::vector<Atom> out = atoms_;
  for (Atom& a : out) a.c *= factor;
  return Datum(std::move(out));
}

Datum Datum::derivative(int m) const {
  if (m < 0 || m > kMaxAtomDegree) {
    throw Error("DegreeOverflow", "derivative order " + std::to_string(m));
  }
  Datum cur = *this;
  for (int step = 0; step < m; ++step) {
    std::vector<Atom> out;
    out.reserve(cur.atoms_.size() * 2);
    for (const Atom& a : cur.atoms_) {
      if (a.d > 0) out.push_back({a.c * static_cast<double>(a.d), a.d - 1, a.mu});
      if (a.mu != cplx(0.0, 0.0)) out.push_back({a.c * a.mu, a.d, a.mu});
    }
    cur = Datum(std::move(out));
  }
  return cur;
}

Datum Datum::reflect() const {
  std::vector<Atom> out;
  for (const Atom& a : atoms_) {
    // c (1-x)^d e^{mu(1-x)} expanded binomially onto x^j e^{-mu x}.
    const cplx front = a.c * std::exp(a.mu);
    double binom = 1.0;
    for (int j = 0; j <= a.d; ++j) {
      if (j > 0) binom *= static_cast<double>(a.d - j + 1) / static_cast<double>(j);
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      out.push_back({front * sign * binom, j, -a.mu});
    }
  }
  return Datum(std::move(out));
}

Datum Datum::conjugate_values() const {
  std::vector<Atom> out = atoms_;
  for (Atom& a : out) {
    a.c = std::conj(a.c);
    a.mu = std::conj(a.mu);
  }
  return Datum(std::move(out));
}

std::vector<cplx> Datum::boundary_vector(int n) const {
  std::vector<cplx> v(2 * static_cast<size_t>(n));
  Datum cur = *this;
  // Order r occupies slots 2(n-1-r) and 2(n-1-r)+1; walk r upward.
  for (int r = 0; r < n; ++r) {
    v[2 * (n - 1 - r)] = cur.eval(0.0);
    v[2 * (n - 1 - r) + 1] = cur.eval(1.0);
    if (r + 1 < n) cur = cur.derivative(1);
  }
  return v;
}

ScaledComplex Datum::half_transform_scaled(cplx rho) const {
  ScaledComplex sum = ScaledComplex::zero();
  const cplx shift = cplx(0.0, -1.0) * rho;
  for (const Atom& a : atoms_) {
    sum += ScaledComplex::of(a.c) * exp_poly_moment(a.mu + shift, a.d);
  }
  return sum;
}

cplx Datum::half_transform(cplx rho) const {
  return half_transform_scaled(rho).to_complex();
}

cplx Datum::inner_product(const Datum& g) const {
  ScaledComplex sum = ScaledComplex::zero();
  for (const Atom& a : atoms_) {
    for (const Atom& b : g.atoms()) {
      sum += ScaledComplex::of(a.c * std::conj(b.c)) *
             exp_poly_moment(a.mu + std::conj(b.mu), a.d + b.d);
    }
  }
  return sum.to_complex();
}

double Datum::norm_sq() const {
  return inner_product(*this).real();
}

double Datum::norm() const { return std::sqrt(std::max(0.0, norm_sq())); }

}  // namespace sg
