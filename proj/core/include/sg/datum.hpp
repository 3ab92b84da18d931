#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sg/scaled_complex.hpp"

namespace sg {

// One term c * x^d * exp(mu * x) on [0,1]. Everything the library feeds the
// spectral machinery (initial data, eigenfunctions, test functions) is a
// finite sum of these, so transforms and inner products stay closed form.
struct Atom {
  cplx c{0.0, 0.0};
  int d{0};
  cplx mu{0.0, 0.0};
};

// Degree cap guards the integration-by-parts recursions.
inline constexpr int kMaxAtomDegree = 64;

class Datum {
 public:
  Datum() = default;
  explicit Datum(std::vector<Atom> atoms);

  static Datum zero() { return Datum(); }
  // Named expansions accepted in problem files.
  static Datum named(const std::string& name);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  cplx eval(double x) const;

  Datum operator+(const Datum& o) const;
  Datum scaled(cplx factor) const;

  // d^m/dx^m, exact on atoms. Throws Error("DegreeOverflow") past the cap.
  Datum derivative(int m = 1) const;
  // x -> 1 - x.
  Datum reflect() const;
  // pointwise complex conjugate of the function values.
  Datum conjugate_values() const;

  // (f^{(n-1)}(0), f^{(n-1)}(1), ..., f(0), f(1)), the boundary ordering
  // used by the coefficient matrix rows.
  std::vector<cplx> boundary_vector(int n) const;

  // integral over [0,1] of exp(-i rho x) f(x) dx, entire in rho.
  cplx half_transform(cplx rho) const;
  ScaledComplex half_transform_scaled(cplx rho) const;

  // integral of f * conj(g); conjugate linear in g.
  cplx inner_product(const Datum& g) const;
  double norm_sq() const;
  double norm() const;

 private:
  std::vector<Atom> atoms_;
};

// integral over [0,1] of x^d exp(lambda x) dx in scaled arithmetic.
// Entire in lambda; switches representation by regime for stability.
ScaledComplex exp_poly_moment(cplx lambda, int d);

}  // namespace sg
