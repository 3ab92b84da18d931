#include "sg/solver.hpp"

#include <cmath>
#include <numbers>

namespace sg {

ScaledComplex derivative_at(const std::function<ScaledComplex(cplx)>& f, cplx z,
                            int order, double radius, int nodes) {
  ScaledComplex acc = ScaledComplex::zero();
  for (int j = 0; j < nodes; ++j) {
    double t = 2.0 * std::numbers::pi * j / nodes;
    ScaledComplex v = f(z + std::polar(radius, t));
    acc = acc + v * std::polar(1.0, -order * t);
  }
  double fact = 1.0;
  for (int m = 2; m <= order; ++m) fact *= m;
  ScaledComplex scale = ScaledComplex::of(cplx(fact / nodes, 0.0)) /
                        ScaledComplex::of(cplx(radius, 0.0)).pow_int(order);
  return acc * scale;
}

}  // namespace sg
