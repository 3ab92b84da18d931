#pragma once

#include <functional>

#include "sg/scaled_complex.hpp"

namespace sg {

// m-th derivative of an analytic function by trapezoid quadrature of the
// Cauchy integral on a circle: (m!/2 pi r^m) sum_j f(z + r e^{i t_j}) e^{-i m t_j}.
// The trapezoid rule is spectrally accurate on this closed contour, so 64
// nodes reach double precision for moderate radii.
ScaledComplex derivative_at(const std::function<ScaledComplex(cplx)>& f, cplx z,
                            int order, double radius, int nodes = 64);

}  // namespace sg
