#pragma once

// Adaptive quadrature used for CDFs, moment oracles, normalization checks and
// the ergodic-capacity integral. tanh-sinh handles integrable endpoint
// singularities (power densities can diverge at gamma = 0); exp-sinh covers
// the semi-infinite tail.

#include <functional>

#include "fadinglab/errors.hpp"

namespace fadinglab::quadrature {

using Integrand = std::function<double(double)>;

// Integral over the finite interval [a, b], absolute error <= abs_tol.
// Throws QuadratureFailure if the error estimate exceeds the request.
double integrate_finite(const Integrand& f, double a, double b, double abs_tol);

// Integral over [a, inf). `scale` locates the mass (the interval is split at
// a + scale before the tail rule takes over); pass the mean of the density or
// similar. Absolute error <= abs_tol.
double integrate_upper(const Integrand& f, double a, double scale, double abs_tol);

} // namespace fadinglab::quadrature
