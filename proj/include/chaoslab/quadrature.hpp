#pragma once

#include <functional>
#include <vector>

namespace chaoslab {

class Density;

using RealFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) integral of f over [a, b]; infinite limits allowed.
/// Throws QuadratureError (carrying the best estimate) when the error estimate exceeds tol.
double integrate(const RealFn& f, double a, double b, double tol = 1e-10, unsigned max_depth = 15);

/// Same, after splitting [a, b] into `panels` equal pieces (for narrow peaks on wide ranges).
double integrate_panels(const RealFn& f, double a, double b, std::size_t panels, double tol = 1e-10);

/// Composite 10-point Gauss-Legendre rule on `panels` equal pieces; no error control.
/// For integrands read from tables, where adaptive refinement chases interpolation kinks.
double fixed_gauss(const RealFn& f, double a, double b, std::size_t panels);

/// Integral of fn(v) * f.pdf(v) over the integration range of f, split at the natural
/// length scale of f so that narrow components are resolved.
double expect(const Density& f, const RealFn& fn, double tol = 1e-10);

/// Integral of fn over the integration range of f with the same panel layout.
double integrate_over(const Density& f, const RealFn& fn, double tol = 1e-10);

}  // namespace chaoslab
