#pragma once

#include "wavebound/types.hpp"

namespace wavebound {

class DegenerateCurve : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Induced Riemannian data of a closed plane curve sampled at uniform
/// parameter values u_j = j * du, j = 0..N-1 (the closure point is implicit).
struct CurveMetric {
    Vec u;       ///< parameter samples
    Vec x, y;    ///< embedding samples
    Vec g;       ///< induced metric |dx/du|^2
    Vec sqrt_g;
    double du = 0.0;
};

/// Derivative of uniformly sampled periodic data (FFT-based spectral).
Vec periodic_derivative(const Vec& samples, double du);

/// 4th-order finite-difference derivative; one-sided at the edges when the
/// data is not periodic.
Vec fd4_derivative(const Vec& samples, double du, bool periodic);

/// Builds the induced metric of a closed sampled curve. Throws
/// DegenerateCurve when min g falls below `min_g`.
CurveMetric induced_metric(const Vec& x, const Vec& y, double min_g = 1e-12);

/// The single Christoffel symbol of a 1-manifold, Gamma^1_11 = g^-1 g' / 2,
/// at every sample (periodic data) via the spectral derivative.
Vec christoffel(const Vec& g, double du);

/// Same on an open chart with the 4th-order finite-difference derivative.
Vec christoffel_open(const Vec& g, double du);

/// Covariant divergence of a (contravariant) vector field on the curve:
/// div v = (1/sqrt g) d(sqrt g * v)/du.
Vec covariant_divergence(const Vec& v, const CurveMetric& metric);

/// | closed-curve integral of (covariant divergence) dS | — vanishes to
/// quadrature order for any smooth periodic field.
double divergence_theorem_check(const Vec& v, const CurveMetric& metric);

}  // namespace wavebound
