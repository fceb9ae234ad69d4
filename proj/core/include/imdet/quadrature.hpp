#pragma once

#include <functional>

namespace imdet {

/// A numerically computed value with its absolute error estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
  /// Set when the integrator stopped short of its tolerance; `error` is then
  /// an inflated, best-effort bound.
  bool warning = false;
  /// Set when the integral appears not to converge.
  bool divergent = false;

  Estimate& operator+=(const Estimate& o) {
    value += o.value;
    error += o.error;
    warning = warning || o.warning;
    divergent = divergent || o.divergent;
    return *this;
  }
};

namespace quadrature {

struct Tolerance {
  double absolute = 1e-11;
  double relative = 1e-11;
};

using Integrand = std::function<double(double)>;

/// ∫_a^b f(t) dt by adaptive Gauss-Kronrod subdivision with extrapolation.
/// Either endpoint may be infinite; half-lines and the full line are mapped to
/// finite intervals by substitution.
Estimate integrate(const Integrand& f, double a, double b, Tolerance tol = {});

struct FourierParts {
  Estimate cos_part;
  Estimate sin_part;
};

/// ∫_a^b f(t) cos(ωt) dt and ∫_a^b f(t) sin(ωt) dt. Long finite ranges use
/// modified Clenshaw-Curtis rules against the trigonometric weight; half-lines
/// are summed cycle by cycle with series acceleration.
FourierParts integrate_fourier(const Integrand& f, double a, double b, double omega, Tolerance tol = {});

}  // namespace quadrature
}  // namespace imdet
