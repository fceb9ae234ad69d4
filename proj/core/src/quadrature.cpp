#include "imdet/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>

namespace imdet::quadrature {

namespace {

constexpr std::size_t kLimit = 2000;
constexpr std::size_t kQawoLevels = 30;
// Below this many radians across a finite range, plain Gauss-Kronrod copes
// with the oscillation.
constexpr double kPlainPhaseSpan = 20.0;
constexpr double kTinyOmega = 1e-6;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

void disable_gsl_abort() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
struct QawoDeleter {
  void operator()(gsl_integration_qawo_table* t) const { gsl_integration_qawo_table_free(t); }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;
using QawoTable = std::unique_ptr<gsl_integration_qawo_table, QawoDeleter>;

Workspace make_workspace() { return Workspace(gsl_integration_workspace_alloc(kLimit)); }

double trampoline(double t, void* params) {
  const auto& f = *static_cast<const Integrand*>(params);
  // QAWO samples the endpoints, where integrable singularities evaluate to inf.
  const double v = f(t);
  return std::isinf(v) ? 0.0 : v;
}

Estimate finish(int status, double result, double abserr) {
  Estimate e{result, abserr, false, false};
  if (!std::isfinite(result) || !std::isfinite(abserr)) {
    e.divergent = true;
    e.warning = true;
    if (!std::isfinite(e.error)) e.error = std::abs(result);
    return e;
  }
  if (status == GSL_EDIVERGE) {
    e.divergent = true;
    e.warning = true;
  } else if (status != GSL_SUCCESS) {
    e.warning = true;
    e.error = std::max(10.0 * abserr, 1e-9 * std::abs(result));
  }
  return e;
}

Estimate plain(const Integrand& f, double a, double b, Tolerance tol, int splits = 3) {
  disable_gsl_abort();
  if (a == b) return {};
  if (a > b) {
    Estimate e = plain(f, b, a, tol, splits);
    e.value = -e.value;
    return e;
  }
  gsl_function fn{&trampoline, const_cast<Integrand*>(&f)};
  auto ws = make_workspace();
  double result = 0.0;
  double abserr = 0.0;
  int status = 0;
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (lo_inf && hi_inf) {
    status = gsl_integration_qagi(&fn, tol.absolute, tol.relative, kLimit, ws.get(), &result, &abserr);
  } else if (hi_inf) {
    status = gsl_integration_qagiu(&fn, a, tol.absolute, tol.relative, kLimit, ws.get(), &result, &abserr);
  } else if (lo_inf) {
    status = gsl_integration_qagil(&fn, b, tol.absolute, tol.relative, kLimit, ws.get(), &result, &abserr);
  } else {
    status = gsl_integration_qags(&fn, a, b, tol.absolute, tol.relative, kLimit, ws.get(), &result, &abserr);
    // The extrapolation misreads some integrable endpoint singularities as
    // divergence; halving the range isolates them.
    if (status == GSL_EDIVERGE && splits > 0) {
      const double mid = 0.5 * (a + b);
      Estimate left = plain(f, a, mid, tol, splits - 1);
      const Estimate right = plain(f, mid, b, tol, splits - 1);
      left += right;
      return left;
    }
  }
  return finish(status, result, abserr);
}

// ∫_a^b f(t) w(ωt) dt on a finite range, ω > 0.
Estimate finite_weighted(const Integrand& f, double a, double b, double omega, bool sine, Tolerance tol,
                         int splits = 3) {
  if (omega * (b - a) <= kPlainPhaseSpan) {
    Integrand g = sine ? Integrand([&](double t) { return f(t) * std::sin(omega * t); })
                       : Integrand([&](double t) { return f(t) * std::cos(omega * t); });
    return plain(g, a, b, tol);
  }
  gsl_function fn{&trampoline, const_cast<Integrand*>(&f)};
  auto ws = make_workspace();
  QawoTable table(gsl_integration_qawo_table_alloc(omega, b - a, sine ? GSL_INTEG_SINE : GSL_INTEG_COSINE,
                                                   kQawoLevels));
  double result = 0.0;
  double abserr = 0.0;
  const int status =
      gsl_integration_qawo(&fn, a, tol.absolute, tol.relative, kLimit, ws.get(), table.get(), &result, &abserr);
  if (status == GSL_EDIVERGE && splits > 0) {
    const double mid = 0.5 * (a + b);
    Estimate left = finite_weighted(f, a, mid, omega, sine, tol, splits - 1);
    left += finite_weighted(f, mid, b, omega, sine, tol, splits - 1);
    return left;
  }
  return finish(status, result, abserr);
}

// ∫_a^∞ f(t) w(ωt) dt, ω > 0.
Estimate half_line_weighted(const Integrand& f, double a, double omega, bool sine, Tolerance tol) {
  Integrand weighted = sine ? Integrand([&](double t) { return f(t) * std::sin(omega * t); })
                            : Integrand([&](double t) { return f(t) * std::cos(omega * t); });
  if (omega < kTinyOmega) return plain(weighted, a, kInfinity, tol);

  gsl_function fn{&trampoline, const_cast<Integrand*>(&f)};
  auto ws = make_workspace();
  auto cycles = make_workspace();
  QawoTable table(
      gsl_integration_qawo_table_alloc(omega, 1.0, sine ? GSL_INTEG_SINE : GSL_INTEG_COSINE, kQawoLevels));
  double result = 0.0;
  double abserr = 0.0;
  const int status = gsl_integration_qawf(&fn, a, tol.absolute, kLimit, ws.get(), cycles.get(), table.get(),
                                          &result, &abserr);
  Estimate e = finish(status, result, abserr);
  if (!e.warning) return e;
  // Cycle summation failed; fall back to direct integration and keep the flag.
  Estimate fallback = plain(weighted, a, kInfinity, tol);
  fallback.warning = true;
  fallback.error = std::max(fallback.error, std::abs(fallback.value - e.value));
  return fallback;
}

}  // namespace

Estimate integrate(const Integrand& f, double a, double b, Tolerance tol) { return plain(f, a, b, tol); }

FourierParts integrate_fourier(const Integrand& f, double a, double b, double omega, Tolerance tol) {
  disable_gsl_abort();
  FourierParts out;
  if (a >= b) return out;
  if (omega == 0.0) {
    out.cos_part = plain(f, a, b, tol);
    return out;
  }
  if (omega < 0.0) {
    out = integrate_fourier(f, a, b, -omega, tol);
    out.sin_part.value = -out.sin_part.value;
    return out;
  }

  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) {
    out.cos_part = finite_weighted(f, a, b, omega, false, tol);
    out.sin_part = finite_weighted(f, a, b, omega, true, tol);
    return out;
  }
  if (lo_inf && hi_inf) {
    FourierParts left = integrate_fourier(f, a, 0.0, omega, tol);
    FourierParts right = integrate_fourier(f, 0.0, b, omega, tol);
    left.cos_part += right.cos_part;
    left.sin_part += right.sin_part;
    return left;
  }
  if (hi_inf) {
    out.cos_part = half_line_weighted(f, a, omega, false, tol);
    out.sin_part = half_line_weighted(f, a, omega, true, tol);
    return out;
  }
  // (-∞, b]: substitute t = -s.
  Integrand mirrored = [&](double s) { return f(-s); };
  out.cos_part = half_line_weighted(mirrored, -b, omega, false, tol);
  out.sin_part = half_line_weighted(mirrored, -b, omega, true, tol);
  out.sin_part.value = -out.sin_part.value;
  return out;
}

}  // namespace imdet::quadrature
