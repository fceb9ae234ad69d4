#include "imdet/charfn.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "imdet/error.hpp"
#include "imdet/quadrature.hpp"

namespace imdet {

namespace {

// Phase multiplier of the character: t ↦ e^{i·scale·x·t}.
double character_scale(const GroupDomain& d) {
  return d.kind() == DomainKind::CyclicFinite ? kTwoPi / static_cast<double>(d.order()) : 1.0;
}

void check_dual_element(const GroupDomain& d, double x) {
  if (!std::isfinite(x)) throw PreconditionError("dual element must be finite");
  if ((d.kind() == DomainKind::Circle || d.kind() == DomainKind::CyclicFinite) && std::nearbyint(x) != x) {
    throw PreconditionError("dual element of " + d.describe() + " must be an integer");
  }
  if (d.kind() == DomainKind::RealBox) {
    throw UnsupportedDomain("characteristic functions are not offered on " + d.describe());
  }
}

// cos/sin of the phase; reduces integer phases on Z_n exactly before scaling.
Complex character(const GroupDomain& d, double x, double t) {
  if (d.kind() == DomainKind::CyclicFinite) {
    const double n = static_cast<double>(d.order());
    double r = std::fmod(x * t, n);
    if (r < 0.0) r += n;
    const double phase = kTwoPi * r / n;
    return {std::cos(phase), std::sin(phase)};
  }
  const double phase = x * t;
  return {std::cos(phase), std::sin(phase)};
}

}  // namespace

CfValue eval_cf_estimate(const SignedMeasure& m, double x) {
  const auto& d = m.domain();
  check_dual_element(d, x);
  CfValue out;
  for (const auto& a : m.atoms()) out.value += a.w * character(d, x, a.t);

  const double origin = d.reflection_origin();
  const double omega = x * character_scale(d);
  for (const auto& s : m.density()) {
    const quadrature::Integrand f = [&](double t) { return s(t, origin); };
    const auto parts = quadrature::integrate_fourier(f, s.lower, s.upper, omega);
    if (parts.cos_part.divergent || parts.sin_part.divergent) {
      throw NonIntegrableDensity("non-integrable " + s.describe());
    }
    out.value += Complex(parts.cos_part.value, parts.sin_part.value);
    out.error += parts.cos_part.error + parts.sin_part.error;
    out.warning = out.warning || parts.cos_part.warning || parts.sin_part.warning;
  }
  return out;
}

Complex eval_cf(const SignedMeasure& m, double x) { return eval_cf_estimate(m, x).value; }
double re_cf(const SignedMeasure& m, double x) { return eval_cf(m, x).real(); }
double im_cf(const SignedMeasure& m, double x) { return eval_cf(m, x).imag(); }

std::string CharFnSample::to_csv() const {
  std::ostringstream os;
  os << "x,re,im,err\n";
  char buf[128];
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", points[i], values[i].real(), values[i].imag(),
                  errors[i]);
    os << buf;
  }
  return os.str();
}

CharFnSample sample_cf(const SignedMeasure& m, std::span<const double> points) {
  CharFnSample out;
  out.points.assign(points.begin(), points.end());
  for (double x : points) {
    const CfValue v = eval_cf_estimate(m, x);
    out.values.push_back(v.value);
    out.errors.push_back(v.error);
    out.error_bound = std::max(out.error_bound, v.error);
    out.warning = out.warning || v.warning;
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw ParameterError("grid needs at least one point");
  if (count == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
  return out;
}

std::vector<double> dual_grid(const GroupDomain& domain, int count) {
  switch (domain.kind()) {
    case DomainKind::RealLine:
      return linspace(-10.0, 10.0, count);
    case DomainKind::Integers: {
      std::vector<double> out;
      for (int i = 0; i < count; ++i) out.push_back(-std::numbers::pi + kTwoPi * i / count);
      return out;
    }
    case DomainKind::Circle: {
      std::vector<double> out;
      for (int i = 0; i < count; ++i) out.push_back(static_cast<double>(i - count / 2));
      return out;
    }
    case DomainKind::CyclicFinite: {
      std::vector<double> out;
      for (int j = 0; j < domain.order(); ++j) out.push_back(j);
      return out;
    }
    case DomainKind::RealBox:
      break;
  }
  throw UnsupportedDomain("no dual grid for " + domain.describe());
}

FourierCoefficients fourier_coeffs(const SignedMeasure& m) {
  if (m.domain().kind() != DomainKind::Integers) {
    throw UnsupportedDomain("Fourier coefficients are read from measures on Z, not " + m.domain().describe());
  }
  FourierCoefficients out;
  for (const auto& a : m.atoms()) {
    const auto k = static_cast<long long>(a.t);
    out.alpha[k] = a.w;
    if (a.w > 0.0) out.support.push_back(k);
  }
  return out;
}

GramReport psd_check(const SignedMeasure& m, std::span<const double> points, double tolerance) {
  const auto& d = m.domain();
  if (points.size() > kMaxGramPoints) {
    throw PreconditionError("psd_check accepts at most " + std::to_string(kMaxGramPoints) + " points");
  }
  std::set<double> seen;
  for (double x : points) {
    check_dual_element(d, x);
    if (!seen.insert(x).second) throw PreconditionError("psd_check points must be pairwise distinct");
  }

  const auto n = static_cast<Eigen::Index>(points.size());
  GramReport report{{points.begin(), points.end()}, 0.0, true, tolerance};
  if (n == 0) return report;

  // f(-x) = conj f(x) for real measures, so only the upper triangle is
  // evaluated; the diagonal is f(0) = m(G), real.
  Eigen::MatrixXcd gram(n, n);
  const double f0 = eval_cf(m, 0.0).real();
  for (Eigen::Index j = 0; j < n; ++j) {
    gram(j, j) = f0;
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const Complex v = eval_cf(m, points[j] - points[k]);
      gram(j, k) = v;
      gram(k, j) = std::conj(v);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os.precision(6);
    os << "Gram eigenvalue iteration did not converge (n = " << n << ", max |entry| = " << gram.cwiseAbs().maxCoeff()
       << ")";
    throw NumericalError(os.str());
  }
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  report.is_psd = report.min_eigenvalue >= -tolerance;
  return report;
}

}  // namespace imdet
