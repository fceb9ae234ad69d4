#include "imdet/determine.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "imdet/charfn.hpp"
#include "imdet/decompose.hpp"
#include "imdet/error.hpp"

namespace imdet {

namespace {

constexpr double kMassTolerance = 1e-9;
constexpr double kCertificateTolerance = 1e-8;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_probability(const SignedMeasure& m) {
  const double mass = m.mass();
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw PreconditionError("expected a probability measure, mass is " + fmt(mass));
  }
  if (!is_nonnegative(m, kMassTolerance)) throw PreconditionError("expected a probability measure, found negative mass");
}

bool trivial_group(const GroupDomain& d) { return d.kind() == DomainKind::CyclicFinite && d.order() == 1; }

std::vector<double> certificate_points(const GroupDomain& d) {
  switch (d.kind()) {
    case DomainKind::RealLine:
      return {0.0, 0.37, 0.91, 1.6, 2.3, 3.7, 5.2, 7.9};
    case DomainKind::Integers:
      return {0.0, 0.37, 0.91, 1.6, 2.3, 3.1, 4.4, 5.9};
    default: {
      std::vector<double> out;
      const int n = d.kind() == DomainKind::CyclicFinite ? std::min(d.order(), 8) : 8;
      for (int j = 0; j < n; ++j) out.push_back(j);
      return out;
    }
  }
}

}  // namespace

std::string to_string(VerdictMethod m) {
  switch (m) {
    case VerdictMethod::NormTest:
      return "NormTest";
    case VerdictMethod::SupportCriterion:
      return "SupportCriterion";
    case VerdictMethod::SymmetricOverlap:
      return "SymmetricOverlap";
    case VerdictMethod::TrivialGroup:
      return "TrivialGroup";
  }
  return "?";
}

double bnorm_im(const SignedMeasure& m) {
  if (m.domain().kind() == DomainKind::RealBox) {
    throw UnsupportedDomain("the norm test is not offered on " + m.domain().describe() +
                            "; use the support criterion");
  }
  require_probability(m);
  return total_variation(sym_anti_split(m).antisymmetric);
}

DeterminationVerdict is_determined(const SignedMeasure& m, double tolerance) {
  if (!(tolerance >= 0.0 && tolerance < 1.0)) throw ParameterError("tolerance must lie in [0, 1)");
  const double norm = bnorm_im(m);
  if (trivial_group(m.domain())) return {norm, true, tolerance, VerdictMethod::TrivialGroup};
  return {norm, norm >= 1.0 - tolerance, tolerance, VerdictMethod::NormTest};
}

bool corollary_support_check(const SignedMeasure& m, const BorelSet& u) {
  if (!(u.domain() == m.domain())) throw DomainMismatch("support set lives on a different domain");
  if (!disjoint_from_reflection(u)) return false;
  return std::abs(measure_of(m, u) - 1.0) <= kMassTolerance;
}

DeterminationVerdict support_verdict(const SignedMeasure& m, const BorelSet& u, double tolerance) {
  require_probability(m);
  if (corollary_support_check(m, u)) return {1.0, true, tolerance, VerdictMethod::SupportCriterion};
  const BorelSet overlap = intersect(u, u.negated());
  const double delta = measure_of(m, overlap);
  if (delta > tolerance) return {1.0 - delta, false, tolerance, VerdictMethod::SymmetricOverlap};
  throw PreconditionError("support set decides nothing: it is not carried by m or meets its reflection in a null set");
}

std::string SigmaChoice::describe() const {
  if (kind == Kind::AtomAtZero) return "zero";
  return "pair:" + fmt(a);
}

SigmaChoice SigmaChoice::parse(const std::string& text) {
  if (text == "zero") return atom_at_zero();
  if (text.rfind("pair:", 0) == 0) {
    const std::string num = text.substr(5);
    char* end = nullptr;
    const double a = std::strtod(num.c_str(), &end);
    if (!num.empty() && end == num.c_str() + num.size() && std::isfinite(a)) return symmetric_pair(a);
  }
  throw ParameterError("sigma must be 'zero' or 'pair:<a>', got '" + text + "'");
}

CompanionResult companion(const SignedMeasure& m, const SigmaChoice& sigma, double tolerance) {
  const auto& d = m.domain();
  const DeterminationVerdict verdict = is_determined(m, tolerance);
  if (verdict.determined) {
    throw PreconditionError("measure is determined by Im f (norm " + fmt(verdict.norm_im) +
                            "); no distinct companion exists, use reconstruct");
  }

  SignedMeasure sigma_measure = SignedMeasure::dirac(d, 0.0);
  if (sigma.kind == SigmaChoice::Kind::SymmetricPair) {
    const double a = d.canonical(sigma.a);
    if (d.reflect(a) == a) throw ParameterError("sigma pair location must differ from its inverse");
    sigma_measure = SignedMeasure(d, {{a, 0.5}, {d.reflect(a), 0.5}});
  }

  const SignedMeasure eta = sym_anti_split(m).antisymmetric;
  const SignedMeasure eta_pos = hahn_jordan(eta).positive;
  const double norm = total_variation(eta);
  const SignedMeasure nu = scale(eta_pos, 2.0) + scale(sigma_measure, 1.0 - norm);

  CompanionResult out{m, nu, sigma, 0.0, 0.0, dual_grid(d)};
  for (double x : out.grid) {
    const Complex f = eval_cf(m, x);
    const Complex g = eval_cf(nu, x);
    out.max_im_discrepancy = std::max(out.max_im_discrepancy, std::abs(f.imag() - g.imag()));
    out.distinctness = std::max(out.distinctness, std::abs(f - g));
  }
  // m = 2η⁺ + (1 - ‖η‖)ρ for one even ρ; choosing σ = ρ gives back m.
  if (out.distinctness <= 1e-12 && distance(m, nu) <= kMassTolerance) {
    throw PreconditionError("sigma " + sigma.describe() +
                            " is the even remainder of the measure, so the companion equals the input; choose another sigma");
  }
  return out;
}

SignedMeasure reconstruct(const SignedMeasure& phi) {
  const double defect = antisymmetry_defect(phi);
  if (defect > kAntisymmetryTolerance) {
    throw PreconditionError("phi is not antisymmetric: |phi + reflect(phi)| = " + fmt(defect));
  }
  const double norm = total_variation(phi);
  if (std::abs(norm - 1.0) > kMassTolerance) {
    throw PreconditionError("not determined; reconstruction not unique (|phi| = " + fmt(norm) + ")");
  }
  SignedMeasure mu = scale(hahn_jordan(phi).positive, 2.0);
  const auto points = certificate_points(mu.domain());
  const GramReport gram = psd_check(mu, points, kCertificateTolerance);
  if (!gram.is_psd) {
    throw ConsistencyError("reconstructed measure failed its Gram certificate (min eigenvalue " +
                           fmt(gram.min_eigenvalue) + ")");
  }
  return mu;
}

}  // namespace imdet
