#include "imdet/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "imdet/error.hpp"

namespace imdet {

namespace {

double param(const DistributionSpec& s, const std::string& key) {
  auto it = s.params.find(key);
  if (it == s.params.end()) throw ParameterError(s.name + ": missing parameter '" + key + "'");
  if (!std::isfinite(it->second)) throw ParameterError(s.name + ": parameter '" + key + "' is not finite");
  return it->second;
}

void only_keys(const DistributionSpec& s, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : s.params) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; })) {
      throw ParameterError(s.name + ": unknown parameter '" + k + "'");
    }
  }
}

double count_param(const DistributionSpec& s, const std::string& key, double min) {
  const double v = param(s, key);
  if (std::nearbyint(v) != v || v < min) {
    throw ParameterError(s.name + ": parameter '" + key + "' must be an integer >= " + std::to_string(int(min)));
  }
  return v;
}

double probability_param(const DistributionSpec& s, const std::string& key, bool allow_zero, bool allow_one) {
  const double v = param(s, key);
  const bool ok = (v > 0.0 || (allow_zero && v == 0.0)) && (v < 1.0 || (allow_one && v == 1.0));
  if (!ok) throw ParameterError(s.name + ": parameter '" + key + "' is outside its range");
  return v;
}

double log_choose(double n, double k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

// pmf(k) for k = 0, 1, ... until the remaining mass drops below the
// truncation threshold.
template <typename LogPmf>
std::vector<Atom> unbounded_pmf(LogPmf&& log_pmf, double mode) {
  std::vector<Atom> atoms;
  double cumulative = 0.0;
  constexpr int kMaxTerms = 1 << 20;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double w = std::exp(log_pmf(static_cast<double>(k)));
    cumulative += w;
    if (w > 0.0) atoms.push_back({static_cast<double>(k), w});
    if (k > mode && 1.0 - cumulative < kTailTruncation) break;
  }
  return atoms;
}

std::vector<Atom> lattice_atoms(const DistributionSpec& s) {
  const auto& n = s.name;
  if (n == "poisson") {
    const double lambda = param(s, "lambda");
    return unbounded_pmf([&](double k) { return k * std::log(lambda) - lambda - std::lgamma(k + 1.0); }, lambda);
  }
  if (n == "binomial") {
    const double trials = param(s, "n");
    const double p = param(s, "p");
    std::vector<Atom> atoms;
    for (double k = 0; k <= trials; ++k) {
      double w;
      if (p == 1.0) {
        w = k == trials ? 1.0 : 0.0;
      } else {
        w = std::exp(log_choose(trials, k) + k * std::log(p) + (trials - k) * std::log1p(-p));
      }
      if (w > 0.0) atoms.push_back({k, w});
    }
    return atoms;
  }
  if (n == "negative_binomial") {
    const double r = param(s, "r");
    const double p = param(s, "p");
    // Failures before the r-th success; success probability p.
    const double mode = r * (1.0 - p) / p;
    return unbounded_pmf(
        [&](double k) {
          return std::lgamma(k + r) - std::lgamma(k + 1.0) - std::lgamma(r) + r * std::log(p) + k * std::log1p(-p);
        },
        mode);
  }
  if (n == "hypergeometric") {
    const double total = param(s, "N");
    const double good = param(s, "K");
    const double draws = param(s, "n");
    std::vector<Atom> atoms;
    const double lo = std::max(0.0, draws - (total - good));
    const double hi = std::min(draws, good);
    for (double k = lo; k <= hi; ++k) {
      const double w =
          std::exp(log_choose(good, k) + log_choose(total - good, draws - k) - log_choose(total, draws));
      atoms.push_back({k, w});
    }
    return atoms;
  }
  if (n == "discrete_laplace") {
    const double q = param(s, "q");
    const double c = (1.0 - q) / (1.0 + q);
    std::vector<Atom> atoms{{0.0, c}};
    // Two-sided tail beyond K is 2c q^(K+1)/(1-q).
    for (int k = 1;; ++k) {
      const double w = c * std::pow(q, k);
      atoms.push_back({static_cast<double>(k), w});
      atoms.push_back({static_cast<double>(-k), w});
      if (2.0 * c * std::pow(q, k + 1) / (1.0 - q) < kTailTruncation) break;
    }
    return atoms;
  }
  throw ParameterError("unknown lattice law '" + n + "'");
}

void validate_lattice(const DistributionSpec& s) {
  const auto& n = s.name;
  if (n == "poisson") {
    only_keys(s, {"lambda"});
    if (!(param(s, "lambda") > 0.0)) throw ParameterError("poisson: lambda must be > 0");
  } else if (n == "binomial") {
    only_keys(s, {"n", "p"});
    count_param(s, "n", 1);
    probability_param(s, "p", false, true);
  } else if (n == "negative_binomial") {
    only_keys(s, {"r", "p"});
    if (!(param(s, "r") > 0.0)) throw ParameterError("negative_binomial: r must be > 0");
    probability_param(s, "p", false, false);
  } else if (n == "hypergeometric") {
    only_keys(s, {"N", "K", "n"});
    const double total = count_param(s, "N", 1);
    const double good = count_param(s, "K", 0);
    const double draws = count_param(s, "n", 1);
    if (good > total || draws > total) throw ParameterError("hypergeometric: needs K <= N and n <= N");
  } else if (n == "discrete_laplace") {
    only_keys(s, {"q"});
    probability_param(s, "q", false, false);
  }
}

bool is_interval_law(const std::string& n) { return n == "uniform" || n == "triangular"; }

std::vector<CatalogEntry> build_entries() {
  using K = DomainKind;
  using E = Expectation;
  const std::string one_sided = "continuous law on R carried by a half-line or a subinterval of [0, inf)";
  const std::string symmetric = "continuous law on R symmetric about its location";
  const std::string interval = "continuous law on R carried by [a, b]";
  const std::string lattice = "lattice law on Z";
  const std::string wrapped = "law on the circle obtained by wrapping a law on R";
  const std::string orthant = "continuous law on R^n carried by a translated orthant or the simplex";
  return {
      {"arcsine", K::RealLine, {}, E::Determined, "", one_sided},
      {"beta", K::RealLine, {{"alpha", 2.0}, {"beta", 3.0}}, E::Determined, "", one_sided},
      {"chi2", K::RealLine, {{"n", 2.0}}, E::Determined, "", one_sided},
      {"exponential", K::RealLine, {{"lambda", 1.0}}, E::Determined, "", one_sided},
      {"gamma", K::RealLine, {{"k", 2.0}, {"theta", 1.0}}, E::Determined, "", one_sided},
      {"hyperexponential",
       K::RealLine,
       {{"p1", 0.3}, {"p2", 0.7}, {"lambda1", 1.0}, {"lambda2", 3.0}},
       E::Determined,
       "",
       one_sided},
      {"levy", K::RealLine, {{"mu", 0.0}, {"c", 1.0}}, E::Conditional, "determined iff mu >= 0", one_sided},
      {"maxwell", K::RealLine, {{"a", 1.0}}, E::Determined, "", one_sided},
      {"pareto", K::RealLine, {{"xm", 1.0}, {"alpha", 2.0}}, E::Determined, "", one_sided},
      {"normal", K::RealLine, {{"mu", 0.0}, {"sigma", 1.0}}, E::NotDetermined, "", symmetric},
      {"laplace", K::RealLine, {{"mu", 0.0}, {"b", 1.0}}, E::NotDetermined, "", symmetric},
      {"cauchy", K::RealLine, {{"x0", 0.0}, {"gamma", 1.0}}, E::NotDetermined, "", symmetric},
      {"uniform", K::RealLine, {{"a", 1.0}, {"b", 3.0}}, E::Conditional, "determined iff 0 is not inside (a, b)",
       interval},
      {"triangular", K::RealLine, {{"a", 1.0}, {"b", 3.0}}, E::Conditional,
       "determined iff 0 is not inside (a, b)", interval},
      {"poisson", K::Integers, {{"lambda", 1.0}}, E::NotDetermined, "", lattice},
      {"binomial", K::Integers, {{"n", 10.0}, {"p", 0.3}}, E::Conditional, "determined iff p = 1", lattice},
      {"negative_binomial", K::Integers, {{"r", 3.0}, {"p", 0.4}}, E::NotDetermined, "", lattice},
      {"hypergeometric", K::Integers, {{"N", 20.0}, {"K", 7.0}, {"n", 5.0}}, E::Conditional,
       "determined iff n > N - K (no mass at 0)", lattice},
      {"discrete_laplace", K::Integers, {{"q", 0.5}}, E::NotDetermined, "", lattice},
      {"wrapped_cauchy", K::Circle, {{"mu", 0.0}, {"rho", 0.5}}, E::NotDetermined, "", wrapped},
      {"wrapped_normal", K::Circle, {{"mu", 0.0}, {"sigma", 1.0}}, E::NotDetermined, "", wrapped},
      {"wrapped_exponential", K::Circle, {{"lambda", 1.0}}, E::NotDetermined, "", wrapped},
      {"mv_pareto1", K::RealBox, {{"a", 2.0}, {"theta1", 1.0}, {"theta2", 1.0}}, E::Determined, "", orthant},
      {"mv_pareto2",
       K::RealBox,
       {{"a", 2.0}, {"mu1", 0.0}, {"mu2", 0.0}, {"theta1", 1.0}, {"theta2", 1.0}},
       E::Conditional,
       "determined iff some mu_i >= 0",
       orthant},
      {"dirichlet", K::RealBox, {{"alpha1", 2.0}, {"alpha2", 3.0}, {"alpha3", 4.0}}, E::Determined, "", orthant},
  };
}

bool resolve_expectation(const DistributionSpec& s) {
  switch (s.expectation) {
    case Expectation::Determined:
      return true;
    case Expectation::NotDetermined:
      return false;
    case Expectation::Conditional:
      break;
  }
  const auto& n = s.name;
  if (is_interval_law(n)) return param(s, "a") >= 0.0 || param(s, "b") <= 0.0;
  if (n == "levy") return param(s, "mu") >= 0.0;
  if (n == "binomial") return param(s, "p") == 1.0;
  if (n == "hypergeometric") return param(s, "n") > param(s, "N") - param(s, "K");
  if (n == "mv_pareto2") {
    const auto mu = indexed_params(s.params, "mu");
    return std::any_of(mu.begin(), mu.end(), [](double m) { return m >= 0.0; });
  }
  throw ConsistencyError("no rule for conditional entry '" + n + "'");
}

}  // namespace

std::string to_string(Expectation e) {
  switch (e) {
    case Expectation::Determined:
      return "Determined";
    case Expectation::NotDetermined:
      return "NotDetermined";
    case Expectation::Conditional:
      return "Conditional";
  }
  return "?";
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = build_entries();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog_entries()) {
    if (e.name == name) return e;
  }
  throw ParameterError("unknown distribution '" + name + "'");
}

DistributionSpec make_spec(const std::string& name, const Params& params) {
  const CatalogEntry& entry = catalog_entry(name);
  GroupDomain domain = GroupDomain::real_line();
  switch (entry.kind) {
    case DomainKind::Integers:
      domain = GroupDomain::integers();
      break;
    case DomainKind::Circle:
      domain = GroupDomain::circle();
      break;
    default:
      break;
  }
  const Params& chosen = params.empty() ? entry.defaults : params;

  if (entry.kind == DomainKind::RealBox) {
    const auto dist = make_box_distribution(name, chosen);
    domain = GroupDomain::real_box(dist->dimension());
    DistributionSpec s{name, chosen, domain, BorelSet::from_boxes(domain, {dist->support()}), entry.expectation,
                       entry.rule, entry.family, false};
    s.expected_determined = resolve_expectation(s);
    return s;
  }

  DistributionSpec s{name, chosen, domain, BorelSet::empty(domain), entry.expectation, entry.rule, entry.family,
                     false};
  if (is_interval_law(name)) {
    only_keys(s, {"a", "b"});
    const double a = param(s, "a");
    const double b = param(s, "b");
    if (!(a < b)) throw ParameterError(name + ": needs a < b");
    s.support = BorelSet::from_intervals(domain, {Interval::closed(a, b)});
  } else if (entry.kind == DomainKind::Integers) {
    validate_lattice(s);
    std::vector<double> points;
    for (const auto& a : lattice_atoms(s)) points.push_back(a.t);
    s.support = BorelSet::from_points(domain, points);
  } else {
    const auto fn = make_analytic_density(name, chosen);
    s.support = BorelSet::from_intervals(domain, {fn->support()});
  }
  s.expected_determined = resolve_expectation(s);
  return s;
}

SignedMeasure make_measure(const DistributionSpec& spec) {
  const auto& d = spec.domain;
  if (d.kind() == DomainKind::RealBox) {
    return SignedMeasure(d, std::vector<BoxComponent>{{1.0, make_box_distribution(spec.name, spec.params)}});
  }
  if (d.kind() == DomainKind::Integers) return SignedMeasure(d, lattice_atoms(spec));
  if (spec.name == "uniform") {
    const double a = param(spec, "a");
    const double b = param(spec, "b");
    return SignedMeasure(d, {}, {{a, b, Polynomial({1.0 / (b - a)}), {}, {}}});
  }
  if (spec.name == "triangular") {
    const double a = param(spec, "a");
    const double b = param(spec, "b");
    const double c = 4.0 / ((b - a) * (b - a));
    const double mid = 0.5 * (a + b);
    return SignedMeasure(d, {},
                         {{a, mid, Polynomial({-c * a, c}), {}, {}}, {mid, b, Polynomial({c * b, -c}), {}, {}}});
  }
  const auto fn = make_analytic_density(spec.name, spec.params);
  const Interval sup = fn->support();
  return SignedMeasure(d, {}, {{sup.lo, sup.hi, {}, {}, {NamedTerm{1.0, false, fn}}}});
}

Classification classify(const DistributionSpec& spec, double tolerance) {
  const SignedMeasure m = make_measure(spec);
  Classification c;
  if (spec.domain.kind() == DomainKind::RealBox) {
    c.verdict = support_verdict(m, spec.support, tolerance);
  } else {
    c.verdict = is_determined(m, tolerance);
  }
  c.expected_determined = spec.expected_determined;
  c.agrees = c.verdict.determined == c.expected_determined;
  return c;
}

}  // namespace imdet
