#include "imdet/analytic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <set>

#include "imdet/error.hpp"
#include "imdet/quadrature.hpp"

namespace imdet {

namespace {

using std::numbers::pi;

double get(const Params& p, const std::string& name, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw ParameterError(name + ": missing parameter '" + key + "'");
  if (!std::isfinite(it->second)) throw ParameterError(name + ": parameter '" + key + "' is not finite");
  return it->second;
}

double positive(const Params& p, const std::string& name, const std::string& key) {
  const double v = get(p, name, key);
  if (!(v > 0.0)) throw ParameterError(name + ": parameter '" + key + "' must be > 0");
  return v;
}

// Rejects keys outside `allowed`; keys of the form <prefix><index> pass when
// the prefix is listed with a trailing '#'.
void check_keys(const Params& p, const std::string& name, std::initializer_list<std::string> allowed) {
  for (const auto& [key, value] : p) {
    bool ok = false;
    for (const auto& a : allowed) {
      if (!a.empty() && a.back() == '#') {
        const std::string prefix = a.substr(0, a.size() - 1);
        if (key.size() > prefix.size() && key.compare(0, prefix.size(), prefix) == 0 &&
            std::all_of(key.begin() + static_cast<std::ptrdiff_t>(prefix.size()), key.end(),
                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
          ok = true;
        }
      } else if (a == key) {
        ok = true;
      }
    }
    if (!ok) throw ParameterError(name + ": unknown parameter '" + key + "'");
  }
}

double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

class FunctionDensity final : public AnalyticDensity {
 public:
  FunctionDensity(std::string name, Params params, DomainKind kind, std::function<double(double)> pdf,
                  Interval support, bool even)
      : AnalyticDensity(std::move(name), std::move(params), kind),
        pdf_(std::move(pdf)),
        support_(support),
        even_(even) {}

  double operator()(double t) const override { return pdf_(t); }
  Interval support() const override { return support_; }
  bool is_even() const override { return even_; }

 private:
  std::function<double(double)> pdf_;
  Interval support_;
  bool even_;
};

using DensityPtr = std::shared_ptr<const AnalyticDensity>;

DensityPtr real_density(const std::string& name, const Params& p, std::function<double(double)> pdf,
                        Interval support, bool even) {
  return std::make_shared<FunctionDensity>(name, p, DomainKind::RealLine, std::move(pdf), support, even);
}

DensityPtr circle_density(const std::string& name, const Params& p, std::function<double(double)> pdf, bool even) {
  return std::make_shared<FunctionDensity>(name, p, DomainKind::Circle, std::move(pdf),
                                           Interval{0.0, kTwoPi, true, false}, even);
}

double gamma_pdf(double t, double k, double theta) {
  if (t < 0.0) return 0.0;
  if (t == 0.0) {
    if (k < 1.0) return kInf;
    return k == 1.0 ? 1.0 / theta : 0.0;
  }
  return std::exp((k - 1.0) * std::log(t) - t / theta - std::lgamma(k) - k * std::log(theta));
}

DensityPtr build_real(const std::string& name, const Params& p) {
  if (name == "normal") {
    check_keys(p, name, {"mu", "sigma"});
    const double mu = get(p, name, "mu");
    const double sigma = positive(p, name, "sigma");
    return real_density(
        name, p,
        [mu, sigma](double t) {
          const double z = (t - mu) / sigma;
          return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * pi));
        },
        Interval::open(-kInf, kInf), mu == 0.0);
  }
  if (name == "laplace") {
    check_keys(p, name, {"mu", "b"});
    const double mu = get(p, name, "mu");
    const double b = positive(p, name, "b");
    return real_density(
        name, p, [mu, b](double t) { return std::exp(-std::abs(t - mu) / b) / (2.0 * b); },
        Interval::open(-kInf, kInf), mu == 0.0);
  }
  if (name == "cauchy") {
    check_keys(p, name, {"x0", "gamma"});
    const double x0 = get(p, name, "x0");
    const double g = positive(p, name, "gamma");
    return real_density(
        name, p,
        [x0, g](double t) {
          const double z = (t - x0) / g;
          return 1.0 / (pi * g * (1.0 + z * z));
        },
        Interval::open(-kInf, kInf), x0 == 0.0);
  }
  if (name == "exponential") {
    check_keys(p, name, {"lambda"});
    const double lambda = positive(p, name, "lambda");
    return real_density(
        name, p, [lambda](double t) { return t < 0.0 ? 0.0 : lambda * std::exp(-lambda * t); },
        {0.0, kInf, true, false}, false);
  }
  if (name == "gamma") {
    check_keys(p, name, {"k", "theta"});
    const double k = positive(p, name, "k");
    const double theta = positive(p, name, "theta");
    return real_density(name, p, [k, theta](double t) { return gamma_pdf(t, k, theta); }, {0.0, kInf, true, false},
                        false);
  }
  if (name == "chi2") {
    check_keys(p, name, {"n"});
    const double n = positive(p, name, "n");
    if (std::nearbyint(n) != n) throw ParameterError("chi2: degrees of freedom must be a positive integer");
    return real_density(name, p, [n](double t) { return gamma_pdf(t, 0.5 * n, 2.0); }, {0.0, kInf, true, false},
                        false);
  }
  if (name == "levy") {
    check_keys(p, name, {"mu", "c"});
    const double mu = get(p, name, "mu");
    const double c = positive(p, name, "c");
    return real_density(
        name, p,
        [mu, c](double t) {
          const double s = t - mu;
          if (s <= 0.0) return 0.0;
          return std::sqrt(c / (2.0 * pi)) * std::exp(-c / (2.0 * s)) / (s * std::sqrt(s));
        },
        {mu, kInf, true, false}, false);
  }
  if (name == "maxwell") {
    check_keys(p, name, {"a"});
    const double a = positive(p, name, "a");
    return real_density(
        name, p,
        [a](double t) {
          if (t < 0.0) return 0.0;
          return std::sqrt(2.0 / pi) * t * t * std::exp(-t * t / (2.0 * a * a)) / (a * a * a);
        },
        {0.0, kInf, true, false}, false);
  }
  if (name == "pareto") {
    check_keys(p, name, {"xm", "alpha"});
    const double xm = positive(p, name, "xm");
    const double alpha = positive(p, name, "alpha");
    return real_density(
        name, p,
        [xm, alpha](double t) {
          if (t < xm) return 0.0;
          return alpha * std::exp(alpha * std::log(xm) - (alpha + 1.0) * std::log(t));
        },
        {xm, kInf, true, false}, false);
  }
  if (name == "beta") {
    check_keys(p, name, {"alpha", "beta"});
    const double a = positive(p, name, "alpha");
    const double b = positive(p, name, "beta");
    const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
    return real_density(
        name, p,
        [a, b, log_norm](double t) {
          if (t < 0.0 || t > 1.0) return 0.0;
          if (t == 0.0) return a < 1.0 ? kInf : (a == 1.0 ? std::exp(log_norm) : 0.0);
          if (t == 1.0) return b < 1.0 ? kInf : (b == 1.0 ? std::exp(log_norm) : 0.0);
          return std::exp(log_norm + (a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t));
        },
        Interval::closed(0.0, 1.0), false);
  }
  if (name == "arcsine") {
    check_keys(p, name, {});
    return real_density(
        name, p,
        [](double t) {
          if (t < 0.0 || t > 1.0) return 0.0;
          if (t == 0.0 || t == 1.0) return kInf;
          return 1.0 / (pi * std::sqrt(t * (1.0 - t)));
        },
        Interval::closed(0.0, 1.0), false);
  }
  if (name == "hyperexponential") {
    check_keys(p, name, {"p#", "lambda#"});
    const auto probs = indexed_params(p, "p");
    const auto rates = indexed_params(p, "lambda");
    if (probs.empty() || probs.size() != rates.size()) {
      throw ParameterError("hyperexponential: needs matching p1..pm and lambda1..lambdam");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (!(probs[i] >= 0.0)) throw ParameterError("hyperexponential: mixing weights must be >= 0");
      if (!(rates[i] > 0.0)) throw ParameterError("hyperexponential: rates must be > 0");
      total += probs[i];
    }
    if (std::abs(total - 1.0) > 1e-12) throw ParameterError("hyperexponential: mixing weights must sum to 1");
    return real_density(
        name, p,
        [probs, rates](double t) {
          if (t < 0.0) return 0.0;
          double s = 0.0;
          for (std::size_t i = 0; i < probs.size(); ++i) s += probs[i] * rates[i] * std::exp(-rates[i] * t);
          return s;
        },
        {0.0, kInf, true, false}, false);
  }
  return nullptr;
}

DensityPtr build_circle(const std::string& name, const Params& p) {
  if (name == "wrapped_normal") {
    check_keys(p, name, {"mu", "sigma"});
    const double mu = get(p, name, "mu");
    const double sigma = positive(p, name, "sigma");
    // Terms beyond |j| > reach are below 1e-16 of the total mass.
    const int reach = static_cast<int>(std::ceil((9.0 * sigma + kTwoPi) / kTwoPi)) + 1;
    const double mu0 = wrap_angle(mu);
    return circle_density(
        name, p,
        [mu0, sigma, reach](double t) {
          const double th = wrap_angle(t);
          double s = 0.0;
          for (int j = -reach; j <= reach; ++j) {
            const double z = (th - mu0 + kTwoPi * j) / sigma;
            s += std::exp(-0.5 * z * z);
          }
          return s / (sigma * std::sqrt(2.0 * pi));
        },
        mu0 == 0.0);
  }
  if (name == "wrapped_cauchy") {
    check_keys(p, name, {"mu", "rho"});
    const double mu = get(p, name, "mu");
    const double rho = get(p, name, "rho");
    if (!(rho >= 0.0 && rho < 1.0)) throw ParameterError("wrapped_cauchy: rho must lie in [0, 1)");
    const double mu0 = wrap_angle(mu);
    return circle_density(
        name, p,
        [mu0, rho](double t) {
          return (1.0 - rho * rho) / (kTwoPi * (1.0 + rho * rho - 2.0 * rho * std::cos(t - mu0)));
        },
        mu0 == 0.0 || rho == 0.0);
  }
  if (name == "wrapped_exponential") {
    check_keys(p, name, {"lambda"});
    const double lambda = positive(p, name, "lambda");
    const double norm = -std::expm1(-kTwoPi * lambda);
    return circle_density(
        name, p, [lambda, norm](double t) { return lambda * std::exp(-lambda * wrap_angle(t)) / norm; }, false);
  }
  return nullptr;
}

// ---- R^n ---------------------------------------------------------------------

template <typename Survival>
double box_from_survival(const Box& cell, Survival&& survival) {
  const std::size_t n = cell.sides.size();
  for (const auto& s : cell.sides) {
    if (!(s.lo < s.hi)) return 0.0;
  }
  double total = 0.0;
  std::vector<double> corner(n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    int uppers = 0;
    bool vanishes = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        corner[i] = cell.sides[i].hi;
        ++uppers;
        if (std::isinf(corner[i])) vanishes = true;
      } else {
        corner[i] = cell.sides[i].lo;
      }
    }
    if (vanishes) continue;
    total += ((uppers % 2) ? -1.0 : 1.0) * survival(corner);
  }
  return std::max(0.0, total);
}

class ParetoFirstKind final : public BoxDistribution {
 public:
  ParetoFirstKind(const Params& p, double a, std::vector<double> theta)
      : BoxDistribution("mv_pareto1", p), a_(a), theta_(std::move(theta)) {}

  int dimension() const override { return static_cast<int>(theta_.size()); }

  double box_probability(const Box& cell) const override {
    return box_from_survival(cell, [this](const std::vector<double>& x) {
      double s = 1.0 - static_cast<double>(theta_.size());
      for (std::size_t i = 0; i < x.size(); ++i) s += std::max(x[i], theta_[i]) / theta_[i];
      return std::pow(s, -a_);
    });
  }

  Box support() const override {
    Box b;
    for (double t : theta_) b.sides.push_back({t, kInf, true, false});
    return b;
  }

 private:
  double a_;
  std::vector<double> theta_;
};

class ParetoSecondKind final : public BoxDistribution {
 public:
  ParetoSecondKind(const Params& p, double a, std::vector<double> mu, std::vector<double> theta)
      : BoxDistribution("mv_pareto2", p), a_(a), mu_(std::move(mu)), theta_(std::move(theta)) {}

  int dimension() const override { return static_cast<int>(theta_.size()); }

  double box_probability(const Box& cell) const override {
    return box_from_survival(cell, [this](const std::vector<double>& x) {
      double s = 1.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += std::max(x[i] - mu_[i], 0.0) / theta_[i];
      return std::pow(s, -a_);
    });
  }

  Box support() const override {
    Box b;
    for (double m : mu_) b.sides.push_back({m, kInf, false, false});
    return b;
  }

 private:
  double a_;
  std::vector<double> mu_;
  std::vector<double> theta_;
};

// Dirichlet law of the first K-1 coordinates, supported on the open simplex
// {x_i > 0, Σ x_i < 1}. Box probabilities by nested quadrature with inner
// limits clipped to the simplex.
class Dirichlet final : public BoxDistribution {
 public:
  Dirichlet(const Params& p, std::vector<double> alpha) : BoxDistribution("dirichlet", p), alpha_(std::move(alpha)) {
    double log_norm = std::lgamma(std::accumulate(alpha_.begin(), alpha_.end(), 0.0));
    for (double a : alpha_) log_norm -= std::lgamma(a);
    log_norm_ = log_norm;
  }

  int dimension() const override { return static_cast<int>(alpha_.size()) - 1; }

  double box_probability(const Box& cell) const override {
    std::vector<double> x(static_cast<std::size_t>(dimension()));
    return integrate_level(cell, 0, 0.0, x);
  }

  Box support() const override {
    Box b;
    for (int i = 0; i < dimension(); ++i) b.sides.push_back(Interval::open(0.0, 1.0));
    return b;
  }

 private:
  double density(const std::vector<double>& x) const {
    double rest = 1.0;
    double log_p = log_norm_;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] <= 0.0) return 0.0;
      log_p += (alpha_[i] - 1.0) * std::log(x[i]);
      rest -= x[i];
    }
    if (rest <= 0.0) return 0.0;
    log_p += (alpha_.back() - 1.0) * std::log(rest);
    return std::exp(log_p);
  }

  double integrate_level(const Box& cell, std::size_t level, double used, std::vector<double>& x) const {
    const auto& side = cell.sides[level];
    const double lo = std::max(side.lo, 0.0);
    const double hi = std::min(side.hi, 1.0 - used);
    if (!(lo < hi)) return 0.0;
    const bool last = level + 1 == x.size();
    quadrature::Tolerance tol{1e-12, 1e-10};
    auto integrand = [&](double t) {
      x[level] = t;
      if (last) return density(x);
      return integrate_level(cell, level + 1, used + t, x);
    };
    return quadrature::integrate(integrand, lo, hi, tol).value;
  }

  std::vector<double> alpha_;
  double log_norm_ = 0.0;
};

}  // namespace

std::vector<double> indexed_params(const Params& params, const std::string& key) {
  std::vector<double> out;
  for (int i = 1;; ++i) {
    auto it = params.find(key + std::to_string(i));
    if (it == params.end()) break;
    out.push_back(it->second);
  }
  return out;
}

std::shared_ptr<const AnalyticDensity> make_analytic_density(const std::string& name, const Params& params) {
  if (auto d = build_real(name, params)) return d;
  if (auto d = build_circle(name, params)) return d;
  throw ParameterError("unknown density name '" + name + "'");
}

std::vector<std::string> analytic_density_names() {
  return {"arcsine", "beta",    "cauchy", "chi2",   "exponential",    "gamma",          "hyperexponential",
          "laplace", "levy",    "maxwell", "normal", "pareto",        "wrapped_cauchy", "wrapped_exponential",
          "wrapped_normal"};
}

std::shared_ptr<const BoxDistribution> make_box_distribution(const std::string& name, const Params& p) {
  if (name == "mv_pareto1") {
    check_keys(p, name, {"a", "theta#"});
    const double a = positive(p, name, "a");
    auto theta = indexed_params(p, "theta");
    if (theta.empty()) throw ParameterError("mv_pareto1: needs theta1..thetan");
    for (double t : theta) {
      if (!(t > 0.0)) throw ParameterError("mv_pareto1: scales must be > 0");
    }
    return std::make_shared<ParetoFirstKind>(p, a, std::move(theta));
  }
  if (name == "mv_pareto2") {
    check_keys(p, name, {"a", "mu#", "theta#"});
    const double a = positive(p, name, "a");
    auto mu = indexed_params(p, "mu");
    auto theta = indexed_params(p, "theta");
    if (theta.empty() || mu.size() != theta.size()) {
      throw ParameterError("mv_pareto2: needs matching mu1..mun and theta1..thetan");
    }
    for (double t : theta) {
      if (!(t > 0.0)) throw ParameterError("mv_pareto2: scales must be > 0");
    }
    return std::make_shared<ParetoSecondKind>(p, a, std::move(mu), std::move(theta));
  }
  if (name == "dirichlet") {
    check_keys(p, name, {"alpha#"});
    auto alpha = indexed_params(p, "alpha");
    if (alpha.size() < 2) throw ParameterError("dirichlet: needs alpha1..alphaK with K >= 2");
    if (alpha.size() > 4) throw ParameterError("dirichlet: box probabilities supported for K <= 4");
    for (double a : alpha) {
      if (!(a > 0.0)) throw ParameterError("dirichlet: concentrations must be > 0");
    }
    return std::make_shared<Dirichlet>(p, std::move(alpha));
  }
  throw ParameterError("unknown multivariate distribution '" + name + "'");
}

std::vector<std::string> box_distribution_names() { return {"dirichlet", "mv_pareto1", "mv_pareto2"}; }

}  // namespace imdet
