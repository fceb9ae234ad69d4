#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "imdet/borel_set.hpp"
#include "imdet/domain.hpp"

namespace imdet {

using Params = std::map<std::string, double>;

/// Closed-form probability density on R or on the circle, identified by a
/// catalog name and its parameters. Evaluates to 0 off its support.
class AnalyticDensity {
 public:
  virtual ~AnalyticDensity() = default;

  virtual double operator()(double t) const = 0;
  /// Closure of the region where the density is nonzero.
  virtual Interval support() const = 0;
  /// True when p(c - t) = p(t) for the domain's reflection origin c.
  virtual bool is_even() const = 0;

  const std::string& name() const noexcept { return name_; }
  const Params& params() const noexcept { return params_; }
  DomainKind domain_kind() const noexcept { return kind_; }

 protected:
  AnalyticDensity(std::string name, Params params, DomainKind kind)
      : name_(std::move(name)), params_(std::move(params)), kind_(kind) {}

 private:
  std::string name_;
  Params params_;
  DomainKind kind_;
};

/// Builds a named density. Throws ParameterError for unknown names or
/// invalid parameters.
std::shared_ptr<const AnalyticDensity> make_analytic_density(const std::string& name, const Params& params);

/// Names accepted by make_analytic_density.
std::vector<std::string> analytic_density_names();

/// Absolutely continuous probability distribution on R^n that can report the
/// probability of an axis-aligned box.
class BoxDistribution {
 public:
  virtual ~BoxDistribution() = default;

  virtual int dimension() const = 0;
  /// P(X ∈ cell). Endpoint closedness is irrelevant for these laws.
  virtual double box_probability(const Box& cell) const = 0;
  /// Smallest box containing the support.
  virtual Box support() const = 0;

  const std::string& name() const noexcept { return name_; }
  const Params& params() const noexcept { return params_; }

 protected:
  BoxDistribution(std::string name, Params params) : name_(std::move(name)), params_(std::move(params)) {}

 private:
  std::string name_;
  Params params_;
};

std::shared_ptr<const BoxDistribution> make_box_distribution(const std::string& name, const Params& params);

std::vector<std::string> box_distribution_names();

/// Reads the indexed family key1, key2, ... from a parameter map.
std::vector<double> indexed_params(const Params& params, const std::string& key);

}  // namespace imdet
