#pragma once

#include <string>
#include <vector>

#include "imdet/analytic.hpp"
#include "imdet/borel_set.hpp"
#include "imdet/determine.hpp"
#include "imdet/measure.hpp"

namespace imdet {

enum class Expectation { Determined, NotDetermined, Conditional };

std::string to_string(Expectation e);

/// A named family of the catalog with default parameters.
struct CatalogEntry {
  std::string name;
  DomainKind kind;
  Params defaults;
  Expectation expectation;
  /// For conditional entries, when the law is determined by Im f.
  std::string rule;
  /// Short description of the family's shape.
  std::string family;
};

const std::vector<CatalogEntry>& catalog_entries();
/// Throws ParameterError for unknown names.
const CatalogEntry& catalog_entry(const std::string& name);

/// A catalog law with concrete parameters.
struct DistributionSpec {
  std::string name;
  Params params;
  GroupDomain domain;
  /// Closure of the region carrying the law's mass (its atoms on Z).
  BorelSet support;
  Expectation expectation;
  std::string rule;
  std::string family;
  /// The expectation resolved for these parameters.
  bool expected_determined = false;
};

/// Validates parameters. An empty parameter map selects the entry's
/// defaults; a nonempty one replaces them entirely.
DistributionSpec make_spec(const std::string& name, const Params& params = {});

/// Tail mass left out when a law on Z with infinite support is truncated.
inline constexpr double kTailTruncation = 1e-12;

SignedMeasure make_measure(const DistributionSpec& spec);

struct Classification {
  DeterminationVerdict verdict;
  bool expected_determined = false;
  bool agrees = false;
};

/// Norm test on R, Z and the circle; support criterion (with the symmetric
/// overlap fallback) on R^n.
Classification classify(const DistributionSpec& spec, double tolerance = kDeterminationTolerance);

}  // namespace imdet
