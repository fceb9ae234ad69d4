#pragma once

#include <memory>
#include <string>
#include <vector>

#include "imdet/analytic.hpp"
#include "imdet/borel_set.hpp"
#include "imdet/density.hpp"
#include "imdet/domain.hpp"
#include "imdet/quadrature.hpp"

namespace imdet {

/// Point mass of weight w at t.
struct Atom {
  double t = 0.0;
  double w = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// weight · law, for a multivariate law on R^n.
struct BoxComponent {
  double weight = 1.0;
  std::shared_ptr<const BoxDistribution> dist;
};

/// Finite real measure on a group domain: point masses plus a piecewise
/// density on R and the circle, or weighted multivariate laws on R^n.
///
/// The constructor normalizes: atom locations are canonicalized, sorted and
/// merged, atoms with |w| < 1e-15 dropped, and density segments overlaid so
/// that their interiors are disjoint. Two measures built from the same
/// content compare equal.
class SignedMeasure {
 public:
  explicit SignedMeasure(GroupDomain domain, std::vector<Atom> atoms = {}, std::vector<DensitySegment> density = {});
  SignedMeasure(GroupDomain domain, std::vector<BoxComponent> components);

  static SignedMeasure zero(const GroupDomain& domain) { return SignedMeasure(domain); }
  static SignedMeasure dirac(const GroupDomain& domain, double t, double w = 1.0) {
    return SignedMeasure(domain, {{t, w}});
  }

  const GroupDomain& domain() const noexcept { return domain_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<DensitySegment>& density() const noexcept { return density_; }
  const std::vector<BoxComponent>& box_components() const noexcept { return boxes_; }

  bool is_zero() const noexcept { return atoms_.empty() && density_.empty() && boxes_.empty(); }
  bool is_atomic() const noexcept { return density_.empty() && boxes_.empty(); }

  /// Weight of the atom at t (0 when there is none).
  double atom_weight(double t) const;
  /// Density value at t (0 off the segments). Segment endpoints shared by two
  /// segments take the right-hand segment's value.
  double density_at(double t) const;

  Estimate mass_estimate() const;
  double mass() const { return mass_estimate().value; }

  std::string describe() const;

  friend bool operator==(const SignedMeasure& a, const SignedMeasure& b);

 private:
  GroupDomain domain_;
  std::vector<Atom> atoms_;
  std::vector<DensitySegment> density_;
  std::vector<BoxComponent> boxes_;
};

/// Σ|w| + Σ ∫|p| with its error bound. Polynomial pieces are exact.
Estimate total_variation_estimate(const SignedMeasure& m);
double total_variation(const SignedMeasure& m);

/// A ↦ m(-A).
SignedMeasure reflect(const SignedMeasure& m);

/// Throws DomainMismatch when the domains differ.
SignedMeasure add(const SignedMeasure& a, const SignedMeasure& b);
SignedMeasure scale(const SignedMeasure& m, double c);

inline SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b) { return add(a, b); }
inline SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b) { return add(a, scale(b, -1.0)); }
inline SignedMeasure operator*(double c, const SignedMeasure& m) { return scale(m, c); }

/// m(S). Atoms are tested against the set's endpoint flags exactly.
Estimate measure_of_estimate(const SignedMeasure& m, const BorelSet& s);
double measure_of(const SignedMeasure& m, const BorelSet& s);

/// Total variation of a - b: the distance used for round-trip comparisons.
double distance(const SignedMeasure& a, const SignedMeasure& b);

/// True when every atom weight is >= -tol and the negative variation of the
/// density is at most tol.
bool is_nonnegative(const SignedMeasure& m, double tol = 1e-12);

}  // namespace imdet
