#pragma once

#include <limits>
#include <span>
#include <vector>

#include "imdet/domain.hpp"

namespace imdet {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Interval with per-endpoint closedness. Infinite endpoints are always open.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval closed(double a, double b) { return {a, b, true, true}; }
  static Interval open(double a, double b) { return {a, b, false, false}; }
  static Interval point(double t) { return {t, t, true, true}; }

  bool is_empty() const noexcept;
  bool contains(double t) const noexcept;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned box in R^n.
struct Box {
  std::vector<Interval> sides;

  bool is_empty() const noexcept;
  bool contains(std::span<const double> x) const noexcept;

  friend bool operator==(const Box&, const Box&) = default;
};

/// Finite union of intervals (R, Z, Z_n, arcs of the circle) or of boxes
/// (R^n), kept in a normalized form whose components are pairwise disjoint.
///
/// On Z and Z_n intervals select the integers they contain and are stored as
/// closed integer ranges. Circle arcs live in [0, 2π); an input arc with
/// lo > hi wraps through 0.
class BorelSet {
 public:
  static BorelSet empty(const GroupDomain& domain);
  static BorelSet whole(const GroupDomain& domain);
  static BorelSet from_intervals(const GroupDomain& domain, std::vector<Interval> intervals);
  static BorelSet from_points(const GroupDomain& domain, std::span<const double> points);
  static BorelSet from_boxes(const GroupDomain& domain, std::vector<Box> boxes);

  const GroupDomain& domain() const noexcept { return domain_; }
  /// Normalized, sorted, pairwise disjoint components (1-D domains).
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  /// Pairwise disjoint cells (R^n).
  const std::vector<Box>& boxes() const noexcept { return boxes_; }

  bool is_empty() const noexcept { return intervals_.empty() && boxes_.empty(); }
  bool contains(double t) const;
  bool contains(std::span<const double> x) const;

  /// The set -S.
  BorelSet negated() const;
  BorelSet complement() const;

  friend BorelSet unite(const BorelSet& a, const BorelSet& b);
  friend BorelSet intersect(const BorelSet& a, const BorelSet& b);
  friend BorelSet difference(const BorelSet& a, const BorelSet& b);

  friend bool operator==(const BorelSet&, const BorelSet&) = default;

 private:
  explicit BorelSet(const GroupDomain& domain) : domain_(domain) {}

  GroupDomain domain_;
  std::vector<Interval> intervals_;
  std::vector<Box> boxes_;
};

/// True when S ∩ (-S) is empty.
bool disjoint_from_reflection(const BorelSet& s);

}  // namespace imdet
