#pragma once

#include <numbers>
#include <string>

namespace imdet {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class DomainKind { RealLine, Integers, Circle, CyclicFinite, RealBox };

/// One of the classical locally compact abelian groups the toolkit works on.
///
/// The circle is the interval [0, 2π) with addition mod 2π. Cyclic groups
/// Z_n are represented by the residues 0..n-1.
class GroupDomain {
 public:
  static GroupDomain real_line() { return GroupDomain(DomainKind::RealLine, 0); }
  static GroupDomain integers() { return GroupDomain(DomainKind::Integers, 0); }
  static GroupDomain circle() { return GroupDomain(DomainKind::Circle, 0); }
  static GroupDomain cyclic(int order);
  static GroupDomain real_box(int dimension);

  DomainKind kind() const noexcept { return kind_; }
  /// Order n of Z_n; 0 for the other kinds.
  int order() const noexcept { return kind_ == DomainKind::CyclicFinite ? size_ : 0; }
  /// Dimension of R^n; 1 for the one-dimensional kinds.
  int dimension() const noexcept { return kind_ == DomainKind::RealBox ? size_ : 1; }

  bool is_discrete() const noexcept {
    return kind_ == DomainKind::Integers || kind_ == DomainKind::CyclicFinite;
  }
  bool is_periodic() const noexcept {
    return kind_ == DomainKind::Circle || kind_ == DomainKind::CyclicFinite;
  }
  /// 2π for the circle, n for Z_n, 0 otherwise.
  double period() const noexcept;

  /// Canonical representative of a group element. Circle angles are reduced
  /// into [0, 2π) and snapped so that reflection is an exact involution in
  /// floating point; integer domains reject non-integral input.
  double canonical(double t) const;

  /// The group inverse -t, canonicalized.
  double reflect(double t) const;

  /// Reflection of a density-segment endpoint. On the circle the endpoints 0
  /// and 2π swap; elsewhere this is `reflect`.
  double reflect_endpoint(double t) const;

  /// Point c such that the group inverse is t -> c - t on the canonical
  /// chart: 0 on R and Z, 2π on the circle, n on Z_n.
  double reflection_origin() const noexcept { return period(); }

  /// Short tag used in the JSON format: R, Z, T, Zn, Rbox.
  std::string tag() const;
  std::string describe() const;

  friend bool operator==(const GroupDomain&, const GroupDomain&) = default;

 private:
  GroupDomain(DomainKind kind, int size) : kind_(kind), size_(size) {}

  DomainKind kind_;
  int size_;
};

}  // namespace imdet
