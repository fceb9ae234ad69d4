#include "imdet/domain.hpp"

#include <cmath>
#include <numbers>

#include "imdet/error.hpp"

namespace imdet {

namespace {

double require_integral(double t, const char* what) {
  if (!std::isfinite(t) || std::nearbyint(t) != t) {
    throw PreconditionError(std::string(what) + ": element " + std::to_string(t) +
                            " is not an integer");
  }
  return t == 0.0 ? 0.0 : t;
}

// Reduce into [0, 2π). Angles in (0, π) are replaced by 2π - fl(2π - t), which
// is exact, so that 2π - t is representable and reflection round-trips.
double canonical_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  if (r > 0.0 && r < std::numbers::pi) r = kTwoPi - (kTwoPi - r);
  return r == 0.0 ? 0.0 : r;
}

}  // namespace

GroupDomain GroupDomain::cyclic(int order) {
  if (order < 1) throw ParameterError("cyclic group order must be >= 1");
  return GroupDomain(DomainKind::CyclicFinite, order);
}

GroupDomain GroupDomain::real_box(int dimension) {
  if (dimension < 1) throw ParameterError("box dimension must be >= 1");
  return GroupDomain(DomainKind::RealBox, dimension);
}

double GroupDomain::period() const noexcept {
  switch (kind_) {
    case DomainKind::Circle:
      return kTwoPi;
    case DomainKind::CyclicFinite:
      return static_cast<double>(size_);
    default:
      return 0.0;
  }
}

double GroupDomain::canonical(double t) const {
  if (!std::isfinite(t)) throw PreconditionError("group element must be finite");
  switch (kind_) {
    case DomainKind::RealLine:
    case DomainKind::RealBox:
      return t == 0.0 ? 0.0 : t;
    case DomainKind::Integers:
      return require_integral(t, "Z");
    case DomainKind::Circle:
      return canonical_angle(t);
    case DomainKind::CyclicFinite: {
      const double k = require_integral(t, "Z_n");
      const double n = static_cast<double>(size_);
      double r = std::fmod(k, n);
      if (r < 0.0) r += n;
      return r == 0.0 ? 0.0 : r;
    }
  }
  return t;
}

double GroupDomain::reflect(double t) const {
  t = canonical(t);
  if (t == 0.0) return 0.0;
  switch (kind_) {
    case DomainKind::Circle:
      return canonical_angle(kTwoPi - t);
    case DomainKind::CyclicFinite:
      return canonical(static_cast<double>(size_) - t);
    default:
      return -t;
  }
}

double GroupDomain::reflect_endpoint(double t) const {
  if (kind_ == DomainKind::Circle) {
    if (t <= 0.0) return kTwoPi;
    if (t >= kTwoPi) return 0.0;
    return reflect(t);
  }
  if (kind_ == DomainKind::CyclicFinite) return reflect(t);
  return t == 0.0 ? 0.0 : -t;
}

std::string GroupDomain::tag() const {
  switch (kind_) {
    case DomainKind::RealLine:
      return "R";
    case DomainKind::Integers:
      return "Z";
    case DomainKind::Circle:
      return "T";
    case DomainKind::CyclicFinite:
      return "Zn";
    case DomainKind::RealBox:
      return "Rbox";
  }
  return "?";
}

std::string GroupDomain::describe() const {
  switch (kind_) {
    case DomainKind::CyclicFinite:
      return "Z_" + std::to_string(size_);
    case DomainKind::RealBox:
      return "R^" + std::to_string(size_);
    default:
      return tag();
  }
}

}  // namespace imdet
