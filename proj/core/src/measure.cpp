#include "imdet/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "imdet/error.hpp"

namespace imdet {

namespace {

std::vector<Atom> normalize_atoms(const GroupDomain& domain, std::vector<Atom> atoms) {
  for (auto& a : atoms) {
    if (!std::isfinite(a.w)) throw PreconditionError("atom weight is not finite");
    a.t = domain.canonical(a.t);
  }
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.t < y.t; });
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    if (!out.empty() && out.back().t == a.t) {
      out.back().w += a.w;
    } else {
      out.push_back(a);
    }
  }
  std::erase_if(out, [](const Atom& a) { return std::abs(a.w) < kCanonicalZero; });
  return out;
}

double canonical_endpoint(const GroupDomain& domain, double t) {
  if (domain.kind() != DomainKind::Circle) return t == 0.0 ? 0.0 : t;
  if (t >= kTwoPi) return kTwoPi;
  if (t <= 0.0) return 0.0;
  return domain.canonical(t);
}

void require_same_domain(const GroupDomain& a, const GroupDomain& b) {
  if (!(a == b)) throw DomainMismatch("domains differ: " + a.describe() + " vs " + b.describe());
}

}  // namespace

SignedMeasure::SignedMeasure(GroupDomain domain, std::vector<Atom> atoms, std::vector<DensitySegment> density)
    : domain_(domain) {
  if (domain.kind() == DomainKind::RealBox) {
    if (!atoms.empty() || !density.empty()) {
      throw UnsupportedDomain("measures on R^n are given as weighted multivariate laws");
    }
    return;
  }
  if (domain.is_discrete() && !density.empty()) {
    throw UnsupportedDomain("densities are not defined on " + domain.describe());
  }
  atoms_ = normalize_atoms(domain, std::move(atoms));
  for (auto& s : density) {
    s.lower = canonical_endpoint(domain, s.lower);
    s.upper = canonical_endpoint(domain, s.upper);
  }
  density_ = normalize_density(domain, density);
}

SignedMeasure::SignedMeasure(GroupDomain domain, std::vector<BoxComponent> components) : domain_(domain) {
  if (domain.kind() != DomainKind::RealBox) {
    throw DomainMismatch("multivariate laws live on R^n, not " + domain.describe());
  }
  for (auto& c : components) {
    if (!c.dist) throw PreconditionError("box component without a law");
    if (!std::isfinite(c.weight)) throw PreconditionError("box component weight is not finite");
    if (c.dist->dimension() != domain.dimension()) {
      throw DomainMismatch(c.dist->name() + " has dimension " + std::to_string(c.dist->dimension()) + ", domain is " +
                           domain.describe());
    }
    if (std::abs(c.weight) < kCanonicalZero) continue;
    auto same = std::find_if(boxes_.begin(), boxes_.end(), [&](const BoxComponent& b) {
      return b.dist->name() == c.dist->name() && b.dist->params() == c.dist->params();
    });
    if (same != boxes_.end()) {
      same->weight += c.weight;
    } else {
      boxes_.push_back(c);
    }
  }
  std::erase_if(boxes_, [](const BoxComponent& b) { return std::abs(b.weight) < kCanonicalZero; });
  std::sort(boxes_.begin(), boxes_.end(), [](const BoxComponent& a, const BoxComponent& b) {
    if (a.dist->name() != b.dist->name()) return a.dist->name() < b.dist->name();
    return a.dist->params() < b.dist->params();
  });
}

double SignedMeasure::atom_weight(double t) const {
  const double c = domain_.canonical(t);
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), c, [](const Atom& a, double x) { return a.t < x; });
  return (it != atoms_.end() && it->t == c) ? it->w : 0.0;
}

double SignedMeasure::density_at(double t) const {
  const double origin = domain_.reflection_origin();
  if (domain_.kind() == DomainKind::Circle) t = domain_.canonical(t);
  for (auto it = density_.rbegin(); it != density_.rend(); ++it) {
    if (it->lower <= t && t <= it->upper) return (*it)(t, origin);
  }
  return 0.0;
}

Estimate SignedMeasure::mass_estimate() const {
  Estimate e;
  for (const auto& a : atoms_) e.value += a.w;
  const double origin = domain_.reflection_origin();
  for (const auto& s : density_) e += integrate_segment(s, s.lower, s.upper, origin);
  for (const auto& b : boxes_) e.value += b.weight * b.dist->box_probability(b.dist->support());
  return e;
}

std::string SignedMeasure::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "measure on " << domain_.describe() << ":";
  for (const auto& a : atoms_) os << " " << a.w << "@" << a.t;
  for (const auto& s : density_) os << " [" << s.describe() << "]";
  for (const auto& b : boxes_) os << " " << b.weight << "*" << b.dist->name();
  return os.str();
}

bool operator==(const SignedMeasure& a, const SignedMeasure& b) {
  if (!(a.domain_ == b.domain_) || a.atoms_ != b.atoms_) return false;
  if (a.density_.size() != b.density_.size() || a.boxes_.size() != b.boxes_.size()) return false;
  for (std::size_t i = 0; i < a.density_.size(); ++i) {
    const auto& x = a.density_[i];
    const auto& y = b.density_[i];
    if (x.lower != y.lower || x.upper != y.upper || !x.same_content(y)) return false;
  }
  for (std::size_t i = 0; i < a.boxes_.size(); ++i) {
    const auto& x = a.boxes_[i];
    const auto& y = b.boxes_[i];
    if (x.weight != y.weight || x.dist->name() != y.dist->name() || x.dist->params() != y.dist->params()) {
      return false;
    }
  }
  return true;
}

Estimate total_variation_estimate(const SignedMeasure& m) {
  Estimate e;
  for (const auto& a : m.atoms()) e.value += std::abs(a.w);
  const double origin = m.domain().reflection_origin();
  for (const auto& s : m.density()) {
    for (const auto& piece : sign_pieces(s, origin)) {
      if (piece.sign == 0) continue;
      Estimate part = integrate_segment(s, piece.lo, piece.hi, origin);
      part.value = std::abs(part.value);
      e += part;
    }
  }
  for (const auto& b : m.box_components()) {
    // Components are probability laws, so each contributes |weight| unless
    // two components cancel; cancellation is not detected here.
    e.value += std::abs(b.weight) * b.dist->box_probability(b.dist->support());
  }
  return e;
}

double total_variation(const SignedMeasure& m) { return total_variation_estimate(m).value; }

SignedMeasure reflect(const SignedMeasure& m) {
  const auto& d = m.domain();
  if (d.kind() == DomainKind::RealBox) throw UnsupportedDomain("reflection is not offered on " + d.describe());
  std::vector<Atom> atoms;
  atoms.reserve(m.atoms().size());
  for (const auto& a : m.atoms()) atoms.push_back({d.reflect(a.t), a.w});
  std::vector<DensitySegment> density;
  density.reserve(m.density().size());
  for (const auto& s : m.density()) density.push_back(s.reflected(d));
  return SignedMeasure(d, std::move(atoms), std::move(density));
}

SignedMeasure add(const SignedMeasure& a, const SignedMeasure& b) {
  require_same_domain(a.domain(), b.domain());
  if (a.domain().kind() == DomainKind::RealBox) {
    auto comps = a.box_components();
    comps.insert(comps.end(), b.box_components().begin(), b.box_components().end());
    return SignedMeasure(a.domain(), std::move(comps));
  }
  auto atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  auto density = a.density();
  density.insert(density.end(), b.density().begin(), b.density().end());
  return SignedMeasure(a.domain(), std::move(atoms), std::move(density));
}

SignedMeasure scale(const SignedMeasure& m, double c) {
  if (!std::isfinite(c)) throw PreconditionError("scale factor is not finite");
  if (m.domain().kind() == DomainKind::RealBox) {
    auto comps = m.box_components();
    for (auto& x : comps) x.weight *= c;
    return SignedMeasure(m.domain(), std::move(comps));
  }
  auto atoms = m.atoms();
  for (auto& a : atoms) a.w *= c;
  std::vector<DensitySegment> density;
  if (c != 0.0) {
    for (const auto& s : m.density()) density.push_back(s.scaled(c));
  }
  return SignedMeasure(m.domain(), std::move(atoms), std::move(density));
}

Estimate measure_of_estimate(const SignedMeasure& m, const BorelSet& s) {
  require_same_domain(m.domain(), s.domain());
  Estimate e;
  if (m.domain().kind() == DomainKind::RealBox) {
    for (const auto& comp : m.box_components()) {
      double p = 0.0;
      for (const auto& cell : s.boxes()) p += comp.dist->box_probability(cell);
      e.value += comp.weight * p;
    }
    return e;
  }
  for (const auto& a : m.atoms()) {
    if (s.contains(a.t)) e.value += a.w;
  }
  const double origin = m.domain().reflection_origin();
  for (const auto& seg : m.density()) {
    for (const auto& iv : s.intervals()) {
      const double lo = std::max(seg.lower, iv.lo);
      const double hi = std::min(seg.upper, iv.hi);
      if (lo < hi) e += integrate_segment(seg, lo, hi, origin);
    }
  }
  return e;
}

double measure_of(const SignedMeasure& m, const BorelSet& s) { return measure_of_estimate(m, s).value; }

double distance(const SignedMeasure& a, const SignedMeasure& b) { return total_variation(a - b); }

bool is_nonnegative(const SignedMeasure& m, double tol) {
  for (const auto& a : m.atoms()) {
    if (a.w < -tol) return false;
  }
  for (const auto& b : m.box_components()) {
    if (b.weight < -tol) return false;
  }
  const double origin = m.domain().reflection_origin();
  double negative = 0.0;
  for (const auto& s : m.density()) {
    for (const auto& piece : sign_pieces(s, origin)) {
      if (piece.sign < 0) negative += std::abs(integrate_segment(s, piece.lo, piece.hi, origin).value);
    }
  }
  return negative <= tol;
}

}  // namespace imdet
