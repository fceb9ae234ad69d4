#include "imdet/borel_set.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "imdet/error.hpp"

namespace imdet {

bool Interval::is_empty() const noexcept {
  if (std::isnan(lo) || std::isnan(hi)) return true;
  if (lo > hi) return true;
  return lo == hi && !(lo_closed && hi_closed);
}

bool Interval::contains(double t) const noexcept {
  const bool above = t > lo || (t == lo && lo_closed);
  const bool below = t < hi || (t == hi && hi_closed);
  return above && below;
}

bool Box::is_empty() const noexcept {
  return std::any_of(sides.begin(), sides.end(), [](const Interval& s) { return s.is_empty(); });
}

bool Box::contains(std::span<const double> x) const noexcept {
  if (x.size() != sides.size()) return false;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (!sides[i].contains(x[i])) return false;
  }
  return true;
}

namespace {

void open_infinite_ends(Interval& iv) {
  if (std::isinf(iv.lo)) iv.lo_closed = false;
  if (std::isinf(iv.hi)) iv.hi_closed = false;
}

// Brings a circle arc into [0, 2π] pieces; wrapped arcs (lo > hi) split at 0.
void push_circle_arc(const GroupDomain& d, Interval iv, std::vector<Interval>& out) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
    out.push_back({0.0, kTwoPi, true, false});
    return;
  }
  if (iv.lo > iv.hi) {
    push_circle_arc(d, {iv.lo, kTwoPi, iv.lo_closed, false}, out);
    push_circle_arc(d, {0.0, iv.hi, true, iv.hi_closed}, out);
    return;
  }
  if (iv.lo < 0.0 || iv.hi > kTwoPi) {
    const double len = iv.hi - iv.lo;
    if (len >= kTwoPi) {
      out.push_back({0.0, kTwoPi, true, false});
      return;
    }
    const double lo = d.canonical(iv.lo);
    const double hi = lo + len;
    if (hi > kTwoPi) {
      push_circle_arc(d, {lo, kTwoPi, iv.lo_closed, false}, out);
      push_circle_arc(d, {0.0, hi - kTwoPi, true, iv.hi_closed}, out);
    } else {
      push_circle_arc(d, {lo, hi, iv.lo_closed, iv.hi_closed}, out);
    }
    return;
  }
  if (iv.lo > 0.0 && iv.lo < kTwoPi) iv.lo = d.canonical(iv.lo);
  if (iv.hi > 0.0 && iv.hi < kTwoPi) iv.hi = d.canonical(iv.hi);
  if (iv.lo == kTwoPi) {
    if (iv.lo_closed) out.push_back(Interval::point(0.0));
    return;
  }
  if (iv.hi == kTwoPi && iv.hi_closed) {
    out.push_back(Interval::point(0.0));
    iv.hi_closed = false;
  }
  out.push_back(iv);
}

Interval snap_to_integers(Interval iv) {
  if (std::isfinite(iv.lo)) {
    iv.lo = iv.lo_closed ? std::ceil(iv.lo) : std::floor(iv.lo) + 1.0;
    iv.lo_closed = true;
  }
  if (std::isfinite(iv.hi)) {
    iv.hi = iv.hi_closed ? std::floor(iv.hi) : std::ceil(iv.hi) - 1.0;
    iv.hi_closed = true;
  }
  return iv;
}

std::vector<Interval> normalize_1d(const GroupDomain& d, const std::vector<Interval>& input) {
  std::vector<Interval> pieces;
  pieces.reserve(input.size());
  for (Interval iv : input) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi)) throw PreconditionError("interval endpoint is NaN");
    open_infinite_ends(iv);
    switch (d.kind()) {
      case DomainKind::Circle:
        push_circle_arc(d, iv, pieces);
        break;
      case DomainKind::Integers:
        pieces.push_back(snap_to_integers(iv));
        break;
      case DomainKind::CyclicFinite: {
        Interval s = snap_to_integers(iv);
        const double top = static_cast<double>(d.order() - 1);
        if (s.lo < 0.0 || std::isinf(s.lo)) s = {0.0, s.hi, true, true};
        if (s.hi > top || std::isinf(s.hi)) s = {s.lo, top, true, true};
        pieces.push_back(s);
        break;
      }
      default:
        pieces.push_back(iv);
    }
  }
  for (auto& p : pieces) {
    open_infinite_ends(p);
    if (p.lo == 0.0) p.lo = 0.0;
    if (p.hi == 0.0) p.hi = 0.0;
  }
  std::erase_if(pieces, [](const Interval& p) { return p.is_empty(); });
  std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });

  const bool discrete = d.is_discrete();
  std::vector<Interval> out;
  for (const auto& p : pieces) {
    if (!out.empty()) {
      Interval& cur = out.back();
      const bool touches = discrete ? p.lo <= cur.hi + 1.0
                                    : (p.lo < cur.hi || (p.lo == cur.hi && (cur.hi_closed || p.lo_closed)));
      if (touches) {
        if (p.hi > cur.hi) {
          cur.hi = p.hi;
          cur.hi_closed = p.hi_closed;
        } else if (p.hi == cur.hi) {
          cur.hi_closed = cur.hi_closed || p.hi_closed;
        }
        continue;
      }
    }
    out.push_back(p);
  }
  return out;
}

Interval universe_1d(const GroupDomain& d) {
  switch (d.kind()) {
    case DomainKind::Circle:
      return {0.0, kTwoPi, true, false};
    case DomainKind::CyclicFinite:
      return {0.0, static_cast<double>(d.order() - 1), true, true};
    default:
      return {-kInf, kInf, false, false};
  }
}

Interval intersect_intervals(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r;
}

// ---- R^n cells -------------------------------------------------------------

using BoxPredicate = std::function<bool(std::span<const double>)>;

std::vector<Interval> axis_pieces(std::vector<double> cuts) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Interval> pieces;
  double prev = -kInf;
  for (double c : cuts) {
    pieces.push_back({prev, c, false, false});
    pieces.push_back(Interval::point(c));
    prev = c;
  }
  pieces.push_back({prev, kInf, false, false});
  return pieces;
}

double representative(const Interval& p) {
  if (p.lo == p.hi) return p.lo;
  if (std::isinf(p.lo) && std::isinf(p.hi)) return 0.0;
  if (std::isinf(p.lo)) return p.hi - 1.0;
  if (std::isinf(p.hi)) return p.lo + 1.0;
  return 0.5 * (p.lo + p.hi);
}

// Two sides can be merged into one interval when they touch without overlap.
bool adjacent(const Interval& a, const Interval& b, Interval& merged) {
  const Interval* first = a.lo <= b.lo ? &a : &b;
  const Interval* second = first == &a ? &b : &a;
  if (first->hi != second->lo) return false;
  if (first->hi_closed == second->lo_closed) return false;
  merged = {first->lo, second->hi, first->lo_closed, second->hi_closed};
  return true;
}

std::vector<Box> merge_cells(std::vector<Box> cells) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cells.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < cells.size() && !changed; ++j) {
        int differing = -1;
        for (std::size_t k = 0; k < cells[i].sides.size(); ++k) {
          if (!(cells[i].sides[k] == cells[j].sides[k])) {
            if (differing >= 0) {
              differing = -2;
              break;
            }
            differing = static_cast<int>(k);
          }
        }
        if (differing < 0) continue;
        Interval merged;
        if (adjacent(cells[i].sides[differing], cells[j].sides[differing], merged)) {
          cells[i].sides[differing] = merged;
          cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Box& a, const Box& b) {
    for (std::size_t k = 0; k < a.sides.size(); ++k) {
      const auto& x = a.sides[k];
      const auto& y = b.sides[k];
      if (x.lo != y.lo) return x.lo < y.lo;
      if (x.lo_closed != y.lo_closed) return x.lo_closed;
      if (x.hi != y.hi) return x.hi < y.hi;
      if (x.hi_closed != y.hi_closed) return !x.hi_closed;
    }
    return false;
  });
  return cells;
}

std::vector<Box> decompose_cells(int dim, const std::vector<const std::vector<Box>*>& sources,
                                 const BoxPredicate& keep) {
  std::vector<std::vector<Interval>> pieces(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) {
    std::vector<double> cuts;
    for (const auto* src : sources) {
      for (const auto& b : *src) {
        const auto& s = b.sides[static_cast<std::size_t>(k)];
        if (std::isfinite(s.lo)) cuts.push_back(s.lo);
        if (std::isfinite(s.hi)) cuts.push_back(s.hi);
      }
    }
    pieces[static_cast<std::size_t>(k)] = axis_pieces(std::move(cuts));
  }

  std::vector<Box> cells;
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  std::vector<double> rep(static_cast<std::size_t>(dim));
  while (true) {
    Box cell;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      cell.sides.push_back(pieces[k][idx[k]]);
      rep[k] = representative(pieces[k][idx[k]]);
    }
    if (keep(rep)) cells.push_back(std::move(cell));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == pieces[k].size()) {
      idx[k] = 0;
      ++k;
    }
    if (k == idx.size()) break;
  }
  return merge_cells(std::move(cells));
}

bool any_contains(const std::vector<Box>& boxes, std::span<const double> x) {
  return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(x); });
}

void require_same_domain(const BorelSet& a, const BorelSet& b) {
  if (!(a.domain() == b.domain())) {
    throw DomainMismatch("set operation between " + a.domain().describe() + " and " +
                         b.domain().describe());
  }
}

}  // namespace

BorelSet BorelSet::empty(const GroupDomain& domain) { return BorelSet(domain); }

BorelSet BorelSet::whole(const GroupDomain& domain) {
  if (domain.kind() == DomainKind::RealBox) {
    Box b;
    b.sides.assign(static_cast<std::size_t>(domain.dimension()), Interval{-kInf, kInf, false, false});
    return from_boxes(domain, {b});
  }
  return from_intervals(domain, {universe_1d(domain)});
}

BorelSet BorelSet::from_intervals(const GroupDomain& domain, std::vector<Interval> intervals) {
  if (domain.kind() == DomainKind::RealBox) {
    if (domain.dimension() != 1) throw DomainMismatch("intervals given for a multi-dimensional box domain");
    std::vector<Box> boxes;
    for (auto& iv : intervals) boxes.push_back(Box{{iv}});
    return from_boxes(domain, std::move(boxes));
  }
  BorelSet s(domain);
  s.intervals_ = normalize_1d(domain, intervals);
  return s;
}

BorelSet BorelSet::from_points(const GroupDomain& domain, std::span<const double> points) {
  std::vector<Interval> ivs;
  ivs.reserve(points.size());
  for (double t : points) ivs.push_back(Interval::point(domain.canonical(t)));
  return from_intervals(domain, std::move(ivs));
}

BorelSet BorelSet::from_boxes(const GroupDomain& domain, std::vector<Box> boxes) {
  if (domain.kind() != DomainKind::RealBox) throw DomainMismatch("boxes given for a 1-D domain");
  for (auto& b : boxes) {
    if (b.sides.size() != static_cast<std::size_t>(domain.dimension())) {
      throw DomainMismatch("box dimension does not match the domain");
    }
    for (auto& s : b.sides) {
      if (std::isnan(s.lo) || std::isnan(s.hi)) throw PreconditionError("box side is NaN");
      open_infinite_ends(s);
    }
  }
  std::erase_if(boxes, [](const Box& b) { return b.is_empty(); });
  BorelSet s(domain);
  if (boxes.empty()) return s;
  s.boxes_ = decompose_cells(domain.dimension(), {&boxes},
                             [&](std::span<const double> x) { return any_contains(boxes, x); });
  return s;
}

bool BorelSet::contains(double t) const {
  if (domain_.kind() == DomainKind::RealBox) return contains(std::span<const double>(&t, 1));
  const double c = domain_.canonical(t);
  return std::any_of(intervals_.begin(), intervals_.end(), [&](const Interval& iv) { return iv.contains(c); });
}

bool BorelSet::contains(std::span<const double> x) const {
  if (domain_.kind() != DomainKind::RealBox) {
    if (x.size() != 1) throw DomainMismatch("point dimension does not match the domain");
    return contains(x[0]);
  }
  return any_contains(boxes_, x);
}

BorelSet BorelSet::negated() const {
  if (domain_.kind() == DomainKind::RealBox) {
    std::vector<Box> flipped = boxes_;
    for (auto& b : flipped) {
      for (auto& s : b.sides) s = {-s.hi, -s.lo, s.hi_closed, s.lo_closed};
    }
    return from_boxes(domain_, std::move(flipped));
  }
  std::vector<Interval> out;
  for (const auto& iv : intervals_) {
    switch (domain_.kind()) {
      case DomainKind::Circle:
      case DomainKind::CyclicFinite: {
        Interval rest = iv;
        if (iv.lo == 0.0 && iv.lo_closed) {
          out.push_back(Interval::point(0.0));
          if (iv.hi == 0.0) continue;
          rest.lo_closed = false;
          if (domain_.kind() == DomainKind::CyclicFinite) {
            rest.lo = 1.0;
            rest.lo_closed = true;
          }
        }
        const double lo = domain_.reflect_endpoint(rest.hi);
        const double hi = domain_.reflect_endpoint(rest.lo);
        if (domain_.kind() == DomainKind::CyclicFinite) {
          out.push_back({lo, hi, true, true});
        } else {
          out.push_back({lo, hi, rest.hi_closed, rest.lo_closed});
        }
        break;
      }
      default:
        out.push_back({domain_.reflect_endpoint(iv.hi), domain_.reflect_endpoint(iv.lo), iv.hi_closed,
                       iv.lo_closed});
    }
  }
  return from_intervals(domain_, std::move(out));
}

BorelSet BorelSet::complement() const {
  if (domain_.kind() == DomainKind::RealBox) {
    BorelSet s(domain_);
    s.boxes_ = decompose_cells(domain_.dimension(), {&boxes_},
                               [&](std::span<const double> x) { return !any_contains(boxes_, x); });
    return s;
  }
  const Interval u = universe_1d(domain_);
  std::vector<Interval> gaps;
  if (domain_.is_discrete()) {
    double cursor = u.lo;
    for (const auto& iv : intervals_) {
      gaps.push_back({cursor, iv.lo - 1.0, true, true});
      cursor = iv.hi + 1.0;
    }
    gaps.push_back({cursor, u.hi, true, true});
  } else {
    double cursor = u.lo;
    bool cursor_closed = u.lo_closed;
    for (const auto& iv : intervals_) {
      gaps.push_back({cursor, iv.lo, cursor_closed, !iv.lo_closed});
      cursor = iv.hi;
      cursor_closed = !iv.hi_closed;
    }
    gaps.push_back({cursor, u.hi, cursor_closed, u.hi_closed});
  }
  return from_intervals(domain_, std::move(gaps));
}

BorelSet unite(const BorelSet& a, const BorelSet& b) {
  require_same_domain(a, b);
  if (a.domain().kind() == DomainKind::RealBox) {
    BorelSet s(a.domain());
    s.boxes_ = decompose_cells(a.domain().dimension(), {&a.boxes_, &b.boxes_}, [&](std::span<const double> x) {
      return any_contains(a.boxes_, x) || any_contains(b.boxes_, x);
    });
    return s;
  }
  std::vector<Interval> all = a.intervals_;
  all.insert(all.end(), b.intervals_.begin(), b.intervals_.end());
  return BorelSet::from_intervals(a.domain(), std::move(all));
}

BorelSet intersect(const BorelSet& a, const BorelSet& b) {
  require_same_domain(a, b);
  if (a.domain().kind() == DomainKind::RealBox) {
    BorelSet s(a.domain());
    if (a.boxes_.empty() || b.boxes_.empty()) return s;
    s.boxes_ = decompose_cells(a.domain().dimension(), {&a.boxes_, &b.boxes_}, [&](std::span<const double> x) {
      return any_contains(a.boxes_, x) && any_contains(b.boxes_, x);
    });
    return s;
  }
  std::vector<Interval> out;
  for (const auto& x : a.intervals_) {
    for (const auto& y : b.intervals_) {
      Interval r = intersect_intervals(x, y);
      if (!r.is_empty()) out.push_back(r);
    }
  }
  return BorelSet::from_intervals(a.domain(), std::move(out));
}

BorelSet difference(const BorelSet& a, const BorelSet& b) { return intersect(a, b.complement()); }

bool disjoint_from_reflection(const BorelSet& s) { return intersect(s, s.negated()).is_empty(); }

}  // namespace imdet
