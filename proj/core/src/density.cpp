#include "imdet/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "imdet/error.hpp"

namespace imdet {

// ---- Polynomial --------------------------------------------------------------

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double& c : coeffs_) {
    if (!std::isfinite(c)) throw PreconditionError("polynomial coefficient is not finite");
    if (std::abs(c) < kCanonicalZero) c = 0.0;
  }
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double t) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

double Polynomial::integral(double a, double b) const noexcept {
  auto antiderivative = [this](double t) {
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * t + coeffs_[k] / static_cast<double>(k + 1);
    return acc * t;
  };
  return antiderivative(b) - antiderivative(a);
}

Polynomial Polynomial::reflected(double origin) const {
  // p(c - t) = Σ_k a_k Σ_j C(k, j) c^(k-j) (-t)^j
  std::vector<double> out(coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    double binom = 1.0;
    for (std::size_t j = 0; j <= k; ++j) {
      const double sign = (j % 2) ? -1.0 : 1.0;
      const double power = origin == 0.0 ? (j == k ? 1.0 : 0.0) : std::pow(origin, static_cast<double>(k - j));
      out[j] += coeffs_[k] * binom * power * sign;
      binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
    }
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::scaled(double c) const {
  std::vector<double> out = coeffs_;
  for (double& x : out) x *= c;
  return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
  return Polynomial(std::move(out));
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Bisects a bracket of a monotone piece down to adjacent doubles.
double bisect_root(const Polynomial& p, double lo, double hi) {
  const int s_lo = sign_of(p(lo));
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;
    const int s = sign_of(p(mid));
    if (s == 0) return mid;
    if (s == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

std::vector<double> zeros_in(const Polynomial& p, double a, double b) {
  if (p.degree() <= 0) return {};
  if (p.degree() == 1) {
    const double r = -p.coeffs()[0] / p.coeffs()[1];
    if (r > a && r < b) return {r};
    return {};
  }
  std::vector<double> breaks{a};
  for (double c : zeros_in(p.derivative(), a, b)) breaks.push_back(c);
  breaks.push_back(b);

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i];
    const double hi = breaks[i + 1];
    if (i > 0 && p(lo) == 0.0) roots.push_back(lo);
    const int s_lo = sign_of(p(lo));
    const int s_hi = sign_of(p(hi));
    if (s_lo * s_hi < 0) roots.push_back(bisect_root(p, lo, hi));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace

std::vector<double> Polynomial::sign_changes(double a, double b) const {
  std::vector<double> out;
  const auto roots = zeros_in(*this, a, b);
  // Keep only roots where the sign actually flips (odd multiplicity).
  std::vector<double> probes{a};
  probes.insert(probes.end(), roots.begin(), roots.end());
  probes.push_back(b);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double left = 0.5 * (probes[i] + probes[i + 1]);
    const double right = 0.5 * (probes[i + 1] + probes[i + 2]);
    if (((*this)(left) < 0.0) != ((*this)(right) < 0.0)) out.push_back(roots[i]);
  }
  return out;
}

// ---- NamedTerm / DensitySegment ----------------------------------------------

bool NamedTerm::same_shape(const NamedTerm& o) const {
  return mirrored == o.mirrored && fn->name() == o.fn->name() && fn->params() == o.fn->params();
}

double DensitySegment::operator()(double t, double origin) const {
  double v = poly(t);
  if (!mirrored_poly.is_zero()) v += mirrored_poly(origin - t);
  for (const auto& term : terms) v += term(t, origin);
  return v;
}

bool DensitySegment::is_bounded() const noexcept { return std::isfinite(lower) && std::isfinite(upper); }

Polynomial DensitySegment::combined_poly(double origin) const { return poly + mirrored_poly.reflected(origin); }

DensitySegment DensitySegment::scaled(double c) const {
  DensitySegment s = *this;
  s.poly = poly.scaled(c);
  s.mirrored_poly = mirrored_poly.scaled(c);
  for (auto& term : s.terms) term.coeff *= c;
  std::erase_if(s.terms, [](const NamedTerm& t) { return std::abs(t.coeff) < kCanonicalZero; });
  return s;
}

DensitySegment DensitySegment::restricted(double lo, double hi) const {
  DensitySegment s = *this;
  s.lower = lo;
  s.upper = hi;
  return s;
}

DensitySegment DensitySegment::reflected(const GroupDomain& domain) const {
  DensitySegment s;
  s.lower = domain.reflect_endpoint(upper);
  s.upper = domain.reflect_endpoint(lower);
  s.poly = mirrored_poly;
  s.mirrored_poly = poly;
  s.terms = terms;
  for (auto& term : s.terms) term.mirrored = !term.mirrored;
  s.canonicalize(domain.reflection_origin());
  return s;
}

namespace {

bool term_less(const NamedTerm& a, const NamedTerm& b) {
  if (a.fn->name() != b.fn->name()) return a.fn->name() < b.fn->name();
  if (a.fn->params() != b.fn->params()) return a.fn->params() < b.fn->params();
  return a.mirrored < b.mirrored;
}

}  // namespace

void DensitySegment::canonicalize(double origin) {
  if ((origin == 0.0 || mirrored_poly.degree() == 0) && !mirrored_poly.is_zero()) {
    poly = poly + mirrored_poly.reflected(0.0);
    mirrored_poly = Polynomial();
  }
  for (auto& term : terms) {
    if (term.fn->is_even()) term.mirrored = false;
  }
  std::stable_sort(terms.begin(), terms.end(), term_less);
  std::vector<NamedTerm> merged;
  for (const auto& term : terms) {
    if (!merged.empty() && merged.back().same_shape(term)) {
      merged.back().coeff += term.coeff;
    } else {
      merged.push_back(term);
    }
  }
  std::erase_if(merged, [](const NamedTerm& t) { return std::abs(t.coeff) < kCanonicalZero; });
  terms = std::move(merged);
}

bool DensitySegment::same_content(const DensitySegment& o) const {
  if (!(poly == o.poly) || !(mirrored_poly == o.mirrored_poly) || terms.size() != o.terms.size()) return false;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!terms[i].same_shape(o.terms[i]) || terms[i].coeff != o.terms[i].coeff) return false;
  }
  return true;
}

std::string DensitySegment::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "density segment [" << lower << ", " << upper << "]";
  if (!poly.is_zero()) os << " poly(degree " << poly.degree() << ")";
  if (!mirrored_poly.is_zero()) os << " mirrored poly(degree " << mirrored_poly.degree() << ")";
  for (const auto& t : terms) {
    os << " " << (t.coeff >= 0 ? "+" : "") << t.coeff << "*" << t.fn->name() << (t.mirrored ? "(-t)" : "");
  }
  return os.str();
}

Estimate integrate_segment(const DensitySegment& s, double lo, double hi, double origin) {
  lo = std::max(lo, s.lower);
  hi = std::min(hi, s.upper);
  Estimate e;
  if (!(lo < hi)) return e;
  if (!s.poly.is_zero() || !s.mirrored_poly.is_zero()) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw NonIntegrableDensity("non-integrable " + s.describe() + ": polynomial on an unbounded range");
    }
    e.value = s.poly.integral(lo, hi) + s.mirrored_poly.integral(origin - hi, origin - lo);
  }
  if (!s.terms.empty()) {
    const quadrature::Integrand f = [&](double t) {
      double v = 0.0;
      for (const auto& term : s.terms) v += term(t, origin);
      return v;
    };
    const Estimate q = quadrature::integrate(f, lo, hi);
    if (q.divergent) throw NonIntegrableDensity("non-integrable " + s.describe());
    e += q;
  }
  return e;
}

namespace {

constexpr int kSignGridLog2 = 10;
constexpr double kBisectWidth = 1e-12;
// Values below this fraction of the summed term magnitudes are rounding noise.
constexpr double kNoiseFraction = 1e-13;

// Maps u in (0, 1) increasingly onto the segment's interior.
double chart(const DensitySegment& s, double u) {
  const bool lo_inf = std::isinf(s.lower);
  const bool hi_inf = std::isinf(s.upper);
  if (!lo_inf && !hi_inf) return s.lower + (s.upper - s.lower) * u;
  if (lo_inf && hi_inf) return std::tan(std::numbers::pi * (u - 0.5));
  if (hi_inf) return s.lower + u / (1.0 - u);
  return s.upper - (1.0 - u) / u;
}

int noisy_sign(const DensitySegment& s, double t, double origin) {
  double v = s.poly(t);
  double scale = std::abs(v);
  if (!s.mirrored_poly.is_zero()) {
    const double m = s.mirrored_poly(origin - t);
    v += m;
    scale += std::abs(m);
  }
  for (const auto& term : s.terms) {
    const double x = term(t, origin);
    v += x;
    scale += std::abs(x);
  }
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os.precision(17);
    os << "cannot resolve the sign of " << s.describe() << ": density is not finite at t = " << t;
    throw UnresolvedSign(os.str());
  }
  if (std::abs(v) <= kNoiseFraction * scale) return 0;
  return v > 0.0 ? 1 : -1;
}

struct Bracket {
  double lo;
  double hi;
};

// Brackets around each sign change seen on a grid of 2^k points.
std::vector<Bracket> sampled_brackets(const DensitySegment& s, double origin, int log2n, std::vector<int>* signs) {
  const std::size_t n = std::size_t{1} << log2n;
  std::vector<Bracket> out;
  int last_sign = 0;
  double last_t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = chart(s, (static_cast<double>(i) + 0.5) / static_cast<double>(n));
    const int sg = noisy_sign(s, t, origin);
    if (sg == 0) continue;
    if (last_sign != 0 && sg != last_sign) out.push_back({last_t, t});
    if (signs && (signs->empty() || signs->back() != sg)) signs->push_back(sg);
    last_sign = sg;
    last_t = t;
  }
  return out;
}

double bisect_sign_change(const DensitySegment& s, double origin, double lo, double hi) {
  const int s_lo = noisy_sign(s, lo, origin);
  while (hi - lo > kBisectWidth * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const int sg = noisy_sign(s, mid, origin);
    if (sg == 0) return mid;
    if (sg == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<SignPiece> sign_pieces(const DensitySegment& s, double origin) {
  std::vector<double> cuts;
  if (s.is_polynomial()) {
    cuts = s.combined_poly(origin).sign_changes(s.lower, s.upper);
  } else {
    std::vector<int> signs;
    const auto coarse = sampled_brackets(s, origin, kSignGridLog2, nullptr);
    const auto fine = sampled_brackets(s, origin, kSignGridLog2 + 1, &signs);
    if (coarse.size() != fine.size()) {
      throw UnresolvedSign("cannot resolve the sign of " + s.describe() + ": sign changes found " +
                           std::to_string(coarse.size()) + " and " + std::to_string(fine.size()) +
                           " times on successive grids");
    }
    if (fine.empty() && signs.empty()) return {{s.lower, s.upper, 0}};
    for (const auto& b : fine) cuts.push_back(bisect_sign_change(s, origin, b.lo, b.hi));
  }

  std::vector<SignPiece> out;
  double lo = s.lower;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    const double hi = i < cuts.size() ? cuts[i] : s.upper;
    if (!(lo < hi)) continue;
    double probe;
    if (std::isfinite(lo) && std::isfinite(hi)) {
      probe = 0.5 * (lo + hi);
    } else if (std::isfinite(lo)) {
      probe = lo + 1.0;
    } else if (std::isfinite(hi)) {
      probe = hi - 1.0;
    } else {
      probe = 0.0;
    }
    int sg = 0;
    if (s.is_polynomial()) {
      const double v = s(probe, origin);
      sg = (v > 0.0) - (v < 0.0);
    } else {
      // Probe a few interior points; the piece has one sign wherever it is
      // distinguishable from noise.
      for (double u : {0.5, 0.25, 0.75, 0.125, 0.875}) {
        DensitySegment piece = s.restricted(lo, hi);
        sg = noisy_sign(s, chart(piece, u), origin);
        if (sg != 0) break;
      }
      (void)probe;
    }
    if (!out.empty() && out.back().sign == sg) {
      out.back().hi = hi;
    } else {
      out.push_back({lo, hi, sg});
    }
    lo = hi;
  }
  return out;
}

std::vector<DensitySegment> normalize_density(const GroupDomain& domain, const std::vector<DensitySegment>& segments) {
  const double origin = domain.reflection_origin();
  std::vector<double> cuts;
  for (const auto& s : segments) {
    if (std::isnan(s.lower) || std::isnan(s.upper) || !(s.lower < s.upper)) {
      throw PreconditionError("density segment needs lower < upper");
    }
    if (domain.kind() == DomainKind::Circle && (s.lower < 0.0 || s.upper > kTwoPi)) {
      throw PreconditionError("circle density segments must lie in [0, 2pi]");
    }
    if (!s.is_bounded() && (!s.poly.is_zero() || !s.mirrored_poly.is_zero())) {
      throw NonIntegrableDensity("non-integrable " + s.describe() + ": polynomial on an unbounded segment");
    }
    for (const auto& t : s.terms) {
      if (!t.fn) throw PreconditionError("density term without a function");
      const auto want = domain.kind() == DomainKind::Circle ? DomainKind::Circle : DomainKind::RealLine;
      if (t.fn->domain_kind() != want) {
        throw DomainMismatch("density '" + t.fn->name() + "' does not live on " + domain.describe());
      }
      if (!std::isfinite(t.coeff)) throw PreconditionError("density coefficient is not finite");
    }
    cuts.push_back(s.lower);
    cuts.push_back(s.upper);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<DensitySegment> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    DensitySegment piece;
    piece.lower = cuts[i];
    piece.upper = cuts[i + 1];
    bool covered = false;
    for (const auto& s : segments) {
      if (s.lower <= piece.lower && piece.upper <= s.upper) {
        covered = true;
        piece.poly = piece.poly + s.poly;
        piece.mirrored_poly = piece.mirrored_poly + s.mirrored_poly;
        piece.terms.insert(piece.terms.end(), s.terms.begin(), s.terms.end());
      }
    }
    if (!covered) continue;
    piece.canonicalize(origin);
    if (piece.is_zero()) continue;
    if (!out.empty() && out.back().upper == piece.lower && out.back().same_content(piece)) {
      out.back().upper = piece.upper;
    } else {
      out.push_back(std::move(piece));
    }
  }
  return out;
}

}  // namespace imdet
