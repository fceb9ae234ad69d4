#pragma once

#include <memory>
#include <vector>

#include "imdet/analytic.hpp"
#include "imdet/domain.hpp"
#include "imdet/quadrature.hpp"

namespace imdet {

/// Coefficients below this magnitude are treated as exact zeros after
/// arithmetic, for atom weights and density coefficients alike.
inline constexpr double kCanonicalZero = 1e-15;

/// Real polynomial with ascending coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  double operator()(double t) const noexcept;
  Polynomial derivative() const;
  /// Exact ∫_a^b p(t) dt for finite a, b.
  double integral(double a, double b) const noexcept;
  /// t -> p(origin - t).
  Polynomial reflected(double origin) const;
  Polynomial scaled(double c) const;

  /// Every point of (a, b) where p changes sign, in increasing order, found
  /// by isolating the monotone pieces between critical points (recursively
  /// through the derivatives) and bisecting each bracket to machine precision.
  std::vector<double> sign_changes(double a, double b) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<double> coeffs_;
};

/// coeff · f(t), or coeff · f(origin - t) when mirrored, for a named density f.
struct NamedTerm {
  double coeff = 1.0;
  bool mirrored = false;
  std::shared_ptr<const AnalyticDensity> fn;

  double operator()(double t, double origin) const { return coeff * (*fn)(mirrored ? origin - t : t); }
  /// Same function, parameters and orientation.
  bool same_shape(const NamedTerm& o) const;
};

/// Density on [lower, upper] given by polynomials plus a linear combination
/// of named densities:
///
///   p(t) = poly(t) + mirrored_poly(c - t) + Σ coeff_i f_i(t or c - t)
///
/// with c the domain's reflection origin. Sums and reflections of catalog
/// densities stay in this form exactly, and reflecting twice gives back the
/// identical segment.
struct DensitySegment {
  double lower = 0.0;
  double upper = 0.0;
  Polynomial poly;
  Polynomial mirrored_poly;
  std::vector<NamedTerm> terms;

  double operator()(double t, double origin) const;
  bool is_zero() const noexcept { return poly.is_zero() && mirrored_poly.is_zero() && terms.empty(); }
  bool is_polynomial() const noexcept { return terms.empty(); }
  bool is_bounded() const noexcept;
  /// poly(t) + mirrored_poly(c - t) as a single polynomial in t (rounded).
  Polynomial combined_poly(double origin) const;

  DensitySegment scaled(double c) const;
  DensitySegment restricted(double lo, double hi) const;
  /// The segment of the reflected measure.
  DensitySegment reflected(const GroupDomain& domain) const;

  /// Merges like terms, drops canonical zeros, orients even named densities
  /// unmirrored, and sorts terms into a canonical order. With origin 0, or a
  /// constant mirrored polynomial, the fold into `poly` is exact and done.
  void canonicalize(double origin);

  bool same_content(const DensitySegment& o) const;
  std::string describe() const;
};

/// ∫_lo^hi of the segment's density, for lower <= lo < hi <= upper.
Estimate integrate_segment(const DensitySegment& s, double lo, double hi, double origin);

/// Maximal subintervals of a segment on which the density has constant sign
/// (+1, -1, or 0 where it vanishes identically).
struct SignPiece {
  double lo = 0.0;
  double hi = 0.0;
  int sign = 0;
};

/// Splits a segment at the sign changes of its density. Polynomial segments
/// use exact root isolation. Segments with named terms are sampled on a
/// dyadic grid (in a compactifying variable for unbounded segments) and each
/// bracket is bisected to width 1e-12; the count of sign changes must be
/// stable under one grid refinement, otherwise UnresolvedSign is thrown.
std::vector<SignPiece> sign_pieces(const DensitySegment& s, double origin);

/// Overlays segment lists: pieces covered by several segments are summed,
/// zero pieces removed, and adjacent pieces with equal content merged.
std::vector<DensitySegment> normalize_density(const GroupDomain& domain, const std::vector<DensitySegment>& segments);

}  // namespace imdet
