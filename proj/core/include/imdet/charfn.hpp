#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "imdet/measure.hpp"

namespace imdet {

using Complex = std::complex<double>;

/// f(x) = ∫ e^{ixt} dm(t) with its absolute error bound.
///
/// The dual variable x is a real number for measures on R, an integer for the
/// circle, an angle for Z, and a residue j for Z_n (where the character is
/// e^{2πijt/n}).
struct CfValue {
  Complex value;
  double error = 0.0;
  /// Quadrature stopped short of its tolerance somewhere.
  bool warning = false;
};

CfValue eval_cf_estimate(const SignedMeasure& m, double x);
Complex eval_cf(const SignedMeasure& m, double x);
double re_cf(const SignedMeasure& m, double x);
double im_cf(const SignedMeasure& m, double x);

struct CharFnSample {
  std::vector<double> points;
  std::vector<Complex> values;
  /// Largest error bound over the points.
  double error_bound = 0.0;
  std::vector<double> errors;
  bool warning = false;

  /// Columns x, re, im, err.
  std::string to_csv() const;
};

CharFnSample sample_cf(const SignedMeasure& m, std::span<const double> points);

/// `count` evenly spaced points on [lo, hi] (both ends included).
std::vector<double> linspace(double lo, double hi, int count);

/// Default verification grid of the dual group: 64 points on [-10, 10] for R,
/// 64 angles on [-π, π) for Z, integers -32..31 for the circle, all residues
/// for Z_n.
std::vector<double> dual_grid(const GroupDomain& domain, int count = 64);

struct FourierCoefficients {
  /// k ↦ α_k for every atom of the measure.
  std::map<long long, double> alpha;
  /// {k : α_k > 0}.
  std::vector<long long> support;
};

/// Coefficients α_k of f(x) = Σ α_k e^{ikx} for an atomic measure on Z.
FourierCoefficients fourier_coeffs(const SignedMeasure& m);

struct GramReport {
  std::vector<double> points;
  double min_eigenvalue = 0.0;
  bool is_psd = false;
  double tolerance = 0.0;
};

/// Largest point set psd_check accepts.
inline constexpr std::size_t kMaxGramPoints = 64;

/// Minimum eigenvalue of the Hermitian matrix [f(x_j - x_k)].
GramReport psd_check(const SignedMeasure& m, std::span<const double> points, double tolerance);

}  // namespace imdet
