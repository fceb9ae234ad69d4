#pragma once

#include <string>
#include <vector>

#include "imdet/borel_set.hpp"
#include "imdet/measure.hpp"

namespace imdet {

/// Default tolerance of the norm test.
inline constexpr double kDeterminationTolerance = 1e-6;

enum class VerdictMethod {
  /// ‖Im f‖_B compared with 1.
  NormTest,
  /// The measure is carried by a set disjoint from its reflection.
  SupportCriterion,
  /// A reflection-invariant set carries mass δ > 0, so ‖Im f‖_B <= 1 - δ;
  /// norm_im holds that upper bound.
  SymmetricOverlap,
  /// The group has a single element; f ≡ 1 for every probability measure.
  TrivialGroup,
};

std::string to_string(VerdictMethod m);

struct DeterminationVerdict {
  double norm_im = 0.0;
  bool determined = false;
  double tolerance_used = 0.0;
  VerdictMethod method = VerdictMethod::NormTest;
};

/// ‖Im f‖_B = ‖m_a‖ for a probability measure m. Throws PreconditionError when
/// m is not nonnegative with mass 1 within 1e-9.
double bnorm_im(const SignedMeasure& m);

DeterminationVerdict is_determined(const SignedMeasure& m, double tolerance = kDeterminationTolerance);

/// True when u ∩ (-u) = ∅ and m(u) = 1 within 1e-9.
bool corollary_support_check(const SignedMeasure& m, const BorelSet& u);

/// Verdict on R^n from a candidate support set u: SupportCriterion when the
/// check passes, SymmetricOverlap when u ∩ (-u) carries mass above the
/// tolerance. Throws PreconditionError when neither applies.
DeterminationVerdict support_verdict(const SignedMeasure& m, const BorelSet& u,
                                     double tolerance = kDeterminationTolerance);

/// Even probability measure σ scaled into the companion.
struct SigmaChoice {
  enum class Kind { AtomAtZero, SymmetricPair };
  Kind kind = Kind::AtomAtZero;
  double a = 0.0;

  static SigmaChoice atom_at_zero() { return {}; }
  static SigmaChoice symmetric_pair(double a) { return {Kind::SymmetricPair, a}; }

  /// "zero" or "pair:<a>".
  std::string describe() const;
  /// Parses "zero" or "pair:<a>".
  static SigmaChoice parse(const std::string& text);
};

struct CompanionResult {
  SignedMeasure original;
  SignedMeasure companion;
  SigmaChoice sigma_choice;
  /// max |Im f - Im g| over the verification grid.
  double max_im_discrepancy = 0.0;
  /// max |f - g| over the verification grid.
  double distinctness = 0.0;
  std::vector<double> grid;
};

/// ν = 2η⁺ + (1 - ‖η‖)σ, with η the antisymmetric part of m and η⁺ its Jordan
/// positive part: a probability measure with Im ν̂ = Im m̂. Throws
/// PreconditionError when m is determined (no distinct companion exists) and
/// when σ happens to reproduce m itself.
CompanionResult companion(const SignedMeasure& m, const SigmaChoice& sigma,
                          double tolerance = kDeterminationTolerance);

/// The probability measure 2φ⁺ whose characteristic function has imaginary
/// part φ̂/i, for an antisymmetric φ with ‖φ‖ = 1. The output passes a Gram
/// certificate on eight points before it is returned.
SignedMeasure reconstruct(const SignedMeasure& phi);

}  // namespace imdet
