#pragma once

#include <array>

#include "imdet/borel_set.hpp"
#include "imdet/measure.hpp"

namespace imdet {

/// m = symmetric + antisymmetric with reflect(symmetric) = symmetric and
/// reflect(antisymmetric) = -antisymmetric.
struct SymAntiSplit {
  SignedMeasure symmetric;
  SignedMeasure antisymmetric;
};

SymAntiSplit sym_anti_split(const SignedMeasure& m);

/// m = positive - negative with both parts nonnegative and carried by the
/// complementary sets hahn_positive and hahn_negative.
struct JordanPair {
  SignedMeasure positive;
  SignedMeasure negative;
  BorelSet hahn_positive;
  BorelSet hahn_negative;
};

/// Atoms split by the sign of their weight; density segments cut at the sign
/// changes of the density. Points where the density vanishes go to the
/// positive set, and the negative set takes its density pieces half-open on
/// the right: [lo, hi).
///
/// Throws UnresolvedSign when a density's sign pattern cannot be localized.
JordanPair hahn_jordan(const SignedMeasure& m);

struct VSetCertificate {
  /// V = A⁺ ∩ (-A⁻).
  BorelSet v_set;
  /// V ∩ (-V) = ∅.
  bool disjointness_ok = false;
  /// η⁺(V), ‖η⁺‖, ‖η⁻‖, η⁻(-V): all equal to ‖η‖/2 for antisymmetric η.
  std::array<double, 4> masses{};
  double half_norm = 0.0;
};

/// Antisymmetry tolerance on ‖η + reflect(η)‖.
inline constexpr double kAntisymmetryTolerance = 1e-9;

/// Throws PreconditionError (reporting the measured defect) when eta is not
/// antisymmetric.
VSetCertificate lemma1_v_set(const SignedMeasure& eta);

/// ‖m + reflect(m)‖: zero exactly when m is antisymmetric.
double antisymmetry_defect(const SignedMeasure& m);

}  // namespace imdet
