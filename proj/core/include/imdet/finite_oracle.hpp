#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "imdet/measure.hpp"

namespace imdet {

/// Real measure on Z_n as its weight vector over residues 0..n-1.
struct FiniteMeasureVector {
  std::vector<double> weights;

  int order() const noexcept { return static_cast<int>(weights.size()); }
  /// Residue pairing k ↔ n - k.
  int partner(int k) const noexcept { return k == 0 ? 0 : order() - k; }

  SignedMeasure to_measure() const;
  static FiniteMeasureVector from_measure(const SignedMeasure& m);

  friend bool operator==(const FiniteMeasureVector&, const FiniteMeasureVector&) = default;
};

/// f(j) = Σ_k v_k e^{2πijk/n}.
std::vector<std::complex<double>> dft(const FiniteMeasureVector& v);
/// Inverse of dft: v_k = (1/n) Σ_j f(j) e^{-2πijk/n}, real parts.
FiniteMeasureVector inverse_dft(const std::vector<std::complex<double>>& f);

/// a_k = (v_k - v_{n-k}) / 2.
std::vector<double> antisymmetric_part(const FiniteMeasureVector& v);

struct UniquenessReport {
  bool unique = false;
  /// Σ_k |a_k|.
  double antisymmetric_mass = 0.0;
  /// Probability vectors w ≠ v with Im dft(w) = Im dft(v) (empty when unique).
  std::vector<FiniteMeasureVector> witnesses;
};

/// Closed-form feasibility analysis of {w : Im dft(w) = Im dft(v)}: such w
/// share v's antisymmetric part a, and their symmetric parts s satisfy
/// s_k = s_{n-k}, s_k >= |a_k|, Σ s = 1. Unique iff Σ|a_k| = 1 (within
/// `tol`). For n <= 8 a grid search with step 1/64 over the slack simplex runs
/// as a second implementation; disagreement throws ConsistencyError.
UniquenessReport brute_uniqueness(const FiniteMeasureVector& v, double tol = 1e-12);

enum class RandomKind { Probability, Antisymmetric, Signed };

/// Seed used when none is given.
inline constexpr std::uint64_t kDefaultSeed = 0;

/// Reproducible vectors from a 64-bit Mersenne Twister seeded with `seed`.
/// Probability vectors are normalized Exp(1) draws with a random subset of
/// residues zeroed; Antisymmetric ones satisfy v_k = -v_{n-k} exactly.
std::vector<FiniteMeasureVector> random_measures(int n, int count, RandomKind kind, std::uint64_t seed = kDefaultSeed);

struct ExactLemma1 {
  /// {k : a_k > 0}.
  std::vector<int> v_set;
  bool disjoint = false;
  double positive_mass = 0.0;
  double half_norm = 0.0;
};

/// The V-set of an antisymmetric vector read off residue by residue.
ExactLemma1 lemma1_exact(const FiniteMeasureVector& a);

struct OracleReport {
  int n_min = 0;
  int n_max = 0;
  int trials_per_n = 0;
  std::uint64_t seed = 0;
  int trials = 0;
  int disagreements = 0;
  int unique_cases = 0;
  int witnessed_cases = 0;
  double min_norm = 0.0;
  double max_norm = 0.0;
};

/// Compares the norm test on the atomic measure with brute_uniqueness over
/// random probability vectors for every n in [n_min, n_max].
OracleReport run_oracle(int n_min, int n_max, int trials_per_n, std::uint64_t seed = kDefaultSeed);

}  // namespace imdet
