#include "imdet/finite_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "imdet/determine.hpp"
#include "imdet/error.hpp"

namespace imdet {

namespace {

constexpr int kGridSteps = 64;
constexpr int kGridMaxOrder = 8;

std::complex<double> root_of_unity(long long m, int n) {
  const long long r = ((m % n) + n) % n;
  const double phase = kTwoPi * static_cast<double>(r) / n;
  return {std::cos(phase), std::sin(phase)};
}

// Residue orbits {k, n-k} of the reflection, listed by their smallest member.
std::vector<std::vector<int>> orbits(int n) {
  std::vector<std::vector<int>> out;
  for (int k = 0; k < n; ++k) {
    const int p = k == 0 ? 0 : n - k;
    if (p < k) continue;
    out.push_back(p == k ? std::vector<int>{k} : std::vector<int>{k, p});
  }
  return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> imag_dft(const FiniteMeasureVector& v) {
  std::vector<double> out;
  for (const auto& z : dft(v)) out.push_back(z.imag());
  return out;
}

// w = |a| + slack allocation + a, the allocation split evenly inside orbits.
FiniteMeasureVector with_slack(const std::vector<double>& a, const std::vector<std::vector<int>>& orb,
                               const std::vector<double>& share) {
  FiniteMeasureVector w{std::vector<double>(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i) w.weights[i] = std::abs(a[i]) + a[i];
  for (std::size_t o = 0; o < orb.size(); ++o) {
    for (int k : orb[o]) w.weights[k] += share[o] / static_cast<double>(orb[o].size());
  }
  return w;
}

bool is_probability(const FiniteMeasureVector& w, double tol) {
  double sum = 0.0;
  for (double x : w.weights) {
    if (!(x >= -tol)) return false;
    sum += x;
  }
  return std::abs(sum - 1.0) <= tol;
}

// Second implementation: walks the slack simplex on a 1/64 grid along the
// edges between its vertices, verifying every candidate against the DFT
// directly, and reports whether the candidates collapse to a single vector.
// The feasible set is the convex hull of the vertices, so it is a point
// exactly when the vertices coincide.
bool grid_search_unique(const FiniteMeasureVector& v, const std::vector<double>& a, double slack, double tol) {
  const auto orb = orbits(v.order());
  const auto target = imag_dft(v);
  const std::size_t m = orb.size();
  std::vector<FiniteMeasureVector> distinct;

  auto consider = [&](const std::vector<double>& share) {
    FiniteMeasureVector w = with_slack(a, orb, share);
    if (!is_probability(w, tol)) throw ConsistencyError("grid candidate is not a probability vector");
    if (max_abs_diff(imag_dft(w), target) > tol * v.order()) {
      throw ConsistencyError("grid candidate does not share the imaginary part");
    }
    // Two vertices lie 2·slack apart in L1, so this threshold matches the
    // closed form's slack test.
    for (const auto& f : distinct) {
      double l1 = 0.0;
      for (std::size_t i = 0; i < w.weights.size(); ++i) l1 += std::abs(f.weights[i] - w.weights[i]);
      if (l1 <= 2.0 * tol) return;
    }
    distinct.push_back(std::move(w));
  };

  std::vector<double> share(m, 0.0);
  for (std::size_t o = 0; o < m; ++o) {
    const std::size_t next = (o + 1) % m;
    for (int step = 0; step < kGridSteps; ++step) {
      std::fill(share.begin(), share.end(), 0.0);
      share[o] = slack * (kGridSteps - step) / kGridSteps;
      share[next] += slack * step / kGridSteps;
      consider(share);
    }
  }
  return distinct.size() < 2;
}

}  // namespace

SignedMeasure FiniteMeasureVector::to_measure() const {
  std::vector<Atom> atoms;
  for (int k = 0; k < order(); ++k) atoms.push_back({static_cast<double>(k), weights[k]});
  return SignedMeasure(GroupDomain::cyclic(order()), std::move(atoms));
}

FiniteMeasureVector FiniteMeasureVector::from_measure(const SignedMeasure& m) {
  if (m.domain().kind() != DomainKind::CyclicFinite) {
    throw DomainMismatch("weight vectors describe measures on Z_n, not " + m.domain().describe());
  }
  FiniteMeasureVector v{std::vector<double>(static_cast<std::size_t>(m.domain().order()), 0.0)};
  for (const auto& a : m.atoms()) v.weights[static_cast<std::size_t>(a.t)] = a.w;
  return v;
}

std::vector<std::complex<double>> dft(const FiniteMeasureVector& v) {
  const int n = v.order();
  std::vector<std::complex<double>> f(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::complex<double> acc;
    for (int k = 0; k < n; ++k) acc += v.weights[k] * root_of_unity(static_cast<long long>(j) * k, n);
    f[j] = acc;
  }
  return f;
}

FiniteMeasureVector inverse_dft(const std::vector<std::complex<double>>& f) {
  const int n = static_cast<int>(f.size());
  FiniteMeasureVector v{std::vector<double>(f.size())};
  for (int k = 0; k < n; ++k) {
    std::complex<double> acc;
    for (int j = 0; j < n; ++j) acc += f[j] * root_of_unity(-static_cast<long long>(j) * k, n);
    v.weights[k] = acc.real() / n;
  }
  return v;
}

std::vector<double> antisymmetric_part(const FiniteMeasureVector& v) {
  std::vector<double> a(v.weights.size());
  for (int k = 0; k < v.order(); ++k) a[k] = 0.5 * (v.weights[k] - v.weights[v.partner(k)]);
  return a;
}

UniquenessReport brute_uniqueness(const FiniteMeasureVector& v, double tol) {
  if (v.order() < 1) throw PreconditionError("vector must have at least one entry");
  if (!is_probability(v, 1e-12)) throw PreconditionError("expected a probability vector");
  const auto a = antisymmetric_part(v);
  const auto orb = orbits(v.order());

  UniquenessReport r;
  for (double x : a) r.antisymmetric_mass += std::abs(x);
  const double slack = 1.0 - r.antisymmetric_mass;
  // A single orbit (the trivial group) leaves nowhere to move the slack.
  r.unique = orb.size() < 2 || slack <= tol;

  if (!r.unique) {
    // Slack concentrated on one orbit at a time; the ones differing from v are
    // witnesses.
    std::vector<double> share(orb.size(), 0.0);
    for (std::size_t o = 0; o < orb.size() && r.witnesses.size() < 2; ++o) {
      std::fill(share.begin(), share.end(), 0.0);
      share[o] = slack;
      FiniteMeasureVector w = with_slack(a, orb, share);
      if (max_abs_diff(w.weights, v.weights) > tol) r.witnesses.push_back(std::move(w));
    }
  }

  if (v.order() <= kGridMaxOrder) {
    const bool grid_unique = orb.size() < 2 || grid_search_unique(v, a, std::max(slack, 0.0), tol);
    if (grid_unique != r.unique) {
      throw ConsistencyError("closed-form and grid-search uniqueness disagree");
    }
  }
  return r;
}

std::vector<FiniteMeasureVector> random_measures(int n, int count, RandomKind kind, std::uint64_t seed) {
  if (n < 1) throw ParameterError("order must be >= 1");
  if (count < 0) throw ParameterError("count must be >= 0");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);

  std::vector<FiniteMeasureVector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    FiniteMeasureVector v{std::vector<double>(static_cast<std::size_t>(n), 0.0)};
    switch (kind) {
      case RandomKind::Probability: {
        double sum = 0.0;
        for (auto& x : v.weights) {
          x = coin(rng) ? 0.0 : expo(rng);
          sum += x;
        }
        if (sum == 0.0) {
          v.weights[std::uniform_int_distribution<int>(0, n - 1)(rng)] = 1.0;
          sum = 1.0;
        }
        for (auto& x : v.weights) x /= sum;
        // Put the rounding residue on the largest entry so the sum is 1.
        const auto top = std::max_element(v.weights.begin(), v.weights.end());
        double rest = 0.0;
        for (auto it = v.weights.begin(); it != v.weights.end(); ++it) {
          if (it != top) rest += *it;
        }
        *top = 1.0 - rest;
        break;
      }
      case RandomKind::Antisymmetric:
        for (int k = 1; k < n; ++k) {
          if (k < n - k) {
            v.weights[k] = unif(rng);
            v.weights[n - k] = -v.weights[k];
          }
        }
        break;
      case RandomKind::Signed:
        for (auto& x : v.weights) x = unif(rng);
        break;
    }
    out.push_back(std::move(v));
  }
  return out;
}

ExactLemma1 lemma1_exact(const FiniteMeasureVector& a) {
  ExactLemma1 out;
  const int n = a.order();
  for (int k = 0; k < n; ++k) {
    if (a.weights[k] != -a.weights[a.partner(k)]) throw PreconditionError("vector is not antisymmetric");
    if (a.weights[k] > 0.0) out.v_set.push_back(k);
  }
  out.disjoint = std::none_of(out.v_set.begin(), out.v_set.end(), [&](int k) {
    return std::binary_search(out.v_set.begin(), out.v_set.end(), a.partner(k));
  });
  // Both sums run over the orbits in the same order, so they agree exactly.
  for (int k = 1; k < n; ++k) {
    if (k >= n - k) continue;
    out.positive_mass += std::max(a.weights[k], a.weights[n - k]);
    out.half_norm += 0.5 * (std::abs(a.weights[k]) + std::abs(a.weights[n - k]));
  }
  return out;
}

OracleReport run_oracle(int n_min, int n_max, int trials_per_n, std::uint64_t seed) {
  if (n_min < 1 || n_max < n_min) throw ParameterError("oracle needs 1 <= n_min <= n_max");
  if (trials_per_n < 1) throw ParameterError("oracle needs at least one trial per order");
  OracleReport r{n_min, n_max, trials_per_n, seed, 0, 0, 0, 0, 1.0, 0.0};
  for (int n = n_min; n <= n_max; ++n) {
    for (const auto& v : random_measures(n, trials_per_n, RandomKind::Probability, seed + static_cast<std::uint64_t>(n))) {
      const UniquenessReport u = brute_uniqueness(v);
      const DeterminationVerdict verdict = is_determined(v.to_measure(), 1e-12);
      ++r.trials;
      if (u.unique != verdict.determined) ++r.disagreements;
      r.min_norm = std::min(r.min_norm, verdict.norm_im);
      r.max_norm = std::max(r.max_norm, verdict.norm_im);
      if (u.unique) {
        ++r.unique_cases;
        continue;
      }
      const auto target = imag_dft(v);
      const bool witnessed = !u.witnesses.empty() && std::all_of(u.witnesses.begin(), u.witnesses.end(), [&](const auto& w) {
        return is_probability(w, 1e-12) && max_abs_diff(imag_dft(w), target) <= 1e-12 &&
               max_abs_diff(w.weights, v.weights) > 1e-12;
      });
      if (witnessed) ++r.witnessed_cases;
    }
  }
  return r;
}

}  // namespace imdet
