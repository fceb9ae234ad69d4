// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "imdet/catalog.hpp"
#include "imdet/charfn.hpp"
#include "imdet/decompose.hpp"
#include "imdet/determine.hpp"
#include "imdet/finite_oracle.hpp"

using namespace imdet;

namespace {

constexpr double kNormOneTol = 1e-6;
constexpr double kUniformNormTol = 1e-9;
constexpr double kNormalNormTol = 1e-6;
constexpr double kPoissonNormTol = 1e-9;
constexpr double kRoundTripTol = 1e-9;
constexpr double kCompanionMassTol = 1e-12;
constexpr double kCompanionImTol = 1e-9;
constexpr double kCompanionDistinct = 1e-6;
constexpr double kCompanionNormCap = 1.0 - 1e-6;
constexpr double kLemmaTol = 1e-12;
constexpr double kEq29Tol = 1e-9;
constexpr double kGramTol = 1e-8;
constexpr double kGramFailBelow = -1e-3;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records a failed check, keeping the first message.
struct Checker {
  int checks = 0;
  int failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  Outcome outcome(const std::string& summary) const {
    if (failures == 0) return {true, summary};
    return {false, std::to_string(failures) + " of " + std::to_string(checks) + " checks failed; first: " + first};
  }
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

std::string params_text(const Params& p) {
  std::string out;
  for (const auto& [k, v] : p) out += (out.empty() ? "" : ",") + k + "=" + num(v);
  return out;
}

std::vector<double> random_dual_points(const GroupDomain& d, std::mt19937_64& rng, int count) {
  std::vector<double> out;
  switch (d.kind()) {
    case DomainKind::Integers: {
      std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
      while (static_cast<int>(out.size()) < count) out.push_back(u(rng));
      break;
    }
    case DomainKind::Circle: {
      std::uniform_int_distribution<int> u(-40, 40);
      while (static_cast<int>(out.size()) < count) {
        const double x = u(rng);
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
      }
      break;
    }
    case DomainKind::CyclicFinite: {
      std::uniform_int_distribution<int> u(0, d.order() - 1);
      while (static_cast<int>(out.size()) < count) out.push_back(u(rng));
      break;
    }
    default: {
      std::uniform_real_distribution<double> u(-10.0, 10.0);
      while (static_cast<int>(out.size()) < count) out.push_back(u(rng));
    }
  }
  return out;
}

Outcome catalog_regression() {
  Checker c;
  int verdicts = 0;
  auto check = [&](const DistributionSpec& s, bool want, bool norm_one) {
    const Classification cl = classify(s);
    ++verdicts;
    const std::string tag = s.name + " " + params_text(s.params);
    c.expect(cl.verdict.determined == want, tag + ": determined=" + (cl.verdict.determined ? "true" : "false"));
    c.expect(cl.agrees, tag + ": disagrees with catalog expectation");
    if (norm_one) c.expect(std::abs(cl.verdict.norm_im - 1.0) <= kNormOneTol, tag + ": norm " + num(cl.verdict.norm_im));
  };
  for (const char* n : {"arcsine", "beta", "gamma", "hyperexponential", "levy", "maxwell", "pareto", "chi2"}) {
    check(make_spec(n), true, true);
  }
  check(make_spec("levy", {{"mu", 2.0}, {"c", 0.5}}), true, true);
  check(make_spec("gamma", {{"k", 0.5}, {"theta", 3.0}}), true, true);
  for (const char* n : {"normal", "laplace", "cauchy"}) check(make_spec(n), false, false);
  check(make_spec("normal", {{"mu", 1.0}, {"sigma", 1.0}}), false, false);
  check(make_spec("normal", {{"mu", -3.0}, {"sigma", 2.0}}), false, false);
  check(make_spec("laplace", {{"mu", 1.0}, {"b", 1.0}}), false, false);
  check(make_spec("laplace", {{"mu", -2.0}, {"b", 0.5}}), false, false);
  check(make_spec("cauchy", {{"x0", 1.0}, {"gamma", 1.0}}), false, false);
  check(make_spec("cauchy", {{"x0", 4.0}, {"gamma", 0.5}}), false, false);
  for (const char* n : {"uniform", "triangular"}) {
    for (auto [a, b] : {std::pair{1.0, 3.0}, {-1.0, 3.0}, {-3.0, -1.0}, {-1.0, 1.0}}) {
      check(make_spec(n, {{"a", a}, {"b", b}}), !(a <= 0.0 && 0.0 <= b), false);
    }
  }
  for (const char* n : {"mv_pareto1", "mv_pareto2", "dirichlet"}) check(make_spec(n), true, false);
  for (const char* n : {"poisson", "binomial", "negative_binomial", "hypergeometric"}) check(make_spec(n), false, false);
  for (const char* n : {"wrapped_cauchy", "wrapped_normal", "wrapped_exponential"}) check(make_spec(n), false, false);
  return c.outcome(std::to_string(verdicts) + " verdicts, 0 mismatches");
}

Outcome quantitative_norms() {
  Checker c;
  const double u = bnorm_im(make_measure(make_spec("uniform", {{"a", -1.0}, {"b", 3.0}})));
  c.expect(std::abs(u - 0.5) <= kUniformNormTol, "uniform[-1,3] norm " + num(u));

  const double phi1 = 0.5 * std::erfc(-1.0 / std::numbers::sqrt2);
  const double n = bnorm_im(make_measure(make_spec("normal", {{"mu", 1.0}, {"sigma", 1.0}})));
  c.expect(std::abs(n - (2.0 * phi1 - 1.0)) <= kNormalNormTol, "Normal(1,1) norm " + num(n));

  double tail = 0.0;
  double term = std::exp(-1.0);
  for (int k = 1; k < 60; ++k) {
    term /= k;
    tail += term;
  }
  const double p = bnorm_im(make_measure(make_spec("poisson", {{"lambda", 1.0}})));
  c.expect(std::abs(p - tail) <= kPoissonNormTol, "Poisson(1) norm " + num(p));
  return c.outcome("uniform " + num(u) + ", normal " + num(n) + ", poisson " + num(p));
}

Outcome reconstruction_round_trip() {
  Checker c;
  std::vector<DistributionSpec> specs;
  for (const auto& e : catalog_entries()) {
    if (e.kind == DomainKind::RealBox) continue;
    const auto s = make_spec(e.name);
    if (s.expected_determined) specs.push_back(s);
  }
  specs.push_back(make_spec("uniform", {{"a", -3.0}, {"b", -1.0}}));
  specs.push_back(make_spec("triangular", {{"a", 0.0}, {"b", 2.0}}));
  specs.push_back(make_spec("binomial", {{"n", 6.0}, {"p", 1.0}}));
  specs.push_back(make_spec("hypergeometric", {{"N", 10.0}, {"K", 7.0}, {"n", 5.0}}));
  for (const auto& s : specs) {
    const SignedMeasure m = make_measure(s);
    const double d = distance(reconstruct(sym_anti_split(m).antisymmetric), m);
    c.expect(d <= kRoundTripTol, s.name + ": discrepancy " + num(d));
  }
  const GroupDomain R = GroupDomain::real_line();
  const SignedMeasure sine(R, {{1.0, 0.5}, {-1.0, -0.5}});
  c.expect(reconstruct(sine) == SignedMeasure::dirac(R, 1.0), "Im f = sin x did not give δ_1");
  return c.outcome(std::to_string(specs.size()) + " determined laws recovered; sin x -> δ_1 exactly");
}

Outcome companion_suite() {
  Checker c;
  std::mt19937_64 rng(kSeed);
  int measures = 0;
  while (measures < 100) {
    const SignedMeasure m = gen::random_probability_atoms(rng);
    if (bnorm_im(m) > kCompanionNormCap) continue;
    ++measures;
    const auto [a, b] = gen::two_companions(m);
    for (const auto* r : {&a, &b}) {
      const std::string tag = "measure " + std::to_string(measures) + " sigma " + r->sigma_choice.describe();
      c.expect(std::abs(r->companion.mass() - 1.0) <= kCompanionMassTol, tag + ": mass");
      c.expect(is_nonnegative(r->companion, 0.0), tag + ": negative weight");
      c.expect(r->grid.size() == 64, tag + ": grid size");
      c.expect(r->max_im_discrepancy <= kCompanionImTol, tag + ": Im gap " + num(r->max_im_discrepancy));
      c.expect(r->distinctness > kCompanionDistinct, tag + ": equals the original");
    }
    double apart = 0.0;
    for (double x : a.grid) apart = std::max(apart, std::abs(eval_cf(a.companion, x) - eval_cf(b.companion, x)));
    c.expect(apart > kCompanionDistinct, "measure " + std::to_string(measures) + ": companions coincide");
  }
  return c.outcome("100 measures, 200 companions valid and distinct");
}

Outcome lemma1_suite() {
  Checker c;
  std::mt19937_64 rng(kSeed + 1);
  for (int i = 0; i < 1000; ++i) {
    const SignedMeasure eta = gen::random_antisymmetric_atoms(rng);
    const auto cert = lemma1_v_set(eta);
    const auto jp = hahn_jordan(eta);
    const std::string tag = "R trial " + std::to_string(i);
    c.expect(cert.disjointness_ok && disjoint_from_reflection(cert.v_set), tag + ": V meets -V");
    for (double x : cert.masses) c.expect(std::abs(x - cert.half_norm) <= kLemmaTol, tag + ": quadruple");
    c.expect(std::abs(2.0 * cert.half_norm - total_variation(eta)) <= kLemmaTol, tag + ": half norm");
    const BorelSet minus_v = cert.v_set.negated();
    for (int k = 0; k < 10; ++k) {
      const BorelSet e = gen::random_borel_set(rng);
      c.expect(std::abs(measure_of(jp.positive, e) - measure_of(eta, intersect(e, cert.v_set))) <= kLemmaTol,
               tag + ": eta+(E)");
      c.expect(std::abs(measure_of(jp.negative, e) + measure_of(eta, intersect(e, minus_v))) <= kLemmaTol,
               tag + ": eta-(E)");
    }
  }
  int vectors = 0;
  for (int n = 1; n <= 20; ++n) {
    for (const auto& a : random_measures(n, 50, RandomKind::Antisymmetric, kSeed + n)) {
      ++vectors;
      const auto exact = lemma1_exact(a);
      c.expect(exact.disjoint, "Z_" + std::to_string(n) + ": V meets -V");
      c.expect(exact.positive_mass == exact.half_norm, "Z_" + std::to_string(n) + ": positive mass != half norm");
    }
  }
  return c.outcome("1000 measures on R x 10 sets; " + std::to_string(vectors) + " exact vectors on Z_n");
}

Outcome oracle_equivalence() {
  const OracleReport r = run_oracle(2, 12, 500, kSeed);
  Checker c;
  c.expect(r.trials == 5500, "trials " + std::to_string(r.trials));
  c.expect(r.disagreements == 0, std::to_string(r.disagreements) + " disagreements");
  c.expect(r.unique_cases + r.witnessed_cases == r.trials, "non-unique case without a verified witness");
  return c.outcome(std::to_string(r.trials - r.disagreements) + "/" + std::to_string(r.trials) + " agreements, " +
                   std::to_string(r.witnessed_cases) + " witnessed");
}

Outcome eq29_cross_check() {
  Checker c;
  std::mt19937_64 rng(kSeed + 2);
  std::vector<SignedMeasure> ms;
  for (const auto& e : catalog_entries()) {
    if (e.kind != DomainKind::RealBox) ms.push_back(make_measure(make_spec(e.name)));
  }
  ms.push_back(make_measure(make_spec("normal", {{"mu", 1.0}, {"sigma", 1.0}})));
  ms.push_back(make_measure(make_spec("uniform", {{"a", -1.0}, {"b", 3.0}})));
  for (int n : {3, 6, 9}) ms.push_back(random_measures(n, 1, RandomKind::Probability, kSeed + n)[0].to_measure());
  while (ms.size() < 50) ms.push_back(gen::random_probability_atoms(rng));
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const auto& m = ms[i];
    const SignedMeasure anti = sym_anti_split(m).antisymmetric;
    for (double x : random_dual_points(m.domain(), rng, 64)) {
      const CfValue f = eval_cf_estimate(m, x);
      const CfValue a = eval_cf_estimate(anti, x);
      const double gap = std::abs(a.value - Complex(0.0, f.value.imag()));
      c.expect(gap <= kEq29Tol + f.error + a.error, "measure " + std::to_string(i) + " x=" + num(x) + ": gap " + num(gap));
    }
  }
  return c.outcome(std::to_string(ms.size()) + " measures x 64 points");
}

Outcome gram_certificates() {
  Checker c;
  std::mt19937_64 rng(kSeed + 3);
  double worst = 0.0;
  int laws = 0;
  for (const auto& e : catalog_entries()) {
    if (e.kind == DomainKind::RealBox || laws == 20) continue;
    ++laws;
    const SignedMeasure m = make_measure(make_spec(e.name));
    const auto pts = random_dual_points(m.domain(), rng, 8);
    const GramReport g = psd_check(m, pts, kGramTol);
    worst = std::min(worst, g.min_eigenvalue);
    c.expect(g.is_psd && g.min_eigenvalue >= -kGramTol, e.name + ": min eigenvalue " + num(g.min_eigenvalue));
  }
  c.expect(laws == 20, "only " + std::to_string(laws) + " laws");
  const GroupDomain R = GroupDomain::real_line();
  const SignedMeasure phi(R, {{1.0, 0.25}, {-1.0, -0.25}});
  const GramReport bad = psd_check(phi, random_dual_points(R, rng, 8), kGramTol);
  c.expect(!bad.is_psd && bad.min_eigenvalue < kGramFailBelow, "iφ min eigenvalue " + num(bad.min_eigenvalue));
  return c.outcome("20 laws, worst min eigenvalue " + num(worst) + "; iφ min eigenvalue " + num(bad.min_eigenvalue));
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"catalog regression", catalog_regression},
      {"quantitative norms", quantitative_norms},
      {"reconstruction round trip", reconstruction_round_trip},
      {"companion suite", companion_suite},
      {"lemma 1 property suite", lemma1_suite},
      {"oracle equivalence", oracle_equivalence},
      {"antisymmetric part vs Im f", eq29_cross_check},
      {"positive-definiteness certificates", gram_certificates},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("[%s] %zu %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
  }
  return failed == 0 ? 0 : 1;
}
