#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "imdet/catalog.hpp"
#include "imdet/decompose.hpp"
#include "imdet/error.hpp"

using namespace imdet;

namespace {

const GroupDomain R = GroupDomain::real_line();

SignedMeasure atoms(std::vector<Atom> a) { return SignedMeasure(R, std::move(a)); }

SignedMeasure uniform(double a, double b) {
  return SignedMeasure(R, {}, {{a, b, Polynomial({1.0 / (b - a)}), {}, {}}});
}

}  // namespace

TEST(SymAnti, Examples) {
  auto s = sym_anti_split(atoms({{1.0, 0.75}, {-1.0, 0.25}}));
  EXPECT_EQ(s.symmetric, atoms({{1.0, 0.5}, {-1.0, 0.5}}));
  EXPECT_EQ(s.antisymmetric, atoms({{1.0, 0.25}, {-1.0, -0.25}}));

  const SignedMeasure normal = make_measure(make_spec("normal", {{"mu", 0.0}, {"sigma", 1.0}}));
  s = sym_anti_split(normal);
  EXPECT_EQ(s.symmetric, normal);
  EXPECT_TRUE(s.antisymmetric.is_zero());

  s = sym_anti_split(SignedMeasure::dirac(R, 1.0));
  EXPECT_EQ(s.symmetric, atoms({{1.0, 0.5}, {-1.0, 0.5}}));
  EXPECT_EQ(s.antisymmetric, atoms({{1.0, 0.5}, {-1.0, -0.5}}));
}

TEST(HahnJordan, Examples) {
  auto j = hahn_jordan(atoms({{1.0, 0.25}, {-1.0, -0.25}}));
  EXPECT_EQ(j.positive, atoms({{1.0, 0.25}}));
  EXPECT_EQ(j.negative, atoms({{-1.0, 0.25}}));
  EXPECT_TRUE(j.hahn_positive.contains(1.0));
  EXPECT_TRUE(j.hahn_negative.contains(-1.0));

  // Closed-form oracle: ∫_0^1 t dt = 1/2 on each side.
  const SignedMeasure linear(R, {}, {{-1.0, 1.0, Polynomial({0.0, 1.0}), {}, {}}});
  j = hahn_jordan(linear);
  EXPECT_NEAR(j.positive.mass(), 0.5, 1e-12);
  EXPECT_NEAR(j.negative.mass(), 0.5, 1e-12);
  EXPECT_NEAR(j.positive.density_at(0.5), 0.5, 1e-15);
  EXPECT_NEAR(j.negative.density_at(-0.5), 0.5, 1e-15);
  EXPECT_TRUE(j.hahn_negative.contains(-0.5));
  EXPECT_FALSE(j.hahn_negative.contains(0.0));

  j = hahn_jordan(make_measure(make_spec("gamma")));
  EXPECT_TRUE(j.negative.is_zero());
  EXPECT_TRUE(j.hahn_negative.is_empty());
}

TEST(HahnJordan, NamedDensitySignChange) {
  // φ(t-1) - φ(t+1) changes sign at 0; each part has mass Φ(1) - Φ(-1).
  const SignedMeasure m = sym_anti_split(make_measure(make_spec("normal", {{"mu", 1.0}, {"sigma", 1.0}}))).antisymmetric;
  const auto j = hahn_jordan(m);
  const double expected = 0.5 * std::erf(1.0 / std::sqrt(2.0));
  EXPECT_NEAR(j.positive.mass(), expected, 1e-9);
  EXPECT_NEAR(j.negative.mass(), expected, 1e-9);
  EXPECT_TRUE(j.hahn_positive.contains(0.1));
  EXPECT_TRUE(j.hahn_negative.contains(-0.1));
}

TEST(Lemma1, Examples) {
  auto c = lemma1_v_set(atoms({{1.0, 0.25}, {-1.0, -0.25}}));
  EXPECT_EQ(c.v_set, BorelSet::from_intervals(R, {Interval::point(1.0)}));
  for (double x : c.masses) EXPECT_DOUBLE_EQ(x, 0.25);
  EXPECT_DOUBLE_EQ(c.half_norm, 0.25);

  c = lemma1_v_set(SignedMeasure::zero(R));
  EXPECT_TRUE(c.v_set.is_empty());
  for (double x : c.masses) EXPECT_EQ(x, 0.0);

  // Antisymmetric part of uniform[-1,3] is ±1/8 on ±(1,3].
  c = lemma1_v_set(sym_anti_split(uniform(-1.0, 3.0)).antisymmetric);
  EXPECT_EQ(c.v_set, BorelSet::from_intervals(R, {{1.0, 3.0, false, true}}));
  for (double x : c.masses) EXPECT_NEAR(x, 0.25, 1e-12);
  EXPECT_TRUE(c.disjointness_ok);
}

TEST(Lemma1, RejectsNonAntisymmetric) {
  try {
    lemma1_v_set(SignedMeasure::dirac(R, 1.0));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("defect"), std::string::npos);
  }
}

TEST(DecomposeProperty, SplitRecombines) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 1000; ++i) {
    const SignedMeasure m = gen::random_signed_atoms(rng);
    const auto s = sym_anti_split(m);
    EXPECT_LE(distance(s.symmetric + s.antisymmetric, m), 1e-15);
    EXPECT_EQ(reflect(s.symmetric), s.symmetric);
    EXPECT_EQ(reflect(s.antisymmetric), scale(s.antisymmetric, -1.0));
  }
}

TEST(DecomposeProperty, Lemma1OnRandomAntisymmetric) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 1000; ++i) {
    const SignedMeasure eta = gen::random_antisymmetric_atoms(rng);
    const auto c = lemma1_v_set(eta);
    EXPECT_TRUE(disjoint_from_reflection(c.v_set));
    for (double x : c.masses) EXPECT_NEAR(x, c.half_norm, 1e-12);
    EXPECT_NEAR(2.0 * c.half_norm, total_variation(eta), 1e-12);

    const auto j = hahn_jordan(eta);
    const BorelSet minus_v = c.v_set.negated();
    for (int k = 0; k < 10; ++k) {
      const BorelSet e = gen::random_borel_set(rng);
      EXPECT_NEAR(measure_of(j.positive, e), measure_of(eta, intersect(e, c.v_set)), 1e-12);
      EXPECT_NEAR(measure_of(j.negative, e), -measure_of(eta, intersect(e, minus_v)), 1e-12);
    }
    EXPECT_LE(distance(reflect(j.positive), j.negative), 1e-12);
  }
}

TEST(DecomposeProperty, JordanIsMinimal) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    const SignedMeasure m = gen::random_signed_atoms(rng);
    const auto j = hahn_jordan(m);
    EXPECT_NEAR(total_variation(j.positive) + total_variation(j.negative), total_variation(m), 1e-12);
    EXPECT_TRUE(is_nonnegative(j.positive));
    EXPECT_TRUE(is_nonnegative(j.negative));
    EXPECT_TRUE(intersect(j.hahn_positive, j.hahn_negative).is_empty());
  }
  for (const char* name : {"uniform", "triangular", "laplace", "cauchy", "gamma"}) {
    const SignedMeasure m = sym_anti_split(make_measure(make_spec(name, {}))).antisymmetric;
    const auto j = hahn_jordan(m);
    EXPECT_NEAR(total_variation(j.positive) + total_variation(j.negative), total_variation(m), 1e-9) << name;
  }
}
