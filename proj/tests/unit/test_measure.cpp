#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "imdet/catalog.hpp"
#include "imdet/density.hpp"
#include "imdet/error.hpp"
#include "imdet/measure.hpp"

using namespace imdet;

namespace {

const GroupDomain R = GroupDomain::real_line();

SignedMeasure linear_on_unit() {
  return SignedMeasure(R, {}, {{-1.0, 1.0, Polynomial({0.0, 1.0}), {}, {}}});
}

SignedMeasure uniform(double a, double b) {
  return SignedMeasure(R, {}, {{a, b, Polynomial({1.0 / (b - a)}), {}, {}}});
}

}  // namespace

TEST(Domain, CanonicalForms) {
  EXPECT_DOUBLE_EQ(GroupDomain::circle().canonical(-std::numbers::pi / 2), 3 * std::numbers::pi / 2);
  EXPECT_EQ(GroupDomain::cyclic(5).canonical(-1), 4);
  EXPECT_EQ(GroupDomain::cyclic(5).reflect(2), 3);
  EXPECT_EQ(GroupDomain::cyclic(4).reflect(0), 0);
  EXPECT_THROW(GroupDomain::integers().canonical(0.5), Error);
  EXPECT_THROW(GroupDomain::cyclic(0), Error);
  EXPECT_THROW(GroupDomain::real_box(0), Error);
}

TEST(Measure, TotalVariationExamples) {
  EXPECT_DOUBLE_EQ(total_variation(SignedMeasure::dirac(R, 1.0)), 1.0);
  EXPECT_DOUBLE_EQ(total_variation(SignedMeasure(R, {{1.0, 0.25}, {-1.0, -0.25}})), 0.5);
  // ∫|t| dt over [-1,1] is 1.
  EXPECT_NEAR(total_variation(linear_on_unit()), 1.0, 1e-12);
}

TEST(Measure, ReflectExamples) {
  EXPECT_EQ(reflect(SignedMeasure::dirac(R, 1.0)), SignedMeasure::dirac(R, -1.0));
  EXPECT_EQ(reflect(uniform(1.0, 3.0)), uniform(-3.0, -1.0));
  const GroupDomain T = GroupDomain::circle();
  const SignedMeasure r = reflect(SignedMeasure::dirac(T, std::numbers::pi / 2));
  ASSERT_EQ(r.atoms().size(), 1u);
  EXPECT_NEAR(r.atoms()[0].t, 3 * std::numbers::pi / 2, 1e-15);
}

TEST(Measure, Arithmetic) {
  EXPECT_EQ(add(0.5 * SignedMeasure::dirac(R, 0.0), 0.5 * SignedMeasure::dirac(R, 0.0)), SignedMeasure::dirac(R, 0.0));
  EXPECT_TRUE(scale(SignedMeasure::dirac(R, 1.0), 0.0).is_zero());
  EXPECT_DOUBLE_EQ(total_variation(add(0.75 * SignedMeasure::dirac(R, 1.0), 0.25 * SignedMeasure::dirac(R, -1.0))), 1.0);
  EXPECT_THROW(add(SignedMeasure::dirac(R, 1.0), SignedMeasure::dirac(GroupDomain::integers(), 1.0)), DomainMismatch);
}

TEST(Measure, MeasureOfExamples) {
  const BorelSet pos = BorelSet::from_intervals(R, {Interval::open(0.0, kInf)});
  EXPECT_NEAR(measure_of(uniform(1.0, 3.0), pos), 1.0, 1e-12);
  const SignedMeasure m(R, {{1.0, 0.75}, {-1.0, 0.25}});
  EXPECT_DOUBLE_EQ(measure_of(m, BorelSet::from_intervals(R, {Interval::point(1.0)})), 0.75);
  // Oracle: the standard normal is even, so the half-line carries half.
  EXPECT_NEAR(measure_of(make_measure(make_spec("normal", {{"mu", 0.0}, {"sigma", 1.0}})), pos), 0.5, 1e-10);
}

TEST(Measure, RejectsInvalidInput) {
  EXPECT_THROW(SignedMeasure(R, {{std::nan(""), 1.0}}), Error);
  EXPECT_THROW(SignedMeasure(R, {}, {{0.0, kInf, Polynomial({1.0}), {}, {}}}), Error);
  EXPECT_THROW(SignedMeasure(GroupDomain::integers(), {}, {{0.0, 1.0, Polynomial({1.0}), {}, {}}}), Error);
  EXPECT_THROW(SignedMeasure(GroupDomain::integers(), {{0.5, 1.0}}), Error);
}

TEST(Measure, OverlappingSegmentsAdd) {
  const SignedMeasure m(R, {}, {{0.0, 2.0, Polynomial({1.0}), {}, {}}, {1.0, 3.0, Polynomial({1.0}), {}, {}}});
  EXPECT_DOUBLE_EQ(m.density_at(0.5), 1.0);
  EXPECT_DOUBLE_EQ(m.density_at(1.5), 2.0);
  EXPECT_NEAR(m.mass(), 4.0, 1e-12);
}

TEST(Density, PolynomialReflectionIsInvolution) {
  const Polynomial p({1.0, -2.0, 0.5, 3.0});
  const Polynomial q = p.reflected(kTwoPi).reflected(kTwoPi);
  for (double t : {0.1, 1.0, 4.0}) EXPECT_NEAR(q(t), p(t), 1e-9);
}

TEST(Density, CircleDoubleReflectionIsExact) {
  const GroupDomain T = GroupDomain::circle();
  const SignedMeasure m(T, {{1.0, 0.2}}, {{0.5, 2.0, Polynomial({0.1, 0.3, -0.05}), {}, {}}});
  EXPECT_EQ(reflect(reflect(m)), m);
}

TEST(MeasureProperty, ReflectIsInvolution) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const SignedMeasure m = gen::random_signed_atoms(rng);
    EXPECT_EQ(reflect(reflect(m)), m);
  }
  for (const char* name : {"gamma", "normal", "triangular", "uniform", "wrapped_cauchy"}) {
    const SignedMeasure m = make_measure(make_spec(name));
    EXPECT_EQ(reflect(reflect(m)), m) << name;
  }
}

TEST(MeasureProperty, TotalVariationIsHomogeneous) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const SignedMeasure m = gen::random_signed_atoms(rng);
    const double k = c(rng);
    EXPECT_NEAR(total_variation(scale(m, k)), std::abs(k) * total_variation(m), 1e-12 * (1.0 + total_variation(m)));
  }
}

TEST(MeasureProperty, MeasureOfBoundedByTotalVariation) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const SignedMeasure m = gen::random_signed_atoms(rng);
    const BorelSet s = gen::random_borel_set(rng);
    EXPECT_LE(std::abs(measure_of(m, s)), total_variation(m) + 1e-12);
  }
}

TEST(MeasureProperty, Additivity) {
  std::mt19937_64 rng(14);
  const SignedMeasure dens = linear_on_unit() + uniform(-0.5, 2.0);
  for (int i = 0; i < 200; ++i) {
    const SignedMeasure m = gen::random_signed_atoms(rng) + dens;
    const BorelSet s = gen::random_borel_set(rng);
    const double whole = measure_of(m, BorelSet::whole(R));
    EXPECT_NEAR(measure_of(m, s) + measure_of(m, s.complement()), whole, 1e-10);
  }
}
