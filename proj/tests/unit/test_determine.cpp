#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "imdet/catalog.hpp"
#include "imdet/charfn.hpp"
#include "imdet/decompose.hpp"
#include "imdet/determine.hpp"
#include "imdet/error.hpp"

using namespace imdet;

namespace {

const GroupDomain R = GroupDomain::real_line();

SignedMeasure uniform(double a, double b) {
  return SignedMeasure(R, {}, {{a, b, Polynomial({1.0 / (b - a)}), {}, {}}});
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

TEST(Norm, Examples) {
  EXPECT_DOUBLE_EQ(bnorm_im(SignedMeasure::dirac(R, 1.0)), 1.0);
  EXPECT_NEAR(bnorm_im(uniform(-1.0, 3.0)), 0.5, 1e-12);
  const SignedMeasure n = make_measure(make_spec("normal", {{"mu", 1.0}, {"sigma", 1.0}}));
  EXPECT_NEAR(bnorm_im(n), 2.0 * std_normal_cdf(1.0) - 1.0, 1e-8);
  EXPECT_THROW(bnorm_im(0.5 * SignedMeasure::dirac(R, 1.0)), PreconditionError);
  EXPECT_THROW(bnorm_im(SignedMeasure(R, {{1.0, 1.5}, {2.0, -0.5}})), PreconditionError);
}

TEST(Determined, Examples) {
  EXPECT_TRUE(is_determined(make_measure(make_spec("gamma", {{"k", 2.0}, {"theta", 1.0}}))).determined);
  const auto v = is_determined(make_measure(make_spec("normal")));
  EXPECT_FALSE(v.determined);
  EXPECT_NEAR(v.norm_im, 0.0, 1e-12);
  EXPECT_TRUE(is_determined(uniform(1.0, 3.0)).determined);
  EXPECT_FALSE(is_determined(uniform(-1.0, 3.0)).determined);
  EXPECT_FALSE(is_determined(uniform(-1.0, 1.0)).determined);
  EXPECT_TRUE(is_determined(uniform(-3.0, -1.0)).determined);

  const auto trivial = is_determined(SignedMeasure::dirac(GroupDomain::cyclic(1), 0));
  EXPECT_TRUE(trivial.determined);
  EXPECT_EQ(trivial.method, VerdictMethod::TrivialGroup);
}

TEST(SupportCriterion, Examples) {
  const BorelSet pos = BorelSet::from_intervals(R, {Interval::open(0.0, kInf)});
  EXPECT_TRUE(corollary_support_check(make_measure(make_spec("exponential", {{"lambda", 1.0}})), pos));
  EXPECT_FALSE(corollary_support_check(make_measure(make_spec("normal")), pos));

  const auto spec = make_spec("mv_pareto1", {{"a", 2.0}, {"theta1", 1.0}, {"theta2", 1.0}});
  const GroupDomain box = GroupDomain::real_box(2);
  const BorelSet u = BorelSet::from_boxes(box, {Box{{Interval::open(1.0, kInf), Interval::open(1.0, kInf)}}});
  EXPECT_TRUE(corollary_support_check(make_measure(spec), u));
  EXPECT_TRUE(support_verdict(make_measure(spec), u).determined);
}

TEST(Companion, Examples) {
  const SignedMeasure m(R, {{1.0, 0.75}, {-1.0, 0.25}});
  auto c = companion(m, SigmaChoice::atom_at_zero());
  EXPECT_EQ(c.companion, SignedMeasure(R, {{0.0, 0.5}, {1.0, 0.5}}));
  EXPECT_LE(c.max_im_discrepancy, 1e-15);
  EXPECT_GT(c.distinctness, 1e-6);

  const SignedMeasure normal = make_measure(make_spec("normal"));
  c = companion(normal, SigmaChoice::atom_at_zero());
  EXPECT_EQ(c.companion, SignedMeasure::dirac(R, 0.0));
  const auto pair = companion(normal, SigmaChoice::symmetric_pair(1.0));
  EXPECT_EQ(pair.companion, SignedMeasure(R, {{-1.0, 0.5}, {1.0, 0.5}}));
  EXPECT_GT(distance(pair.companion, c.companion), 0.5);
  EXPECT_GT(pair.distinctness, 1e-6);

  EXPECT_THROW(companion(SignedMeasure::dirac(R, 1.0), SigmaChoice::atom_at_zero()), PreconditionError);
  EXPECT_THROW(companion(normal, SigmaChoice::symmetric_pair(0.0)), ParameterError);
}

TEST(Companion, SigmaParsing) {
  EXPECT_EQ(SigmaChoice::parse("zero").kind, SigmaChoice::Kind::AtomAtZero);
  EXPECT_EQ(SigmaChoice::parse("pair:2.5").a, 2.5);
  EXPECT_EQ(SigmaChoice::parse(SigmaChoice::symmetric_pair(1.5).describe()).a, 1.5);
  EXPECT_THROW(SigmaChoice::parse("pair:"), ParameterError);
  EXPECT_THROW(SigmaChoice::parse("one"), ParameterError);
}

TEST(Reconstruct, Examples) {
  EXPECT_EQ(reconstruct(SignedMeasure(R, {{1.0, 0.5}, {-1.0, -0.5}})), SignedMeasure::dirac(R, 1.0));
  const SignedMeasure u = uniform(1.0, 3.0);
  EXPECT_LE(distance(reconstruct(sym_anti_split(u).antisymmetric), u), 1e-12);
  try {
    reconstruct(SignedMeasure(R, {{1.0, 0.25}, {-1.0, -0.25}}));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("not determined; reconstruction not unique"), std::string::npos);
  }
}

TEST(DetermineProperty, NormBoundAndSupportConsistency) {
  std::mt19937_64 rng(41);
  const BorelSet pos = BorelSet::from_intervals(R, {Interval::open(0.0, kInf)});
  const BorelSet neg = BorelSet::from_intervals(R, {Interval::open(-kInf, 0.0)});
  for (int i = 0; i < 1000; ++i) {
    const SignedMeasure m = gen::random_probability_atoms(rng);
    const double n = bnorm_im(m);
    EXPECT_GE(n, -1e-12);
    EXPECT_LE(n, 1.0 + 1e-12);
    if (corollary_support_check(m, pos) || corollary_support_check(m, neg)) EXPECT_NEAR(n, 1.0, 1e-9);
  }
}

TEST(DetermineProperty, CompanionValidity) {
  std::mt19937_64 rng(42);
  int checked = 0;
  while (checked < 100) {
    const SignedMeasure m = gen::random_probability_atoms(rng);
    if (bnorm_im(m) > 1.0 - 1e-6) continue;
    ++checked;
    const auto [a, b] = gen::two_companions(m);
    for (const auto& c : {a, b}) {
      EXPECT_NEAR(c.companion.mass(), 1.0, 1e-12);
      EXPECT_TRUE(is_nonnegative(c.companion));
      EXPECT_LE(c.max_im_discrepancy, 1e-9);
      EXPECT_GT(c.distinctness, 1e-6);
      ASSERT_EQ(c.grid.size(), 64u);
    }
    EXPECT_GT(distance(a.companion, b.companion), 1e-6);
  }
}

TEST(Companion, RemainderSigmaIsRejected) {
  // ½δ_0 + ½δ_1 = 2η⁺ + ½δ_0.
  const SignedMeasure m(R, {{0.0, 0.5}, {1.0, 0.5}});
  EXPECT_THROW(companion(m, SigmaChoice::atom_at_zero()), PreconditionError);
  EXPECT_GT(companion(m, SigmaChoice::symmetric_pair(1.0)).distinctness, 0.1);
}

TEST(DetermineProperty, RoundTripOnDeterminedCatalog) {
  for (const auto& e : catalog_entries()) {
    if (e.kind == DomainKind::RealBox) continue;
    const auto spec = make_spec(e.name);
    const SignedMeasure m = make_measure(spec);
    if (bnorm_im(m) < 1.0 - 1e-9) continue;
    EXPECT_LE(distance(reconstruct(sym_anti_split(m).antisymmetric), m), 1e-9) << e.name;
  }
}
