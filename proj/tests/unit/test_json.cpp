#include <gtest/gtest.h>

#include "imdet/catalog.hpp"
#include "imdet/decompose.hpp"
#include "imdet/error.hpp"
#include "imdet/json.hpp"

using namespace imdet;

namespace {

std::string parse_error_path(const std::string& text) {
  try {
    measure_from_json(Json::parse(text));
  } catch (const ParseError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST(Json, CanonicalDump) {
  const Json j{{"b", 0.1}, {"a", 1.0}, {"c", {1, 2.5}}, {"d", "x"}};
  EXPECT_EQ(canonical_dump(j), R"({"a":1.0,"b":0.10000000000000001,"c":[1,2.5],"d":"x"})");
}

TEST(Json, MeasureRoundTrip) {
  for (const auto& e : catalog_entries()) {
    const SignedMeasure m = make_measure(make_spec(e.name));
    const Json j = to_json(m);
    EXPECT_EQ(measure_from_json(Json::parse(canonical_dump(j))), m) << e.name;
  }
  const SignedMeasure anti = sym_anti_split(make_measure(make_spec("triangular"))).antisymmetric;
  EXPECT_EQ(measure_from_json(to_json(anti)), anti);
  const SignedMeasure circ = reflect(make_measure(make_spec("wrapped_exponential")));
  EXPECT_EQ(measure_from_json(to_json(circ)), circ);
}

TEST(Json, MeasureFormat) {
  const SignedMeasure m = measure_from_json(Json::parse(R"({
    "domain": {"kind": "R"},
    "atoms": [{"t": 1, "w": 0.25}],
    "density": [{"a": 0, "b": 1, "form": "poly", "coeffs": [0.5]},
                {"a": 0, "b": "inf", "form": "named", "name": "exponential", "params": {"lambda": 1}, "coeff": 0.25}]
  })"));
  EXPECT_NEAR(m.mass(), 1.0, 1e-12);
  EXPECT_NEAR(m.density_at(0.5), 0.5 + 0.25 * std::exp(-0.5), 1e-15);
  const SignedMeasure z = measure_from_json(Json::parse(R"({"domain": {"kind": "Zn", "n": 5}, "atoms": [{"t": 7, "w": 1}]})"));
  EXPECT_EQ(z.atoms()[0].t, 2.0);
}

TEST(Json, ErrorsNameThePath) {
  EXPECT_EQ(parse_error_path(R"([])"), "");
  EXPECT_EQ(parse_error_path(R"({"atoms": []})"), "/domain");
  EXPECT_EQ(parse_error_path(R"({"domain": {"kind": "Q"}})"), "/domain/kind");
  EXPECT_EQ(parse_error_path(R"({"domain": {"kind": "Zn", "n": 0}})"), "/domain/n");
  EXPECT_EQ(parse_error_path(R"({"domain": {"kind": "R"}, "atoms": [{"t": 0, "w": 1}, {"t": "x", "w": 1}]})"),
            "/atoms/1/t");
  EXPECT_EQ(parse_error_path(R"({"domain": {"kind": "Z"}, "atoms": [{"t": 0.5, "w": 1}]})"), "/atoms/0/t");
  EXPECT_EQ(parse_error_path(R"({"domain": {"kind": "R"}, "density": [{"a": 0, "b": 1, "form": "poly"}]})"),
            "/density/0/coeffs");
  EXPECT_EQ(parse_error_path(R"({"domain": {"kind": "R"}, "density": [{"a": 0, "b": "inf", "form": "poly", "coeffs": [1]}]})"),
            "/density/0");
  EXPECT_EQ(parse_error_path(R"({"domain": {"kind": "R"}, "density": [{"a": 0, "b": 1, "form": "named", "name": "zeta"}]})"),
            "/density/0");
  EXPECT_EQ(parse_error_path(R"({"domain": {"kind": "R"}, "extra": 1})"), "/extra");
}
