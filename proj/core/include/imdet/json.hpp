#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "imdet/catalog.hpp"
#include "imdet/charfn.hpp"
#include "imdet/decompose.hpp"
#include "imdet/determine.hpp"
#include "imdet/finite_oracle.hpp"
#include "imdet/measure.hpp"

namespace imdet {

using Json = nlohmann::json;

/// Compact JSON with sorted keys and every float printed with 17 significant
/// digits, so equal values always serialize to identical bytes.
std::string canonical_dump(const Json& j);

// Measure format:
//   {"domain": {"kind": "R"|"Z"|"T"|"Zn"|"Rbox", "n": int?},
//    "atoms": [{"t": number, "w": number}],
//    "density": [{"a": number|"-inf", "b": number|"inf", "form": "poly"|"named",
//                 "coeffs": [number]?, "name": string?, "params": {..}?,
//                 "coeff": number?, "mirrored": bool?}]}
// "n" is the order of Z_n and the dimension of R^n. Density entries on the
// same range add up. "mirrored" evaluates the entry at c - t (c = 0 on R,
// 2π on the circle); "coeff" scales a named density and defaults to 1. On
// R^n density entries are named multivariate laws without "a" and "b".

Json to_json(const GroupDomain& d);
Json to_json(const SignedMeasure& m);
Json to_json(const BorelSet& s);
Json to_json(const SymAntiSplit& s);
Json to_json(const JordanPair& p);
Json to_json(const VSetCertificate& c);
Json to_json(const DeterminationVerdict& v);
Json to_json(const CompanionResult& c);
Json to_json(const CharFnSample& s);
Json to_json(const GramReport& g);
Json to_json(const OracleReport& r);
Json to_json(const CatalogEntry& e);

/// Throws ParseError naming the JSON pointer of the offending node.
GroupDomain domain_from_json(const Json& j, const std::string& path = "/domain");
SignedMeasure measure_from_json(const Json& j);
/// Reads and parses a measure file; syntax errors are ParseErrors at "".
SignedMeasure load_measure(const std::string& file);

}  // namespace imdet
