#include "imdet/json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "imdet/error.hpp"

namespace imdet {

namespace {

void dump_into(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& x : j) {
        if (!first) out += ',';
        first = false;
        dump_into(x, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
      std::string s(buf);
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      out += s;
      break;
    }
    default:
      out += j.dump();
  }
}

Json endpoint(double x) {
  if (x == -kInf) return "-inf";
  if (x == kInf) return "inf";
  return x;
}

Json interval_json(const Interval& iv) {
  return {{"lo", endpoint(iv.lo)}, {"hi", endpoint(iv.hi)}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}};
}

Json params_json(const Params& p) {
  Json o = Json::object();
  for (const auto& [k, v] : p) o[k] = v;
  return o;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ParseError(path, what); }

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "/" + key, "missing field");
  return *it;
}

double number_at(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "number is not finite");
  return v;
}

double endpoint_at(const Json& j, const std::string& path, bool lower) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (lower && s == "-inf") return -kInf;
    if (!lower && s == "inf") return kInf;
    fail(path, std::string("expected a number or \"") + (lower ? "-inf" : "inf") + "\"");
  }
  return number_at(j, path);
}

Params params_at(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  Params p;
  for (auto it = j.begin(); it != j.end(); ++it) p[it.key()] = number_at(it.value(), path + "/" + it.key());
  return p;
}

std::vector<double> coeffs_at(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(number_at(j[i], path + "/" + std::to_string(i)));
  return c;
}

void only_fields(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) fail(path + "/" + it.key(), "unknown field");
  }
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

Json to_json(const GroupDomain& d) {
  Json j{{"kind", d.tag()}};
  if (d.kind() == DomainKind::CyclicFinite) j["n"] = d.order();
  if (d.kind() == DomainKind::RealBox) j["n"] = d.dimension();
  return j;
}

Json to_json(const SignedMeasure& m) {
  Json atoms = Json::array();
  for (const auto& a : m.atoms()) atoms.push_back({{"t", a.t}, {"w", a.w}});
  Json density = Json::array();
  for (const auto& s : m.density()) {
    if (!s.poly.is_zero()) {
      density.push_back({{"a", endpoint(s.lower)}, {"b", endpoint(s.upper)}, {"form", "poly"}, {"coeffs", s.poly.coeffs()}});
    }
    if (!s.mirrored_poly.is_zero()) {
      density.push_back({{"a", endpoint(s.lower)},
                         {"b", endpoint(s.upper)},
                         {"form", "poly"},
                         {"coeffs", s.mirrored_poly.coeffs()},
                         {"mirrored", true}});
    }
    for (const auto& t : s.terms) {
      Json e{{"a", endpoint(s.lower)},
             {"b", endpoint(s.upper)},
             {"form", "named"},
             {"name", t.fn->name()},
             {"params", params_json(t.fn->params())},
             {"coeff", t.coeff}};
      if (t.mirrored) e["mirrored"] = true;
      density.push_back(std::move(e));
    }
  }
  for (const auto& b : m.box_components()) {
    density.push_back(
        {{"form", "named"}, {"name", b.dist->name()}, {"params", params_json(b.dist->params())}, {"coeff", b.weight}});
  }
  return {{"domain", to_json(m.domain())}, {"atoms", std::move(atoms)}, {"density", std::move(density)}};
}

Json to_json(const BorelSet& s) {
  Json j{{"domain", to_json(s.domain())}};
  if (s.domain().kind() == DomainKind::RealBox) {
    Json boxes = Json::array();
    for (const auto& b : s.boxes()) {
      Json sides = Json::array();
      for (const auto& iv : b.sides) sides.push_back(interval_json(iv));
      boxes.push_back(std::move(sides));
    }
    j["boxes"] = std::move(boxes);
  } else {
    Json ivs = Json::array();
    for (const auto& iv : s.intervals()) ivs.push_back(interval_json(iv));
    j["intervals"] = std::move(ivs);
  }
  return j;
}

Json to_json(const SymAntiSplit& s) {
  return {{"symmetric", to_json(s.symmetric)}, {"antisymmetric", to_json(s.antisymmetric)}};
}

Json to_json(const JordanPair& p) {
  return {{"pos", to_json(p.positive)},
          {"neg", to_json(p.negative)},
          {"Apos", to_json(p.hahn_positive)},
          {"Aneg", to_json(p.hahn_negative)}};
}

Json to_json(const VSetCertificate& c) {
  return {{"V", to_json(c.v_set)},
          {"masses", {c.masses[0], c.masses[1], c.masses[2], c.masses[3]}},
          {"disjoint", c.disjointness_ok},
          {"half_norm", c.half_norm}};
}

Json to_json(const DeterminationVerdict& v) {
  return {{"norm_im", v.norm_im},
          {"determined", v.determined},
          {"method", to_string(v.method)},
          {"tolerance", v.tolerance_used}};
}

Json to_json(const CompanionResult& c) {
  return {{"original", to_json(c.original)},
          {"companion", to_json(c.companion)},
          {"sigma", c.sigma_choice.describe()},
          {"max_im_discrepancy", c.max_im_discrepancy},
          {"distinctness", c.distinctness},
          {"grid_points", static_cast<int>(c.grid.size())}};
}

Json to_json(const CharFnSample& s) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    rows.push_back({{"x", s.points[i]}, {"re", s.values[i].real()}, {"im", s.values[i].imag()}, {"err", s.errors[i]}});
  }
  return {{"samples", std::move(rows)}, {"error_bound", s.error_bound}, {"warning", s.warning}};
}

Json to_json(const GramReport& g) {
  return {{"points", g.points}, {"min_eigenvalue", g.min_eigenvalue}, {"is_psd", g.is_psd}, {"tolerance", g.tolerance}};
}

Json to_json(const OracleReport& r) {
  return {{"n_min", r.n_min},
          {"n_max", r.n_max},
          {"trials_per_n", r.trials_per_n},
          {"seed", r.seed},
          {"trials", r.trials},
          {"disagreements", r.disagreements},
          {"unique_cases", r.unique_cases},
          {"witnessed_cases", r.witnessed_cases},
          {"min_norm", r.min_norm},
          {"max_norm", r.max_norm}};
}

Json to_json(const CatalogEntry& e) {
  const char* domain = "R";
  switch (e.kind) {
    case DomainKind::Integers:
      domain = "Z";
      break;
    case DomainKind::Circle:
      domain = "T";
      break;
    case DomainKind::RealBox:
      domain = "Rbox";
      break;
    default:
      break;
  }
  Json j{{"name", e.name},
         {"domain", domain},
         {"defaults", params_json(e.defaults)},
         {"expected", to_string(e.expectation)},
         {"family", e.family}};
  if (!e.rule.empty()) j["rule"] = e.rule;
  return j;
}

GroupDomain domain_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  only_fields(j, {"kind", "n"}, path);
  const Json& kind = member(j, "kind", path);
  if (!kind.is_string()) fail(path + "/kind", "expected a string");
  const auto k = kind.get<std::string>();
  auto size = [&]() {
    const Json& n = member(j, "n", path);
    if (!n.is_number_integer() || n.get<long long>() < 1 || n.get<long long>() > (1LL << 30)) {
      fail(path + "/n", "expected a positive integer");
    }
    return static_cast<int>(n.get<long long>());
  };
  if (k == "R") return GroupDomain::real_line();
  if (k == "Z") return GroupDomain::integers();
  if (k == "T") return GroupDomain::circle();
  if (k == "Zn") return GroupDomain::cyclic(size());
  if (k == "Rbox") return GroupDomain::real_box(size());
  fail(path + "/kind", "unknown domain kind '" + k + "'");
}

SignedMeasure measure_from_json(const Json& j) {
  if (!j.is_object()) fail("", "expected an object");
  only_fields(j, {"domain", "atoms", "density"}, "");
  const GroupDomain d = domain_from_json(member(j, "domain", ""));

  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    const Json& arr = j["atoms"];
    if (!arr.is_array()) fail("/atoms", "expected an array");
    if (d.kind() == DomainKind::RealBox && !arr.empty()) fail("/atoms", "atoms are not supported on R^n");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = "/atoms/" + std::to_string(i);
      if (!arr[i].is_object()) fail(p, "expected an object");
      only_fields(arr[i], {"t", "w"}, p);
      const double t = number_at(member(arr[i], "t", p), p + "/t");
      try {
        d.canonical(t);
      } catch (const Error& e) {
        fail(p + "/t", e.what());
      }
      atoms.push_back({t, number_at(member(arr[i], "w", p), p + "/w")});
    }
  }

  std::vector<DensitySegment> density;
  std::vector<BoxComponent> boxes;
  if (j.contains("density")) {
    const Json& arr = j["density"];
    if (!arr.is_array()) fail("/density", "expected an array");
    if (d.is_discrete() && !arr.empty()) fail("/density", "densities are not supported on " + d.describe());
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = "/density/" + std::to_string(i);
      const Json& e = arr[i];
      if (!e.is_object()) fail(p, "expected an object");
      only_fields(e, {"a", "b", "form", "coeffs", "name", "params", "coeff", "mirrored"}, p);
      const Json& form = member(e, "form", p);
      if (!form.is_string()) fail(p + "/form", "expected a string");
      const auto f = form.get<std::string>();
      double coeff = 1.0;
      if (e.contains("coeff")) coeff = number_at(e["coeff"], p + "/coeff");
      bool mirrored = false;
      if (e.contains("mirrored")) {
        if (!e["mirrored"].is_boolean()) fail(p + "/mirrored", "expected a boolean");
        mirrored = e["mirrored"].get<bool>();
      }

      if (d.kind() == DomainKind::RealBox) {
        if (f != "named") fail(p + "/form", "R^n densities must be named laws");
        const Json& name = member(e, "name", p);
        if (!name.is_string()) fail(p + "/name", "expected a string");
        const Params params = e.contains("params") ? params_at(e["params"], p + "/params") : Params{};
        try {
          auto dist = make_box_distribution(name.get<std::string>(), params);
          if (dist->dimension() != d.dimension()) fail(p + "/params", "dimension does not match the domain");
          boxes.push_back({coeff, std::move(dist)});
        } catch (const ParseError&) {
          throw;
        } catch (const Error& ex) {
          fail(p, ex.what());
        }
        continue;
      }

      DensitySegment seg;
      seg.lower = endpoint_at(member(e, "a", p), p + "/a", true);
      seg.upper = endpoint_at(member(e, "b", p), p + "/b", false);
      if (!(seg.lower < seg.upper)) fail(p, "needs a < b");
      if (d.kind() == DomainKind::Circle && (seg.lower < 0.0 || seg.upper > kTwoPi)) {
        fail(p, "circle segments must lie in [0, 2pi]");
      }
      if (f == "poly") {
        if (e.contains("name") || e.contains("params")) fail(p, "poly entries take coeffs only");
        if (e.contains("coeff")) fail(p + "/coeff", "poly entries take coeffs only");
        Polynomial poly(coeffs_at(member(e, "coeffs", p), p + "/coeffs"));
        if (!poly.is_zero() && !seg.is_bounded()) fail(p, "polynomial on an unbounded segment is not integrable");
        (mirrored ? seg.mirrored_poly : seg.poly) = std::move(poly);
      } else if (f == "named") {
        if (e.contains("coeffs")) fail(p + "/coeffs", "named entries take name and params");
        const Json& name = member(e, "name", p);
        if (!name.is_string()) fail(p + "/name", "expected a string");
        const Params params = e.contains("params") ? params_at(e["params"], p + "/params") : Params{};
        try {
          auto fn = make_analytic_density(name.get<std::string>(), params);
          const auto want = d.kind() == DomainKind::Circle ? DomainKind::Circle : DomainKind::RealLine;
          if (fn->domain_kind() != want) fail(p + "/name", "density does not live on " + d.describe());
          seg.terms.push_back({coeff, mirrored, std::move(fn)});
        } catch (const ParseError&) {
          throw;
        } catch (const Error& ex) {
          fail(p, ex.what());
        }
      } else {
        fail(p + "/form", "expected \"poly\" or \"named\"");
      }
      density.push_back(std::move(seg));
    }
  }

  try {
    if (d.kind() == DomainKind::RealBox) return SignedMeasure(d, std::move(boxes));
    return SignedMeasure(d, std::move(atoms), std::move(density));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail("", e.what());
  }
}

SignedMeasure load_measure(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw PreconditionError("cannot open measure file '" + file + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail("", std::string("malformed JSON: ") + e.what());
  }
  return measure_from_json(j);
}

}  // namespace imdet
