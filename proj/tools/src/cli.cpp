#include "imdet_cli/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "imdet/catalog.hpp"
#include "imdet/charfn.hpp"
#include "imdet/decompose.hpp"
#include "imdet/determine.hpp"
#include "imdet/error.hpp"
#include "imdet/finite_oracle.hpp"
#include "imdet/json.hpp"

namespace imdet::cli {

namespace {

struct Input {
  std::string dist;
  std::string params;
  std::string measure;
};

struct Loaded {
  SignedMeasure measure;
  std::optional<DistributionSpec> spec;
};

Params parse_params(const std::string& text) {
  Params p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParameterError("malformed parameter '" + item + "', expected k=v");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) throw ParameterError("parameter '" + key + "' is not a number");
    if (!p.emplace(key, v).second) throw ParameterError("parameter '" + key + "' given twice");
  }
  return p;
}

Loaded load(const Input& in) {
  if (in.dist.empty() == in.measure.empty()) throw PreconditionError("give exactly one of --dist and --measure");
  if (!in.measure.empty()) {
    if (!in.params.empty()) throw PreconditionError("--params only applies to --dist");
    return {load_measure(in.measure), std::nullopt};
  }
  DistributionSpec spec = make_spec(in.dist, parse_params(in.params));
  SignedMeasure m = make_measure(spec);
  return {std::move(m), std::move(spec)};
}

// Support of an R^n measure read from its components.
BorelSet box_support(const SignedMeasure& m) {
  std::vector<Box> boxes;
  for (const auto& c : m.box_components()) boxes.push_back(c.dist->support());
  return BorelSet::from_boxes(m.domain(), std::move(boxes));
}

void add_input(CLI::App* sub, Input& in) {
  auto* dist = sub->add_option("--dist", in.dist, "catalog distribution name");
  sub->add_option("--params", in.params, "distribution parameters k=v,...")->needs(dist);
  sub->add_option("--measure", in.measure, "measure JSON file")->excludes(dist);
}

void emit(std::string text, const std::string& path, std::ostream& out) {
  while (!text.empty() && text.back() == '\n') text.pop_back();
  if (path.empty()) {
    out << text << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw PreconditionError("cannot write '" + path + "'");
  f << text << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Determination of distributions by the imaginary part of their characteristic function", "imdet"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write the report here instead of standard output");

  Input in;
  double tolerance = kDeterminationTolerance;
  std::string sigma = "zero";
  std::string format = "csv";
  double xmin = -10.0;
  double xmax = 10.0;
  int points = 64;
  int n_min = 2;
  int n_max = 12;
  int trials = 500;
  std::uint64_t seed = kDefaultSeed;

  auto* classify_cmd = app.add_subcommand("classify", "decide whether Im f determines the law");
  add_input(classify_cmd, in);
  classify_cmd->add_option("--tolerance", tolerance, "norm test tolerance")->capture_default_str();

  auto* norm_cmd = app.add_subcommand("norm", "print ||Im f||");
  add_input(norm_cmd, in);

  auto* companion_cmd = app.add_subcommand("companion", "a different law with the same Im f");
  add_input(companion_cmd, in);
  companion_cmd->add_option("--sigma", sigma, "even part: zero or pair:<a>")->capture_default_str();
  companion_cmd->add_option("--tolerance", tolerance, "norm test tolerance")->capture_default_str();

  auto* decompose_cmd = app.add_subcommand("decompose", "symmetric/antisymmetric split and Hahn-Jordan parts");
  add_input(decompose_cmd, in);

  auto* lemma_cmd = app.add_subcommand("verify-lemma1", "V-set certificate of the antisymmetric part");
  add_input(lemma_cmd, in);

  auto* oracle_cmd = app.add_subcommand("oracle", "compare the norm test with brute force on Z_n");
  oracle_cmd->add_option("--n-min", n_min, "smallest order")->capture_default_str();
  oracle_cmd->add_option("--n", n_max, "largest order")->capture_default_str();
  oracle_cmd->add_option("--trials", trials, "random vectors per order")->capture_default_str();
  oracle_cmd->add_option("--seed", seed, "base seed")->capture_default_str();

  auto* list_cmd = app.add_subcommand("catalog-list", "one JSON line per catalog entry");

  auto* grid_cmd = app.add_subcommand("cf-grid", "sample the characteristic function");
  add_input(grid_cmd, in);
  grid_cmd->add_option("--xmin", xmin)->capture_default_str();
  grid_cmd->add_option("--xmax", xmax)->capture_default_str();
  grid_cmd->add_option("--points", points)->capture_default_str();
  grid_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "imdet: " << e.what() << '\n';
    return 1;
  }

  try {
    if (list_cmd->parsed()) {
      std::string text;
      for (const auto& e : catalog_entries()) {
        if (!text.empty()) text += '\n';
        text += canonical_dump(to_json(e));
      }
      emit(text, out_path, out);
      return 0;
    }

    if (oracle_cmd->parsed()) {
      const OracleReport r = run_oracle(n_min, n_max, trials, seed);
      emit(canonical_dump(to_json(r)), out_path, out);
      if (r.disagreements != 0 || r.witnessed_cases + r.unique_cases != r.trials) {
        err << "imdet: oracle disagreement in " << r.disagreements << " of " << r.trials << " trials\n";
        return 2;
      }
      return 0;
    }

    const Loaded loaded = load(in);
    const SignedMeasure& m = loaded.measure;

    if (classify_cmd->parsed()) {
      Json j;
      bool mismatch = false;
      if (loaded.spec) {
        const Classification c = classify(*loaded.spec, tolerance);
        j = to_json(c.verdict);
        j["distribution"] = loaded.spec->name;
        j["expected"] = c.expected_determined;
        mismatch = !c.agrees;
      } else if (m.domain().kind() == DomainKind::RealBox) {
        j = to_json(support_verdict(m, box_support(m), tolerance));
      } else {
        j = to_json(is_determined(m, tolerance));
      }
      emit(canonical_dump(j), out_path, out);
      if (mismatch) {
        err << "imdet: verdict disagrees with the catalog expectation for " << loaded.spec->name << '\n';
        return 2;
      }
      return 0;
    }

    if (norm_cmd->parsed()) {
      emit(canonical_dump(Json{{"norm_im", bnorm_im(m)}}), out_path, out);
      return 0;
    }

    if (companion_cmd->parsed()) {
      const CompanionResult c = companion(m, SigmaChoice::parse(sigma), tolerance);
      emit(canonical_dump(to_json(c)), out_path, out);
      return 0;
    }

    if (decompose_cmd->parsed()) {
      const SymAntiSplit split = sym_anti_split(m);
      Json j = to_json(split);
      j["jordan"] = to_json(hahn_jordan(split.antisymmetric));
      emit(canonical_dump(j), out_path, out);
      return 0;
    }

    if (lemma_cmd->parsed()) {
      const VSetCertificate cert = lemma1_v_set(sym_anti_split(m).antisymmetric);
      emit(canonical_dump(to_json(cert)), out_path, out);
      bool equal = cert.disjointness_ok;
      for (double x : cert.masses) equal = equal && std::abs(x - cert.half_norm) <= 1e-9;
      if (!equal) {
        err << "imdet: V-set certificate failed\n";
        return 2;
      }
      return 0;
    }

    if (grid_cmd->parsed()) {
      if (points < 1) throw ParameterError("--points must be >= 1");
      const auto xs = linspace(xmin, xmax, points);
      const CharFnSample s = sample_cf(m, xs);
      emit(format == "csv" ? s.to_csv() : canonical_dump(to_json(s)), out_path, out);
      return 0;
    }
  } catch (const ConsistencyError& e) {
    err << "imdet: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "imdet: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace imdet::cli
