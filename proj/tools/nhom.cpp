// nhom: exact homology calculator for N-complexes of finitely generated
// abelian groups. Subcommands: validate, homology, total, lattice, resolve,
// qis, check. Exit codes: 0 success, 1 validation/property failure,
// 2 usage or parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nhom/json_io.hpp"
#include "nhom/resolution.hpp"
#include "nhom/suites.hpp"

namespace {

using namespace nhom;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct LoadedComplex {
  ComplexFile file;
  std::string path;
};

int resolve_n(const ComplexFile& file, std::optional<int> flag_n, std::optional<int> fallback,
              int& out) {
  if (flag_n) {
    out = *flag_n;
  } else if (file.declared_n) {
    out = *file.declared_n;
  } else if (fallback) {
    out = *fallback;
  } else {
    std::cerr << "error: no N given; pass --n or declare \"n\" in the file\n";
    return kUsage;
  }
  if (out < 1) {
    std::cerr << "error: N must be at least 1\n";
    return kUsage;
  }
  return kOk;
}

int cmd_validate(const std::string& path, std::optional<int> flag_n) {
  ComplexFile file = load_complex_file(path);
  int n = 0;
  if (int rc = resolve_n(file, flag_n, std::nullopt, n); rc != kOk) return rc;
  Json report{{"file", path}, {"n", n}};
  if (auto bad = find_ncomplex_violation(file.sequence, n)) {
    report["valid"] = false;
    report["first_failure_position"] = *bad;
    report["message"] = "d^" + std::to_string(n) + " is nonzero starting at position " +
                        std::to_string(*bad);
    std::cout << report.dump(2) << "\n";
    return kFailure;
  }
  report["valid"] = true;
  std::cout << report.dump(2) << "\n";
  return kOk;
}

int cmd_homology(const std::string& path, int a, int b, std::optional<int> pos,
                 std::optional<int> flag_n) {
  if (a < 1 || b < 1) {
    std::cerr << "error: --a and --b must be positive\n";
    return kUsage;
  }
  ComplexFile file = load_complex_file(path);
  const Sequence& c = file.sequence;
  int n = 0;
  if (int rc = resolve_n(file, flag_n, a + b, n); rc != kOk) return rc;
  bool certified = !find_ncomplex_violation(c, n).has_value();
  std::vector<int> positions;
  if (pos) {
    positions.push_back(*pos);
  } else {
    for (int j = c.lo(); j <= c.hi(); ++j) positions.push_back(j);
  }
  Json rows = Json::array();
  for (int j : positions) {
    HomologyValue v = homology(c, HomologyQuery{a, b, j});
    Json row = invariants_to_json(v.invariants);
    row["position"] = j;
    row["interior"] = v.interior;
    rows.push_back(std::move(row));
  }
  Json report{{"file", path},   {"a", a},           {"b", b},
              {"n", n},         {"certified_n", certified}, {"positions", std::move(rows)}};
  std::cout << report.dump(2) << "\n";
  return kOk;
}

int cmd_total(const std::string& path, std::optional<int> flag_n) {
  ComplexFile file = load_complex_file(path);
  int n = 0;
  if (int rc = resolve_n(file, flag_n, std::nullopt, n); rc != kOk) return rc;
  if (n < 2) {
    std::cerr << "error: total homology needs N >= 2\n";
    return kUsage;
  }
  if (auto bad = find_ncomplex_violation(file.sequence, n)) {
    std::cerr << "error: not a " << n << "-complex (first failure at position " << *bad << ")\n";
    return kFailure;
  }
  NComplex c = validate_ncomplex(file.sequence, n);
  TotalHomology total = total_homology(c);
  Json rows = Json::array();
  for (int pos = total.lo; pos <= total.hi; ++pos) {
    Json comps = Json::array();
    for (const TotalSummand& s : total.summands_at(pos)) {
      Json entry = invariants_to_json(s.invariants);
      entry["p"] = s.p;
      entry["j"] = s.j;
      entry["interior"] = s.interior;
      comps.push_back(std::move(entry));
    }
    Json row = invariants_to_json(
        canonical_invariants(total.complex.seq().object_at(pos)));
    row["position"] = pos;
    row["components"] = std::move(comps);
    rows.push_back(std::move(row));
  }
  Json report{{"file", path},
              {"n", n},
              {"certified_total_n", n - 1},
              {"positions", std::move(rows)}};
  std::cout << report.dump(2) << "\n";
  return kOk;
}

int cmd_lattice(const std::string& path, int pos, std::optional<int> flag_n,
                const std::string& dot_path, bool force) {
  ComplexFile file = load_complex_file(path);
  int n = 0;
  if (int rc = resolve_n(file, flag_n, std::nullopt, n); rc != kOk) return rc;
  if (n < 2) {
    std::cerr << "error: the inclusion lattice needs N >= 2\n";
    return kUsage;
  }
  if (auto bad = find_ncomplex_violation(file.sequence, n)) {
    std::cerr << "error: not a " << n << "-complex (first failure at position " << *bad << ")\n";
    return kFailure;
  }
  NComplex c = validate_ncomplex(file.sequence, n);
  if (!is_interior(c.seq(), n - 1, n - 1, pos) && !force) {
    std::cerr << "error: position " << pos
              << " is not interior for (N-1, N-1); rerun with --force to proceed\n";
    return kFailure;
  }
  LatticeReport report = inclusion_lattice(c, pos);
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    if (!out.good()) {
      std::cerr << "error: cannot write " << dot_path << "\n";
      return kFailure;
    }
    out << report.to_dot();
  } else {
    std::cout << report.to_dot();
  }
  if (!report.all_edges_hold) {
    std::cerr << "error: a structural inclusion failed verification\n";
    return kFailure;
  }
  return kOk;
}

std::optional<PresentedGroup> parse_group_spec(const std::string& spec) {
  std::string torsion = spec;
  long rank = 0;
  if (auto semi = spec.find(';'); semi != std::string::npos) {
    torsion = spec.substr(0, semi);
    std::string rank_str = spec.substr(semi + 1);
    try {
      rank = rank_str.empty() ? 0 : std::stol(rank_str);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (rank < 0) return std::nullopt;
  }
  std::vector<Int> factors;
  std::size_t start = 0;
  while (start < torsion.size()) {
    std::size_t comma = torsion.find(',', start);
    std::string piece = torsion.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start);
    if (!piece.empty()) {
      try {
        Int f(piece);
        if (f < 2) return std::nullopt;
        factors.push_back(std::move(f));
      } catch (const std::invalid_argument&) {
        return std::nullopt;
      }
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  std::size_t gens = factors.size() + static_cast<std::size_t>(rank);
  IntMatrix rels(gens, factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) rels.at(i, i) = factors[i];
  return PresentedGroup(gens, std::move(rels));
}

int cmd_resolve(const std::string& group_spec, int a, int b, const std::string& out_path) {
  if (a < 1 || b < 1) {
    std::cerr << "error: --a and --b must be positive\n";
    return kUsage;
  }
  std::optional<PresentedGroup> x = parse_group_spec(group_spec);
  if (!x) {
    std::cerr << "error: malformed group spec '" << group_spec
              << "'; expected \"f1,f2,...;rank\" with factors >= 2\n";
    return kUsage;
  }
  ResolutionReport report = hh_projective_resolution(*x, a, b);
  Json qis = Json::array();
  for (const QisPosition& q : report.quasi_iso.positions)
    qis.push_back(Json{{"position", q.j},
                       {"iso", q.iso},
                       {"source", invariants_to_json(q.source)},
                       {"target", invariants_to_json(q.target)}});
  Json degrees = Json::array();
  for (const auto& [degree, projective] : report.projective_per_degree)
    degrees.push_back(Json{{"degree", degree}, {"projective", projective}});
  bool bound_applicable = !is_projective(*x);
  bool bound_holds = bound_applicable ? verify_lower_bound(report, a, b) : true;
  Json out{{"group", group_to_json(*x)},
           {"a", a},
           {"b", b},
           {"complex", complex_to_json(report.resolution)},
           {"report",
            Json{{"projective_per_degree", std::move(degrees)},
                 {"vanishing_above_zero", report.vanishing_above_zero},
                 {"quasi_iso", std::move(qis)},
                 {"quasi_iso_all", report.quasi_iso.all},
                 {"max_nonzero_power", report.max_nonzero_power},
                 {"lower_bound_applicable", bound_applicable},
                 {"lower_bound_holds", bound_holds},
                 {"all_pass", report.all_pass()}}}};
  if (!out_path.empty()) write_json_file(out_path, out);
  std::cout << out.dump(2) << "\n";
  return (report.all_pass() && bound_holds) ? kOk : kFailure;
}

int cmd_qis(const std::string& path, int a, int b) {
  if (a < 1 || b < 1) {
    std::cerr << "error: --a and --b must be positive\n";
    return kUsage;
  }
  SeqMorphism f = load_morphism_file(path);
  QisReport report = qis_report(f, a, b);
  Json rows = Json::array();
  for (const QisPosition& q : report.positions)
    rows.push_back(Json{{"position", q.j},
                        {"iso", q.iso},
                        {"source", invariants_to_json(q.source)},
                        {"target", invariants_to_json(q.target)}});
  Json out{{"file", path},
           {"a", a},
           {"b", b},
           {"quasi_iso", report.all},
           {"positions", std::move(rows)}};
  std::cout << out.dump(2) << "\n";
  return report.all ? kOk : kFailure;
}

int cmd_check(const std::string& suite, std::uint64_t seed, int cases) {
  bool known = false;
  for (const std::string& name : suite_names()) known = known || name == suite;
  if (!known) {
    std::cerr << "error: unknown suite '" << suite << "'; available:";
    for (const std::string& name : suite_names()) std::cerr << " " << name;
    std::cerr << "\n";
    return kUsage;
  }
  SuiteResult result = run_suite(suite, seed, cases);
  if (result.passed()) {
    std::cout << "suite " << suite << ": " << result.cases_run << " cases passed (seed "
              << seed << ")\n";
    return kOk;
  }
  std::string counter_path = "counterexample-" + suite + "-" + std::to_string(seed) + "-" +
                             std::to_string(result.first_failure_case) + ".json";
  write_json_file(counter_path, result.counterexample);
  std::cout << "suite " << suite << ": " << result.failures << "/" << result.cases_run
            << " cases failed\n"
            << "first failure (case " << result.first_failure_case << "): "
            << result.first_failure << "\n"
            << "counterexample written to " << counter_path << "\n";
  return kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact homology for N-complexes of finitely generated abelian groups"};
  app.require_subcommand(1);

  std::string path, dot_path, group_spec, suite, out_path;
  int a = 1, b = 1, pos = 0;
  std::optional<int> flag_n;
  bool all = false, force = false;
  std::uint64_t seed = 42;
  int cases = 100;

  CLI::App* validate = app.add_subcommand("validate", "check d^N = 0 for a complex file");
  validate->add_option("file", path, "complex JSON file")->required();
  validate->add_option("--n", flag_n, "N to validate against (defaults to the file's n)");

  CLI::App* homology_cmd = app.add_subcommand("homology", "homology values per position");
  homology_cmd->add_option("file", path, "complex JSON file")->required();
  homology_cmd->add_option("--a", a, "power of d for the kernel")->required();
  homology_cmd->add_option("--b", b, "power of d for the image")->required();
  CLI::Option* pos_opt = homology_cmd->add_option("--pos", pos, "single position to evaluate");
  homology_cmd->add_flag("--all", all, "evaluate every window position (default)");
  homology_cmd->add_option("--n", flag_n, "declared N (defaults to file n, then a+b)");

  CLI::App* total = app.add_subcommand("total", "total homology with bigraded labels");
  total->add_option("file", path, "complex JSON file")->required();
  total->add_option("--n", flag_n, "N of the complex (defaults to the file's n)");

  CLI::App* lattice = app.add_subcommand("lattice", "inclusion lattice at a position, as DOT");
  lattice->add_option("file", path, "complex JSON file")->required();
  lattice->add_option("--pos", pos, "position to inspect")->required();
  lattice->add_option("--n", flag_n, "N of the complex (defaults to the file's n)");
  lattice->add_option("--dot", dot_path, "write DOT here instead of stdout");
  lattice->add_flag("--force", force, "allow non-interior positions");

  CLI::App* resolve = app.add_subcommand("resolve", "projective resolution for a group");
  resolve->add_option("--group", group_spec, "group as \"f1,f2,...;rank\", e.g. \"6\" or \";2\"")
      ->required();
  resolve->add_option("--a", a, "kernel power")->required();
  resolve->add_option("--b", b, "image power")->required();
  resolve->add_option("--out", out_path, "also write the result JSON to this file");

  CLI::App* qis = app.add_subcommand("qis", "quasi-isomorphism check for a morphism file");
  qis->add_option("file", path, "morphism JSON file")->required();
  qis->add_option("--a", a, "kernel power")->required();
  qis->add_option("--b", b, "image power")->required();

  CLI::App* check = app.add_subcommand("check", "run a property suite");
  check->add_option("--suite", suite, "suite name")->required();
  check->add_option("--seed", seed, "random seed");
  check->add_option("--cases", cases, "number of cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(path, flag_n);
    if (homology_cmd->parsed())
      return cmd_homology(path, a, b, pos_opt->count() ? std::optional<int>(pos) : std::nullopt,
                          flag_n);
    if (total->parsed()) return cmd_total(path, flag_n);
    if (lattice->parsed()) return cmd_lattice(path, pos, flag_n, dot_path, force);
    if (resolve->parsed()) return cmd_resolve(group_spec, a, b, out_path);
    if (qis->parsed()) return cmd_qis(path, a, b);
    if (check->parsed()) return cmd_check(suite, seed, cases);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::string what = e.what();
    if (what.rfind("cannot open", 0) == 0 || what.find("expected") != std::string::npos ||
        what.find("not a decimal") != std::string::npos) {
      std::cerr << "parse error: " << what << "\n";
      return kUsage;
    }
    std::cerr << "error: " << what << "\n";
    return kFailure;
  }
  return kUsage;
}
