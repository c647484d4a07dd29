#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "isored/isored.hpp"

namespace isored::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotStructural = 2;
inline constexpr int kExitNotEquivalent = 3;

/// Stable process exit code for each error kind.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return kExitUsage;
    case ErrorKind::NotStructural: return kExitNotStructural;
    case ErrorKind::DivisionByZero: return 10;
    case ErrorKind::PoleAtPoint: return 11;
    case ErrorKind::RootFindingFailed: return 12;
    case ErrorKind::DegreeCapExceeded: return 13;
    case ErrorKind::UnknownVertex: return 14;
    case ErrorKind::DuplicateVertex: return 15;
    case ErrorKind::EmptySet: return 16;
    case ErrorKind::LambdaLoop: return 17;
    case ErrorKind::SingularBlock: return 18;
    case ErrorKind::IdenticallyZeroDeterminant: return 19;
    case ErrorKind::NonConstantLoop: return 20;
    case ErrorKind::LoopInComplement: return 21;
    case ErrorKind::EmptyGraph: return 22;
    case ErrorKind::SearchBudgetExceeded: return 23;
    case ErrorKind::ParseError: return 24;
    case ErrorKind::UnknownRule: return 25;
    case ErrorKind::Io: return 26;
  }
  return 99;
}

/// Environment variable overriding the default pairing tolerance.
inline constexpr const char* kToleranceEnv = "ISORED_TOLERANCE";

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline WeightedDigraph load(const std::string& path) { return parse_graph(read_file(path)); }

inline double default_tolerance() {
  const char* env = std::getenv(kToleranceEnv);
  if (!env || !*env) return kDefaultPairingTolerance;
  char* end = nullptr;
  double tol = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(tol > 0)) {
    throw Error(ErrorKind::Usage, std::string(kToleranceEnv) + " must be a positive number");
  }
  return tol;
}

inline std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

inline nlohmann::ordered_json spectrum_json(const SpectrumMultiset& s) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& e : s.entries) {
    nlohmann::ordered_json entry;
    entry["value"] = format_complex(e.value);
    entry["multiplicity"] = e.multiplicity;
    out.push_back(std::move(entry));
  }
  return out;
}

inline nlohmann::ordered_json values_json(const std::vector<Complex>& values) {
  auto out = nlohmann::ordered_json::array();
  for (Complex z : values) out.push_back(format_complex(z));
  return out;
}

struct Options {
  std::string file;
  std::string file_b;
  std::vector<std::string> set;
  std::string rule = "min-out-degree";
  std::string report;
  bool structural_only = false;
  double tol = 0;
};

inline int cmd_validate(const Options& o, std::ostream& out) {
  WeightedDigraph g = load(o.file);
  StructuralVerdict verdict = is_structural(g, o.set);
  if (verdict.ok()) {
    out << "structural\n";
    return kExitOk;
  }
  out << "not structural: " << verdict.describe() << "\n";
  return kExitNotStructural;
}

inline int cmd_reduce(const Options& o, std::ostream& out) {
  WeightedDigraph g = load(o.file);
  ReductionResult result;
  CorrectionSet correction;
  if (o.structural_only) {
    result = reduce_structural(g, StructuralSet::validate(g, o.set));
    correction = correction_set(g, o.set, LoopPolicy::Extended);
  } else {
    result = reduce_subset(g, o.set);
    correction = correction_set(result);
  }
  SpectrumMultiset before = spectrum(g, o.tol);
  SpectrumMultiset after = spectrum(result.reduced, o.tol);
  MatchVerdict verdict = spectra_match(before, after, correction, o.tol);

  nlohmann::ordered_json report;
  report["input"] = {{"vertices", g.size()}, {"edges", g.edge_count()}};
  report["keep"] = result.reduced.labels();
  report["method"] = o.structural_only ? "structural" : "sequential";
  std::vector<std::string> order;
  for (const auto& r : result.removed) order.push_back(r.vertex);
  report["removed"] = order;
  report["reduced"] = document_json(result.reduced);
  report["spectrum_input"] = spectrum_json(before);
  report["spectrum_reduced"] = spectrum_json(after);
  report["correction"] = values_json(correction.values);
  report["verdict"] = verdict.match ? "match" : "mismatch";
  report["unexplained"] = values_json(verdict.unexplained);
  const std::string text = report.dump(2) + "\n";
  if (!o.report.empty()) {
    std::ofstream file(o.report, std::ios::binary);
    if (!file) throw Error(ErrorKind::Io, "cannot write '" + o.report + "'");
    file << text;
  }
  out << text;
  return kExitOk;
}

inline int cmd_spectrum(const Options& o, std::ostream& out) {
  SpectrumMultiset s = spectrum(load(o.file), o.tol);
  for (const auto& e : s.entries) out << format_complex(e.value) << " " << e.multiplicity << "\n";
  return kExitOk;
}

inline int cmd_equiv(const Options& o, std::ostream& out) {
  const SelectionRule& rule = builtin_rules().get(o.rule);
  EquivalenceVerdict verdict = spectrally_equivalent(load(o.file), load(o.file_b), rule);
  if (!verdict.equivalent) {
    out << "not equivalent\n";
    return kExitNotEquivalent;
  }
  out << "equivalent\n";
  for (const auto& [left, right] : *verdict.witness) out << left << " -> " << right << "\n";
  return kExitOk;
}

inline int cmd_fixed_reduce(const Options& o, std::ostream& out) {
  WeightedDigraph g = load(o.file);
  WeightedDigraph reduced = fixed_weight_reduce(g, StructuralSet::validate(g, o.set));
  ClosureVerdict closure = weight_set_closure_check(g, reduced);
  nlohmann::ordered_json doc;
  doc["graph"] = document_json(reduced);
  doc["closure"] = {{"closed", closure.closed},
                    {"fewer_vertices", closure.fewer_vertices},
                    {"reduction_over_ring", closure.is_reduction_over_ring()},
                    {"violations", closure.violations},
                    {"undetermined", closure.undetermined}};
  out << doc.dump(2) << "\n";
  return kExitOk;
}

inline int cmd_sparsify(const Options& o, std::ostream& out) {
  WeightedDigraph g = load(o.file);
  ExpansionReport report = expand(g, StructuralSet::validate(g, o.set));
  nlohmann::ordered_json doc;
  doc["graph"] = document_json(report.expanded);
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [label, n] : report.path_counts) counts[label] = n;
  doc["path_counts"] = counts;
  auto delta = nlohmann::ordered_json::array();
  for (const auto& w : report.delta) delta.push_back(w.to_expression());
  doc["delta"] = delta;
  out << doc.dump(2) << "\n";
  return kExitOk;
}

inline int cmd_dot(const Options& o, std::ostream& out) {
  out << emit_dot(load(o.file));
  return kExitOk;
}

}  // namespace detail

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Isospectral reduction, expansion and comparison of weighted directed networks", "isored"};
  app.require_subcommand(1);
  std::optional<double> tol;

  auto add_tol = [&](CLI::App* sub) { sub->add_option("--tol", tol, "eigenvalue pairing tolerance"); };

  auto* validate = app.add_subcommand("validate", "check whether a vertex set is structural");
  validate->add_option("file", o.file, "graph document")->required();
  validate->add_option("--set", o.set, "comma-separated vertex labels")->delimiter(',')->required();

  auto* reduce = app.add_subcommand("reduce", "isospectrally reduce onto a vertex set");
  reduce->add_option("file", o.file, "graph document")->required();
  reduce->add_option("--keep", o.set, "comma-separated vertex labels")->delimiter(',')->required();
  reduce->add_flag("--structural-only", o.structural_only, "single path-sum reduction; the set must be structural");
  reduce->add_option("--report", o.report, "also write the report to this file");
  add_tol(reduce);

  auto* spec = app.add_subcommand("spectrum", "eigenvalues with multiplicities");
  spec->add_option("file", o.file, "graph document")->required();
  add_tol(spec);

  auto* equiv = app.add_subcommand("equiv", "test spectral equivalence under a selection rule");
  equiv->add_option("file_a", o.file, "first graph document")->required();
  equiv->add_option("file_b", o.file_b, "second graph document")->required();
  std::string rule_help = "selection rule:";
  for (const auto& name : builtin_rules().names()) rule_help += " " + name;
  equiv->add_option("--rule", o.rule, rule_help);

  auto* fixed = app.add_subcommand("fixed-reduce", "reduce while keeping weights in the original weight ring");
  fixed->add_option("file", o.file, "graph document")->required();
  fixed->add_option("--set", o.set, "comma-separated vertex labels")->delimiter(',')->required();

  auto* sparsify = app.add_subcommand("sparsify", "expand so that bundle paths become independent");
  sparsify->add_option("file", o.file, "graph document")->required();
  sparsify->add_option("--set", o.set, "comma-separated vertex labels")->delimiter(',')->required();

  auto* dot = app.add_subcommand("dot", "Graphviz DOT output");
  dot->add_option("file", o.file, "graph document")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error kind=Usage code=" << kExitUsage << " message=\"" << detail::one_line(e.what()) << "\"\n";
    return kExitUsage;
  }

  try {
    o.tol = tol ? *tol : detail::default_tolerance();
    if (!(o.tol > 0)) throw Error(ErrorKind::Usage, "--tol must be positive");
    if (*validate) return detail::cmd_validate(o, out);
    if (*reduce) return detail::cmd_reduce(o, out);
    if (*spec) return detail::cmd_spectrum(o, out);
    if (*equiv) return detail::cmd_equiv(o, out);
    if (*fixed) return detail::cmd_fixed_reduce(o, out);
    if (*sparsify) return detail::cmd_sparsify(o, out);
    if (*dot) return detail::cmd_dot(o, out);
  } catch (const Error& e) {
    err << "error kind=" << to_string(e.kind()) << " code=" << exit_code(e.kind()) << " message=\""
        << detail::one_line(e.what()) << "\"\n";
    return exit_code(e.kind());
  }
  return kExitUsage;
}

}  // namespace isored::cli
