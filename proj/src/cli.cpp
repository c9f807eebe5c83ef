#include "pdm/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "pdm/compile.hpp"
#include "pdm/error.hpp"
#include "pdm/json_io.hpp"
#include "pdm/proofterm.hpp"
#include "pdm/prover.hpp"
#include "pdm/rewrite.hpp"

namespace pdm::cli {

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kResource = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o || !(o << text)) throw InvalidInput("cannot write " + path);
}

std::string format_valuation(const Valuation& v) {
  std::string s;
  for (const auto& [atom, value] : v) s += (s.empty() ? "" : " ") + atom + "=" + (value ? "1" : "0");
  return s;
}

std::string text_report(const CompileReport& r) {
  std::ostringstream o;
  o << "model: " << format_valuation(r.model) << "\nclauses:\n";
  for (const auto& c : r.clausal.clauses) o << "  " << format_clause(c) << "\n";
  o << "trace:\n";
  for (const auto& t : r.trace) {
    o << "  " << format_clause(t.chosen) << "  =>  " << format_rule(t.rule, t.polarity) << "  (" << t.consumed.size()
      << " clause" << (t.consumed.size() == 1 ? "" : "s") << ")\n";
  }
  o << "rules:\n" << format_rules(r.system);
  return o.str();
}

struct Options {
  bool json = false;

  std::string theory_file;
  std::string rules_file;
  std::string output;
  std::string report;
  std::string seed_file;
  std::size_t clause_limit = kDefaultClauseLimit;

  std::string sequent;
  std::string derivation_file;
  std::string emit_derivation;
  std::size_t depth = 30;
  std::size_t rewrite_depth = RewriteBounds{}.depth;
  std::size_t cap = RewriteBounds{}.cap;
  bool intuitionistic = false;
  bool allow_cut = false;

  std::string proof_file;
  std::string goal;
  bool ultra = false;
  std::size_t budget = 10000;

  std::string formula;

  RewriteBounds bounds() const { return {rewrite_depth, cap}; }
  SearchConfig search() const {
    SearchConfig c;
    c.depth = depth;
    c.rewrite = bounds();
    c.intuitionistic = intuitionistic;
    c.allow_cut = allow_cut;
    return c;
  }
};

int cmd_compile(const Options& o, std::ostream& out) {
  CompileOptions opts;
  opts.clause_limit = o.clause_limit;
  if (!o.seed_file.empty()) opts.seed = json::read_valuation(read_file(o.seed_file));
  CompileReport r = compile_theory(parse_theory(read_file(o.theory_file)), opts);
  std::string rules = format_rules(r.system);
  if (!o.output.empty()) write_file(o.output, rules);
  if (o.report == "json" || (o.json && o.report.empty())) {
    out << json::write_report(r);
  } else if (o.report == "text") {
    out << text_report(r);
  } else if (o.output.empty()) {
    out << rules;
  }
  return kOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  auto report = check_disjoint(parse_rules(read_file(o.rules_file)));
  if (o.json) {
    out << json::write_analysis(report);
  } else {
    out << "disjoint: " << (report.disjoint ? "yes" : "no") << "\n";
    out << "commuting: " << (report.disjoint ? "yes" : "not guaranteed") << "\n";
    if (!report.clashes.empty()) {
      out << "clashes:";
      for (const auto& c : report.clashes) out << " " << c;
      out << "\n";
    }
    out << "negative rules: " << report.rule_count_neg << "\n";
    out << "positive rules: " << report.rule_count_pos << "\n";
  }
  return report.disjoint ? kOk : kNo;
}

int cmd_prove(const Options& o, std::ostream& out) {
  auto sys = parse_rules(read_file(o.rules_file));
  auto result = prove(parse_sequent(o.sequent), sys, o.search());
  if (const auto* d = std::get_if<Derivation>(&result); d && !o.emit_derivation.empty()) {
    write_file(o.emit_derivation, json::write_derivation(*d));
  }
  if (o.json) {
    out << json::write_search_result(result);
  } else if (const auto* d = std::get_if<Derivation>(&result)) {
    out << "proved\n" << format_derivation(*d);
  } else {
    const auto& e = std::get<Exhausted>(result);
    out << "exhausted: " << e.frontier << " open branch" << (e.frontier == 1 ? "" : "es")
        << (e.depth_hit ? ", depth bound hit" : ", saturated") << "\n";
  }
  if (proved(result)) return kOk;
  return std::get<Exhausted>(result).depth_hit ? kResource : kNo;
}

int cmd_check_derivation(const Options& o, std::ostream& out) {
  auto sys = parse_rules(read_file(o.rules_file));
  auto verdict = check_derivation(json::read_derivation(read_file(o.derivation_file)), sys, o.search());
  if (o.json) {
    out << json::write_verdict(verdict);
  } else if (verdict.ok) {
    out << "valid\n";
  } else {
    out << "invalid at " << (verdict.path.empty() ? "root" : verdict.path) << ": " << verdict.reason << "\n";
  }
  return verdict.ok ? kOk : kNo;
}

int cmd_check_proof(const Options& o, std::ostream& out) {
  auto sys = parse_rules(read_file(o.rules_file));
  auto bundle = json::read_bundle(read_file(o.proof_file));
  auto verdict = check_proof(bundle.context, bundle.proof, parse_formula(o.goal), sys, o.bounds());
  if (o.json) {
    out << json::write_verdict(verdict);
  } else {
    const char* status = verdict.ok() ? "ok" : verdict.status == CheckStatus::Fail ? "fail" : "inconclusive";
    out << status;
    if (!verdict.ok()) out << " at " << (verdict.path.empty() ? "root" : verdict.path) << ": " << verdict.reason;
    out << "\n";
  }
  switch (verdict.status) {
    case CheckStatus::Ok:
      return kOk;
    case CheckStatus::Fail:
      return kNo;
    default:
      return kResource;
  }
}

int cmd_normalize(const Options& o, std::ostream& out) {
  // The rules file is validated even though reduction does not consult it.
  parse_rules(read_file(o.rules_file));
  auto bundle = json::read_bundle(read_file(o.proof_file));
  auto result = normalize(bundle.proof, o.ultra, o.budget);
  if (o.json) {
    out << json::write_normalized(result);
  } else {
    out << format_term(result.normal) << "\nsteps: " << result.steps << "\n";
  }
  return kOk;
}

int cmd_translate(const Options& o, std::ostream& out) {
  out << format_theory(rules_to_axioms(parse_rules(read_file(o.rules_file))));
  return kOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  bool yes = oracle_provable(parse_sequent(o.sequent), parse_rules(read_file(o.rules_file)));
  if (o.json) {
    out << json::write_oracle(yes);
  } else {
    out << (yes ? "provable" : "unprovable") << "\n";
  }
  return yes ? kOk : kNo;
}

int cmd_dneg(const Options& o, std::ostream& out) {
  Formula f = light_dneg(parse_formula(o.formula));
  if (o.json) {
    out << json::write_formula(f);
  } else {
    out << format_formula(f) << "\n";
  }
  return kOk;
}

void add_search_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--depth", o.depth, "Proof search depth bound")->check(CLI::PositiveNumber);
  cmd->add_option("--rewrite-depth", o.rewrite_depth, "Rewriting depth bound")->check(CLI::PositiveNumber);
  cmd->add_option("--cap", o.cap, "Reachable-set size cap")->check(CLI::PositiveNumber);
  cmd->add_flag("--intuitionistic", o.intuitionistic, "At most one formula on the right");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Polarized deduction modulo: compile theories, search and check proofs", "pdm"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Machine-readable output");

  auto* compile = app.add_subcommand("compile", "Compile a theory into a polarized rewrite system");
  compile->add_option("theory", o.theory_file, "Theory file")->required();
  compile->add_option("-o,--output", o.output, "Write the rules file here");
  compile->add_option("--report", o.report, "Print a compile report")->check(CLI::IsMember({"json", "text"}));
  compile->add_option("--seed-valuation", o.seed_file, "JSON object of preferred truth values");
  compile->add_option("--clause-limit", o.clause_limit, "Clausal form size limit")->check(CLI::PositiveNumber);

  auto* analyze = app.add_subcommand("analyze", "Report disjointness of a rewrite system");
  analyze->add_option("rules", o.rules_file, "Rules file")->required();

  auto* prove_cmd = app.add_subcommand("prove", "Search for a cut-free derivation");
  prove_cmd->add_option("rules", o.rules_file, "Rules file")->required();
  prove_cmd->add_option("sequent", o.sequent, "Sequent, e.g. \"A, B |- C\"")->required();
  prove_cmd->add_option("--emit-derivation", o.emit_derivation, "Write the derivation JSON here");
  prove_cmd->add_flag("--allow-cut", o.allow_cut, "Let the search use atomic cuts");
  add_search_options(prove_cmd, o);

  auto* check_der = app.add_subcommand("check-derivation", "Validate a derivation JSON file");
  check_der->add_option("rules", o.rules_file, "Rules file")->required();
  check_der->add_option("derivation", o.derivation_file, "Derivation JSON")->required();
  add_search_options(check_der, o);

  auto* check_pf = app.add_subcommand("check-proof", "Check a proof term against a goal");
  check_pf->add_option("rules", o.rules_file, "Rules file")->required();
  check_pf->add_option("proof", o.proof_file, "Context and proof JSON")->required();
  check_pf->add_option("goal", o.goal, "Goal formula")->required();
  check_pf->add_option("--rewrite-depth", o.rewrite_depth, "Rewriting depth bound")->check(CLI::PositiveNumber);
  check_pf->add_option("--cap", o.cap, "Reachable-set size cap")->check(CLI::PositiveNumber);

  auto* norm = app.add_subcommand("normalize", "Normalize a proof term");
  norm->add_option("rules", o.rules_file, "Rules file")->required();
  norm->add_option("proof", o.proof_file, "Proof JSON")->required();
  norm->add_flag("--ultra", o.ultra, "Let case reduce to either branch");
  norm->add_option("--budget", o.budget, "Maximum reduction steps");

  auto* translate = app.add_subcommand("translate", "Print the theory presented by a rewrite system");
  translate->add_option("rules", o.rules_file, "Rules file")->required();

  auto* oracle = app.add_subcommand("oracle", "Decide a sequent classically by truth tables");
  oracle->add_option("rules", o.rules_file, "Rules file")->required();
  oracle->add_option("sequent", o.sequent, "Sequent")->required();

  auto* dneg = app.add_subcommand("dneg", "Light double-negation translation");
  dneg->add_option("formula", o.formula, "Formula")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    out << (target == &app ? app.help() : target->help("pdm"));
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (compile->parsed()) return cmd_compile(o, out);
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (prove_cmd->parsed()) return cmd_prove(o, out);
    if (check_der->parsed()) return cmd_check_derivation(o, out);
    if (check_pf->parsed()) return cmd_check_proof(o, out);
    if (norm->parsed()) return cmd_normalize(o, out);
    if (translate->parsed()) return cmd_translate(o, out);
    if (oracle->parsed()) return cmd_oracle(o, out);
    if (dneg->parsed()) return cmd_dneg(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  }
  return 2;
}

}  // namespace pdm::cli
