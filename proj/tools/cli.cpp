#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "iwb/iwb.hpp"

namespace iwb::cli {

namespace {

struct Globals {
  bool json = false;
  std::uint64_t seed = 42;
  std::string batch;
  int indent = 2;  // -1 for one JSON document per line
};

struct BudgetFlags {
  std::size_t depth = SearchBudget{}.max_depth;
  std::size_t nodes = SearchBudget{}.max_nodes;
  std::size_t labels = SearchBudget{}.max_labels;

  SearchBudget budget() const { return {depth, nodes, labels}; }
};

void add_budget(CLI::App& cmd, BudgetFlags& b) {
  cmd.add_option("--budget-depth", b.depth, "Maximum branch depth")->capture_default_str();
  cmd.add_option("--budget-nodes", b.nodes, "Maximum backward expansions")->capture_default_str();
  cmd.add_option("--budget-labels", b.labels, "Maximum labels (labelled search)")->capture_default_str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int status_code(SearchStatus s) {
  switch (s) {
    case SearchStatus::Proved: return kOk;
    case SearchStatus::NotProvable: return kNegative;
    case SearchStatus::BudgetExceeded: return kInconclusive;
  }
  return kInconclusive;
}

int report_code(const VerificationReport& r) {
  if (r.failed()) return kNegative;
  return r.passed() ? kOk : kInconclusive;
}

void emit(std::ostream& out, const Globals& g, const Json& j) { out << j.dump(g.indent) << "\n"; }

void print_tree(std::ostream& out, const ProofTree& t, int depth) {
  out << std::string(2 * depth, ' ') << render_sequent(t.conclusion, Notation::Unicode) << "   (" << rule_name(t.rule)
      << ")\n";
  for (const auto& p : t.premises) print_tree(out, p, depth + 1);
}

void print_tree(std::ostream& out, const LabelledProofTree& t, int depth) {
  out << std::string(2 * depth, ' ') << render_labelled_sequent(t.conclusion, Notation::Unicode) << "   ("
      << rule_name(t.rule) << ")\n";
  for (const auto& p : t.premises) print_tree(out, p, depth + 1);
}

void print_checks(std::ostream& out, const VerificationReport& r) {
  for (const auto& c : r.checks) {
    out << "  " << std::left << std::setw(28) << c.name << check_status_name(c.status);
    if (!c.detail.empty()) out << "  " << c.detail;
    out << "\n";
  }
}

Sequent goal_sequent(const std::string& text) {
  if (text.find("=>") != std::string::npos) return parse_sequent(text);
  return {{}, {parse_formula(text)}};
}

LabelledSequent labelled_goal(const std::string& text) {
  if (text.find(':') != std::string::npos) return parse_labelled_sequent(text);
  const Sequent s = goal_sequent(text);
  LabelledSequent out;
  for (const auto& f : s.ant) out.ant.push_back({1, f});
  for (const auto& f : s.suc) out.suc.push_back({1, f});
  return out;
}

// ---- prove

struct ProveArgs {
  std::string logic;
  std::string calculus;
  std::string goal;
  BudgetFlags budget;
};

int cmd_prove(const ProveArgs& a, const Globals& g, std::ostream& out) {
  if (a.logic.empty() && a.calculus.empty()) throw InvalidInput("prove needs --logic or --calculus");
  const CalculusId calc = a.calculus.empty() ? calculus_for_logic(parse_logic(a.logic)) : parse_calculus(a.calculus);
  Json j{{"calculus", calculus_name(calc)}};
  SearchStatus status;
  if (calc.labelled()) {
    const auto goal = labelled_goal(a.goal);
    const auto r = prove_labelled(calc.frames, goal, {a.budget.budget(), false});
    status = r.status;
    j["goal"] = render_labelled_sequent(goal);
    j["status"] = search_status_name(status);
    j["nodes"] = r.stats.nodes;
    if (r.proof) j["proof"] = labelled_proof_to_json(*r.proof);
    if (r.certificate) {
      j["countermodel"] = countermodel_to_json(*r.certificate);
      Json interp = Json::object();
      for (const auto& [label, world] : r.interpretation) interp[std::to_string(label)] = world;
      j["interpretation"] = interp;
    }
    if (!g.json) {
      out << search_status_name(status) << ": " << render_labelled_sequent(goal, Notation::Unicode) << " in "
          << calculus_name(calc) << "\n";
      if (r.proof) print_tree(out, *r.proof, 1);
      if (r.certificate) out << render_countermodel(*r.certificate);
    }
  } else {
    const auto goal = goal_sequent(a.goal);
    SearchOptions opts;
    opts.budget = a.budget.budget();
    const auto r = prove(calc, goal, opts);
    status = r.status;
    j["goal"] = render_sequent(goal);
    j["status"] = search_status_name(status);
    j["nodes"] = r.stats.nodes;
    if (r.proof) j["proof"] = proof_to_json(*r.proof);
    if (r.certificate) j["countermodel"] = countermodel_to_json(*r.certificate);
    if (!g.json) {
      out << search_status_name(status) << ": " << render_sequent(goal, Notation::Unicode) << " in "
          << calculus_name(calc) << "\n";
      if (r.proof) print_tree(out, *r.proof, 1);
      if (r.certificate) out << render_countermodel(*r.certificate);
    }
  }
  if (g.json) emit(out, g, j);
  return status_code(status);
}

// ---- interpolate

struct InterpolateArgs {
  std::string logic;
  std::string mode = "craig";
  std::string method = "maehara";
  std::string phi;
  std::string psi;
  bool no_verify = false;
  BudgetFlags budget;
};

int cmd_interpolate(const InterpolateArgs& a, const Globals& g, std::ostream& out) {
  InterpolationOptions opts;
  opts.method = parse_method(a.method);
  opts.budget = a.budget.budget();
  opts.verify = !a.no_verify;
  const auto outcome =
      interpolate(parse_logic(a.logic), parse_formula(a.phi), parse_formula(a.psi), parse_mode(a.mode), opts);

  if (!outcome.result) {
    if (g.json) {
      Json j{{"status", search_status_name(outcome.status)}};
      if (outcome.certificate) j["countermodel"] = countermodel_to_json(*outcome.certificate);
      emit(out, g, j);
    } else {
      out << "no interpolant: phi -> psi is " << search_status_name(outcome.status) << "\n";
      if (outcome.certificate) out << render_countermodel(*outcome.certificate);
    }
    return status_code(outcome.status);
  }
  const auto& r = *outcome.result;
  const int code = r.verification ? report_code(*r.verification) : kOk;
  if (g.json) {
    Json j = result_to_json(r);
    j["status"] = search_status_name(outcome.status);
    emit(out, g, j);
    return code;
  }
  out << "logic        " << r.logic << " (" << calculus_name(r.calculus) << ", " << method_name(r.method) << ")\n";
  out << "mode         " << mode_name(r.mode) << "\n";
  if (r.multiformula) out << "multiformula " << render_multiformula(*r.multiformula) << "\n";
  out << "interpolant  " << render_formula(r.interpolant) << "\n";
  if (r.verification) {
    out << "verified     " << (r.verification->passed() ? "yes" : "no") << "\n";
    print_checks(out, *r.verification);
  }
  return code;
}

// ---- uniform

struct UniformArgs {
  std::string logic = "K";
  std::string var;
  std::string dir = "forall";
  std::string phi;
  bool trace = false;
  int check_depth = 1;
};

int cmd_uniform(const UniformArgs& a, const Globals& g, std::ostream& out) {
  const Logic logic = parse_logic(a.logic);
  if (logic.kind != LogicKind::K) throw UnsupportedMode("uniform interpolation is offered for K only");
  QuantifierDirection dir;
  if (a.dir == "forall") dir = QuantifierDirection::Forall;
  else if (a.dir == "exists") dir = QuantifierDirection::Exists;
  else throw InvalidInput("--dir must be forall or exists");

  const Formula phi = parse_formula(a.phi);
  PittsOptions opts;
  opts.record_trace = a.trace;
  // The trace belongs to the A_p(=> phi) or A_p(=> ~phi) recursion.
  UniformInterpolator ui(a.var, opts);
  const bool forall = dir == QuantifierDirection::Forall;
  const Formula body = ui.forall_p(Sequent{{}, {forall ? phi : Formula::neg(phi)}});
  const Formula chi = forall ? body : Formula::neg(body);

  std::optional<VerificationReport> report;
  if (a.check_depth >= 0) report = verify_uniform(logic, phi, a.var, chi, dir, a.check_depth);
  const int code = report ? report_code(*report) : kOk;

  if (g.json) {
    Json j{{"formula", render_formula(phi)}, {"variable", a.var}, {"direction", a.dir},
           {"interpolant", render_formula(chi)}};
    if (report) {
      j["verified"] = report->passed();
      j["checks"] = verification_to_json(*report);
    }
    if (a.trace) {
      j["trace"] = Json::array();
      for (const auto& s : ui.trace())
        j["trace"].push_back({{"depth", s.depth},
                              {"sequent", render_sequent(s.sequent)},
                              {"row", s.row},
                              {"value", s.value ? Json(render_formula(*s.value)) : Json(nullptr)}});
    }
    emit(out, g, j);
    return code;
  }
  out << (dir == QuantifierDirection::Forall ? "forall " : "exists ") << a.var << ". " << render_formula(phi)
      << "  =  " << render_formula(chi) << "\n";
  if (a.trace)
    for (const auto& s : ui.trace())
      out << std::string(2 * s.depth, ' ') << render_sequent(s.sequent, Notation::Unicode) << "   [" << s.row
          << "]  " << (s.value ? render_formula(*s.value) : "") << "\n";
  if (report) print_checks(out, *report);
  return code;
}

// ---- verify

struct VerifyArgs {
  std::string logic;
  std::string phi, theta, psi;
  std::string mode = "craig";
  BudgetFlags budget;
};

int cmd_verify(const VerifyArgs& a, const Globals& g, std::ostream& out) {
  const auto report = verify_craig(parse_logic(a.logic), parse_formula(a.phi), parse_formula(a.theta),
                                   parse_formula(a.psi), parse_mode(a.mode), a.budget.budget());
  if (g.json) {
    emit(out, g, Json{{"verified", report.passed()}, {"checks", verification_to_json(report)}});
  } else {
    out << (report.passed() ? "verified" : report.failed() ? "rejected" : "inconclusive") << "\n";
    print_checks(out, report);
  }
  return report_code(report);
}

// ---- check-rules

int cmd_check_rules(const std::vector<std::string>& files, const Globals& g, std::ostream& out) {
  std::vector<RuleSchema> rules;
  for (const auto& f : files) {
    auto more = parse_rules(read_file(f));
    rules.insert(rules.end(), more.begin(), more.end());
  }
  const auto report = assess_calculus(rules);
  if (g.json) {
    Json j = classification_to_json(report);
    j["seed"] = g.seed;
    emit(out, g, j);
  } else {
    out << render_report_table(report);
  }
  return kOk;
}

// ---- replay

int cmd_replay(const std::string& path, bool no_verify, const Globals& g, std::ostream& out) {
  const Fixture fx = load_fixture(path);
  const auto r = replay(fx, !no_verify);
  const auto mismatches = expectation_mismatches(fx, r);
  int code = mismatches.empty() ? kOk : kNegative;
  if (code == kOk && r.verification) code = report_code(*r.verification);
  if (g.json) {
    Json j = result_to_json(r);
    j["name"] = fx.name;
    j["mismatches"] = mismatches;
    emit(out, g, j);
    return code;
  }
  out << fx.name << ": " << render_formula(r.interpolant);
  if (r.multiformula) out << "   [" << render_multiformula(*r.multiformula) << "]";
  out << "\n";
  for (const auto& m : mismatches) out << "  mismatch: " << m << "\n";
  if (r.verification) print_checks(out, *r.verification);
  return code;
}

int run_batch(const Globals& g, std::ostream& out, std::ostream& err) {
  std::istringstream lines(read_file(g.batch));
  std::vector<std::vector<std::string>> jobs;
  for (std::string line; std::getline(lines, line);) {
    auto args = split_line(line);
    if (args.empty() || args.front().starts_with('#')) continue;
    if (g.json && std::find(args.begin(), args.end(), "--json") == args.end()) args.insert(args.begin(), "--json");
    args.insert(args.begin(), {"--seed", std::to_string(g.seed)});
    jobs.push_back(std::move(args));
  }
  struct Done {
    int code;
    std::string out, err;
  };
  std::vector<std::future<Done>> running;
  for (auto& job : jobs)
    running.push_back(std::async(std::launch::async, [job] {
      std::ostringstream o, e;
      std::vector<std::string> args = job;
      args.insert(args.begin(), "--compact");
      const int code = run(args, o, e);
      return Done{code, o.str(), e.str()};
    }));
  int worst = kOk;
  for (auto& f : running) {
    const Done d = f.get();
    out << d.out;
    err << d.err;
    worst = std::max(worst, d.code);
  }
  return worst;
}

}  // namespace

std::vector<std::string> split_line(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> std::quoted(tok);) out.push_back(tok);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequent-calculus prover and interpolant extractor", "iwb"};
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  Globals g;
  bool compact = false;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--seed", g.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--batch", g.batch, "Run one invocation per line of FILE concurrently");
  app.add_flag("--compact", compact, "One JSON document per line")->group("");
  app.fallthrough();  // global flags may follow the subcommand

  ProveArgs pa;
  auto* prove_cmd = app.add_subcommand("prove", "Backward proof search");
  prove_cmd->add_option("--logic", pa.logic, "Logic name, e.g. K, S4, frames:serial,symmetric");
  prove_cmd->add_option("--calculus", pa.calculus, "Calculus, e.g. G3K or LG3{serial}");
  prove_cmd->add_option("goal", pa.goal, "Formula or sequent")->required();
  add_budget(*prove_cmd, pa.budget);

  InterpolateArgs ia;
  auto* interp_cmd = app.add_subcommand("interpolate", "Interpolant for phi -> psi");
  interp_cmd->add_option("--logic", ia.logic)->required();
  interp_cmd->add_option("--mode", ia.mode, "craig or lyndon")->capture_default_str();
  interp_cmd->add_option("--method", ia.method, "maehara or labelled")->capture_default_str();
  interp_cmd->add_flag("--no-verify", ia.no_verify, "Skip the independent checks");
  interp_cmd->add_option("phi", ia.phi)->required();
  interp_cmd->add_option("psi", ia.psi)->required();
  add_budget(*interp_cmd, ia.budget);

  UniformArgs ua;
  auto* uniform_cmd = app.add_subcommand("uniform", "Uniform interpolant over K");
  uniform_cmd->add_option("--logic", ua.logic)->capture_default_str();
  uniform_cmd->add_option("--var", ua.var, "Variable to eliminate")->required();
  uniform_cmd->add_option("--dir", ua.dir, "forall or exists")->capture_default_str();
  uniform_cmd->add_flag("--trace", ua.trace, "Show the recursion");
  uniform_cmd->add_option("--check-depth", ua.check_depth, "Depth of the transfer check; -1 skips checks")
      ->capture_default_str();
  uniform_cmd->add_option("phi", ua.phi)->required();

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Check a candidate interpolant");
  verify_cmd->add_option("--logic", va.logic)->required();
  verify_cmd->add_option("--phi", va.phi)->required();
  verify_cmd->add_option("--theta", va.theta)->required();
  verify_cmd->add_option("--psi", va.psi)->required();
  verify_cmd->add_option("--mode", va.mode)->capture_default_str();
  add_budget(*verify_cmd, va.budget);

  std::vector<std::string> rule_files;
  auto* rules_cmd = app.add_subcommand("check-rules", "Classify the rules of a calculus");
  rules_cmd->add_option("files", rule_files, "Rule files")->required();

  std::string fixture;
  bool replay_no_verify = false;
  auto* replay_cmd = app.add_subcommand("replay", "Extract from a stored derivation");
  replay_cmd->add_option("fixture", fixture)->required();
  replay_cmd->add_flag("--no-verify", replay_no_verify);

  app.require_subcommand(0, 1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "iwb: " << e.what() << "\n";
    return kUsage;
  }
  if (compact) g.indent = -1;

  try {
    if (!g.batch.empty()) {
      if (!app.get_subcommands().empty()) throw InvalidInput("--batch takes no subcommand");
      return run_batch(g, out, err);
    }
    if (prove_cmd->parsed()) return cmd_prove(pa, g, out);
    if (interp_cmd->parsed()) return cmd_interpolate(ia, g, out);
    if (uniform_cmd->parsed()) return cmd_uniform(ua, g, out);
    if (verify_cmd->parsed()) return cmd_verify(va, g, out);
    if (rules_cmd->parsed()) return cmd_check_rules(rule_files, g, out);
    if (replay_cmd->parsed()) return cmd_replay(fixture, replay_no_verify, g, out);
    err << "iwb: a subcommand is required\n" << app.help();
    return kUsage;
  } catch (const VerificationFailure& e) {
    err << "iwb: " << e.what() << "\n";
    return kNegative;
  } catch (const Error& e) {
    err << "iwb: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "iwb: internal error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace iwb::cli
