#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "itl/countermodel.hpp"
#include "itl/entail.hpp"
#include "itl/error.hpp"
#include "itl/fragment.hpp"
#include "itl/normalize.hpp"
#include "itl/parse.hpp"
#include "itl/quotient.hpp"
#include "itl/worlds.hpp"

using namespace itl;
using json = nlohmann::ordered_json;

namespace {

// exit codes: 0 requested verdict achieved, 1 negative verdict,
// 2 unknown / budget, 3 usage or input error
enum { EXIT_YES = 0, EXIT_NO = 1, EXIT_UNKNOWN = 2, EXIT_USAGE = 3 };

struct Common {
  std::string sig_path;
  std::vector<std::string> theories;
  std::string out_path;
  std::string format = "human";
  bool no_timestamp = false;
  SearchBudget budget;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

Signature load_sig(const Common& c) {
  if (c.sig_path.empty()) return Signature{};
  return parse_signature(slurp(c.sig_path));
}

Theory load_theory(const Common& c) {
  Theory th;
  th.name = "empty";
  bool first = true;
  for (const auto& name : c.theories) {
    Theory part = name == "worlds" ? worlds_theory({}) : postulate_set(name);
    th = first ? part : th.merged(part);
    first = false;
  }
  return th;
}

// "text" or "@file"
std::string text_or_file(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return slurp(arg.substr(1));
  return arg;
}

struct Report {
  const Common& c;
  json j = json::object();
  std::string human;

  explicit Report(const Common& c) : c(c) {
    if (!c.no_timestamp) {
      auto now = std::chrono::system_clock::now().time_since_epoch();
      long ms = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
      j["timestamp"] = ms;
      human += "# run at " + std::to_string(ms) + " ms since epoch\n";
    }
  }
  void field(const std::string& key, const json& value, const std::string& line) {
    j[key] = value;
    human += line + "\n";
  }
  void emit() const {
    if (c.format == "structured")
      std::cout << j.dump(2) << "\n";
    else
      std::cout << human;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--sig", c.sig_path, "signature file (type/const lines)");
  cmd->add_option("--theory", c.theories, "theory name: lambda-conv, names, worlds; repeatable");
  cmd->add_option("--budget-depth", c.budget.max_depth, "rule applications per branch");
  cmd->add_option("--budget-insts", c.budget.max_instantiations,
                  "universe instantiations per principal");
  cmd->add_option("--budget-axioms", c.budget.max_axiom_instances, "axiom instances at the root");
  cmd->add_option("--universe-depth", c.budget.universe_depth, "term universe depth");
  cmd->add_option_function<long>(
      "--time-limit",
      [&c](long ms) { c.budget.time_limit = std::chrono::milliseconds(ms); },
      "search time limit in milliseconds");
  cmd->add_option("--out", c.out_path, "output file");
  cmd->add_option("--format", c.format, "human | structured")
      ->check(CLI::IsMember({"human", "structured"}));
  cmd->add_flag("--no-timestamp", c.no_timestamp, "suppress the timestamp header");
}

int cmd_check(const Common& c, const std::string& input) {
  Signature sig = load_sig(c).merged(load_theory(c).extra_sig);
  Report rep(c);
  std::string text = text_or_file(input);
  if (text.find("=>") != std::string::npos) {
    Sequent s = parse_sequent(text, sig);
    rep.field("kind", "sequent", "sequent with " + std::to_string(s.size()) + " member(s)");
    rep.field("canonical", print_sequent(s), print_sequent(s));
  } else {
    Term t = parse_term(text, sig);
    rep.field("kind", "term", "term of type " + print_type(t.type()));
    rep.field("type", print_type(t.type()), "canonical: " + print_term(desugar(t)));
    rep.j["canonical"] = print_term(desugar(t));
  }
  rep.emit();
  return EXIT_YES;
}

int cmd_prove(const Common& c, const std::string& input, bool want_open) {
  Signature sig = load_sig(c);
  Theory th = load_theory(c);
  Sequent goal = parse_sequent(text_or_file(input), sig.merged(th.extra_sig));
  SearchOutcome out =
      want_open ? saturate(goal, c.budget, sig) : prove(goal, th, c.budget, sig);
  Report rep(c);
  switch (out.status) {
    case SearchOutcome::Status::ProofFound: {
      rep.field("status", "proof",
                "proof found: " + std::to_string(proof_size(*out.proof)) + " node(s), " +
                    std::to_string(out.axioms_used.size()) + " axiom instance(s)");
      if (!c.out_path.empty()) spit(c.out_path, serialize_proof(*out.proof));
      rep.emit();
      return want_open ? EXIT_NO : EXIT_YES;
    }
    case SearchOutcome::Status::OpenBranch: {
      rep.field("status", "open",
                "open branch with " + std::to_string(out.branch->size()) + " member(s)");
      rep.field("report", out.report->summary(), out.report->summary());
      if (!c.out_path.empty()) spit(c.out_path, print_sequent(*out.branch) + "\n");
      rep.emit();
      return want_open ? EXIT_YES : EXIT_NO;
    }
    case SearchOutcome::Status::Exhausted:
      rep.field("status", "exhausted", "budget exhausted: " + out.exhausted_dimension);
      rep.emit();
      return EXIT_UNKNOWN;
  }
  return EXIT_UNKNOWN;
}

int cmd_verify_proof(const Common& c, const std::string& path) {
  Signature sig = load_sig(c).merged(load_theory(c).extra_sig);
  Proof p = parse_proof(slurp(path), sig);
  Verdict v = check_full(p, sig);
  Report rep(c);
  rep.field("valid", v.valid,
            v.valid ? "valid proof of " + print_sequent(p.conclusion) : "invalid: " + v.reason);
  rep.emit();
  return v.valid ? EXIT_YES : EXIT_NO;
}

int cmd_model_eval(const Common& c, const std::string& model_path,
                   const std::vector<std::string>& terms, const std::string& refutes_seq,
                   const std::vector<std::string>& probes) {
  FiniteModel m = parse_model(slurp(model_path));
  Signature sig = m.sig.merged(load_sig(c));
  Report rep(c);
  bool all_ok = true;

  std::vector<Term> probe_terms;
  for (const auto& p : probes) probe_terms.push_back(parse_term(text_or_file(p), sig));
  ModelReport mr = check_model(m, probe_terms);
  rep.field("model", mr.ok() ? "ok" : mr.summary(), mr.summary());
  all_ok = all_ok && mr.ok();

  json evals = json::array();
  for (const auto& t : terms) {
    Term term = parse_term(text_or_file(t), sig);
    try {
      bool v = eval_truth(m, term);
      evals.push_back({{"term", t}, {"value", v ? 1 : 0}});
      rep.human += t + " = " + (v ? "1" : "0") + "\n";
    } catch (const CarrierEscape& e) {
      evals.push_back({{"term", t}, {"error", e.what()}});
      rep.human += t + " escapes: " + std::string(e.what()) + "\n";
      all_ok = false;
    }
  }
  if (!terms.empty()) rep.j["evaluations"] = evals;

  if (!refutes_seq.empty()) {
    Sequent s = parse_sequent(text_or_file(refutes_seq), sig);
    bool r = refutes(m, s);
    rep.field("refutes", r,
              std::string(r ? "refutes " : "does not refute ") + print_sequent(s));
    all_ok = all_ok && r;
  }
  rep.emit();
  return all_ok ? EXIT_YES : EXIT_NO;
}

int cmd_refute(const Common& c, const std::string& input) {
  Signature sig = load_sig(c);
  Theory th = load_theory(c);
  Signature full = sig.merged(th.extra_sig);
  Sequent goal = parse_sequent(text_or_file(input), full);
  SearchOutcome out = prove(goal, th, c.budget, sig);
  Report rep(c);
  if (out.found()) {
    rep.field("status", "provable", "sequent is provable; no countermodel exists");
    rep.emit();
    return EXIT_NO;
  }
  if (!out.open()) {
    rep.field("status", "exhausted", "budget exhausted: " + out.exhausted_dimension);
    rep.emit();
    return EXIT_UNKNOWN;
  }
  try {
    FiniteModel m = build_countermodel(*out.branch, full);
    if (!refutes(m, goal)) throw ValidationFailed("model misses the target sequent");
    rep.field("status", "refuted",
              "countermodel with " + std::to_string(m.domains.size()) + " domain(s) refutes " +
                  print_sequent(goal));
    rep.field("saturation", out.report->summary(), out.report->summary());
    if (!c.out_path.empty()) spit(c.out_path, serialize_model(m));
    rep.emit();
    return EXIT_YES;
  } catch (const ValidationFailed& e) {
    rep.field("status", "unvalidated", std::string("open branch found but ") + e.what());
    rep.emit();
    return EXIT_UNKNOWN;
  }
}

int cmd_hintikka(const Common& c, const std::string& input) {
  Signature sig = load_sig(c).merged(load_theory(c).extra_sig);
  Sequent s = parse_sequent(text_or_file(input), sig);
  TermUniverse u(sig, c.budget.universe_depth);
  HintikkaReport r = check_hintikka(s, u);
  Report rep(c);
  rep.field("violations", r.violations.size(), r.summary());
  json v = json::array();
  for (const auto& viol : r.violations) {
    json row;
    row["clause"] = viol.clause;
    row["instance"] = viol.instance;
    row["missing"] = viol.missing;
    v.push_back(row);
  }
  rep.j["detail"] = v;
  rep.emit();
  return r.ok() ? EXIT_YES : EXIT_NO;
}

int cmd_normalize_model(const Common& c, const std::string& model_path,
                        const std::vector<std::string>& probes) {
  FiniteModel m = parse_model(slurp(model_path));
  Signature sig = m.sig;
  std::vector<Term> probe_terms;
  for (const auto& p : probes) probe_terms.push_back(parse_term(text_or_file(p), sig));
  FiniteModel n = normalize_model(m, probe_terms);
  Report rep(c);
  size_t before = 0, after = 0;
  for (const auto& [ty, toks] : m.domains) before += toks.size();
  for (const auto& [ty, toks] : n.domains) after += toks.size();
  rep.field("tokens", json::array({before, after}),
            "normalized: " + std::to_string(before) + " token(s) down to " +
                std::to_string(after));
  rep.field("normal", is_normal_model(n),
            is_normal_model(n) ? "output is normal" : "output not normal");
  if (!c.out_path.empty()) spit(c.out_path, serialize_model(n));
  rep.emit();
  return EXIT_YES;
}

int cmd_translate(const Common& c, const std::string& input) {
  Report rep(c);
  std::string text = text_or_file(input);
  json arr = json::array();
  std::istringstream in(text);
  std::string line;
  bool any = false;
  while (std::getline(in, line)) {
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    any = true;
    SynStructure s = parse_structure(line);
    json row;
    row["structure"] = s.text();
    json ts = json::array();
    rep.human += s.text() + "\n";
    std::vector<Term> translations = translate(s);
    for (const auto& t : translations) {
      Term norm = beta_eta_normalize(desugar(t));
      json item;
      item["type"] = print_type(t.type());
      item["term"] = print_term(t);
      item["normal"] = print_term(norm);
      ts.push_back(item);
      rep.human += "  : " + print_type(t.type()) + "  " + print_term(norm) + "\n";
    }
    if (translations.empty()) rep.human += "  uninterpretable\n";
    row["translations"] = ts;
    arr.push_back(row);
  }
  if (!any) throw Error("no structures in input");
  rep.j["structures"] = arr;
  rep.emit();
  return EXIT_YES;
}

int entail_result(const Common& c, Report& rep, const EntailResult& r) {
  switch (r.verdict) {
    case EntailResult::Verdict::Yes:
      rep.field("verdict", "yes",
                "entailment holds; proof of " + std::to_string(proof_size(*r.proof)) +
                    " node(s)");
      if (!c.out_path.empty()) spit(c.out_path, serialize_proof(*r.proof));
      rep.emit();
      return EXIT_YES;
    case EntailResult::Verdict::No: {
      std::string line = "no entailment";
      if (r.model)
        line += "; validated countermodel attached";
      else
        line += "; open branch only (" + r.note + ")";
      rep.field("verdict", "no", line);
      if (r.report) rep.field("saturation", r.report->summary(), r.report->summary());
      if (!c.out_path.empty() && r.model) spit(c.out_path, serialize_model(*r.model));
      rep.emit();
      return EXIT_NO;
    }
    case EntailResult::Verdict::Unknown:
      rep.field("verdict", "unknown", "unknown: " + r.note);
      rep.emit();
      return EXIT_UNKNOWN;
  }
  return EXIT_UNKNOWN;
}

int cmd_entail(const Common& c, const std::vector<std::string>& premises,
               const std::string& conclusion) {
  Report rep(c);
  std::string conc = text_or_file(conclusion);
  bool structural = !conc.empty() && conc[0] == '[';
  if (structural) {
    std::vector<SynStructure> ps;
    for (const auto& p : premises) ps.push_back(parse_structure(text_or_file(p)));
    Theory th = load_theory(c);
    EntailResult r = fragment_entails(ps, parse_structure(conc), th, c.budget);
    return entail_result(c, rep, r);
  }
  Signature sig = load_sig(c);
  Theory th = load_theory(c);
  Signature full = sig.merged(th.extra_sig);
  std::vector<Term> ps;
  for (const auto& p : premises) ps.push_back(parse_term(text_or_file(p), full));
  EntailResult r = entails(ps, {parse_term(conc, full)}, th, c.budget, sig);
  return entail_result(c, rep, r);
}

int cmd_worlds_goals(const Common& c, const std::string& filter) {
  Report rep(c);
  json rows = json::array();
  bool all = true;
  for (const auto& g : worlds_goal_corpus()) {
    if (!filter.empty() && g.name.find(filter) == std::string::npos) continue;
    WorldsGoalResult r = run_worlds_goal(g, c.budget);
    all = all && r.passed;
    json row;
    row["name"] = r.name;
    row["passed"] = r.passed;
    row["detail"] = r.detail;
    rows.push_back(row);
    rep.human += std::string(r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail + "\n";
  }
  rep.j["goals"] = rows;
  rep.emit();
  return all ? EXIT_YES : EXIT_NO;
}

int cmd_corpus(const Common& c, const std::string& path) {
  json doc = json::parse(slurp(path));
  if (!doc.contains("format") || doc["format"] != "itl-entail-corpus")
    throw Error("not an itl-entail-corpus file");
  Report rep(c);
  json rows = json::array();
  size_t pass = 0, total = 0;
  for (const auto& entry : doc.at("entries")) {
    ++total;
    std::string name = entry.at("name").get<std::string>();
    Theory th = postulate_set(entry.at("postulates").get<std::string>());
    std::vector<SynStructure> ps;
    for (const auto& p : entry.at("premises"))
      ps.push_back(parse_structure(p.get<std::string>()));
    SynStructure conc = parse_structure(entry.at("conclusion").get<std::string>());
    std::string expect = entry.at("expect").get<std::string>();
    std::string got = "unknown";
    try {
      EntailResult r = fragment_entails(ps, conc, th, c.budget);
      got = r.verdict == EntailResult::Verdict::Yes  ? "yes"
            : r.verdict == EntailResult::Verdict::No ? "no"
                                                     : "unknown";
    } catch (const Error& e) {
      got = std::string("error: ") + e.what();
    }
    bool ok = got == expect;
    if (ok) ++pass;
    json row;
    row["name"] = name;
    row["expect"] = expect;
    row["got"] = got;
    row["passed"] = ok;
    rows.push_back(row);
    rep.human += std::string(ok ? "PASS " : "FAIL ") + name + ": expected " + expect +
                 ", got " + got + "\n";
  }
  rep.j["entries"] = rows;
  rep.j["passed"] = pass;
  rep.j["total"] = total;
  rep.human += std::to_string(pass) + "/" + std::to_string(total) + " entries passed\n";
  rep.emit();
  return pass == total ? EXIT_YES : EXIT_NO;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"intensional type logic toolkit"};
  app.require_subcommand(1);

  Common c;
  std::string input, model_path, filter, conclusion, refutes_seq;
  std::vector<std::string> terms, probes, premises;

  auto* check = app.add_subcommand("check", "parse and typecheck a term or sequent");
  add_common(check, c);
  check->add_option("input", input)->required();

  auto* prove_cmd = app.add_subcommand("prove", "backward proof search");
  add_common(prove_cmd, c);
  prove_cmd->add_option("input", input)->required();

  auto* sat = app.add_subcommand("saturate", "bounded Hintikka saturation");
  add_common(sat, c);
  sat->add_option("input", input)->required();

  auto* verify = app.add_subcommand("verify-proof", "re-check a proof file");
  add_common(verify, c);
  verify->add_option("proof", model_path)->required();

  auto* meval = app.add_subcommand("model-eval", "check a model and evaluate sentences");
  add_common(meval, c);
  meval->add_option("model", model_path)->required();
  meval->add_option("--term", terms, "sentence to evaluate; repeatable");
  meval->add_option("--refutes", refutes_seq, "sequent the model should refute");
  meval->add_option("--probe", probes, "coherence probe term; repeatable");

  auto* refute = app.add_subcommand("refute", "saturate, build and validate a countermodel");
  add_common(refute, c);
  refute->add_option("input", input)->required();

  auto* hk = app.add_subcommand("hintikka-check", "downward saturation report");
  add_common(hk, c);
  hk->add_option("input", input)->required();

  auto* nm = app.add_subcommand("normalize-model", "quotient by the definable equality");
  add_common(nm, c);
  nm->add_option("model", model_path)->required();
  nm->add_option("--probe", probes, "probe sentence whose truth must be preserved");

  auto* tr = app.add_subcommand("translate", "translate fragment structures");
  add_common(tr, c);
  tr->add_option("input", input, "structure, or @file with one per line")->required();

  auto* ent = app.add_subcommand("entail", "entailment between sentences or structures");
  add_common(ent, c);
  ent->add_option("--premise", premises, "premise; repeatable");
  ent->add_option("--conclusion", conclusion)->required();

  auto* wg = app.add_subcommand("worlds-goals", "run the worlds goal corpus");
  add_common(wg, c);
  wg->add_option("--name", filter, "substring filter");

  auto* corpus = app.add_subcommand("corpus", "run an entailment corpus file");
  add_common(corpus, c);
  corpus->add_option("file", model_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(c, input);
    if (prove_cmd->parsed()) return cmd_prove(c, input, false);
    if (sat->parsed()) return cmd_prove(c, input, true);
    if (verify->parsed()) return cmd_verify_proof(c, model_path);
    if (meval->parsed()) return cmd_model_eval(c, model_path, terms, refutes_seq, probes);
    if (refute->parsed()) return cmd_refute(c, input);
    if (hk->parsed()) return cmd_hintikka(c, input);
    if (nm->parsed()) return cmd_normalize_model(c, model_path, probes);
    if (tr->parsed()) return cmd_translate(c, input);
    if (ent->parsed()) return cmd_entail(c, premises, conclusion);
    if (wg->parsed()) return cmd_worlds_goals(c, filter);
    if (corpus->parsed()) return cmd_corpus(c, model_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_USAGE;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_USAGE;
  }
  return EXIT_USAGE;
}
