// Acceptance suite: one case per criterion, each printing a pass/fail line
// with its elapsed time. Budgets and tolerances are pinned here.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "itl/countermodel.hpp"
#include "itl/entail.hpp"
#include "itl/error.hpp"
#include "itl/fragment.hpp"
#include "itl/modelgen.hpp"
#include "itl/normalize.hpp"
#include "itl/parse.hpp"
#include "itl/quotient.hpp"
#include "itl/worlds.hpp"

using namespace itl;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  const char* name;
  long limit_ms;
  Clock::time_point start = Clock::now();
  bool ok = true;

  Criterion(const char* name, long limit_ms) : name(name), limit_ms(limit_ms) {}
  long elapsed() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  }
  void finish(bool passed) {
    ok = passed;
    std::printf("[%s] %s (%ld ms, limit %ld ms)\n", passed && elapsed() < limit_ms ? "PASS" : "FAIL",
                name, elapsed(), limit_ms);
    std::fflush(stdout);
  }
};

Signature demo_sig() {
  return parse_signature(
      "type e\n"
      "const p : <>\n"
      "const q : <>\n"
      "const r : <>\n"
      "const P : <e>\n"
      "const Q : <e>\n"
      "const know : <e <>>\n"
      "const c : e\n"
      "const d : e\n");
}

SearchBudget budget(long ms) {
  SearchBudget b;
  b.time_limit = std::chrono::milliseconds(ms);
  return b;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<int, std::string> run_cli(const std::string& args) {
  std::string cmd = std::string(ITL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string asset(const std::string& name) { return std::string(ITL_ASSETS_DIR) + "/" + name; }

// deterministic pseudo-random closed term generator for the round-trip corpus
struct TermGen {
  uint64_t s;
  Signature sig;
  uint64_t next() {
    s += 0x9e3779b97f4a7c15ULL;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  size_t below(size_t n) { return next() % n; }

  Term sentence(int depth) {
    switch (below(depth <= 0 ? 3 : 9)) {
      case 0: return mk_const("p", Type::prop());
      case 1: return mk_const("q", Type::prop());
      case 2: return below(2) ? mk_bottom() : mk_top();
      case 3: return mk_not(sentence(depth - 1));
      case 4: return mk_and(sentence(depth - 1), sentence(depth - 1));
      case 5: return mk_or(sentence(depth - 1), sentence(depth - 1));
      case 6: return mk_iff(sentence(depth - 1), sentence(depth - 1));
      case 7: {
        Var x{"x", Type::basic("e")};
        Term body = below(2) ? mk_app(mk_const("P", parse_type("<e>")), mk_var(x))
                             : sentence(depth - 1);
        return below(2) ? mk_forall(x, body) : mk_exists(x, body);
      }
      default: {
        Term a = entity(depth - 1);
        Term b = entity(depth - 1);
        return below(2) ? mk_eq(a, b) : mk_app(mk_const("P", parse_type("<e>")), a);
      }
    }
  }
  Term entity(int) { return below(2) ? mk_const("c", Type::basic("e")) : mk_const("d", Type::basic("e")); }
  Term predicate(int depth) {
    Var x{"x", Type::basic("e")};
    return mk_lam(x, sentence(depth - 1));
  }
  Term term(int depth) {
    switch (below(4)) {
      case 0: return sentence(depth);
      case 1: return predicate(depth);
      case 2: return mk_app(predicate(depth), entity(0));
      default: return mk_subset(predicate(depth - 1), predicate(depth - 1));
    }
  }
};

}  // namespace

TEST_CASE("criterion 1: sampled kernel soundness") {
  Criterion cr("criterion 1: no machine-found proof is refuted by any pool model", 60000);
  Signature sig = demo_sig();
  Theory empty;
  empty.name = "empty";
  Theory lc = lambda_conv_theory();

  std::vector<const char*> tautologies = {
      "p => p", "q => q", "r => r", "=> top", "bot =>", "bot => q",
      "p, q => p", "p => p, q", "=> p -> p", "=> p -> q -> p",
      "p -> q, p => q", "p -> q, q -> r => p -> r",
      "p -> q => ~q -> ~p", "~q -> ~p => p -> q",
      "p & q => q & p", "p & q => p", "p & q => q",
      "p => p | q", "q => p | q", "p | q, p -> r, q -> r => r",
      "=> p | ~p", "p, ~p =>", "=> ~(p & ~p)",
      "p <-> q, p => q", "p <-> q, q => p",
      "=> (p & q) -> (p | q)", "=> p -> ~~p", "~~p => p",
      "=> c = c", "=> d = d", "=> p = p",
      "c = d, P c => P d", "d = c, P c => P d",
      "forall x:e . P x => P c", "forall x:e . P x => P d",
      "forall x:e . P x -> Q x, P c => Q c",
      "P c => exists x:e . P x", "P d => exists x:e . P x",
      "forall x:e . P x => forall x:e . P x",
      "=> forall x:e . P x -> P x",
      "know c p, p -> q =>  know c p",
      "know c p => know c p, know c q",
      "p & (q & r) => (p & q) & r", "(p & q) & r => p & (q & r)",
      "p | (q | r) => (p | q) | r",
      "p -> (q -> r), p, q => r",
      "=> ((p -> q) -> p) -> p",
      "q => p -> q", "p, q, r => p & (q & r)",
      "p <-> q => q <-> p",
  };
  std::vector<Proof> proofs;
  for (const char* g : tautologies) {
    auto out = prove(parse_sequent(g, sig), empty, budget(5000), sig);
    CAPTURE(g);
    REQUIRE(out.found());
    proofs.push_back(std::move(*out.proof));
  }
  // a few theory-backed proofs as well
  for (const char* g : {"=> (lam x:e . P x) c = P c", "=> (lam x:e . P x) = P"}) {
    auto out = prove(parse_sequent(g, sig), lc, budget(5000), sig);
    CAPTURE(g);
    REQUIRE(out.found());
    proofs.push_back(std::move(*out.proof));
  }
  REQUIRE(proofs.size() >= 50);

  // one shared probe pool keeps every conclusion carrier-closed
  std::vector<Term> probes;
  std::set<std::string> seen;
  for (const auto& p : proofs)
    for (const auto& m : p.conclusion)
      if (seen.insert(m.key).second) probes.push_back(m.sentence);

  size_t refuted = 0, verdicts = 0, escapes = 0, models = 0;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    GenOptions opt;
    opt.seed = seed * 1337 + 7;
    opt.spares_per_type = 1 + (int)(seed % 3);
    FiniteModel m = random_model(probes, sig, opt);
    REQUIRE(check_model(m, probes).ok());
    ++models;
    std::map<std::string, int> memo;  // sentence -> truth (or -1 escape)
    for (const auto& proof : proofs) {
      bool escape = false, is_refuted = true;
      for (const auto& member : proof.conclusion) {
        auto it = memo.find(member.key);
        if (it == memo.end()) {
          int v;
          try {
            v = eval_extension(m, {}, member.sentence).truth() ? 1 : 0;
          } catch (const CarrierEscape&) {
            v = -1;
          }
          it = memo.emplace(member.key, v).first;
        }
        if (it->second < 0) { escape = true; break; }
        bool want = member.sign == Sign::L;
        if ((it->second == 1) != want) { is_refuted = false; break; }
      }
      if (escape) { ++escapes; continue; }
      ++verdicts;
      if (is_refuted) ++refuted;
    }
  }
  CHECK(models == 100);
  CHECK(verdicts >= 2000);  // meaningful coverage
  CHECK(refuted == 0);      // zero tolerance
  cr.finish(refuted == 0 && models == 100 && verdicts >= 2000);
  CHECK(cr.elapsed() < cr.limit_ms);
}

TEST_CASE("criterion 2: evaluation facts on the random pool") {
  Criterion cr("criterion 2: facts 1-6 hold on every carrier-closed probe", 120000);
  Signature sig = demo_sig();
  std::vector<Term> probes{
      parse_term("p", sig),           parse_term("q", sig),
      parse_term("p -> q", sig),      parse_term("q -> p", sig),
      parse_term("forall x:e . P x", sig),
      parse_term("exists x:e . Q x", sig),
      parse_term("P c", sig),         parse_term("P d", sig),
      parse_term("Q c", sig),         parse_term("Q d", sig),
      parse_term("(lam x:e . P x) c", sig),
      parse_term("(lam x:e . Q x) d", sig),
      parse_term("(lam w:<> . w) p", sig),
      parse_term("p = q", sig),       parse_term("c = d", sig),
      parse_term("P c = P d", sig),   parse_term("p = p", sig),
      parse_term("p sub q", sig),     parse_term("P sub Q", sig),
  };
  size_t checked = 0, violations = 0;
  auto fact = [&](bool holds) {
    ++checked;
    if (!holds) ++violations;
    CHECK(holds);
  };
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    GenOptions opt;
    opt.seed = seed * 31 + 5;
    if (seed % 2 == 0) opt.alias_constants = {{"d", "c"}};
    FiniteModel m = random_model(probes, sig, opt);
    REQUIRE(check_model(m, probes).ok());
    auto T = [&](const char* t) { return eval_truth(m, parse_term(t, sig)); };
    // 1: implication truth table
    fact(!T("p -> q") == (T("p") && !T("q")));
    fact(!T("q -> p") == (T("q") && !T("p")));
    // 2: universal truth iff all instances
    {
      bool all = true;
      for (const auto& dtok : m.domains.at(Type::basic("e"))) {
        Var x{"x", Type::basic("e")};
        Assignment a{{x, dtok}};
        if (!eval_extension(m, a, mk_app(parse_term("P", sig), mk_var(x))).truth()) all = false;
      }
      fact(T("forall x:e . P x") == all);
      bool some = false;
      for (const auto& dtok : m.domains.at(Type::basic("e"))) {
        Var x{"x", Type::basic("e")};
        Assignment a{{x, dtok}};
        if (eval_extension(m, a, mk_app(parse_term("Q", sig), mk_var(x))).truth()) some = true;
      }
      fact(T("exists x:e . Q x") == some);
    }
    // 3: beta preserves extensions
    fact(T("(lam x:e . P x) c") == T("P c"));
    fact(T("(lam x:e . Q x) d") == T("Q d"));
    fact(T("(lam w:<> . w) p") == T("p"));
    // 4: equality implies inclusion
    if (T("p = q")) fact(T("p sub q"));
    else fact(true);
    if (eval_truth(m, parse_term("P = Q", sig))) fact(T("P sub Q"));
    else fact(true);
    // 5: reflexivity
    fact(T("p = p"));
    fact(eval_truth(m, parse_term("c = c", sig)));
    // 6: substitutivity
    if (T("c = d")) fact(T("P c = P d"));
    else fact(true);
  }
  CHECK(checked >= 1000);
  cr.finish(violations == 0 && checked >= 1000);
  CHECK(cr.elapsed() < cr.limit_ms);
}

TEST_CASE("criterion 3: the published open-branch regression") {
  Criterion cr("criterion 3: verbatim regression sequent and its repair", 10000);
  Signature sig = parse_signature(slurp(asset("gplus.sig")));
  bool ok = true;

  Sequent verbatim = parse_sequent(slurp(asset("gplus-sequent.txt")), sig);
  TermUniverse u(sig, 1);
  HintikkaReport rep = check_hintikka(verbatim, u);
  ok = ok && rep.violations.size() == 1;
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].clause == 5);
  CHECK(rep.violations[0].instance.find("bot sub bot") != std::string::npos);
  REQUIRE(rep.violations[0].missing.size() == 1);
  CHECK(rep.violations[0].missing[0] == "R: bot");
  ok = ok && rep.violations[0].clause == 5 && rep.violations[0].missing[0] == "R: bot";

  Sequent repaired = parse_sequent(slurp(asset("gplus-repaired.txt")), sig);
  CHECK(check_hintikka(repaired, u).ok());
  ok = ok && check_hintikka(repaired, u).ok();

  // CLI surfaces agree
  auto [code_v, out_v] =
      run_cli("hintikka-check --sig " + asset("gplus.sig") + " @" + asset("gplus-sequent.txt") +
              " --no-timestamp");
  CHECK(code_v == 1);
  auto [code_r, out_r] =
      run_cli("hintikka-check --sig " + asset("gplus.sig") + " @" + asset("gplus-repaired.txt") +
              " --no-timestamp");
  CHECK(code_r == 0);
  ok = ok && code_v == 1 && code_r == 0;

  // refute the triple-equality disjunction with three dissimilar propositions
  Signature psig = parse_signature(slurp(asset("prop.sig")));
  Sequent goal = parse_sequent("=> p = q, q = r, r = p", psig);
  auto sat = saturate(goal, budget(8000), psig);
  REQUIRE(sat.open());
  FiniteModel m = build_countermodel(*sat.branch, psig);
  CHECK(refutes(m, goal));
  Token tp = m.const_intension.at("p");
  Token tq = m.const_intension.at("q");
  Token tr = m.const_intension.at("r");
  for (auto [a, b] : {std::pair{tp, tq}, {tq, tr}, {tr, tp}}) {
    CHECK_FALSE(sim_related(m, a, b));
    CHECK_FALSE(sim_related(m, b, a));
    ok = ok && !sim_related(m, a, b) && !sim_related(m, b, a);
  }
  cr.finish(ok && refutes(m, goal));
  CHECK(cr.elapsed() < cr.limit_ms);
}

TEST_CASE("criterion 4: extensionality is independent") {
  Criterion cr("criterion 4: one model validates the scheme, one falsifies it", 10000);
  Signature sig = parse_signature(slurp(asset("prop.sig")));
  FiniteModel good = parse_model(slurp(asset("ext-validator.json")));
  FiniteModel bad = parse_model(slurp(asset("ext-falsifier.json")));
  bool ok = true;

  const char* atoms[] = {"p", "q", "r"};
  std::vector<Term> instances;
  for (const char* a : atoms)
    for (const char* b : atoms)
      instances.push_back(parse_term(
          "(" + std::string(a) + " <-> " + b + ") -> (" + a + " = " + b + ")", sig));

  CHECK(check_model(good, instances).ok());
  CHECK(check_model(bad, instances).ok());
  ok = ok && check_model(good, instances).ok() && check_model(bad, instances).ok();
  for (const auto& inst : instances) {
    CHECK(eval_truth(good, inst));
    ok = ok && eval_truth(good, inst);
  }
  bool falsified = false;
  for (const auto& inst : instances)
    if (!eval_truth(bad, inst)) falsified = true;
  CHECK(falsified);

  Sequent goal = parse_sequent("p <-> q => p = q", sig);
  auto sat = saturate(goal, budget(8000), sig);
  REQUIRE(sat.open());
  FiniteModel cm = build_countermodel(*sat.branch, sig);
  CHECK(refutes(cm, goal));
  ok = ok && falsified && refutes(cm, goal);
  cr.finish(ok);
  CHECK(cr.elapsed() < cr.limit_ms);
}

TEST_CASE("criterion 5: all seven derived rules expand and re-check") {
  Criterion cr("criterion 5: derived-rule expansions pass the kernel", 5000);
  Signature sig = demo_sig();
  auto axiom_on = [](const Sequent& s) { return Proof{s, RuleId::Axiom, {}, {}}; };
  size_t failures = 0;
  auto check = [&](Proof p) {
    Proof q = expand_derived(p);
    Verdict v = check_proof(q, sig);
    CHECK(v.valid);
    CHECK(q.conclusion == p.conclusion);
    if (!v.valid || !(q.conclusion == p.conclusion)) ++failures;
  };

  // TopR
  for (const char* g : {"=> top", "p => top, q"}) {
    Sequent s = parse_sequent(g, sig);
    check(Proof{s, RuleId::TopR, {make_signed(Sign::R, parse_term("top", sig)), {}, {}}, {}});
  }
  // ImpL
  check(Proof{parse_sequent("p -> q, p => q", sig),
              RuleId::ImpL,
              {make_signed(Sign::L, parse_term("p -> q", sig)), {}, {}},
              {axiom_on(parse_sequent("q, p => q", sig)),
               axiom_on(parse_sequent("p => q, p", sig))}});
  check(Proof{parse_sequent("q -> r, q => r", sig),
              RuleId::ImpL,
              {make_signed(Sign::L, parse_term("q -> r", sig)), {}, {}},
              {axiom_on(parse_sequent("r, q => r", sig)),
               axiom_on(parse_sequent("q => r, q", sig))}});
  // ImpR
  check(Proof{parse_sequent("=> p -> p", sig),
              RuleId::ImpR,
              {make_signed(Sign::R, parse_term("p -> p", sig)), {}, {}},
              {axiom_on(parse_sequent("p => p", sig))}});
  check(Proof{parse_sequent("r => q -> q", sig),
              RuleId::ImpR,
              {make_signed(Sign::R, parse_term("q -> q", sig)), {}, {}},
              {axiom_on(parse_sequent("r, q => q", sig))}});
  // AllL
  check(Proof{parse_sequent("forall x:e . P x => P c", sig),
              RuleId::AllL,
              {make_signed(Sign::L, parse_term("forall x:e . P x", sig)),
               {parse_term("c", sig)},
               {}},
              {axiom_on(parse_sequent("P c => P c", sig))}});
  check(Proof{parse_sequent("forall x:e . P x => P d", sig),
              RuleId::AllL,
              {make_signed(Sign::L, parse_term("forall x:e . P x", sig)),
               {parse_term("d", sig)},
               {}},
              {axiom_on(parse_sequent("P d => P d", sig))}});
  // AllR
  {
    Term c0 = fresh_constant(parse_sequent("=> forall x:e . P x -> P x", sig), Type::basic("e"));
    Term body = mk_subset(mk_app(parse_term("P", sig), c0), mk_app(parse_term("P", sig), c0));
    Sequent prem = make_sequent({}, {body});
    Sequent ax;
    ax.insert(make_signed(Sign::L, mk_app(parse_term("P", sig), c0)));
    ax.insert(make_signed(Sign::R, mk_app(parse_term("P", sig), c0)));
    Proof inner{prem, RuleId::ImpR, {make_signed(Sign::R, body), {}, {}}, {axiom_on(ax)}};
    check(Proof{parse_sequent("=> forall x:e . P x -> P x", sig),
                RuleId::AllR,
                {make_signed(Sign::R, parse_term("forall x:e . P x -> P x", sig)), {}, {c0}},
                {inner}});
    Term w0 = fresh_constant(parse_sequent("=> forall w:<> . w -> w", sig), Type::prop());
    Term wbody = mk_subset(w0, w0);
    Sequent wprem = make_sequent({}, {wbody});
    Sequent wax;
    wax.insert(make_signed(Sign::L, w0));
    wax.insert(make_signed(Sign::R, w0));
    Proof winner{wprem, RuleId::ImpR, {make_signed(Sign::R, wbody), {}, {}}, {axiom_on(wax)}};
    check(Proof{parse_sequent("=> forall w:<> . w -> w", sig),
                RuleId::AllR,
                {make_signed(Sign::R, parse_term("forall w:<> . w -> w", sig)), {}, {w0}},
                {winner}});
  }
  // EqR
  for (const char* g : {"=> c = c", "p => p = p, q"}) {
    Sequent s = parse_sequent(g, sig);
    SignedSentence pr{};
    for (const auto& member : s)
      if (member.sign == Sign::R && match_equation(member.sentence)) pr = member;
    check(Proof{s, RuleId::EqR, {pr, {}, {}}, {}});
  }
  // EqL (both orientations)
  Term ctx = parse_term("lam x:e . P x", sig);
  check(Proof{parse_sequent("c = d, P c => P d", sig),
              RuleId::EqL,
              {make_signed(Sign::L, parse_term("c = d", sig)), {ctx}, {}},
              {axiom_on(parse_sequent("c = d, P c => P c", sig))}});
  check(Proof{parse_sequent("d = c, P c => P d", sig),
              RuleId::EqL,
              {make_signed(Sign::L, parse_term("d = c", sig)), {ctx}, {}},
              {axiom_on(parse_sequent("d = c, P c => P c", sig))}});
  cr.finish(failures == 0);
  CHECK(cr.elapsed() < cr.limit_ms);
}

TEST_CASE("criterion 6: normalization quotient on duplicated models") {
  Criterion cr("criterion 6: quotients are normal and preserve probe truth", 30000);
  Signature sig = demo_sig();
  std::vector<Term> probes{
      parse_term("p -> q", sig),
      parse_term("forall x:e . P x", sig),
      parse_term("exists x:e . Q x", sig),
      parse_term("P c", sig),
      parse_term("p = q", sig),
      parse_term("c = d", sig),
  };
  size_t violations = 0, count = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    GenOptions opt;
    opt.seed = seed * 101 + 3;
    FiniteModel base = random_model(probes, sig, opt);
    for (const Type& ty : {Type::basic("e"), Type::prop()}) {
      ++count;
      FiniteModel dup = inject_duplicate(base, ty, seed % 2);
      std::vector<bool> want;
      for (const auto& pr : probes) want.push_back(eval_truth(base, pr));
      FiniteModel norm = normalize_model(dup, probes);
      bool normal = is_normal_model(norm);
      bool preserved = true;
      for (size_t i = 0; i < probes.size(); ++i)
        if (eval_truth(norm, probes[i]) != want[i]) preserved = false;
      bool merged = norm.domains.at(ty).size() < dup.domains.at(ty).size();
      CAPTURE(seed);
      CHECK(normal);
      CHECK(preserved);
      CHECK(merged);
      if (!normal || !preserved || !merged) ++violations;
    }
  }
  CHECK(count >= 20);
  cr.finish(violations == 0 && count >= 20);
  CHECK(cr.elapsed() < cr.limit_ms);
}

TEST_CASE("criterion 7: fragment co-entailment and the names argument") {
  Criterion cr("criterion 7: positive fragment entailments prove", 180000);
  const char* s1a = "[[[no man]laughs][if[[some unicorn]runs]]]";
  const char* s1c = "[[[no unicorn]runs][if[[some man]laughs]]]";
  Theory lc = postulate_set("lambda-conv");
  bool ok = true;

  auto t0 = Clock::now();
  auto fwd = fragment_entails({parse_structure(s1a)}, parse_structure(s1c), lc, budget(55000));
  CHECK(fwd.verdict == EntailResult::Verdict::Yes);
  long fwd_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  CHECK(fwd_ms < 60000);

  t0 = Clock::now();
  auto bwd = fragment_entails({parse_structure(s1c)}, parse_structure(s1a), lc, budget(55000));
  CHECK(bwd.verdict == EntailResult::Verdict::Yes);
  long bwd_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  CHECK(bwd_ms < 60000);

  t0 = Clock::now();
  Theory names = postulate_set("names");
  auto cicero = fragment_entails(
      {parse_structure("[Tully runs]"), parse_structure("[Tully [is Cicero]]")},
      parse_structure("[Cicero runs]"), names, budget(55000));
  CHECK(cicero.verdict == EntailResult::Verdict::Yes);
  long cic_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  CHECK(cic_ms < 60000);

  ok = fwd.verdict == EntailResult::Verdict::Yes && bwd.verdict == EntailResult::Verdict::Yes &&
       cicero.verdict == EntailResult::Verdict::Yes && fwd_ms < 60000 && bwd_ms < 60000 &&
       cic_ms < 60000;
  REQUIRE(fwd.proof.has_value());
  REQUIRE(cicero.proof.has_value());
  Signature fsig = fragment_signature().merged(names.extra_sig);
  CHECK(check_proof(*cicero.proof, fsig).valid);
  cr.finish(ok);
}

TEST_CASE("criterion 8: logical omniscience fails") {
  Criterion cr("criterion 8: knowledge and belief are not closed under equivalence", 120000);
  Signature sig = fragment_signature();
  auto norm = [](const Term& t) { return beta_eta_normalize(desugar(t)); };
  bool ok = true;

  // the knowledge pair over the co-entailing sentences is a Hintikka sequent
  Signature ext = sig;
  ext.declare("c0", Type::basic("e"));
  Term n1b = norm(translate(parse_structure("[[[no man]laughs][if[[some unicorn]runs]]]"))[0]);
  Term n1d = norm(translate(parse_structure("[[[no unicorn]runs][if[[some man]laughs]]]"))[0]);
  Term know_c = mk_app(parse_term("know", ext), parse_term("c0", ext));
  Sequent pair = make_sequent({mk_app(know_c, n1b)}, {mk_app(know_c, n1d)});
  TermUniverse u(ext, 1);
  CHECK(check_hintikka(pair, u).ok());
  ok = ok && check_hintikka(pair, u).ok();
  // and its countermodel refutes logical omniscience directly
  FiniteModel km = build_countermodel(pair, ext);
  CHECK(refutes(km, pair));

  // every-man-knows variants are not co-entailing, with a validated model
  Theory lc = postulate_set("lambda-conv");
  auto r = fragment_entails(
      {parse_structure("[[every man][knows[[[no man]laughs][if[[some unicorn]runs]]]]]")},
      parse_structure("[[every man][knows[[[no unicorn]runs][if[[some man]laughs]]]]]"), lc,
      budget(50000));
  CHECK(r.verdict == EntailResult::Verdict::No);
  REQUIRE(r.model.has_value());
  ok = ok && r.verdict == EntailResult::Verdict::No && r.model.has_value();

  // belief opacity under the name postulates plus the identity premise
  Theory both = postulate_set("names+lambda-conv");
  auto b = fragment_entails(
      {parse_structure("[Ann [believes [Tully runs]]]"), parse_structure("[Tully [is Cicero]]")},
      parse_structure("[Ann [believes [Cicero runs]]]"), both, budget(60000));
  CHECK(b.verdict == EntailResult::Verdict::No);
  REQUIRE(b.model.has_value());
  ok = ok && b.verdict == EntailResult::Verdict::No && b.model.has_value();
  cr.finish(ok);
  CHECK(cr.elapsed() < cr.limit_ms);
}

TEST_CASE("criterion 9: worlds corpus") {
  Criterion cr("criterion 9: model-validated and scripted worlds goals", 60000);
  bool all = true;
  for (const auto& g : worlds_goal_corpus()) {
    auto r = run_worlds_goal(g, budget(55000));
    CAPTURE(g.name);
    CAPTURE(r.detail);
    CHECK(r.passed);
    all = all && r.passed;
  }
  // the shipped model file matches the in-memory demo model
  FiniteModel shipped = parse_model(slurp(asset("worlds-model.json")));
  CHECK(serialize_model(shipped) == serialize_model(worlds_demo_model()));
  cr.finish(all);
  CHECK(cr.elapsed() < cr.limit_ms);
}

TEST_CASE("criterion 10: round trip and deterministic reports") {
  Criterion cr("criterion 10: exact round trips, byte-identical reruns", 120000);
  Signature sig = demo_sig();
  TermGen gen{0xabcdef12, sig};
  size_t exact = 0;
  for (int i = 0; i < 200; ++i) {
    Term t = gen.term(3);
    Term back = parse_term(print_term(t), sig);
    CAPTURE(print_term(t));
    CHECK(back == t);
    if (back == t) ++exact;
    // canonical (desugared) forms round-trip as well
    Term d = desugar(t);
    CHECK(parse_term(print_term(d), sig) == d);
  }
  CHECK(exact == 200);

  std::string corpus_args = "corpus " + asset("fragment-corpus.json") +
                            " --format structured --no-timestamp --time-limit 55000";
  auto [c1, out1] = run_cli(corpus_args);
  auto [c2, out2] = run_cli(corpus_args);
  CHECK(c1 == 0);
  CHECK(out1 == out2);
  auto [t1, tr1] = run_cli("translate \"[Bill [loves Ann]]\" --format structured --no-timestamp");
  auto [t2, tr2] = run_cli("translate \"[Bill [loves Ann]]\" --format structured --no-timestamp");
  CHECK(t1 == 0);
  CHECK(tr1 == tr2);

  // emitted artifacts re-validate through their own checkers
  std::string sig_arg = "--sig " + asset("prop.sig");
  auto [p1, pout] = run_cli("prove " + sig_arg +
                            " \"p -> q, q -> r => p -> r\" --out /tmp/itl-acc-proof.json "
                            "--no-timestamp");
  auto [v1, vout] = run_cli("verify-proof " + sig_arg + " /tmp/itl-acc-proof.json --no-timestamp");
  auto [r1, rout] = run_cli("refute " + sig_arg +
                            " \"p <-> q => p = q\" --out /tmp/itl-acc-model.json --no-timestamp");
  auto [e1, eout] = run_cli("model-eval " + sig_arg +
                            " /tmp/itl-acc-model.json --refutes \"p <-> q => p = q\" "
                            "--no-timestamp");
  CHECK(p1 == 0);
  CHECK(v1 == 0);
  CHECK(r1 == 0);
  CHECK(e1 == 0);
  cr.finish(exact == 200 && c1 == 0 && out1 == out2 && tr1 == tr2 && p1 == 0 && v1 == 0 &&
            r1 == 0 && e1 == 0);
  CHECK(cr.elapsed() < cr.limit_ms);
}
