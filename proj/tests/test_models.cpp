#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "itl/countermodel.hpp"
#include "itl/error.hpp"
#include "itl/entail.hpp"
#include "itl/modelgen.hpp"
#include "itl/normalize.hpp"
#include "itl/parse.hpp"
#include "itl/quotient.hpp"

using namespace itl;

namespace {

Signature prop_sig() {
  return parse_signature(
      "const p : <>\n"
      "const q : <>\n"
      "const r : <>\n");
}

Signature demo_sig() {
  return parse_signature(
      "type e\n"
      "const p : <>\n"
      "const q : <>\n"
      "const r : <>\n"
      "const P : <e>\n"
      "const c : e\n"
      "const d : e\n");
}

// Hand-built two-proposition model with injective extensions: T is true,
// F is false, and two predicate tokens separate them.
FiniteModel henkin_two() {
  FiniteModel m;
  m.sig = prop_sig();
  m.domains[Type::prop()] = {"F", "T"};
  m.domains[parse_type("<<>>")] = {"zAll", "zT"};
  m.const_intension["p"] = "T";
  m.const_intension["q"] = "T";
  m.const_intension["r"] = "F";
  m.term_intension["bot"] = "F";
  m.extensions["T"] = Extension::boolean(true);
  m.extensions["F"] = Extension::boolean(false);
  Extension zt;
  zt.tuples.insert({std::vector<Token>{"T"}.front()});
  m.extensions["zT"] = Extension{{{"T"}}};
  m.extensions["zAll"] = Extension{{{"T"}, {"F"}}};
  m.reindex();
  return m;
}

SearchBudget quick() {
  SearchBudget b;
  b.time_limit = std::chrono::milliseconds(15000);
  return b;
}

}  // namespace

TEST_CASE("eval: bot is 0, A sub A is 1 in any model") {
  FiniteModel m = henkin_two();
  Signature sig = m.sig;
  CHECK_FALSE(eval_truth(m, parse_term("bot", sig)));
  CHECK(eval_truth(m, parse_term("p sub p", sig)));
  CHECK(eval_truth(m, parse_term("top", sig)));
  CHECK(eval_truth(m, parse_term("p", sig)));
  CHECK_FALSE(eval_truth(m, parse_term("r", sig)));
  CHECK(eval_truth(m, parse_term("p sub q", sig)));
  CHECK_FALSE(eval_truth(m, parse_term("p sub r", sig)));
}

TEST_CASE("resolve_intension: variables via assignment, constants via table") {
  FiniteModel m = henkin_two();
  Var x{"x", Type::prop()};
  Assignment a{{x, "F"}};
  CHECK(resolve_intension(m, a, mk_var(x)) == "F");
  CHECK(resolve_intension(m, {}, parse_term("p", m.sig)) == "T");
  CHECK_THROWS_AS(resolve_intension(m, {}, parse_term("lam w:<> . w", m.sig)), CarrierEscape);
}

TEST_CASE("check_model accepts the hand-built model and catches a broken one") {
  FiniteModel m = henkin_two();
  std::vector<Term> probes{parse_term("p sub q", m.sig), parse_term("p -> p", m.sig)};
  CHECK(check_model(m, probes).ok());
  // extension(I(p -> p)) = 0 would contradict evaluation; simulate by tabling
  FiniteModel bad = m;
  bad.term_intension["p sub p"] = "F";
  bad.reindex();
  auto rep = check_model(bad, {parse_term("p sub p", m.sig)});
  CHECK_FALSE(rep.ok());
}

TEST_CASE("refutes: all left true, all right false, assignment-independent") {
  FiniteModel m = henkin_two();
  CHECK(refutes(m, parse_sequent("p => r", m.sig)));
  CHECK_FALSE(refutes(m, parse_sequent("r => p", m.sig)));
  CHECK_FALSE(refutes(m, parse_sequent("bot =>", m.sig)));  // V(bot)=0 always
  CHECK_FALSE(refutes(m, parse_sequent("=> p", m.sig)));
  CHECK(refutes(m, parse_sequent("=> r", m.sig)));
}

TEST_CASE("model files round-trip") {
  FiniteModel m = henkin_two();
  std::string text = serialize_model(m);
  FiniteModel back = parse_model(text);
  CHECK(serialize_model(back) == text);
  CHECK(eval_truth(back, parse_term("p", m.sig)));
  CHECK(check_model(back, {parse_term("p sub q", m.sig)}).ok());
}

TEST_CASE("the regression countermodel: saturate, build, validate, normalize") {
  Signature sig = prop_sig();
  Sequent goal = parse_sequent("=> p = q, q = r, r = p", sig);
  auto sat = saturate(goal, quick(), sig);
  REQUIRE(sat.open());
  REQUIRE(sat.report->hintikka.ok());

  FiniteModel m = build_countermodel(*sat.branch, sig);
  CHECK(refutes(m, goal));
  // at least three pairwise dissimilar proposition tokens: p, q, r
  Token tp = m.const_intension.at("p");
  Token tq = m.const_intension.at("q");
  Token tr = m.const_intension.at("r");
  CHECK(tp != tq);
  CHECK(tq != tr);
  for (auto [a, b] : {std::pair{tp, tq}, {tq, tr}, {tr, tp}}) {
    CHECK_FALSE(sim_related(m, a, b));
    CHECK_FALSE(sim_related(m, b, a));
  }
  // the checker accepts the model over the branch's own subterms
  std::vector<Term> probes;
  for (const auto& member : *sat.branch) probes.push_back(member.sentence);
  CHECK(check_model(m, probes).ok());

  // Prop. 10 on the countermodel: the quotient still refutes the sequent
  std::vector<Term> goal_probes;
  for (const auto& member : goal) goal_probes.push_back(member.sentence);
  FiniteModel norm = normalize_model(m, goal_probes);
  CHECK(refutes(norm, goal));
}

TEST_CASE("trivial countermodels") {
  Signature sig = prop_sig();
  // {L:p} forces E(I(p)) = 1
  Sequent s = parse_sequent("p =>", sig);
  FiniteModel m = build_countermodel(s, sig);
  CHECK(eval_truth(m, parse_term("p", sig)));
  CHECK(refutes(m, s));
  // {L:bot} cannot be refuted
  CHECK_THROWS_AS(build_countermodel(parse_sequent("bot =>", sig), sig), ValidationFailed);
}

TEST_CASE("extensionality is independent: validator and falsifier models") {
  Signature sig = prop_sig();
  // injective-extension model validates every atomic instance of
  // (phi <-> psi) -> phi = psi
  FiniteModel good = henkin_two();
  const char* atoms[] = {"p", "q", "r"};
  for (const char* a : atoms)
    for (const char* b : atoms) {
      std::string inst =
          "(" + std::string(a) + " <-> " + b + ") -> (" + a + " = " + b + ")";
      CAPTURE(inst);
      CHECK(eval_truth(good, parse_term(inst, sig)));
    }

  // brute-force search for a witness model falsifying (p <-> q) -> p = q
  // over three proposition tokens with E(dp)=E(dq)=1, E(dr)=0 and a single
  // separating predicate token
  Term target = parse_term("(p <-> q) -> p = q", sig);
  std::optional<FiniteModel> witness;
  for (int mask = 0; mask < 8 && !witness; ++mask) {
    FiniteModel m;
    m.sig = sig;
    m.domains[Type::prop()] = {"dp", "dq", "dr"};
    m.domains[parse_type("<<>>")] = {"s"};
    m.const_intension["p"] = "dp";
    m.const_intension["q"] = "dq";
    m.const_intension["r"] = "dr";
    m.term_intension["bot"] = "dr";
    m.extensions["dp"] = Extension::boolean(true);
    m.extensions["dq"] = Extension::boolean(true);
    m.extensions["dr"] = Extension::boolean(false);
    Extension s;
    if (mask & 1) s.tuples.insert({"dp"});
    if (mask & 2) s.tuples.insert({"dq"});
    if (mask & 4) s.tuples.insert({"dr"});
    m.extensions["s"] = s;
    m.reindex();
    if (!check_model(m, {target}).ok()) continue;
    if (!eval_truth(m, target)) witness = m;
  }
  REQUIRE(witness.has_value());
  // the found witness separates p from q through s
  CHECK(witness->extensions.at("s").tuples.count({"dp"}) !=
        witness->extensions.at("s").tuples.count({"dq"}));
}

TEST_CASE("refute p <-> q => p = q end to end") {
  Signature sig = prop_sig();
  Sequent goal = parse_sequent("p <-> q => p = q", sig);
  auto sat = saturate(goal, quick(), sig);
  REQUIRE(sat.open());
  FiniteModel m = build_countermodel(*sat.branch, sig);
  CHECK(refutes(m, goal));
}

TEST_CASE("random models are well-formed and carrier-closed on their probes") {
  Signature sig = demo_sig();
  std::vector<Term> probes{
      parse_term("p -> q", sig),
      parse_term("forall x:e . P x", sig),
      parse_term("(lam x:e . P x) c", sig),
      parse_term("P c", sig),
      parse_term("p = q", sig),
  };
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    GenOptions opt;
    opt.seed = seed;
    FiniteModel m = random_model(probes, sig, opt);
    CAPTURE(seed);
    CHECK(check_model(m, probes).ok());
    for (const auto& p : probes) {
      CHECK_NOTHROW(eval_truth(m, p));
    }
  }
}

TEST_CASE("facts about evaluation hold on random models") {
  Signature sig = demo_sig();
  std::vector<Term> probes{
      parse_term("p", sig),          parse_term("q", sig),
      parse_term("p -> q", sig),     parse_term("forall x:e . P x", sig),
      parse_term("P c", sig),        parse_term("(lam x:e . P x) c", sig),
      parse_term("p = q", sig),      parse_term("p sub q", sig),
      parse_term("p = p", sig),
  };
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    GenOptions opt;
    opt.seed = seed * 7 + 1;
    FiniteModel m = random_model(probes, sig, opt);
    CAPTURE(seed);
    // item 1: V(phi -> psi) = 0 iff V(phi) = 1 and V(psi) = 0
    bool imp = eval_truth(m, parse_term("p -> q", sig));
    bool vp = eval_truth(m, parse_term("p", sig));
    bool vq = eval_truth(m, parse_term("q", sig));
    CHECK(!imp == (vp && !vq));
    // item 2: universal truth iff all instances
    bool all = eval_truth(m, parse_term("forall x:e . P x", sig));
    bool every = true;
    for (const auto& d : m.domains.at(Type::basic("e"))) {
      Var x{"x", Type::basic("e")};
      Assignment a{{x, d}};
      Term px = mk_app(parse_term("P", sig), mk_var(x));
      if (!eval_extension(m, a, px).truth()) every = false;
    }
    CHECK(all == every);
    // item 3: beta preserves extensional identity
    CHECK(eval_truth(m, parse_term("(lam x:e . P x) c", sig)) ==
          eval_truth(m, parse_term("P c", sig)));
    // items 4/5: = implies sub, and A = A holds
    if (eval_truth(m, parse_term("p = q", sig)))
      CHECK(eval_truth(m, parse_term("p sub q", sig)));
    CHECK(eval_truth(m, parse_term("p = p", sig)));
  }
}

TEST_CASE("beta-eta normalization preserves evaluation on sampled models") {
  Signature sig = demo_sig();
  const char* sugared[] = {
      "(lam x:e . P x) c",
      "(lam x:e . (lam y:e . P y) x) d",
      "(lam w:<> . w -> p) q",
      "(lam x:e . exists y:e . P y & P x) c",
  };
  std::vector<Term> probes;
  for (const char* s : sugared) {
    probes.push_back(desugar(parse_term(s, sig)));
    probes.push_back(beta_eta_normalize(desugar(parse_term(s, sig))));
  }
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    GenOptions opt;
    opt.seed = seed * 977 + 11;
    FiniteModel m = random_model(probes, sig, opt);
    for (const char* s : sugared) {
      Term t = desugar(parse_term(s, sig));
      CAPTURE(seed);
      CAPTURE(s);
      CHECK(eval_truth(m, t) == eval_truth(m, beta_eta_normalize(t)));
    }
  }
}

TEST_CASE("normalize_model merges injected duplicates and preserves probes") {
  Signature sig = demo_sig();
  std::vector<Term> probes{
      parse_term("p -> q", sig),
      parse_term("forall x:e . P x", sig),
      parse_term("P c", sig),
      parse_term("p = q", sig),
  };
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    GenOptions opt;
    opt.seed = seed * 13 + 5;
    FiniteModel base = random_model(probes, sig, opt);
    FiniteModel dup = inject_duplicate(base, Type::basic("e"), 0);
    CAPTURE(seed);
    // probes still evaluate identically on the duplicated model
    for (const auto& p : probes) CHECK(eval_truth(dup, p) == eval_truth(base, p));
    Token d = dup.domains.at(Type::basic("e"))[0];
    Token d2 = d + "@dup";
    CHECK(sim_related(dup, d, d2));
    CHECK(sim_related(dup, d2, d));
    FiniteModel norm = normalize_model(dup, probes);
    CHECK(is_normal_model(norm));
    CHECK(norm.domains.at(Type::basic("e")).size() <
          dup.domains.at(Type::basic("e")).size());
    for (const auto& p : probes) CHECK(eval_truth(norm, p) == eval_truth(base, p));
  }
}

TEST_CASE("already-normal models come back unchanged up to token naming") {
  FiniteModel m = henkin_two();
  std::vector<Term> probes{parse_term("p", m.sig), parse_term("p -> r", m.sig)};
  REQUIRE(is_normal_model(m));
  FiniteModel n = normalize_model(m, probes);
  CHECK(is_normal_model(n));
  CHECK(n.domains.at(Type::prop()).size() == 2);
  for (const auto& p : probes) CHECK(eval_truth(n, p) == eval_truth(m, p));
}

TEST_CASE("entails wires prove and the countermodel builder together") {
  Signature sig = prop_sig();
  Theory empty;
  empty.name = "empty";
  auto yes = entails({}, {parse_term("top", sig)}, empty, quick(), sig);
  CHECK(yes.verdict == EntailResult::Verdict::Yes);
  REQUIRE(yes.proof.has_value());
  CHECK(check_proof(*yes.proof, sig).valid);

  auto no = entails({parse_term("p <-> q", sig)}, {parse_term("p = q", sig)}, empty, quick(),
                    sig);
  CHECK(no.verdict == EntailResult::Verdict::No);
  REQUIRE(no.model.has_value());
  CHECK(refutes(*no.model, parse_sequent("p <-> q => p = q", sig)));
}

TEST_CASE("carrier escape invalidates verdicts rather than guessing") {
  FiniteModel m = henkin_two();
  // know is not interpreted by this model
  Signature sig2 = m.sig;
  sig2.declare_basic("e");
  sig2.declare("know", parse_type("<e <>>"));
  sig2.declare("c", Type::basic("e"));
  Term t = parse_term("know c p", sig2);
  CHECK_THROWS_AS(eval_truth(m, t), CarrierEscape);
}
