#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "itl/error.hpp"
#include "itl/parse.hpp"
#include "itl/proof.hpp"
#include "itl/theory.hpp"

using namespace itl;

namespace {

Signature demo_sig() {
  return parse_signature(
      "type e\n"
      "const p : <>\n"
      "const q : <>\n"
      "const P : <e>\n"
      "const Q : <e>\n"
      "const c : e\n"
      "const d : e\n"
      "const k : <<>>\n");
}

Proof axiom_on(const Sequent& s) { return Proof{s, RuleId::Axiom, {}, {}}; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("axiom closes L:p, R:p") {
  Signature sig = demo_sig();
  Proof p = axiom_on(parse_sequent("p => p", sig));
  CHECK(check_proof(p, sig).valid);
}

TEST_CASE("axiom requires a literal L/R clash") {
  Signature sig = demo_sig();
  Proof p = axiom_on(parse_sequent("p => q", sig));
  Verdict v = check_proof(p, sig);
  CHECK_FALSE(v.valid);
  CHECK(v.reason.find("Axiom") != std::string::npos);
}

TEST_CASE("bottom on the left closes") {
  Signature sig = demo_sig();
  Proof p{parse_sequent("bot => q", sig), RuleId::BottomL, {}, {}};
  CHECK(check_proof(p, sig).valid);
  Proof bad{parse_sequent("=> bot", sig), RuleId::BottomL, {}, {}};
  CHECK_FALSE(check_proof(bad, sig).valid);
}

TEST_CASE("two-node proof of => top via SubR with empty witness vector") {
  Signature sig = demo_sig();
  Sequent goal = parse_sequent("=> top", sig);
  SignedSentence pr = make_signed(Sign::R, parse_term("top", sig));
  Sequent prem = parse_sequent("bot => bot", sig);
  Proof p{goal, RuleId::SubR, {pr, {}, {}}, {Proof{prem, RuleId::BottomL, {}, {}}}};
  CHECK(check_proof(p, sig).valid);
}

TEST_CASE("SubR rejects a witness constant that occurs in the conclusion") {
  Signature sig = demo_sig();
  // => P sub Q with witness c, but c occurs in the conclusion via P c
  Sequent goal = parse_sequent("P c => P sub Q", sig);
  SignedSentence pr = make_signed(Sign::R, parse_term("P sub Q", sig));
  Sequent prem = parse_sequent("P c, P c => Q c", sig);
  Proof p{goal, RuleId::SubR, {pr, {}, {parse_term("c", sig)}}, {axiom_on(prem)}};
  Verdict v = check_proof(p, sig);
  CHECK_FALSE(v.valid);
  CHECK(v.reason.find("freshness") != std::string::npos);
}

TEST_CASE("SubR with a genuinely fresh reserved constant is accepted") {
  Signature sig = demo_sig();
  Sequent goal = parse_sequent("=> P sub P", sig);
  SignedSentence pr = make_signed(Sign::R, parse_term("P sub P", sig));
  Term c0 = fresh_constant(goal, Type::basic("e"));
  Sequent prem = goal;
  prem.insert(make_signed(Sign::L, mk_app(parse_term("P", sig), c0)));
  prem.insert(make_signed(Sign::R, mk_app(parse_term("P", sig), c0)));
  Proof p{goal, RuleId::SubR, {pr, {}, {c0}}, {axiom_on(prem)}};
  CHECK(check_proof(p, sig).valid);
}

TEST_CASE("SubL splits on an instantiation vector") {
  Signature sig = demo_sig();
  // P sub Q, P c => Q c
  Sequent goal = parse_sequent("P sub Q, P c => Q c", sig);
  SignedSentence pr = make_signed(Sign::L, parse_term("P sub Q", sig));
  Sequent left = seq_with(goal, make_signed(Sign::L, parse_term("Q c", sig)));
  Sequent right = seq_with(goal, make_signed(Sign::R, parse_term("P c", sig)));
  Proof p{goal, RuleId::SubL, {pr, {parse_term("c", sig)}, {}},
          {axiom_on(left), axiom_on(right)}};
  CHECK(check_proof(p, sig).valid);
  // wrong instantiation type
  Proof bad{goal, RuleId::SubL, {pr, {parse_term("p", sig)}, {}},
            {axiom_on(left), axiom_on(right)}};
  CHECK_FALSE(check_proof(bad, sig).valid);
}

TEST_CASE("lambda rules contract head redexes") {
  Signature sig = demo_sig();
  // (lam x. P x) c on the left contracts to P c
  Sequent goal = parse_sequent("(lam x:e . P x) c => P c", sig);
  SignedSentence pr = make_signed(Sign::L, parse_term("(lam x:e . P x) c", sig));
  Sequent prem = seq_with(seq_without(goal, pr), make_signed(Sign::L, parse_term("P c", sig)));
  Proof p{goal, RuleId::LamL, {pr, {}, {}}, {axiom_on(prem)}};
  CHECK(check_proof(p, sig).valid);
  // keep-principal premise form is also accepted
  Sequent prem2 = seq_with(goal, make_signed(Sign::L, parse_term("P c", sig)));
  Proof p2{goal, RuleId::LamL, {pr, {}, {}}, {axiom_on(prem2)}};
  CHECK(check_proof(p2, sig).valid);
  // a non-redex principal is rejected
  SignedSentence atom = make_signed(Sign::L, parse_term("P c", sig));
  Proof bad{parse_sequent("P c => P c", sig), RuleId::LamL, {atom, {}, {}},
            {axiom_on(parse_sequent("P c => P c", sig))}};
  CHECK_FALSE(check_proof(bad, sig).valid);
}

TEST_CASE("weakening admissibility: one W node on top of any valid proof") {
  Signature sig = demo_sig();
  Proof base = axiom_on(parse_sequent("p => p", sig));
  Proof w{parse_sequent("p, q => p, P c", sig), RuleId::W, {}, {base}};
  CHECK(check_proof(w, sig).valid);
  Proof bad{parse_sequent("q => q", sig), RuleId::W, {}, {base}};
  CHECK_FALSE(check_proof(bad, sig).valid);
}

TEST_CASE("kernel rejects derived rules until expanded") {
  Signature sig = demo_sig();
  Sequent goal = parse_sequent("=> top", sig);
  Proof p{goal, RuleId::TopR, {make_signed(Sign::R, parse_term("top", sig)), {}, {}}, {}};
  CHECK_FALSE(check_proof(p, sig).valid);
  Proof q = expand_derived(p);
  CHECK(check_proof(q, sig).valid);
  CHECK(q.conclusion == goal);
}

TEST_CASE("derived ImpR expands to SubR") {
  Signature sig = demo_sig();
  SUBCASE("p -> p") {
    Sequent goal = parse_sequent("=> p -> p", sig);
    Proof p{goal, RuleId::ImpR, {make_signed(Sign::R, parse_term("p -> p", sig)), {}, {}},
            {axiom_on(parse_sequent("p => p", sig))}};
    Proof q = expand_derived(p);
    CHECK(q.rule == RuleId::SubR);
    CHECK(q.conclusion == goal);
    CHECK(check_proof(q, sig).valid);
  }
  SUBCASE("q -> q under context") {
    Sequent goal = parse_sequent("p => q -> q", sig);
    Proof p{goal, RuleId::ImpR, {make_signed(Sign::R, parse_term("q -> q", sig)), {}, {}},
            {axiom_on(parse_sequent("p, q => q", sig))}};
    CHECK(check_proof(expand_derived(p), sig).valid);
  }
}

TEST_CASE("derived ImpL expands to SubL") {
  Signature sig = demo_sig();
  SUBCASE("modus ponens shape") {
    Sequent goal = parse_sequent("p -> q, p => q", sig);
    Proof p{goal, RuleId::ImpL, {make_signed(Sign::L, parse_term("p -> q", sig)), {}, {}},
            {axiom_on(parse_sequent("q, p => q", sig)),
             axiom_on(parse_sequent("p => q, p", sig))}};
    Proof q = expand_derived(p);
    CHECK(q.conclusion == goal);
    CHECK(check_proof(q, sig).valid);
  }
  SUBCASE("second instance") {
    Sequent goal = parse_sequent("q -> p, q => p", sig);
    Proof p{goal, RuleId::ImpL, {make_signed(Sign::L, parse_term("q -> p", sig)), {}, {}},
            {axiom_on(parse_sequent("p, q => p", sig)),
             axiom_on(parse_sequent("q => p, q", sig))}};
    CHECK(check_proof(expand_derived(p), sig).valid);
  }
}

TEST_CASE("derived TopR at two contexts") {
  Signature sig = demo_sig();
  for (const char* g : {"=> top", "p => top, q"}) {
    Sequent goal = parse_sequent(g, sig);
    Proof p{goal, RuleId::TopR, {make_signed(Sign::R, parse_term("top", sig)), {}, {}}, {}};
    Proof q = expand_derived(p);
    CAPTURE(g);
    CHECK(q.conclusion == goal);
    CHECK(check_proof(q, sig).valid);
  }
}

TEST_CASE("derived AllR introduces a fresh constant") {
  Signature sig = demo_sig();
  SUBCASE("forall x . P x -> P x") {
    Sequent goal = parse_sequent("=> forall x:e . P x -> P x", sig);
    Term c = fresh_constant(goal, Type::basic("e"));
    // premise: => P c -> P c, itself a derived ImpR
    Term pc_imp = mk_subset(mk_app(parse_term("P", sig), c), mk_app(parse_term("P", sig), c));
    Sequent prem_goal = make_sequent({}, {pc_imp});
    // Table-2 premises drop the principal
    Sequent ax;
    ax.insert(make_signed(Sign::L, mk_app(parse_term("P", sig), c)));
    ax.insert(make_signed(Sign::R, mk_app(parse_term("P", sig), c)));
    Proof prem{prem_goal, RuleId::ImpR, {make_signed(Sign::R, pc_imp), {}, {}},
               {axiom_on(ax)}};
    Proof p{goal,
            RuleId::AllR,
            {make_signed(Sign::R, parse_term("forall x:e . P x -> P x", sig)), {}, {c}},
            {prem}};
    Proof q = expand_derived(p);
    CHECK(q.conclusion == goal);
    CHECK(check_proof(q, sig).valid);
  }
  SUBCASE("freshness is still enforced after expansion") {
    Sequent goal = parse_sequent("P c => forall x:e . P x", sig);
    // c occurs in the conclusion, so using it as the AllR witness must fail
    Sequent prem = parse_sequent("P c => P c", sig);
    Proof p{goal,
            RuleId::AllR,
            {make_signed(Sign::R, parse_term("forall x:e . P x", sig)), {}, {parse_term("c", sig)}},
            {axiom_on(prem)}};
    Proof q = expand_derived(p);
    CHECK_FALSE(check_proof(q, sig).valid);
  }
  SUBCASE("propositional binder type") {
    Sequent goal = parse_sequent("=> forall w:<> . w -> w", sig);
    Term c = fresh_constant(goal, Type::prop());
    Term body = mk_subset(c, c);
    Sequent prem_goal = make_sequent({}, {body});
    Sequent ax;
    ax.insert(make_signed(Sign::L, c));
    ax.insert(make_signed(Sign::R, c));
    Proof prem{prem_goal, RuleId::ImpR, {make_signed(Sign::R, body), {}, {}}, {axiom_on(ax)}};
    Proof p{goal,
            RuleId::AllR,
            {make_signed(Sign::R, parse_term("forall w:<> . w -> w", sig)), {}, {c}},
            {prem}};
    CHECK(check_proof(expand_derived(p), sig).valid);
  }
}

TEST_CASE("derived AllL instantiates at a witness, golden expansion") {
  Signature sig = demo_sig();
  Sequent goal = parse_sequent("forall x:e . P x => P c", sig);
  Proof p{goal,
          RuleId::AllL,
          {make_signed(Sign::L, parse_term("forall x:e . P x", sig)), {parse_term("c", sig)}, {}},
          {axiom_on(parse_sequent("P c => P c", sig))}};
  Proof q = expand_derived(p);
  CHECK(q.conclusion == goal);
  CHECK(check_proof(q, sig).valid);

  std::string text = serialize_proof(q);
  std::string golden_path = std::string(ITL_GOLDEN_DIR) + "/alll_expansion.json";
  std::string golden = slurp(golden_path);
  if (golden.empty()) {
    std::ofstream out(golden_path);
    out << text;
    golden = text;
    MESSAGE("wrote golden file " << golden_path);
  }
  CHECK(text == golden);
  // the frozen golden re-validates through the kernel
  Proof back = parse_proof(golden, sig);
  CHECK(check_proof(back, sig).valid);
  CHECK(serialize_proof(back) == golden);

  SUBCASE("second instance at another witness") {
    Sequent goal2 = parse_sequent("forall x:e . P x => P d", sig);
    Proof p2{goal2,
             RuleId::AllL,
             {make_signed(Sign::L, parse_term("forall x:e . P x", sig)),
              {parse_term("d", sig)},
              {}},
             {axiom_on(parse_sequent("P d => P d", sig))}};
    CHECK(check_proof(expand_derived(p2), sig).valid);
  }
}

TEST_CASE("derived EqR proves reflexivity") {
  Signature sig = demo_sig();
  for (const char* g : {"=> c = c", "p => p = p, q"}) {
    Sequent goal = parse_sequent(g, sig);
    // find the equation member
    SignedSentence pr{};
    for (const auto& m : goal)
      if (m.sign == Sign::R && match_equation(m.sentence)) pr = m;
    Proof p{goal, RuleId::EqR, {pr, {}, {}}, {}};
    Proof q = expand_derived(p);
    CAPTURE(g);
    CHECK(q.conclusion == goal);
    CHECK(check_proof(q, sig).valid);
  }
}

TEST_CASE("derived EqL rewrites under a context, both orientations") {
  Signature sig = demo_sig();
  Term ctx = parse_term("lam x:e . P x", sig);
  SUBCASE("direct: c = d rewrites P c to P d") {
    Sequent goal = parse_sequent("c = d, P c => P d", sig);
    SignedSentence pr = make_signed(Sign::L, parse_term("c = d", sig));
    Sequent prem = parse_sequent("c = d, P c => P c", sig);
    Proof p{goal, RuleId::EqL, {pr, {ctx}, {}}, {axiom_on(prem)}};
    Proof q = expand_derived(p);
    CHECK(q.conclusion == goal);
    CHECK(check_proof(q, sig).valid);
  }
  SUBCASE("flipped: d = c rewrites P c to P d") {
    Sequent goal = parse_sequent("d = c, P c => P d", sig);
    SignedSentence pr = make_signed(Sign::L, parse_term("d = c", sig));
    Sequent prem = parse_sequent("d = c, P c => P c", sig);
    Proof p{goal, RuleId::EqL, {pr, {ctx}, {}}, {axiom_on(prem)}};
    Proof q = expand_derived(p);
    CHECK(q.conclusion == goal);
    CHECK(check_proof(q, sig).valid);
  }
  SUBCASE("propositional context") {
    Term kctx = parse_term("lam w:<> . k w", sig);
    Sequent goal = parse_sequent("p = q, k p => k q", sig);
    SignedSentence pr = make_signed(Sign::L, parse_term("p = q", sig));
    Sequent prem = parse_sequent("p = q, k p => k p", sig);
    Proof p{goal, RuleId::EqL, {pr, {kctx}, {}}, {axiom_on(prem)}};
    CHECK(check_proof(expand_derived(p), sig).valid);
  }
}

TEST_CASE("expansion errors on inconsistent ruleData") {
  Signature sig = demo_sig();
  Sequent goal = parse_sequent("=> p", sig);
  Proof p{goal, RuleId::TopR, {make_signed(Sign::R, parse_term("p", sig)), {}, {}}, {}};
  CHECK_THROWS_AS(expand_derived(p), ExpansionError);
  Proof noprin{goal, RuleId::EqR, {}, {}};
  CHECK_THROWS_AS(expand_derived(noprin), ExpansionError);
}

TEST_CASE("proof serialization round-trips bit-exactly") {
  Signature sig = demo_sig();
  Sequent goal = parse_sequent("forall x:e . P x => P c", sig);
  Proof p{goal,
          RuleId::AllL,
          {make_signed(Sign::L, parse_term("forall x:e . P x", sig)), {parse_term("c", sig)}, {}},
          {axiom_on(parse_sequent("P c => P c", sig))}};
  Proof expanded = expand_derived(p);
  std::string s1 = serialize_proof(expanded);
  Proof back = parse_proof(s1, sig);
  std::string s2 = serialize_proof(back);
  CHECK(s1 == s2);
  // derived nodes serialize too
  std::string d1 = serialize_proof(p);
  Proof dback = parse_proof(d1, sig);
  CHECK(serialize_proof(dback) == d1);
  CHECK(check_full(dback, sig).valid);
}

TEST_CASE("theory_instances: beta scheme and fixed axioms") {
  Signature sig = demo_sig();
  Theory lc = lambda_conv_theory();
  Term lam = parse_term("lam x:e . P x", sig);
  Term c = parse_term("c", sig);
  auto insts = theory_instances(lc, {{lam, c}});
  REQUIRE(insts.size() == 1);
  // (lam x. P x) c = P c, desugared
  Term expect = desugar(mk_eq(mk_app(lam, c), parse_term("P c", sig)));
  CHECK(insts[0] == expect);
  // empty request on a schemes-only theory gives the empty list
  CHECK(theory_instances(lc, {}).empty());
  // ill-fitting tuple raises
  CHECK_THROWS_AS(theory_instances(lc, {{c, c}}), TypeError);
  // eta
  Term etalam = parse_term("lam x:e . P x", sig);
  auto eta = theory_instances(lc, {{etalam}});
  REQUIRE(eta.size() == 1);
  CHECK(eta[0] == desugar(mk_eq(etalam, parse_term("P", sig))));
  // alpha; the (lam, var) tuple also fits beta, so two instances come back
  Term yvar = mk_var(Var{"y", Type::basic("e")});
  auto alpha = theory_instances(lc, {{lam, yvar}});
  REQUIRE(alpha.size() == 2);
  Term alpha_inst = desugar(mk_eq(lam, parse_term("lam y:e . P y", sig)));
  CHECK((alpha[0] == alpha_inst || alpha[1] == alpha_inst));
}

TEST_CASE("kernel validity is preserved under expand_derived of base proofs") {
  Signature sig = demo_sig();
  Proof base = axiom_on(parse_sequent("p => p", sig));
  Proof same = expand_derived(base);
  CHECK(check_proof(same, sig).valid);
  CHECK(same.conclusion == base.conclusion);
}
