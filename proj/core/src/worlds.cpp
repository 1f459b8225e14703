#include "itl/worlds.hpp"

#include <functional>

#include "itl/error.hpp"
#include "itl/normalize.hpp"
#include "itl/proof.hpp"
#include "itl/parse.hpp"
#include "itl/print.hpp"

namespace itl {

namespace {

const Type& prop() {
  static Type t = Type::prop();
  return t;
}
Type world_type() { return Type::complex({prop()}); }
Type omega_type() { return Type::complex({world_type()}); }

Term omega() { return mk_const("Omega", omega_type()); }

Var fresh_var(const std::string& base, const Type& ty, const std::vector<Term>& avoid) {
  std::set<std::string> names;
  for (const auto& t : avoid)
    for (const auto& v : free_vars(t)) names.insert(v.name);
  std::string name = base;
  while (names.count(name)) name += "'";
  return Var{name, ty};
}

std::optional<Term> w2_make(const std::vector<Term>& req) {
  if (req.size() != 2) return std::nullopt;
  const Term& a = req[0];
  const Term& b = req[1];
  if (a.type() != b.type() || !a.type().is_complex()) return std::nullopt;
  if (!is_closed(a) || !is_closed(b)) return std::nullopt;
  Var w = fresh_var("w", world_type(), req);
  std::vector<Var> xs;
  for (size_t i = 0; i < a.type().arity(); ++i)
    xs.push_back(Var{"x" + std::to_string(i), a.type().args()[i]});
  Term wa = mk_app(mk_var(w), mk_subset(a, b));
  Term lhs_inst = a, rhs_inst = b;
  for (const auto& x : xs) {
    lhs_inst = mk_app(lhs_inst, mk_var(x));
    rhs_inst = mk_app(rhs_inst, mk_var(x));
  }
  Term inner = mk_subset(mk_app(mk_var(w), lhs_inst), mk_app(mk_var(w), rhs_inst));
  for (size_t i = xs.size(); i-- > 0;) inner = mk_forall(xs[i], inner);
  Term body = mk_subset(mk_app(omega(), mk_var(w)), mk_iff(wa, inner));
  return mk_forall(w, body);
}

std::optional<Term> w3_make(const std::vector<Term>& req) {
  if (req.size() != 1) return std::nullopt;
  const Term& phi = req[0];
  if (!phi.type().is_prop() || !is_closed(phi)) return std::nullopt;
  Var w{"w", world_type()};
  Var w2{"w'", world_type()};
  Term both = mk_and(mk_app(omega(), mk_var(w)), mk_app(omega(), mk_var(w2)));
  Term inner = mk_app(mk_var(w2), phi);
  Term body = mk_subset(both, mk_iff(mk_app(mk_var(w), inner), inner));
  return mk_forall(w, mk_forall(w2, body));
}

}  // namespace

Signature worlds_signature() {
  return parse_signature(
      "type e\n"
      "const Omega : <<<>>>\n"
      "const w0 : <<>>\n"
      "const believe : <e <>>\n"
      "const john : e\n"
      "const p : <>\n"
      "const q : <>\n"
      "const P : <e>\n"
      "const ca : e\n"
      "const cb : e\n");
}

Theory worlds_theory(const WorldsOptions& opt) {
  Theory th;
  th.name = "worlds";
  th.extra_sig.declare("Omega", omega_type());
  th.extra_sig.declare("w0", world_type());
  Signature sig = worlds_signature().merged(th.extra_sig);
  auto t = [&sig](const char* s) { return parse_term(s, sig); };
  th.axioms.push_back(t("forall w:<<>> . Omega w -> ~(w bot)"));
  th.axioms.push_back(t("forall w:<<>> . Omega w -> forall w':<<>> . Omega w' <-> w (Omega w')"));
  if (opt.with_general_distribution) {
  // The distribution layer, universally closed in the logic itself at every
  // type the goals use; each is the W2/W3 schema with its metavariables
  // internalized as quantifiers, which higher-order quantification permits.
  th.axioms.push_back(
      t("forall a:<> . forall b:<> . forall w:<<>> . Omega w -> "
        "(w (a sub b) <-> (w a -> w b))"));
  th.axioms.push_back(
      t("forall A:<<>> . forall B:<<>> . forall w:<<>> . Omega w -> "
        "(w (A sub B) <-> forall x:<> . w (A x) -> w (B x))"));
  th.axioms.push_back(
      t("forall A:<<<>>> . forall B:<<<>>> . forall w:<<>> . Omega w -> "
        "(w (A sub B) <-> forall x:<<>> . w (A x) -> w (B x))"));
  th.axioms.push_back(
      t("forall q0:<> . forall w:<<>> . forall w':<<>> . (Omega w & Omega w') -> "
        "(w (w' q0) <-> w' q0)"));
  }
  if (opt.with_actual_world) {
    th.axioms.push_back(t("Omega w0"));
    th.axioms.push_back(t("forall p0:<> . w0 p0 <-> p0"));
  }
  if (opt.with_serial_belief) {
    // the stipulation read at the actual world, with explicit worldhood of
    // the witness: some world agrees with john's beliefs and makes them true
    th.axioms.push_back(
        t("exists v:<<>> . Omega v & (forall p0:<> . (believe john p0 <-> v (believe john p0))"
          " & (believe john p0 -> v p0))"));
  }
  th.schemes.push_back({"W2", SchemeKind::W2, w2_make});
  th.schemes.push_back({"W3", SchemeKind::W3, w3_make});
  return th;
}

std::vector<Term> world_axiom_instances(const std::vector<std::vector<Term>>& requests,
                                        const WorldsOptions& opt) {
  return theory_instances(worlds_theory(opt), requests);
}

Term box_term(const Term& accessibility, const Term& phi) {
  if (accessibility.type() != omega_type())
    throw TypeError("box accessibility must have type " + print_type(omega_type()));
  if (!phi.type().is_prop()) throw TypeError("box body must be a proposition");
  Var w = fresh_var("w", world_type(), {accessibility, phi});
  Term guard = mk_and(mk_app(omega(), mk_var(w)), mk_app(accessibility, mk_var(w)));
  Term raw = mk_forall(w, mk_subset(guard, mk_app(mk_var(w), phi)));
  return beta_eta_normalize(desugar(raw));
}

Term diamond_term(const Term& accessibility, const Term& phi) {
  return beta_eta_normalize(
      desugar(mk_not(box_term(accessibility, desugar(mk_not(phi))))));
}

Term belief_accessibility(const Term& agent) {
  if (agent.type() != Type::basic("e")) throw TypeError("agent must have type e");
  Signature sig = worlds_signature();
  Var w{"w", world_type()};
  Var p0{"p0", prop()};
  Term bel = mk_app(mk_app(mk_const("believe", parse_type("<e <>>")), agent), mk_var(p0));
  Term agree = mk_iff(bel, mk_app(mk_var(w), bel));
  Term truth = mk_subset(bel, mk_app(mk_var(w), mk_var(p0)));
  return mk_lam(w, mk_forall(p0, mk_and(agree, truth)));
}

// ---------------------------------------------------------------------------
// Demo model
// ---------------------------------------------------------------------------

FiniteModel worlds_demo_model() {
  Signature sig = worlds_signature();
  sig.declare("w1", world_type());
  sig.declare("w2", world_type());
  sig.declare("wj", world_type());

  FiniteModel m;
  m.sig = sig;
  auto key = [&sig](const std::string& text) {
    return print_term(desugar(parse_term(text, sig)));
  };

  m.domains[Type::basic("e")] = {"e:a", "e:b"};
  m.domains[prop()] = {"s:Ow1", "s:Ow2", "s:Owj", "s:Pa",  "s:Pb", "s:all", "s:bot",
                       "s:ex",  "s:nnp", "s:nnq", "s:np",  "s:nq", "s:p",   "s:pq",
                       "s:q",   "s:top"};
  m.domains[parse_type("<e>")] = {"f:P"};
  m.domains[world_type()] = {"w:1", "w:2", "w:junk"};
  m.domains[omega_type()] = {"O:omega"};

  m.const_intension = {{"Omega", "O:omega"}, {"P", "f:P"},   {"ca", "e:a"}, {"cb", "e:b"},
                       {"p", "s:p"},         {"q", "s:q"},   {"w1", "w:1"}, {"w2", "w:2"},
                       {"wj", "w:junk"}};

  m.term_intension[key("bot")] = "s:bot";
  m.term_intension[key("top")] = "s:top";
  m.term_intension[key("~p")] = "s:np";
  m.term_intension[key("~q")] = "s:nq";
  m.term_intension[key("~(~p)")] = "s:nnp";
  m.term_intension[key("~(~q)")] = "s:nnq";
  m.term_intension[key("p & q")] = "s:pq";
  m.term_intension[key("forall x:e . P x")] = "s:all";
  m.term_intension[key("exists x:e . P x")] = "s:ex";
  m.term_intension[key("P ca")] = "s:Pa";
  m.term_intension[key("P cb")] = "s:Pb";
  m.term_intension[key("Omega w1")] = "s:Ow1";
  m.term_intension[key("Omega w2")] = "s:Ow2";
  m.term_intension[key("Omega wj")] = "s:Owj";

  auto truth = [&m](const Token& tok, bool v) { m.extensions[tok] = Extension::boolean(v); };
  // actual truth values: p true, q false, P holds of ca only
  truth("s:p", true);
  truth("s:q", false);
  truth("s:np", false);
  truth("s:nq", true);
  truth("s:nnp", true);
  truth("s:nnq", false);
  truth("s:pq", false);
  truth("s:all", false);
  truth("s:ex", true);
  truth("s:Pa", true);
  truth("s:Pb", false);
  truth("s:bot", false);
  truth("s:top", true);
  truth("s:Ow1", true);
  truth("s:Ow2", true);
  truth("s:Owj", false);

  m.extensions["f:P"] = Extension{{{"e:a"}}};
  m.extensions["O:omega"] = Extension{{{"w:1"}, {"w:2"}}};
  // world 1: p, q both hold; world 2: q holds, p fails
  m.extensions["w:1"] = Extension{{{"s:p"}, {"s:q"}, {"s:pq"}, {"s:Pa"}, {"s:Pb"}, {"s:all"},
                                   {"s:ex"}, {"s:top"}, {"s:Ow1"}, {"s:Ow2"}, {"s:nnp"},
                                   {"s:nnq"}}};
  m.extensions["w:2"] = Extension{{{"s:q"}, {"s:np"}, {"s:Pa"}, {"s:ex"}, {"s:top"},
                                   {"s:Ow1"}, {"s:Ow2"}, {"s:nnq"}}};
  m.extensions["w:junk"] = Extension{};
  m.reindex();
  return m;
}

// ---------------------------------------------------------------------------
// Hand-built proof scripts for the iterated-modality goals
// ---------------------------------------------------------------------------

namespace script {

using Cont = std::function<Proof(const Sequent&)>;

Proof ax(const Sequent& s) { return Proof{s, RuleId::Axiom, {}, {}}; }
Proof botl(const Sequent& s) { return Proof{s, RuleId::BottomL, {}, {}}; }

Sequent add(const Sequent& s, Sign sign, const Term& t) {
  return seq_with(s, make_signed(sign, t));
}

// SubR on R:(A sub B); keep-form premise
Proof subr(const Sequent& s, const Term& sub, std::vector<Term> fresh, const Cont& k) {
  SignedSentence pr = make_signed(Sign::R, sub);
  Term la = apply_all(pr.sentence.lhs(), fresh);
  Term rb = apply_all(pr.sentence.rhs(), fresh);
  Sequent next = add(add(s, Sign::L, la), Sign::R, rb);
  Proof n;
  n.conclusion = s;
  n.rule = RuleId::SubR;
  n.data = RuleData{pr, {}, std::move(fresh)};
  n.premises.push_back(k(next));
  return n;
}

Proof subl(const Sequent& s, const Term& sub, std::vector<Term> inst, const Cont& kl,
           const Cont& kr) {
  SignedSentence pr = make_signed(Sign::L, sub);
  Term lb = apply_all(pr.sentence.rhs(), inst);
  Term ra = apply_all(pr.sentence.lhs(), inst);
  Proof n;
  n.conclusion = s;
  n.rule = RuleId::SubL;
  n.data = RuleData{pr, std::move(inst), {}};
  n.premises.push_back(kl(add(s, Sign::L, lb)));
  n.premises.push_back(kr(add(s, Sign::R, ra)));
  return n;
}

Proof laml(const Sequent& s, const Term& redex, const Cont& k) {
  SignedSentence pr = make_signed(Sign::L, redex);
  Term c = contract_redex(*decompose_redex(pr.sentence));
  Proof n;
  n.conclusion = s;
  n.rule = RuleId::LamL;
  n.data = RuleData{pr, {}, {}};
  n.premises.push_back(k(add(s, Sign::L, c)));
  return n;
}

Proof lamr(const Sequent& s, const Term& redex, const Cont& k) {
  SignedSentence pr = make_signed(Sign::R, redex);
  Term c = contract_redex(*decompose_redex(pr.sentence));
  Proof n;
  n.conclusion = s;
  n.rule = RuleId::LamR;
  n.data = RuleData{pr, {}, {}};
  n.premises.push_back(k(add(s, Sign::R, c)));
  return n;
}

Term core_topd() { return mk_subset(mk_bottom(), mk_bottom()); }

// closes a sequent containing R:top
Proof close_top(const Sequent& s) {
  return subr(s, core_topd(), {}, [](const Sequent& s2) { return botl(s2); });
}

// L:(forall x . phi) instantiated at a closed witness; continues with
// L:phi{x:=witness} present
Proof all_l(const Sequent& s, const Term& forall_sentence, const Term& witness,
            const Cont& k) {
  Term d = desugar(forall_sentence);
  return subl(s, d, {witness},
              [&](const Sequent& s2) {
                Term redex = mk_app(d.rhs(), witness);
                return laml(s2, redex, k);
              },
              [&](const Sequent& s2) {
                Term redex = mk_app(d.lhs(), witness);
                return lamr(s2, redex, [](const Sequent& s3) { return close_top(s3); });
              });
}

// L:(A -> B) where R:A closes by clash; continues with L:B present
Proof imp_use(const Sequent& s, const Term& imp_sentence, const Cont& k) {
  return subl(s, desugar(imp_sentence), {}, k,
              [](const Sequent& s2) { return ax(s2); });
}

// L:(A -> B) with explicit continuations for both premises
Proof imp_use2(const Sequent& s, const Term& imp_sentence, const Cont& kb, const Cont& kra) {
  return subl(s, desugar(imp_sentence), {}, kb, kra);
}

// R:(A sub B) with n = 0: continues with L:A, R:B present
Proof intro(const Sequent& s, const Term& subset_sentence, const Cont& k) {
  return subr(s, desugar(subset_sentence), {}, k);
}

// from L:(X & Y) continue with both conjuncts present
Proof and_use(const Sequent& s, const Term& x, const Term& y, const Cont& k) {
  Term dx = desugar(x), dy = desugar(y);
  Term inner = mk_subset(dx, mk_subset(dy, mk_bottom()));
  Term both = mk_subset(inner, mk_bottom());  // (X & Y) desugared
  return imp_use2(
      s, both, [](const Sequent& s2) { return botl(s2); },
      [&](const Sequent& s2) {
        // R:(X -> ~Y)
        return intro(s2, inner, [&](const Sequent& s3) {
          // L:X, R:(Y -> bot)
          return intro(s3, mk_subset(dy, mk_bottom()), k);  // adds L:Y, R:bot
        });
      });
}

// prove R:(X & Y) via the two subgoals
Proof and_prove(const Sequent& s, const Term& x, const Term& y, const Cont& kx,
                const Cont& ky) {
  Term dx = desugar(x), dy = desugar(y);
  Term inner = mk_subset(dx, mk_subset(dy, mk_bottom()));
  return intro(s, mk_subset(inner, mk_bottom()), [&](const Sequent& s2) {
    // L:(X -> ~Y), R:bot
    return imp_use2(
        s2, inner,
        [&](const Sequent& s3) {
          // L:(Y -> bot)
          return imp_use2(
              s3, mk_subset(dy, mk_bottom()),
              [](const Sequent& s4) { return botl(s4); },
              [&](const Sequent& s4) { return ky(s4); });  // R:Y goal
        },
        [&](const Sequent& s3) { return kx(s3); });  // R:X goal
  });
}

// from L:(X <-> Y): continue with L:(X -> Y) and L:(Y -> X) present
Proof iff_use(const Sequent& s, const Term& x, const Term& y, const Cont& k) {
  Term fwd = mk_subset(desugar(x), desugar(y));
  Term bwd = mk_subset(desugar(y), desugar(x));
  return and_use(s, fwd, bwd, k);
}

// derived EqL rewrite; the premise continuation sees the goal with the other
// side substituted
Proof eql(const Sequent& s, const Term& equation_sentence, const Term& ctx, const Cont& k) {
  SignedSentence pr = make_signed(Sign::L, equation_sentence);
  auto eq = match_equation(pr.sentence);
  if (!eq) throw ExpansionError("script eql: not an equation");
  Term t1 = subst_one(ctx.body(), ctx.var(), eq->first);
  Term t2 = subst_one(ctx.body(), ctx.var(), eq->second);
  SignedSentence goal1 = make_signed(Sign::R, t1);
  SignedSentence goal2 = make_signed(Sign::R, t2);
  Sequent next;
  if (seq_contains(s, goal2))
    next = seq_with(seq_without(s, goal2), goal1);
  else if (seq_contains(s, goal1))
    next = seq_with(seq_without(s, goal1), goal2);
  else
    throw ExpansionError("script eql: no rewritable goal in the sequent");
  Proof n;
  n.conclusion = s;
  n.rule = RuleId::EqL;
  n.data = RuleData{pr, {ctx}, {}};
  n.premises.push_back(k(next));
  return n;
}

Term inst_forall(const Term& forall_sentence, const Term& witness) {
  Term d = desugar(forall_sentence);
  return subst_one(d.rhs().body(), d.rhs().var(), witness);
}

// Shared shapes for the iterated-modality scripts, all read off the reduced
// box terms so every in-proof member matches structurally.
struct ModalShapes {
  Signature sig;
  Theory theory;
  Term p, big_r, boxp, lt, lb;
  Var wv;
  Term u, v, s0;
  Term g0, g1, g2, w3g, w1, w4;          // distribution and worldhood axioms
  Term et, eb, ea, eg;                    // beta equations, universally closed
  Term la, lg_open;                       // AGR components, lg_open has v0 free
  Var v0;

  Term om(const Term& x) const { return mk_app(mk_const("Omega", Type::complex({Type::complex({Type::prop()})})), x); }
  Term bodyd(const Term& x) const { return subst_one(lb.body(), wv, x); }
  Term grdd(const Term& x) const { return bodyd(x).lhs(); }
  Term innerd(const Term& x) const { return grdd(x).lhs(); }      // Om x sub (AGR x sub bot)
  Term agrd(const Term& x) const { return innerd(x).rhs().lhs(); }
  Term lg(const Term& x) const { return agrd(x).rhs(); }
  Term abd(const Term& x, const Term& y) const {
    return subst_one(lg(x).body(), lg(x).var(), y);
  }
};

ModalShapes modal_shapes() {
  ModalShapes m;
  WorldsOptions opt;
  opt.with_general_distribution = true;
  m.theory = worlds_theory(opt);
  m.sig = worlds_signature().merged(m.theory.extra_sig);
  m.sig.declare("u", Type::complex({Type::prop()}));
  m.sig.declare("v", Type::complex({Type::prop()}));
  m.sig.declare("t0", Type::complex({Type::prop()}));
  m.sig.declare("s0", Type::prop());
  m.p = parse_term("p", m.sig);
  m.big_r = belief_accessibility(parse_term("john", m.sig));
  m.boxp = box_term(m.big_r, m.p);
  m.lt = m.boxp.lhs();
  m.lb = m.boxp.rhs();
  m.wv = m.lb.var();
  m.u = parse_term("u", m.sig);
  m.v = parse_term("v", m.sig);
  m.s0 = parse_term("s0", m.sig);
  // distribution axioms in theory order: W1, W4, G0, G1, G2, W3g
  m.w1 = desugar(m.theory.axioms[0]);
  m.w4 = desugar(m.theory.axioms[1]);
  m.g0 = desugar(m.theory.axioms[2]);
  m.g1 = desugar(m.theory.axioms[3]);
  m.g2 = desugar(m.theory.axioms[4]);
  m.w3g = desugar(m.theory.axioms[5]);
  // beta equations over fresh variables, universally closed
  Theory lc = lambda_conv_theory();
  auto beta_at = [&lc](const Term& lam, const Term& arg) {
    for (const auto& sch : lc.schemes)
      if (sch.id == "beta") return desugar(*sch.make({lam, arg}));
    throw Error("beta scheme missing");
  };
  Var xw{"x9", Type::complex({Type::prop()})};
  Var xp{"x8", Type::prop()};
  m.v0 = Var{"v9", Type::complex({Type::prop()})};
  m.et = beta_at(m.lt, mk_var(xw));
  m.eb = beta_at(m.lb, mk_var(xw));
  m.la = m.agrd(m.u).lhs();  // lam p0 . top', independent of the world
  m.lg_open = m.lg(mk_var(m.v0));
  m.ea = beta_at(m.la, mk_var(xp));
  m.eg = beta_at(m.lg_open, mk_var(xp));
  return m;
}

// --- reusable sub-scripts -------------------------------------------------

Term bel_term(const ModalShapes& m, const Term& x) {
  Term believe = parse_term("believe", m.sig);
  Term john = parse_term("john", m.sig);
  return mk_app(mk_app(believe, john), x);
}

// Both implication directions of a distribution axiom instance, extracted
// structurally so they match the in-proof members exactly.
struct DistIff {
  Term fwd, bwd;
};
DistIff dist_shape(const Term& gax, const Term& x, const Term& y, const Term& w) {
  Term i3 = inst_forall(inst_forall(inst_forall(gax, x), y), w);
  Term iff = i3.rhs();  // ((fwd sub (bwd sub bot)) sub bot)
  return {iff.lhs().lhs(), iff.lhs().rhs().lhs()};
}

// G0/G1/G2 at [X, Y, W]; discharges Omega W by clash and hands both
// implication directions of the distribution iff to k as L-members.
Proof dist(const ModalShapes& m, const Term& gax, const Sequent& s, const Term& x,
           const Term& y, const Term& w, const Cont& k) {
  (void)m;
  Term i1 = inst_forall(gax, x);
  Term i2 = inst_forall(i1, y);
  Term i3 = inst_forall(i2, w);  // Omega W -> iff
  DistIff ds = dist_shape(gax, x, y, w);
  return all_l(s, gax, x, [&](const Sequent& s1) {
    return all_l(s1, i1, y, [&](const Sequent& s2) {
      return all_l(s2, i2, w, [&](const Sequent& s3) {
        return imp_use(s3, i3, [&](const Sequent& s4) {
          return and_use(s4, ds.fwd, ds.bwd, k);
        });
      });
    });
  });
}

// closes a sequent containing L:(W bot), using W1 and L:(Omega W)
Proof w1_contra(const ModalShapes& m, const Sequent& s, const Term& w) {
  Term wbot = mk_app(w, mk_bottom());
  Term i1 = inst_forall(m.w1, w);  // Omega w -> (w bot -> bot)
  return all_l(s, m.w1, w, [&](const Sequent& s1) {
    return imp_use(s1, i1, [&](const Sequent& s2) {
      // L:((w bot) sub bot)
      return imp_use2(
          s2, mk_subset(wbot, mk_bottom()),
          [](const Sequent& s3) { return botl(s3); },
          [](const Sequent& s3) { return ax(s3); });  // R:(w bot) vs L:(w bot)
    });
  });
}

// W3 at [Q, W, W2]; needs L:(Omega W) and L:(Omega W2); hands both
// directions of  W (W2 Q) <-> W2 Q  to k.
Proof w3_at(const ModalShapes& m, const Sequent& s, const Term& q, const Term& w,
            const Term& w2, const Cont& k) {
  Term i1 = inst_forall(m.w3g, q);
  Term i2 = inst_forall(i1, w);
  Term i3 = inst_forall(i2, w2);  // (Om w & Om w2) -> iff
  return all_l(s, m.w3g, q, [&](const Sequent& s1) {
    return all_l(s1, i1, w, [&](const Sequent& s2) {
      return all_l(s2, i2, w2, [&](const Sequent& s3) {
        Term guard = i3.lhs();
        return imp_use2(
            s3, i3,
            [&](const Sequent& s4) {
              Term inner = mk_app(w2, q);
              return iff_use(s4, mk_app(w, inner), inner, k);
            },
            [&](const Sequent& s4) {
              // R:(Om w & Om w2): both worldhoods are L-members
              return and_prove(s4, m.om(w), m.om(w2),
                               [](const Sequent& s5) { return ax(s5); },
                               [](const Sequent& s5) { return ax(s5); });
            });
      });
    });
  });
}

// from L:(W (Omega W2)) and L:(Omega W): adds L:(Omega W2) via W4
Proof w4_out(const ModalShapes& m, const Sequent& s, const Term& w, const Term& w2,
             const Cont& k) {
  Term i1 = inst_forall(m.w4, w);  // Om w -> forall w' (Om w' <-> w (Om w'))
  return all_l(s, m.w4, w, [&](const Sequent& s1) {
    return imp_use(s1, i1, [&](const Sequent& s2) {
      Term i2 = inst_forall(i1.rhs(), w2);  // (Om w2 <-> w (Om w2)) desugared
      return all_l(s2, i1.rhs(), w2, [&](const Sequent& s3) {
        return iff_use(s3, m.om(w2), mk_app(w, m.om(w2)), [&](const Sequent& s4) {
          // use the backward direction: w (Om w2) -> Om w2
          return imp_use(s4, mk_subset(mk_app(w, m.om(w2)), m.om(w2)), k);
        });
      });
    });
  });
}

// from L:(H E1) and the universally closed equation forall..(E1 = E2):
// adds L:(H E2). `eq_member` is the instantiated equation L-member.
Proof eq_fwd(const Sequent& s, const Term& eq_member, const Term& h, const Cont& k) {
  Term inst = inst_forall(eq_member, h);  // (H E1) sub (H E2)
  return all_l(s, eq_member, h, [&](const Sequent& s1) {
    return imp_use(s1, inst, k);
  });
}

// derives L:(W top') from nothing (distribution at bot/bot)
Proof u_top(const ModalShapes& m, const Sequent& s, const Term& w, const Cont& k) {
  DistIff ds = dist_shape(m.g0, mk_bottom(), mk_bottom(), w);
  return dist(m, m.g0, s, mk_bottom(), mk_bottom(), w, [&](const Sequent& s1) {
    Term wbot = mk_app(w, mk_bottom());
    return imp_use2(
        s1, ds.bwd,
        [&](const Sequent& s2) { return k(s2); },  // L:(w top')
        [&](const Sequent& s2) {
          // R:(w bot -> w bot)
          return intro(s2, mk_subset(wbot, wbot),
                       [](const Sequent& s3) { return ax(s3); });
        });
  });
}

// from L:(W (X & Y)-term): adds L:(W X) and L:(W Y); leaves a stray R:(W bot)
// goal member behind, which later clashes never mind.
Proof u_and(const ModalShapes& m, const Sequent& s, const Term& w, const Term& x,
            const Term& y, const Cont& k) {
  Term inner = mk_subset(x, mk_subset(y, mk_bottom()));
  Term conj = mk_subset(inner, mk_bottom());
  (void)conj;
  DistIff top_ds = dist_shape(m.g0, inner, mk_bottom(), w);
  return dist(m, m.g0, s, inner, mk_bottom(), w, [&](const Sequent& s1) {
    return imp_use(s1, top_ds.fwd, [&](const Sequent& s2) {
      // L:(w inner -> w bot)
      return imp_use2(
          s2, mk_subset(mk_app(w, inner), mk_app(w, mk_bottom())),
          [&](const Sequent& s3) { return w1_contra(m, s3, w); },  // L:(w bot)
          [&](const Sequent& s3) {
            // R:(w inner)
            DistIff in_ds = dist_shape(m.g0, x, mk_subset(y, mk_bottom()), w);
            return dist(m, m.g0, s3, x, mk_subset(y, mk_bottom()), w,
                        [&](const Sequent& s4) {
              return imp_use2(
                  s4, in_ds.bwd,
                  [](const Sequent& s5) { return ax(s5); },  // L:(w inner) clash
                  [&](const Sequent& s5) {
                    // R:(w x -> w (y -> bot))
                    return intro(
                        s5, mk_subset(mk_app(w, x), mk_app(w, mk_subset(y, mk_bottom()))),
                        [&](const Sequent& s6) {
                          // L:(w x); R:(w (y -> bot))
                          DistIff ny_ds = dist_shape(m.g0, y, mk_bottom(), w);
                          return dist(m, m.g0, s6, y, mk_bottom(), w,
                                      [&](const Sequent& s7) {
                            return imp_use2(
                                s7, ny_ds.bwd,
                                [](const Sequent& s8) { return ax(s8); },
                                [&](const Sequent& s8) {
                                  // R:(w y -> w bot)
                                  return intro(s8,
                                               mk_subset(mk_app(w, y),
                                                         mk_app(w, mk_bottom())),
                                               k);  // adds L:(w y), R:(w bot)
                                });
                          });
                        });
                  });
            });
          });
    });
  });
}

// --- the 4 axiom: [R]p -> [R][R]p ------------------------------------------
//
// u is the outer introduced world, v the inner one. From Omega u, AGR(u) and
// the u-internal facts Omega v, AGR(v)-at-u, every belief atom transfers
// between u, v and the actual world, which reproves GRD(v) outright and lets
// the premise box discharge v p.

// common prelude per AGR-direction: from L:(bel s0) or L:(v bel s0) etc. the
// callers below first secure L:(u (bel s0)) / L:(u agr-pieces).
struct Script4 {
  const ModalShapes& m;
  Term u, v, s0, p;
  Term bels0;

  explicit Script4(const ModalShapes& mm)
      : m(mm), u(mm.u), v(mm.v), s0(mm.s0), p(mm.p), bels0(bel_term(mm, mm.s0)) {}

  // pulls L:(u (bel s0)) out of actual L:(bel s0) via AGR(u) at s0
  Proof u_bel_from_actual(const Sequent& s, const Cont& k) {
    Term agru = m.agrd(u);
    Term inst = mk_app(agru.rhs(), s0);  // (lg(u) s0) redex
    return all_l(s, agru, s0, [&](const Sequent& s1) {
      // L: abd(u, s0)
      Term ab = m.abd(u, s0);
      Term c1 = ab.lhs().lhs();
      Term c2 = ab.lhs().rhs().lhs();
      return and_use(s1, c1, c2, [&](const Sequent& s2) {
        // c1 is the iff (bel s0 <-> u (bel s0)), desugared as a conjunction
        Term fwd = c1.lhs().lhs();
        Term bwd = c1.lhs().rhs().lhs();
        return and_use(s2, fwd, bwd, [&](const Sequent& s3) {
          return imp_use(s3, fwd, k);  // adds L:(u (bel s0))
        });
      });
    });
  }

  // from L:(u agrd(v)): L:(u c1dv), L:(u c2dv) via G1 distribution at s0,
  // the EG equation and u-internal conjunction splitting
  Proof u_agr_pieces(const Sequent& s, const Cont& k) {
    Term la = m.la;
    Term lgv = m.lg(v);
    DistIff ds = dist_shape(m.g1, la, lgv, u);
    return dist(m, m.g1, s, la, lgv, u, [&](const Sequent& s1) {
      return imp_use(s1, ds.fwd, [&](const Sequent& s2) {
        // L: forall x (u (la x) -> u (lgv x))
        Term member = ds.fwd.rhs();           // the quantified right-hand side
        Term inst = inst_forall(member, s0);  // u (la s0) -> u (lgv s0)
        return all_l(s2, member, s0, [&](const Sequent& s3) {
          return imp_use2(
              s3, inst,
              [&](const Sequent& s4) {
                // L:(u (lgv s0)): rewrite through EG to L:(u abd(v,s0))
                Term eg1 = inst_forall(m.eg, v);
                return all_l(s4, m.eg, v, [&](const Sequent& s5) {
                  return all_l(s5, eg1, s0, [&](const Sequent& s6) {
                    Term eqm = inst_forall(eg1, s0);  // (lgv s0) = abd(v,s0)
                    return eq_fwd(s6, eqm, u, [&](const Sequent& s7) {
                      // L:(u abd(v,s0))
                      Term ab = m.abd(v, s0);
                      Term c1 = ab.lhs().lhs();
                      Term c2 = ab.lhs().rhs().lhs();
                      return u_and(m, s7, u, c1, c2, k);
                    });
                  });
                });
              },
              [&](const Sequent& s4) {
                // R:(u (la s0)): u thinks top'; equation EA rewrites the goal
                return u_top(m, s4, u, [&](const Sequent& s5) {
                  Term eqm = inst_forall(m.ea, s0);  // (la s0) = top'
                  return all_l(s5, m.ea, s0, [&](const Sequent& s6) {
                    Var y{"y", Type::prop()};
                    Term ctx = mk_lam(y, mk_app(u, mk_var(y)));
                    return eql(s6, eqm, ctx,
                               [](const Sequent& s7) { return ax(s7); });
                  });
                });
              });
        });
      });
    });
  }

  // direction bel s0 -> v (bel s0), goal R:(v (bel s0)) with L:(bel s0)
  Proof dir_b(const Sequent& s) {
    return u_bel_from_actual(s, [&](const Sequent& s1) {
      return u_agr_pieces(s1, [&](const Sequent& s2) {
        Term ab = m.abd(v, s0);
        Term c1 = ab.lhs().lhs();           // (bel s0 <-> v bel s0) desugared
        Term f = c1.lhs().lhs();            // bel s0 sub v(bel s0)
        Term b = c1.lhs().rhs().lhs();      // v(bel s0) sub bel s0
        (void)b;
        // split u(c1) as a conjunction inside u
        return [&]() {
          const Sequent& s3 = s2;
          return u_and(m, s3, u, f, b, [&](const Sequent& s4) {
            // L:(u f): distribute to u(bel s0) -> u(v bel s0)
            DistIff fds = dist_shape(m.g0, bels0, mk_app(v, bels0), u);
            return dist(m, m.g0, s4, bels0, mk_app(v, bels0), u, [&](const Sequent& s5) {
              return imp_use(s5, fds.fwd,
                             [&](const Sequent& s6) {
                return imp_use2(
                    s6,
                    mk_subset(mk_app(u, bels0), mk_app(u, mk_app(v, bels0))),
                    [&](const Sequent& s7) {
                      // L:(u (v bel s0)): W3 brings it down to v (bel s0)
                      return w3_at(m, s7, bels0, u, v, [&](const Sequent& s8) {
                        return imp_use(
                            s8, mk_subset(mk_app(u, mk_app(v, bels0)), mk_app(v, bels0)),
                            [](const Sequent& s9) { return ax(s9); });
                      });
                    },
                    [](const Sequent& s7) { return ax(s7); });  // R:(u bel s0)
              });
            });
          });
        }();
      });
    });
  }

  // direction v (bel s0) -> bel s0, goal R:(bel s0) with L:(v (bel s0))
  Proof dir_a(const Sequent& s) {
    return u_agr_pieces(s, [&](const Sequent& s1) {
      // W3 lifts v (bel s0) into u
      return w3_at(m, s1, bels0, u, v, [&](const Sequent& s2) {
        return imp_use(s2, mk_subset(mk_app(v, bels0), mk_app(u, mk_app(v, bels0))),
                       [&](const Sequent& s3) {
          // L:(u (v bel s0)); use u-internal backward implication from c1
          Term ab = m.abd(v, s0);
          Term c1 = ab.lhs().lhs();
          Term f = c1.lhs().lhs();
          Term b = c1.lhs().rhs().lhs();
          return u_and(m, s3, u, f, b, [&](const Sequent& s4) {
            DistIff bds = dist_shape(m.g0, mk_app(v, bels0), bels0, u);
            return dist(m, m.g0, s4, mk_app(v, bels0), bels0, u, [&](const Sequent& s5) {
              return imp_use(s5, bds.fwd,
                             [&](const Sequent& s6) {
                return imp_use2(
                    s6, mk_subset(mk_app(u, mk_app(v, bels0)), mk_app(u, bels0)),
                    [&](const Sequent& s7) {
                      // L:(u bel s0): AGR(u) backward direction grounds it
                      Term agru = m.agrd(u);
                      return all_l(s7, agru, s0, [&](const Sequent& s8) {
                        Term abu = m.abd(u, s0);
                        Term c1u = abu.lhs().lhs();
                        Term c2u = abu.lhs().rhs().lhs();
                        return and_use(s8, c1u, c2u, [&](const Sequent& s9) {
                          Term fu = c1u.lhs().lhs();
                          Term bu = c1u.lhs().rhs().lhs();
                          return and_use(s9, fu, bu, [&](const Sequent& s10) {
                            return imp_use(s10, bu,
                                           [](const Sequent& s11) { return ax(s11); });
                          });
                        });
                      });
                    },
                    [](const Sequent& s7) { return ax(s7); });
              });
            });
          });
        });
      });
    });
  }

  // second conjunct: bel s0 -> v s0, goal R:(v s0) with L:(bel s0)
  Proof dir_c2(const Sequent& s) {
    return u_bel_from_actual(s, [&](const Sequent& s1) {
      return u_agr_pieces(s1, [&](const Sequent& s2) {
        Term ab = m.abd(v, s0);
        Term c2 = ab.lhs().rhs().lhs();  // bel s0 sub (v s0)
        Term vs0 = mk_app(v, s0);
        DistIff cds = dist_shape(m.g0, bels0, vs0, u);
        return dist(m, m.g0, s2, bels0, vs0, u, [&](const Sequent& s3) {
          return imp_use(s3, cds.fwd, [&](const Sequent& s4) {
            (void)c2;
            return imp_use2(
                s4, mk_subset(mk_app(u, bels0), mk_app(u, vs0)),
                [&](const Sequent& s5) {
                  // L:(u (v s0)): W3 at the proposition constant s0
                  return w3_at(m, s5, s0, u, v, [&](const Sequent& s6) {
                    return imp_use(s6, mk_subset(mk_app(u, vs0), vs0),
                                   [](const Sequent& s7) { return ax(s7); });
                  });
                },
                [](const Sequent& s5) { return ax(s5); });
          });
        });
      });
    });
  }

  // prove R:(agrd(v)) outright
  Proof prove_agr_v(const Sequent& s) {
    Term agrv = m.agrd(v);
    return subr(s, agrv, {s0}, [&](const Sequent& s1) {
      return laml(s1, mk_app(agrv.lhs(), s0), [&](const Sequent& s2) {
        return lamr(s2, mk_app(agrv.rhs(), s0), [&](const Sequent& s3) {
          // R: abd(v, s0)
          Term ab = m.abd(v, s0);
          Term c1 = ab.lhs().lhs();
          Term c2 = ab.lhs().rhs().lhs();
          return and_prove(
              s3, c1, c2,
              [&](const Sequent& s4) {
                // R:c1 = the iff, itself a conjunction of two implications
                Term f = c1.lhs().lhs();
                Term b = c1.lhs().rhs().lhs();
                return and_prove(
                    s4, f, b,
                    [&](const Sequent& s5) {
                      return intro(s5, f, [&](const Sequent& s6) { return dir_b(s6); });
                    },
                    [&](const Sequent& s5) {
                      return intro(s5, b, [&](const Sequent& s6) { return dir_a(s6); });
                    });
              },
              [&](const Sequent& s4) {
                Term c2t = c2;
                return intro(s4, c2t, [&](const Sequent& s5) { return dir_c2(s5); });
              });
        });
      });
    });
  }

  Proof run() {
    Term outer = box_term(m.big_r, m.boxp);
    Term goal = mk_subset(m.boxp, outer);
    std::vector<Term> axioms = {m.w1, m.w4, m.g0, m.g1, m.g2,
                                m.w3g, m.et, m.eb, m.ea, m.eg};
    Sequent root = make_sequent(axioms, {goal});

    return intro(root, goal, [&](const Sequent& s1) {
      // L:boxp, R:outer
      return subr(s1, outer, {u}, [&](const Sequent& s2) {
        return laml(s2, mk_app(outer.lhs(), u), [&](const Sequent& s3) {
          return lamr(s3, mk_app(outer.rhs(), u), [&](const Sequent& s4) {
            Term outer_body_u = subst_one(outer.rhs().body(), outer.rhs().var(), u);
            return intro(s4, outer_body_u, [&](const Sequent& s5) {
              // L:grd(u), R:(u boxp)
              return and_use(s5, m.om(u), m.agrd(u), [&](const Sequent& s6) {
                // distribute the target box through u
                DistIff g2ds = dist_shape(m.g2, m.lt, m.lb, u);
                return dist(m, m.g2, s6, m.lt, m.lb, u, [&](const Sequent& s7) {
                  return imp_use2(
                      s7, g2ds.bwd,
                      [](const Sequent& s8) { return ax(s8); },  // L:(u boxp)
                      [&](const Sequent& s8) {
                        // R: forall x (u (lt x) -> u (lb x))
                        return prove_quant(s8, g2ds.bwd.lhs());
                      });
                });
              });
            });
          });
        });
      });
    });
  }

  Proof prove_quant(const Sequent& s, const Term& quant) {
    Term dq = desugar(quant);
    return subr(s, dq, {v}, [&](const Sequent& s1) {
      return laml(s1, mk_app(dq.lhs(), v), [&](const Sequent& s2) {
        return lamr(s2, mk_app(dq.rhs(), v), [&](const Sequent& s3) {
          Term body_v = subst_one(dq.rhs().body(), dq.rhs().var(), v);
          // R: u (lt v) -> u (lb v)
          return intro(s3, body_v, [&](const Sequent& s4) {
            // rewrite the goal through EB: u (lb v) becomes u (body(v))
            Term eqm = inst_forall(m.eb, v);
            return all_l(s4, m.eb, v, [&](const Sequent& s5) {
              Var y{"y", Type::prop()};
              Term ctx = mk_lam(y, mk_app(u, mk_var(y)));
              return eql(s5, eqm, ctx, [&](const Sequent& s6) {
                return after_eb(s6);
              });
            });
          });
        });
      });
    });
  }

  Proof after_eb(const Sequent& s) {
    // goal now R:(u body(v)) with body(v) = grd(v) -> v p
    Term bodyv = m.bodyd(v);
    Term grdv = m.grdd(v);
    Term vp = mk_app(v, p);
    DistIff eds = dist_shape(m.g0, grdv, vp, u);
    return dist(m, m.g0, s, grdv, vp, u, [&](const Sequent& s1) {
      return imp_use2(
          s1, eds.bwd, [](const Sequent& s2) { return ax(s2); },
          [&](const Sequent& s2) {
            return intro(s2, mk_subset(mk_app(u, grdv), mk_app(u, vp)),
                         [&](const Sequent& s3) {
              // L:(u grd(v)), R:(u (v p)): split the guard inside u
              return u_and(m, s3, u, m.om(v), m.agrd(v), [&](const Sequent& s4) {
                // L:(u (Omega v)), L:(u agrd(v))
                return w4_out(m, s4, u, v, [&](const Sequent& s5) {
                  // L:(Omega v): now reprove grd(v) for the premise box
                  return all_l(s5, m.boxp, v, [&](const Sequent& s6) {
                    return imp_use2(
                        s6, m.bodyd(v),
                        [&](const Sequent& s7) {
                          // L:(v p): W3 lifts it into u, closing R:(u (v p))
                          return w3_at(m, s7, p, u, v, [&](const Sequent& s8) {
                            return imp_use(
                                s8, mk_subset(vp, mk_app(u, vp)),
                                [](const Sequent& s9) { return ax(s9); });
                          });
                        },
                        [&](const Sequent& s7) {
                          // R:grd(v)
                          return and_prove(s7, m.om(v), m.agrd(v),
                                           [](const Sequent& s8) { return ax(s8); },
                                           [&](const Sequent& s8) {
                                             return prove_agr_v(s8);
                                           });
                        });
                  });
                });
              });
            });
          });
    });
    (void)bodyv;
  }
};

Proof build_script_5(const ModalShapes& m);

Proof build_script_4(const ModalShapes& m) {
  Script4 sc(m);
  return expand_derived(sc.run());
}

// --- the 5 axiom: <R>p -> [R]<R>p -------------------------------------------
//
// t0 witnesses the actual diamond; u is the introduced world. The witness
// facts Omega t0, AGR(t0) transfer into u wholesale, so u also sees the
// diamond.
struct Script5 {
  const ModalShapes& m;
  Term u, t0, s0, p, np, bels0;
  Term boxn, ltn, lbn, dia;
  Term ebn;  // forall x ((lbn x) = bodyn(x))

  explicit Script5(const ModalShapes& mm)
      : m(mm), u(mm.u), t0(parse_term("t0", mm.sig)), s0(mm.s0), p(mm.p),
        np(mk_subset(mm.p, mk_bottom())), bels0(bel_term(mm, mm.s0)) {
    boxn = box_term(m.big_r, np);
    ltn = boxn.lhs();
    lbn = boxn.rhs();
    dia = mk_subset(boxn, mk_bottom());
    Theory lc = lambda_conv_theory();
    for (const auto& sch : lc.schemes)
      if (sch.id == "beta")
        ebn = desugar(*sch.make({lbn, mk_var(Var{"x9", Type::complex({Type::prop()})})}));
  }

  Term bodynd(const Term& x) const { return subst_one(lbn.body(), lbn.var(), x); }

  // from L:(u bel s0): adds L:(bel s0)
  Proof agru_bwd(const Sequent& s, const Cont& k) {
    Term agru = m.agrd(u);
    return all_l(s, agru, s0, [&](const Sequent& s1) {
      Term ab = m.abd(u, s0);
      Term c1 = ab.lhs().lhs();
      Term c2 = ab.lhs().rhs().lhs();
      return and_use(s1, c1, c2, [&](const Sequent& s2) {
        Term fu = c1.lhs().lhs();
        Term bu = c1.lhs().rhs().lhs();
        return and_use(s2, fu, bu, [&](const Sequent& s3) {
          return imp_use(s3, bu, k);
        });
      });
    });
  }

  // from L:(bel s0): adds L:(u bel s0)
  Proof agru_fwd(const Sequent& s, const Cont& k) {
    Term agru = m.agrd(u);
    return all_l(s, agru, s0, [&](const Sequent& s1) {
      Term ab = m.abd(u, s0);
      Term c1 = ab.lhs().lhs();
      Term c2 = ab.lhs().rhs().lhs();
      return and_use(s1, c1, c2, [&](const Sequent& s2) {
        Term fu = c1.lhs().lhs();
        Term bu = c1.lhs().rhs().lhs();
        return and_use(s2, fu, bu, [&](const Sequent& s3) {
          return imp_use(s3, fu, k);
        });
      });
    });
  }

  // pieces of the actual witness agreement L:agrd(t0), instantiated at s0
  Proof agrt_pieces(const Sequent& s, const Cont& k) {
    Term agrt = m.agrd(t0);
    return all_l(s, agrt, s0, [&](const Sequent& s1) {
      Term ab = m.abd(t0, s0);
      Term c1 = ab.lhs().lhs();
      Term c2 = ab.lhs().rhs().lhs();
      return and_use(s1, c1, c2, [&](const Sequent& s2) {
        Term ft = c1.lhs().lhs();
        Term bt = c1.lhs().rhs().lhs();
        return and_use(s2, ft, bt, k);
      });
    });
  }

  // prove R:(w (X & Y)); kx and ky see L:(w X) / L:(w Y) style goals as
  // R:(w X), R:(w Y) respectively, with a stray R:(w bot) hypothesis side
  Proof u_and_prove(const Sequent& s, const Term& w, const Term& x, const Term& y,
                    const Cont& kx, const Cont& ky) {
    Term inner = mk_subset(x, mk_subset(y, mk_bottom()));
    DistIff outer_ds = dist_shape(m.g0, inner, mk_bottom(), w);
    return dist(m, m.g0, s, inner, mk_bottom(), w, [&](const Sequent& s1) {
      return imp_use2(
          s1, outer_ds.bwd, [](const Sequent& s2) { return ax(s2); },
          [&](const Sequent& s2) {
            // R:(w inner -> w bot)
            return intro(s2, mk_subset(mk_app(w, inner), mk_app(w, mk_bottom())),
                         [&](const Sequent& s3) {
              // L:(w inner), R:(w bot)
              DistIff in_ds = dist_shape(m.g0, x, mk_subset(y, mk_bottom()), w);
              return dist(m, m.g0, s3, x, mk_subset(y, mk_bottom()), w,
                          [&](const Sequent& s4) {
                return imp_use(s4, in_ds.fwd, [&](const Sequent& s5) {
                  // L:(w x -> w (y -> bot))
                  return imp_use2(
                      s5,
                      mk_subset(mk_app(w, x), mk_app(w, mk_subset(y, mk_bottom()))),
                      [&](const Sequent& s6) {
                        // L:(w (y -> bot))
                        DistIff ny_ds = dist_shape(m.g0, y, mk_bottom(), w);
                        return dist(m, m.g0, s6, y, mk_bottom(), w,
                                    [&](const Sequent& s7) {
                          return imp_use(s7, ny_ds.fwd, [&](const Sequent& s8) {
                            return imp_use2(
                                s8, mk_subset(mk_app(w, y), mk_app(w, mk_bottom())),
                                [](const Sequent& s9) { return ax(s9); },  // L:(w bot)
                                [&](const Sequent& s9) { return ky(s9); });  // R:(w y)
                          });
                        });
                      },
                      [&](const Sequent& s6) { return kx(s6); });  // R:(w x)
                });
              });
            });
          });
    });
  }

  Proof run() {
    Term outer = box_term(m.big_r, dia);
    Term goal = mk_subset(dia, outer);
    std::vector<Term> axioms = {m.w1, m.w4, m.g0, m.g1, m.g2,
                                m.w3g, m.et, ebn,  m.ea, m.eg};
    Sequent root = make_sequent(axioms, {goal});
    return intro(root, goal, [&](const Sequent& s1) {
      // L:dia, R:outer
      return subr(s1, outer, {u}, [&](const Sequent& s2) {
        return laml(s2, mk_app(outer.lhs(), u), [&](const Sequent& s3) {
          return lamr(s3, mk_app(outer.rhs(), u), [&](const Sequent& s4) {
            Term body_u = subst_one(outer.rhs().body(), outer.rhs().var(), u);
            return intro(s4, body_u, [&](const Sequent& s5) {
              // L:grd(u), R:(u dia)
              return and_use(s5, m.om(u), m.agrd(u), [&](const Sequent& s6) {
                // open the actual diamond: L:(boxn -> bot)
                return imp_use2(
                    s6, dia, [](const Sequent& s7) { return botl(s7); },
                    [&](const Sequent& s7) { return witness(s7); });  // R:boxn
              });
            });
          });
        });
      });
    });
  }

  Proof witness(const Sequent& s) {
    return subr(s, boxn, {t0}, [&](const Sequent& s1) {
      return laml(s1, mk_app(ltn, t0), [&](const Sequent& s2) {
        return lamr(s2, mk_app(lbn, t0), [&](const Sequent& s3) {
          // R:(grd(t0) -> t0 np)
          return intro(s3, bodynd(t0), [&](const Sequent& s4) {
            // L:grd(t0), R:(t0 np)
            return and_use(s4, m.om(t0), m.agrd(t0), [&](const Sequent& s5) {
              return main_goal(s5);
            });
          });
        });
      });
    });
  }

  Proof main_goal(const Sequent& s) {
    // goal R:(u dia-term); hypotheses Omega u, AGR(u), Omega t0, AGR(t0)
    Term udia = mk_app(u, dia);
    (void)udia;
    DistIff dds = dist_shape(m.g0, boxn, mk_bottom(), u);
    return dist(m, m.g0, s, boxn, mk_bottom(), u, [&](const Sequent& s1) {
      return imp_use2(
          s1, dds.bwd, [](const Sequent& s2) { return ax(s2); },  // L:(u dia)
          [&](const Sequent& s2) {
            // R:(u boxn -> u bot)
            return intro(s2, mk_subset(mk_app(u, boxn), mk_app(u, mk_bottom())),
                         [&](const Sequent& s3) {
              // L:(u boxn), R:(u bot): distribute the inner box through u
              DistIff g2ds = dist_shape(m.g2, ltn, lbn, u);
              return dist(m, m.g2, s3, ltn, lbn, u, [&](const Sequent& s4) {
                return imp_use(s4, g2ds.fwd, [&](const Sequent& s5) {
                  Term member = g2ds.fwd.rhs();
                  Term inst = inst_forall(member, t0);
                  return all_l(s5, member, t0, [&](const Sequent& s6) {
                    return imp_use2(
                        s6, inst,
                        [&](const Sequent& s7) { return use_inner(s7); },
                        [&](const Sequent& s7) {
                          // R:(u (ltn t0)): top transfer plus the ET equation
                          return u_top(m, s7, u, [&](const Sequent& s8) {
                            Term eqm = inst_forall(m.et, t0);
                            return all_l(s8, m.et, t0, [&](const Sequent& s9) {
                              Var y{"y", Type::prop()};
                              Term ctx = mk_lam(y, mk_app(u, mk_var(y)));
                              return eql(s9, eqm, ctx,
                                         [](const Sequent& s10) { return ax(s10); });
                            });
                          });
                        });
                  });
                });
              });
            });
          });
    });
  }

  Proof use_inner(const Sequent& s) {
    // L:(u (lbn t0)): rewrite to L:(u bodyn(t0)) and split
    Term eqm = inst_forall(ebn, t0);
    return all_l(s, ebn, t0, [&](const Sequent& s1) {
      return eq_fwd(s1, eqm, u, [&](const Sequent& s2) {
        Term grdt = m.grdd(t0);
        Term tnp = mk_app(t0, np);
        DistIff ds = dist_shape(m.g0, grdt, tnp, u);
        return dist(m, m.g0, s2, grdt, tnp, u, [&](const Sequent& s3) {
          return imp_use(s3, ds.fwd, [&](const Sequent& s4) {
            // L:(u grd(t0) -> u (t0 np))
            return imp_use2(
                s4, mk_subset(mk_app(u, grdt), mk_app(u, tnp)),
                [&](const Sequent& s5) {
                  // L:(u (t0 np)): W3 pulls it down, clashing with R:(t0 np)
                  return w3_at(m, s5, np, u, t0, [&](const Sequent& s6) {
                    return imp_use(s6, mk_subset(mk_app(u, mk_app(t0, np)), mk_app(t0, np)),
                                   [](const Sequent& s7) { return ax(s7); });
                  });
                },
                [&](const Sequent& s5) {
                  // R:(u grd(t0)): rebuild the guard inside u
                  return u_and_prove(
                      s5, u, m.om(t0), m.agrd(t0),
                      [&](const Sequent& s6) {
                        // R:(u (Omega t0)) via W4 forward
                        return w4_fwd(s6);
                      },
                      [&](const Sequent& s6) { return u_agr_prove(s6); });
                });
          });
        });
      });
    });
  }

  Proof w4_fwd(const Sequent& s) {
    Term i1 = inst_forall(m.w4, u);
    return all_l(s, m.w4, u, [&](const Sequent& s1) {
      return imp_use(s1, i1, [&](const Sequent& s2) {
        return all_l(s2, i1.rhs(), t0, [&](const Sequent& s3) {
          return iff_use(s3, m.om(t0), mk_app(u, m.om(t0)), [&](const Sequent& s4) {
            return imp_use(s4, mk_subset(m.om(t0), mk_app(u, m.om(t0))),
                           [](const Sequent& s5) { return ax(s5); });
          });
        });
      });
    });
  }

  Proof u_agr_prove(const Sequent& s) {
    // goal R:(u agrd(t0))
    Term la = m.la;
    Term lgt = m.lg(t0);
    DistIff ds = dist_shape(m.g1, la, lgt, u);
    return dist(m, m.g1, s, la, lgt, u, [&](const Sequent& s1) {
      return imp_use2(
          s1, ds.bwd, [](const Sequent& s2) { return ax(s2); },
          [&](const Sequent& s2) {
            // R: forall x (u (la x) -> u (lgt x))
            Term quant = ds.bwd.lhs();
            Term dq = desugar(quant);
            return subr(s2, dq, {s0}, [&](const Sequent& s3) {
              return laml(s3, mk_app(dq.lhs(), s0), [&](const Sequent& s4) {
                return lamr(s4, mk_app(dq.rhs(), s0), [&](const Sequent& s5) {
                  Term body = subst_one(dq.rhs().body(), dq.rhs().var(), s0);
                  return intro(s5, body, [&](const Sequent& s6) {
                    // L:(u (la s0)), R:(u (lgt s0)): rewrite goal through EG
                    Term eg1 = inst_forall(m.eg, t0);
                    return all_l(s6, m.eg, t0, [&](const Sequent& s7) {
                      return all_l(s7, eg1, s0, [&](const Sequent& s8) {
                        Term eqm = inst_forall(eg1, s0);
                        Var y{"y", Type::prop()};
                        Term ctx = mk_lam(y, mk_app(u, mk_var(y)));
                        return eql(s8, eqm, ctx,
                                   [&](const Sequent& s9) { return ab_inside(s9); });
                      });
                    });
                  });
                });
              });
            });
          });
    });
  }

  Proof ab_inside(const Sequent& s) {
    // goal R:(u abd(t0,s0))
    Term ab = m.abd(t0, s0);
    Term c1 = ab.lhs().lhs();
    Term c2 = ab.lhs().rhs().lhs();
    return u_and_prove(
        s, u, c1, c2,
        [&](const Sequent& s1) {
          Term f = c1.lhs().lhs();
          Term b = c1.lhs().rhs().lhs();
          return u_and_prove(
              s1, u, f, b,
              [&](const Sequent& s2) {
                // R:(u (bel s0 -> t0 (bel s0)))
                DistIff fds = dist_shape(m.g0, bels0, mk_app(t0, bels0), u);
                return dist(m, m.g0, s2, bels0, mk_app(t0, bels0), u,
                            [&](const Sequent& s3) {
                  return imp_use2(
                      s3, fds.bwd, [](const Sequent& s4) { return ax(s4); },
                      [&](const Sequent& s4) {
                        return intro(s4,
                                     mk_subset(mk_app(u, bels0),
                                               mk_app(u, mk_app(t0, bels0))),
                                     [&](const Sequent& s5) {
                          // L:(u bel s0), R:(u (t0 bel s0))
                          return agru_bwd(s5, [&](const Sequent& s6) {
                            return agrt_pieces(s6, [&](const Sequent& s7) {
                              Term ft = m.abd(t0, s0).lhs().lhs().lhs().lhs();
                              return imp_use(s7, ft, [&](const Sequent& s8) {
                                // L:(t0 bel s0): lift into u with W3
                                return w3_at(m, s8, bels0, u, t0,
                                             [&](const Sequent& s9) {
                                  return imp_use(
                                      s9,
                                      mk_subset(mk_app(t0, bels0),
                                                mk_app(u, mk_app(t0, bels0))),
                                      [](const Sequent& s10) { return ax(s10); });
                                });
                              });
                            });
                          });
                        });
                      });
                });
              },
              [&](const Sequent& s2) {
                // R:(u (t0 (bel s0) -> bel s0))
                DistIff bds = dist_shape(m.g0, mk_app(t0, bels0), bels0, u);
                return dist(m, m.g0, s2, mk_app(t0, bels0), bels0, u,
                            [&](const Sequent& s3) {
                  return imp_use2(
                      s3, bds.bwd, [](const Sequent& s4) { return ax(s4); },
                      [&](const Sequent& s4) {
                        return intro(s4,
                                     mk_subset(mk_app(u, mk_app(t0, bels0)),
                                               mk_app(u, bels0)),
                                     [&](const Sequent& s5) {
                          // L:(u (t0 bel s0)), R:(u bel s0)
                          return w3_at(m, s5, bels0, u, t0, [&](const Sequent& s6) {
                            return imp_use(
                                s6,
                                mk_subset(mk_app(u, mk_app(t0, bels0)),
                                          mk_app(t0, bels0)),
                                [&](const Sequent& s7) {
                              // L:(t0 bel s0): back to actual, then into u
                              return agrt_pieces(s7, [&](const Sequent& s8) {
                                Term bt = m.abd(t0, s0).lhs().lhs().lhs().rhs().lhs();
                                return imp_use(s8, bt, [&](const Sequent& s9) {
                                  return agru_fwd(s9, [](const Sequent& s10) {
                                    return ax(s10);
                                  });
                                });
                              });
                            });
                          });
                        });
                      });
                });
              });
        },
        [&](const Sequent& s1) {
          // R:(u (bel s0 -> t0 s0))
          DistIff cds = dist_shape(m.g0, bels0, mk_app(t0, s0), u);
          return dist(m, m.g0, s1, bels0, mk_app(t0, s0), u, [&](const Sequent& s2) {
            return imp_use2(
                s2, cds.bwd, [](const Sequent& s3) { return ax(s3); },
                [&](const Sequent& s3) {
                  return intro(s3,
                               mk_subset(mk_app(u, bels0), mk_app(u, mk_app(t0, s0))),
                               [&](const Sequent& s4) {
                    // L:(u bel s0), R:(u (t0 s0))
                    return agru_bwd(s4, [&](const Sequent& s5) {
                      return agrt_pieces(s5, [&](const Sequent& s6) {
                        Term c2t = m.abd(t0, s0).lhs().rhs().lhs();
                        return imp_use(s6, c2t, [&](const Sequent& s7) {
                          // L:(t0 s0)
                          return w3_at(m, s7, s0, u, t0, [&](const Sequent& s8) {
                            return imp_use(
                                s8, mk_subset(mk_app(t0, s0), mk_app(u, mk_app(t0, s0))),
                                [](const Sequent& s9) { return ax(s9); });
                          });
                        });
                      });
                    });
                  });
                });
          });
        });
  }
};

Proof build_script_5(const ModalShapes& m) {
  Script5 sc(m);
  return expand_derived(sc.run());
}

}  // namespace script

// ---------------------------------------------------------------------------
// Goal corpus
// ---------------------------------------------------------------------------

std::vector<WorldsGoal> worlds_goal_corpus() {
  Signature sig = worlds_signature();
  auto t = [&sig](const char* s) { return parse_term(s, sig); };
  std::vector<WorldsGoal> out;

  auto validate = [&out](const char* name, const Term& statement) {
    WorldsGoal g;
    g.name = name;
    g.mode = WorldsGoal::Mode::ModelValidate;
    g.statement = statement;
    out.push_back(std::move(g));
  };

  // requested instances the demo model is built against
  validate("W1-instance", t("forall w:<<>> . Omega w -> ~(w bot)"));
  validate("W2-at-p-bot", *w2_make({t("p"), t("bot")}));
  validate("W2-at-q-bot", *w2_make({t("q"), t("bot")}));

  // distribution statements at atomic instances
  validate("dist-a-negation", t("forall w:<<>> . Omega w -> (w (~p) <-> ~(w p))"));
  validate("dist-b-conjunction",
           t("forall w:<<>> . Omega w -> (w (p & q) <-> (w p & w q))"));
  validate("dist-c-universal",
           t("forall w:<<>> . Omega w -> (w (forall x:e . P x) <-> forall x:e . w (P x))"));
  validate("dist-d-existential",
           t("forall w:<<>> . Omega w -> (w (exists x:e . P x) <-> exists x:e . w (P x))"));

  // universal accessibility lam w lam w'. w (Omega w') restricted to worlds
  validate("omega-access-reflexive", t("forall w:<<>> . Omega w -> w (Omega w)"));
  validate("omega-access-symmetric",
           t("forall w:<<>> . forall w':<<>> . (Omega w & Omega w') -> "
             "(w (Omega w') -> w' (Omega w))"));
  validate("omega-access-transitive",
           t("forall w:<<>> . forall w':<<>> . forall w'':<<>> . "
             "(Omega w & Omega w' & Omega w'') -> "
             "((w (Omega w') & w' (Omega w'')) -> w (Omega w''))"));

  Term john = t("john");
  Term r = belief_accessibility(john);

  {
    WorldsGoal g;
    g.name = "box-R-top-provable";
    g.mode = WorldsGoal::Mode::Prove;
    g.goal = make_sequent({}, {box_term(r, t("top"))});
    g.theory = worlds_theory({});
    out.push_back(std::move(g));
  }
  {
    WorldsGoal g;
    g.name = "script-dist-a";
    g.mode = WorldsGoal::Mode::CheckScript;
    g.goal = make_sequent({}, {t("forall w:<<>> . Omega w -> (w (~p) <-> ~(w p))")});
    g.theory = worlds_theory({});
    out.push_back(std::move(g));
  }
  {
    WorldsGoal g;
    g.name = "script-D";
    g.mode = WorldsGoal::Mode::CheckScript;
    WorldsOptions opt;
    opt.with_serial_belief = true;
    g.goal = make_sequent({}, {mk_subset(box_term(r, t("p")), diamond_term(r, t("p")))});
    g.theory = worlds_theory(opt);
    out.push_back(std::move(g));
  }
  {
    WorldsGoal g;
    g.name = "script-4";
    g.mode = WorldsGoal::Mode::CheckScript;
    Term boxp = box_term(r, t("p"));
    g.goal = make_sequent({}, {mk_subset(boxp, box_term(r, boxp))});
    WorldsOptions opt;
    opt.with_general_distribution = true;
    g.theory = worlds_theory(opt);
    out.push_back(std::move(g));
  }
  {
    WorldsGoal g;
    g.name = "script-5";
    g.mode = WorldsGoal::Mode::CheckScript;
    Term diap = diamond_term(r, t("p"));
    g.goal = make_sequent({}, {mk_subset(diap, box_term(r, diap))});
    WorldsOptions opt;
    opt.with_general_distribution = true;
    g.theory = worlds_theory(opt);
    out.push_back(std::move(g));
  }
  return out;
}

WorldsGoalResult run_worlds_goal(const WorldsGoal& g, const SearchBudget& budget) {
  WorldsGoalResult res;
  res.name = g.name;
  if (g.mode == WorldsGoal::Mode::ModelValidate) {
    FiniteModel m = worlds_demo_model();
    try {
      res.passed = eval_truth(m, g.statement);
      res.detail = res.passed ? "holds on the demo model" : "fails on the demo model";
    } catch (const CarrierEscape& e) {
      res.passed = false;
      res.detail = e.what();
    }
    return res;
  }
  Signature sig = worlds_signature().merged(g.theory.extra_sig);
  if (g.name == "script-4" || g.name == "script-5") {
    script::ModalShapes m = script::modal_shapes();
    try {
      Proof proof =
          g.name == "script-4" ? script::build_script_4(m) : script::build_script_5(m);
      Verdict v = check_proof(proof, m.sig);
      res.passed = v.valid;
      res.detail = v.valid
                       ? "scripted proof of " + std::to_string(proof_size(proof)) + " nodes"
                       : v.reason;
      res.proof = std::move(proof);
    } catch (const Error& e) {
      res.passed = false;
      res.detail = e.what();
    }
    return res;
  }
  SearchBudget b = budget;
  if (g.mode == WorldsGoal::Mode::CheckScript) {
    b.proof_only = true;
    b.max_instantiations = 16;
  }
  SearchOutcome out = prove_with_hints(g.goal, g.theory, b, sig, g.hints);
  if (!out.found()) {
    res.passed = false;
    res.detail = out.open() ? "open branch" : "exhausted: " + out.exhausted_dimension;
    return res;
  }
  Verdict v = check_proof(*out.proof, sig);
  res.passed = v.valid;
  res.detail = v.valid ? "proof of " + std::to_string(proof_size(*out.proof)) + " nodes"
                       : v.reason;
  res.proof = std::move(out.proof);
  return res;
}

}  // namespace itl
