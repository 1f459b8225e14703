#include "itl/proof.hpp"

#include <json.hpp>

#include "itl/error.hpp"
#include "itl/parse.hpp"

namespace itl {

namespace {

const char* const kRuleNames[] = {"W",    "Axiom", "BottomL", "LamL", "LamR", "SubL", "SubR",
                                  "TopR", "ImpL",  "ImpR",    "AllL", "AllR", "EqL",  "EqR"};

Term core_top() { return mk_subset(mk_bottom(), mk_bottom()); }

}  // namespace

bool is_base_rule(RuleId r) { return static_cast<int>(r) <= static_cast<int>(RuleId::SubR); }

const char* rule_name(RuleId r) { return kRuleNames[static_cast<int>(r)]; }

std::optional<RuleId> rule_from_name(const std::string& s) {
  for (int i = 0; i < 14; ++i)
    if (s == kRuleNames[i]) return static_cast<RuleId>(i);
  return std::nullopt;
}

std::optional<RedexSpine> decompose_redex(const Term& sentence) {
  std::vector<Term> args;
  Term head = sentence;
  while (head.kind() == Kind::App) {
    args.push_back(head.arg());
    head = head.fun();
  }
  if (head.kind() != Kind::Lam || args.empty()) return std::nullopt;
  RedexSpine r;
  r.lam = head;
  r.arg = args.back();
  for (size_t i = args.size() - 1; i-- > 0;) r.rest.push_back(args[i]);
  return r;
}

Term contract_redex(const RedexSpine& r) {
  Term body = subst_one(r.lam.body(), r.lam.var(), r.arg);
  return apply_all(body, r.rest);
}

Term apply_all(const Term& t, const std::vector<Term>& args) {
  Term out = t;
  for (const auto& a : args) out = mk_app(out, a);
  return out;
}

std::optional<std::pair<Var, Term>> match_forall(const Term& t) {
  if (t.kind() != Kind::Subset) return std::nullopt;
  const Term& l = t.lhs();
  const Term& r = t.rhs();
  if (l.kind() != Kind::Lam || r.kind() != Kind::Lam) return std::nullopt;
  if (l.var() != r.var()) return std::nullopt;
  if (l.body() != core_top()) return std::nullopt;
  return std::make_pair(l.var(), r.body());
}

std::optional<std::pair<Term, Term>> match_equation(const Term& t) {
  auto fa = match_forall(t);
  if (!fa) return std::nullopt;
  const auto& [z, body] = *fa;
  if (body.kind() != Kind::Subset) return std::nullopt;
  const Term& l = body.lhs();
  const Term& r = body.rhs();
  if (l.kind() != Kind::App || r.kind() != Kind::App) return std::nullopt;
  if (l.fun().kind() != Kind::Variable || l.fun().var() != z) return std::nullopt;
  if (r.fun().kind() != Kind::Variable || r.fun().var() != z) return std::nullopt;
  // z must not be free in the equated terms
  if (free_vars(l.arg()).count(z) || free_vars(r.arg()).count(z)) return std::nullopt;
  return std::make_pair(l.arg(), r.arg());
}

Term fresh_constant(const Sequent& avoid, const Type& type, int start) {
  std::set<std::string> used = sequent_constants(avoid);
  for (int k = start;; ++k) {
    std::string name = "$c" + std::to_string(k);
    if (!used.count(name)) return mk_const(name, type);
  }
}

// ---------------------------------------------------------------------------
// Kernel checker
// ---------------------------------------------------------------------------

namespace {

struct Checker {
  const Signature& sig;
  std::map<std::string, Type> seen_constants;  // reserved constants must stay consistent
  std::set<std::string> checked_sentences;
  std::string fail;

  bool sentences_ok(const Sequent& s) {
    for (const auto& m : s) {
      if (checked_sentences.count(m.key)) continue;
      if (!m.sentence.is_core()) return failure("sentence not in core form: " + m.key);
      std::set<std::string> cs;
      collect_constants(m.sentence, cs);
      for (const auto& c : cs) {
        if (!sig.has_constant(c) && !is_reserved_name(c))
          return failure("undeclared constant " + c + " in " + m.key);
      }
      if (!collect_types_ok(m.sentence)) return false;
      checked_sentences.insert(m.key);
    }
    return true;
  }

  bool collect_types_ok(const Term& t) {
    if (t.kind() == Kind::Const) {
      const std::string& n = t.const_name();
      if (sig.has_constant(n) && sig.constants.at(n) != t.type())
        return failure("constant " + n + " used at type " + print_type(t.type()) +
                       " but declared " + print_type(sig.constants.at(n)));
      auto it = seen_constants.find(n);
      if (it == seen_constants.end())
        seen_constants.emplace(n, t.type());
      else if (it->second != t.type())
        return failure("constant " + n + " used at two types");
      return true;
    }
    switch (t.kind()) {
      case Kind::Variable:
      case Kind::Bottom:
        return true;
      case Kind::Lam:
        return collect_types_ok(t.body());
      default:
        return collect_types_ok(t.raw()->a) && collect_types_ok(t.raw()->b);
    }
  }

  bool failure(const std::string& why) {
    if (fail.empty()) fail = why;
    return false;
  }

  // Accepts the premise either keeping or dropping the principal; both read
  // off the same rule figure once sequents are sets.
  bool premise_matches(const Proof& node, size_t idx, const Sequent& keep, const Sequent& drop) {
    const Sequent& got = node.premises[idx].conclusion;
    return got == keep || got == drop;
  }

  static std::pair<Sequent, Sequent> targets(const Sequent& conclusion,
                                             const SignedSentence& principal,
                                             const std::vector<SignedSentence>& adds) {
    Sequent keep = conclusion;
    for (const auto& a : adds) keep.insert(a);
    Sequent drop = seq_without(conclusion, principal);
    for (const auto& a : adds) drop.insert(a);
    return {keep, drop};
  }

  bool node_ok(const Proof& p) {
    if (!sentences_ok(p.conclusion)) return false;
    if (!is_base_rule(p.rule))
      return failure(std::string("derived rule ") + rule_name(p.rule) + " in kernel proof");

    switch (p.rule) {
      case RuleId::W: {
        if (p.premises.size() != 1) return failure("W needs one premise");
        if (!seq_subset(p.premises[0].conclusion, p.conclusion))
          return failure("W premise is not a subsequent of the conclusion");
        return true;
      }
      case RuleId::Axiom: {
        if (!p.premises.empty()) return failure("Axiom takes no premises");
        for (const auto& m : p.conclusion) {
          if (m.sign != Sign::L) continue;
          if (seq_contains(p.conclusion, SignedSentence{Sign::R, m.sentence, m.key})) return true;
        }
        return failure("Axiom: no sentence is signed both L and R");
      }
      case RuleId::BottomL: {
        if (!p.premises.empty()) return failure("BottomL takes no premises");
        if (!seq_contains(p.conclusion, make_signed(Sign::L, mk_bottom())))
          return failure("BottomL: L:bot not in conclusion");
        return true;
      }
      case RuleId::LamL:
      case RuleId::LamR: {
        Sign want = p.rule == RuleId::LamL ? Sign::L : Sign::R;
        if (p.premises.size() != 1) return failure("lambda rule needs one premise");
        if (!p.data.principal) return failure("lambda rule needs a principal");
        const SignedSentence& pr = *p.data.principal;
        if (pr.sign != want) return failure("lambda rule principal has the wrong sign");
        if (!seq_contains(p.conclusion, pr)) return failure("principal not in conclusion");
        auto spine = decompose_redex(pr.sentence);
        if (!spine) return failure("principal is not a head redex: " + pr.key);
        if (!is_free_for(spine->arg, spine->lam.var(), spine->lam.body()))
          return failure("side condition: argument not free for binder");
        Term contractum;
        try {
          contractum = contract_redex(*spine);
        } catch (const CaptureError& e) {
          return failure(e.what());
        }
        auto [keep, drop] = targets(p.conclusion, pr, {make_signed(want, contractum)});
        if (!premise_matches(p, 0, keep, drop))
          return failure("lambda rule premise sequent mismatch");
        return true;
      }
      case RuleId::SubL: {
        if (p.premises.size() != 2) return failure("SubL needs two premises");
        if (!p.data.principal) return failure("SubL needs a principal");
        const SignedSentence& pr = *p.data.principal;
        if (pr.sign != Sign::L) return failure("SubL principal must be L-signed");
        if (!seq_contains(p.conclusion, pr)) return failure("principal not in conclusion");
        if (pr.sentence.kind() != Kind::Subset) return failure("SubL principal is not sub");
        const Type& ty = pr.sentence.lhs().type();
        if (p.data.inst.size() != ty.arity())
          return failure("SubL instantiation vector has wrong length");
        for (size_t i = 0; i < p.data.inst.size(); ++i) {
          if (!is_closed(p.data.inst[i])) return failure("SubL instantiation must be closed");
          if (p.data.inst[i].type() != ty.args()[i])
            return failure("SubL instantiation type mismatch at position " + std::to_string(i));
        }
        SignedSentence ladd = make_signed(Sign::L, apply_all(pr.sentence.rhs(), p.data.inst));
        SignedSentence radd = make_signed(Sign::R, apply_all(pr.sentence.lhs(), p.data.inst));
        auto [keepL, dropL] = targets(p.conclusion, pr, {ladd});
        auto [keepR, dropR] = targets(p.conclusion, pr, {radd});
        if (!premise_matches(p, 0, keepL, dropL)) return failure("SubL left premise mismatch");
        if (!premise_matches(p, 1, keepR, dropR)) return failure("SubL right premise mismatch");
        return true;
      }
      case RuleId::SubR: {
        if (p.premises.size() != 1) return failure("SubR needs one premise");
        if (!p.data.principal) return failure("SubR needs a principal");
        const SignedSentence& pr = *p.data.principal;
        if (pr.sign != Sign::R) return failure("SubR principal must be R-signed");
        if (!seq_contains(p.conclusion, pr)) return failure("principal not in conclusion");
        if (pr.sentence.kind() != Kind::Subset) return failure("SubR principal is not sub");
        const Type& ty = pr.sentence.lhs().type();
        if (p.data.fresh.size() != ty.arity())
          return failure("SubR fresh vector has wrong length");
        std::set<std::string> names;
        std::set<std::string> in_conclusion = sequent_constants(p.conclusion);
        for (size_t i = 0; i < p.data.fresh.size(); ++i) {
          const Term& c = p.data.fresh[i];
          if (c.kind() != Kind::Const) return failure("SubR witness is not a constant");
          if (c.type() != ty.args()[i]) return failure("SubR witness type mismatch");
          if (!names.insert(c.const_name()).second)
            return failure("SubR witnesses must be pairwise distinct");
          if (in_conclusion.count(c.const_name()))
            return failure("freshness: " + c.const_name() + " occurs in the conclusion");
        }
        std::vector<SignedSentence> adds{
            make_signed(Sign::L, apply_all(pr.sentence.lhs(), p.data.fresh)),
            make_signed(Sign::R, apply_all(pr.sentence.rhs(), p.data.fresh))};
        auto [keep, drop] = targets(p.conclusion, pr, adds);
        if (!premise_matches(p, 0, keep, drop)) return failure("SubR premise sequent mismatch");
        return true;
      }
      default:
        return failure("unknown rule");
    }
  }

  bool run(const Proof& p) {
    if (!node_ok(p)) return false;
    for (const auto& q : p.premises)
      if (!run(q)) return false;
    return true;
  }
};

}  // namespace

Verdict check_proof(const Proof& p, const Signature& sig) {
  Checker c{sig};
  if (c.run(p)) return Verdict{true, ""};
  return Verdict{false, c.fail.empty() ? "invalid" : c.fail};
}

// ---------------------------------------------------------------------------
// Derived rule expansion
// ---------------------------------------------------------------------------

namespace {

Proof graft(Proof sub, const Sequent& target) {
  if (sub.conclusion == target) return sub;
  if (!seq_subset(sub.conclusion, target))
    throw ExpansionError("expansion subproof proves " + print_sequent(sub.conclusion) +
                         " which is not a subsequent of " + print_sequent(target));
  Proof w;
  w.conclusion = target;
  w.rule = RuleId::W;
  w.premises.push_back(std::move(sub));
  return w;
}

Proof axiom_node(Sequent s) { return Proof{std::move(s), RuleId::Axiom, {}, {}}; }
Proof bottoml_node(Sequent s) { return Proof{std::move(s), RuleId::BottomL, {}, {}}; }

// Gamma contains R:top; proves it via SubR over BottomL, keeping everything.
Proof topr_expansion(const Sequent& gamma, const SignedSentence& principal) {
  Sequent s1 = gamma;
  s1.insert(make_signed(Sign::L, mk_bottom()));
  s1.insert(make_signed(Sign::R, mk_bottom()));
  Proof node;
  node.conclusion = gamma;
  node.rule = RuleId::SubR;
  node.data.principal = principal;
  node.premises.push_back(bottoml_node(std::move(s1)));
  return node;
}

const SignedSentence& need_principal(const Proof& p) {
  if (!p.data.principal)
    throw ExpansionError(std::string(rule_name(p.rule)) + " node lacks a principal");
  if (!seq_contains(p.conclusion, *p.data.principal))
    throw ExpansionError(std::string(rule_name(p.rule)) + " principal not in conclusion");
  return *p.data.principal;
}

void need_premises(const Proof& p, size_t n) {
  if (p.premises.size() != n)
    throw ExpansionError(std::string(rule_name(p.rule)) + " needs " + std::to_string(n) +
                         " premises, has " + std::to_string(p.premises.size()));
}

Proof lam_step(Sign sign, Sequent conclusion, const SignedSentence& principal, Proof premise) {
  Proof n;
  n.conclusion = std::move(conclusion);
  n.rule = sign == Sign::L ? RuleId::LamL : RuleId::LamR;
  n.data.principal = principal;
  n.premises.push_back(std::move(premise));
  return n;
}

Proof subl_node(Sequent conclusion, const SignedSentence& principal, std::vector<Term> inst,
                Proof left, Proof right) {
  Proof n;
  n.conclusion = std::move(conclusion);
  n.rule = RuleId::SubL;
  n.data.principal = principal;
  n.data.inst = std::move(inst);
  n.premises.push_back(std::move(left));
  n.premises.push_back(std::move(right));
  return n;
}

Proof subr_node(Sequent conclusion, const SignedSentence& principal, std::vector<Term> fresh,
                Proof premise) {
  Proof n;
  n.conclusion = std::move(conclusion);
  n.rule = RuleId::SubR;
  n.data.principal = principal;
  n.data.fresh = std::move(fresh);
  n.premises.push_back(std::move(premise));
  return n;
}

Proof expand_impl(const Proof& p, std::vector<Proof> subs) {
  const Sequent& gamma = p.conclusion;
  switch (p.rule) {
    case RuleId::TopR: {
      need_premises(p, 0);
      const SignedSentence& pr = need_principal(p);
      if (pr.sign != Sign::R || pr.sentence != core_top())
        throw ExpansionError("TopR principal must be R:top");
      return topr_expansion(gamma, pr);
    }
    case RuleId::ImpL: {
      need_premises(p, 2);
      const SignedSentence& pr = need_principal(p);
      if (pr.sign != Sign::L || pr.sentence.kind() != Kind::Subset ||
          !pr.sentence.lhs().type().is_prop())
        throw ExpansionError("ImpL principal must be L:(phi -> psi)");
      Sequent drop = seq_without(gamma, pr);
      Sequent lt = seq_with(drop, make_signed(Sign::L, pr.sentence.rhs()));
      Sequent rt = seq_with(drop, make_signed(Sign::R, pr.sentence.lhs()));
      return subl_node(gamma, pr, {}, graft(std::move(subs[0]), lt),
                       graft(std::move(subs[1]), rt));
    }
    case RuleId::ImpR: {
      need_premises(p, 1);
      const SignedSentence& pr = need_principal(p);
      if (pr.sign != Sign::R || pr.sentence.kind() != Kind::Subset ||
          !pr.sentence.lhs().type().is_prop())
        throw ExpansionError("ImpR principal must be R:(phi -> psi)");
      Sequent target = seq_without(gamma, pr);
      target.insert(make_signed(Sign::L, pr.sentence.lhs()));
      target.insert(make_signed(Sign::R, pr.sentence.rhs()));
      return subr_node(gamma, pr, {}, graft(std::move(subs[0]), target));
    }
    case RuleId::AllL: {
      need_premises(p, 1);
      const SignedSentence& pr = need_principal(p);
      auto fa = pr.sign == Sign::L ? match_forall(pr.sentence) : std::nullopt;
      if (!fa) throw ExpansionError("AllL principal must be L:(forall x . phi)");
      if (p.data.inst.size() != 1) throw ExpansionError("AllL needs one witness term");
      const Term& witness = p.data.inst[0];
      const auto& [x, phi] = *fa;
      if (witness.type() != x.type || !is_closed(witness))
        throw ExpansionError("AllL witness must be closed and of the binder type");
      Term lam_phi = mk_lam(x, phi);
      Term lam_top = mk_lam(x, core_top());
      Sequent drop = seq_without(gamma, pr);

      SignedSentence red_l = make_signed(Sign::L, mk_app(lam_phi, witness));
      Sequent p1 = seq_with(drop, red_l);
      Sequent p1_in =
          seq_with(seq_without(p1, red_l), make_signed(Sign::L, subst_one(phi, x, witness)));
      Proof left = lam_step(Sign::L, p1, red_l, graft(std::move(subs[0]), p1_in));

      SignedSentence red_r = make_signed(Sign::R, mk_app(lam_top, witness));
      Sequent p2 = seq_with(drop, red_r);
      SignedSentence topm = make_signed(Sign::R, core_top());
      Sequent p2_in = seq_with(seq_without(p2, red_r), topm);
      Proof right = lam_step(Sign::R, p2, red_r, topr_expansion(p2_in, topm));

      return subl_node(gamma, pr, {witness}, std::move(left), std::move(right));
    }
    case RuleId::AllR: {
      need_premises(p, 1);
      const SignedSentence& pr = need_principal(p);
      auto fa = pr.sign == Sign::R ? match_forall(pr.sentence) : std::nullopt;
      if (!fa) throw ExpansionError("AllR principal must be R:(forall x . phi)");
      if (p.data.fresh.size() != 1) throw ExpansionError("AllR needs one fresh constant");
      const Term& c = p.data.fresh[0];
      const auto& [x, phi] = *fa;
      if (c.kind() != Kind::Const || c.type() != x.type)
        throw ExpansionError("AllR fresh constant has the wrong type");
      Term lam_phi = mk_lam(x, phi);
      Term lam_top = mk_lam(x, core_top());
      Sequent drop = seq_without(gamma, pr);

      SignedSentence l_top = make_signed(Sign::L, mk_app(lam_top, c));
      SignedSentence r_phi = make_signed(Sign::R, mk_app(lam_phi, c));
      Sequent s1 = seq_with(seq_with(drop, l_top), r_phi);
      SignedSentence r_inst = make_signed(Sign::R, subst_one(phi, x, c));
      Sequent s2 = seq_with(seq_without(s1, r_phi), r_inst);
      SignedSentence l_topd = make_signed(Sign::L, core_top());
      Sequent s3 = seq_with(seq_without(s2, l_top), l_topd);

      Proof inner = lam_step(Sign::L, s2, l_top, graft(std::move(subs[0]), s3));
      Proof mid = lam_step(Sign::R, s1, r_phi, std::move(inner));
      return subr_node(gamma, pr, {c}, std::move(mid));
    }
    case RuleId::EqR: {
      need_premises(p, 0);
      const SignedSentence& pr = need_principal(p);
      auto eq = pr.sign == Sign::R ? match_equation(pr.sentence) : std::nullopt;
      if (!eq || eq->first != eq->second)
        throw ExpansionError("EqR principal must be R:(A = A)");
      const Term& a = eq->first;
      Type ztype = Type::complex({a.type()});
      Term c = fresh_constant(gamma, ztype);
      Term lam_top = pr.sentence.lhs();
      Term lam_body = pr.sentence.rhs();
      Sequent drop = seq_without(gamma, pr);

      SignedSentence l_top = make_signed(Sign::L, mk_app(lam_top, c));
      SignedSentence r_red = make_signed(Sign::R, mk_app(lam_body, c));
      Sequent s1 = seq_with(seq_with(drop, l_top), r_red);
      SignedSentence r_ca = make_signed(Sign::R, mk_subset(mk_app(c, a), mk_app(c, a)));
      Sequent s2 = seq_with(seq_without(s1, r_red), r_ca);
      Sequent s3 = seq_with(seq_with(s2, make_signed(Sign::L, mk_app(c, a))),
                            make_signed(Sign::R, mk_app(c, a)));

      Proof inner = subr_node(s2, r_ca, {}, axiom_node(s3));
      Proof mid = lam_step(Sign::R, s1, r_red, std::move(inner));
      return subr_node(gamma, pr, {c}, std::move(mid));
    }
    case RuleId::EqL: {
      need_premises(p, 1);
      const SignedSentence& pr = need_principal(p);
      auto eq = pr.sign == Sign::L ? match_equation(pr.sentence) : std::nullopt;
      if (!eq) throw ExpansionError("EqL principal must be L:(A = B)");
      if (p.data.inst.size() != 1 || p.data.inst[0].kind() != Kind::Lam)
        throw ExpansionError("EqL needs a context lambda");
      const Term& ctx = p.data.inst[0];
      const Term& e1 = eq->first;
      const Term& e2 = eq->second;
      const Var& hole = ctx.var();
      if (hole.type != e1.type()) throw ExpansionError("EqL context hole type mismatch");
      if (!is_closed(ctx)) throw ExpansionError("EqL context must be closed");
      if (!is_free_for(e1, hole, ctx.body()) || !is_free_for(e2, hole, ctx.body()))
        throw ExpansionError("EqL side condition: equated terms not free for the hole");
      Term t1 = subst_one(ctx.body(), hole, e1);
      Term t2 = subst_one(ctx.body(), hole, e2);
      SignedSentence goal1 = make_signed(Sign::R, t1);
      SignedSentence goal2 = make_signed(Sign::R, t2);

      bool direct = seq_contains(gamma, goal2);
      if (!direct && !seq_contains(gamma, goal1))
        throw ExpansionError("EqL: conclusion contains neither rewritten goal");

      // All steps below keep their principals, so sets only grow and the
      // goal sentence stays in scope for the closing Axiom.
      Term lam_top = pr.sentence.lhs();
      Term lam_body = pr.sentence.rhs();
      Term the_ctx = direct ? ctx : mk_lam(hole, mk_subset(ctx.body(), mk_bottom()));
      SignedSentence red = make_signed(Sign::L, mk_app(lam_body, the_ctx));
      Sequent p1 = seq_with(gamma, red);
      Term inst_impl = mk_subset(mk_app(the_ctx, e1), mk_app(the_ctx, e2));
      SignedSentence impl = make_signed(Sign::L, inst_impl);
      Sequent p1b = seq_with(p1, impl);

      Proof left_branch, right_branch;
      if (direct) {
        // Left: +L:(ctx e2), contract, close against R:t2.
        SignedSentence l_c2 = make_signed(Sign::L, mk_app(the_ctx, e2));
        Sequent q1 = seq_with(p1b, l_c2);
        Sequent q1_in = seq_with(q1, make_signed(Sign::L, t2));
        left_branch = lam_step(Sign::L, q1, l_c2, axiom_node(q1_in));
        // Right: +R:(ctx e1), contract, hand off to the premise subproof.
        SignedSentence r_c1 = make_signed(Sign::R, mk_app(the_ctx, e1));
        Sequent q2 = seq_with(p1b, r_c1);
        Sequent q2_in = seq_with(q2, goal1);
        right_branch = lam_step(Sign::R, q2, r_c1, graft(std::move(subs[0]), q2_in));
      } else {
        // Contrapositive context lam x. ctx(x) -> bot.
        SignedSentence l_c2 = make_signed(Sign::L, mk_app(the_ctx, e2));
        Sequent q1 = seq_with(p1b, l_c2);
        SignedSentence neg2 = make_signed(Sign::L, mk_subset(t2, mk_bottom()));
        Sequent q1_in = seq_with(q1, neg2);
        Sequent q1a = seq_with(q1_in, make_signed(Sign::L, mk_bottom()));
        Sequent q1b = seq_with(q1_in, goal2);
        Proof neg_split =
            subl_node(q1_in, neg2, {}, bottoml_node(q1a), graft(std::move(subs[0]), q1b));
        left_branch = lam_step(Sign::L, q1, l_c2, std::move(neg_split));

        SignedSentence r_c1 = make_signed(Sign::R, mk_app(the_ctx, e1));
        Sequent q2 = seq_with(p1b, r_c1);
        SignedSentence neg1 = make_signed(Sign::R, mk_subset(t1, mk_bottom()));
        Sequent q2_in = seq_with(q2, neg1);
        Sequent q2_wit = seq_with(seq_with(q2_in, make_signed(Sign::L, t1)),
                                  make_signed(Sign::R, mk_bottom()));
        Proof inner = subr_node(q2_in, neg1, {}, axiom_node(q2_wit));
        right_branch = lam_step(Sign::R, q2, r_c1, std::move(inner));
      }

      Proof split = subl_node(p1b, impl, {}, std::move(left_branch), std::move(right_branch));
      Proof contracted = lam_step(Sign::L, p1, red, std::move(split));
      SignedSentence r_top = make_signed(Sign::R, mk_app(lam_top, the_ctx));
      Sequent p2 = seq_with(gamma, r_top);
      SignedSentence topm = make_signed(Sign::R, core_top());
      Sequent p2_in = seq_with(p2, topm);
      Proof right = lam_step(Sign::R, p2, r_top, topr_expansion(p2_in, topm));
      return subl_node(gamma, pr, {the_ctx}, std::move(contracted), std::move(right));
    }
    default:
      throw ExpansionError("not a derived rule");
  }
}

Proof expand_node(const Proof& p, std::vector<Proof> subs) {
  if (is_base_rule(p.rule)) {
    Proof out = p;
    out.premises = std::move(subs);
    return out;
  }
  return expand_impl(p, std::move(subs));
}

}  // namespace

Proof expand_derived(const Proof& p) {
  std::vector<Proof> subs;
  subs.reserve(p.premises.size());
  for (const auto& q : p.premises) subs.push_back(expand_derived(q));
  return expand_node(p, std::move(subs));
}

Verdict check_full(const Proof& p, const Signature& sig) {
  Proof expanded;
  try {
    expanded = expand_derived(p);
  } catch (const Error& e) {
    return Verdict{false, e.what()};
  }
  return check_proof(expanded, sig);
}

size_t proof_size(const Proof& p) {
  size_t n = 1;
  for (const auto& q : p.premises) n += proof_size(q);
  return n;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

using json = nlohmann::ordered_json;

void collect_proof_constants(const Proof& p, std::map<std::string, Type>& out) {
  auto from_term = [&out](const Term& t) {
    std::vector<Term> subs;
    collect_subterms(t, subs);
    for (const auto& s : subs)
      if (s.kind() == Kind::Const) out.emplace(s.const_name(), s.type());
  };
  for (const auto& m : p.conclusion) from_term(m.sentence);
  if (p.data.principal) from_term(p.data.principal->sentence);
  for (const auto& t : p.data.inst) from_term(t);
  for (const auto& t : p.data.fresh) from_term(t);
  for (const auto& q : p.premises) collect_proof_constants(q, out);
}

json signed_to_json(const SignedSentence& s) {
  json j;
  j["sign"] = s.sign == Sign::L ? "L" : "R";
  j["sentence"] = s.key;
  return j;
}

json node_to_json(const Proof& p) {
  json j;
  j["rule"] = rule_name(p.rule);
  j["conclusion"] = print_sequent(p.conclusion);
  if (p.data.principal) j["principal"] = signed_to_json(*p.data.principal);
  if (!p.data.inst.empty()) {
    json arr = json::array();
    for (const auto& t : p.data.inst) arr.push_back(print_term(t));
    j["inst"] = arr;
  }
  if (!p.data.fresh.empty()) {
    json arr = json::array();
    for (const auto& t : p.data.fresh) {
      json c;
      c["name"] = t.const_name();
      c["type"] = print_type(t.type());
      arr.push_back(c);
    }
    j["fresh"] = arr;
  }
  json prem = json::array();
  for (const auto& q : p.premises) prem.push_back(node_to_json(q));
  j["premises"] = prem;
  return j;
}

Proof node_from_json(const json& j, const Signature& sig) {
  Proof p;
  auto rid = rule_from_name(j.at("rule").get<std::string>());
  if (!rid) throw SyntaxError("unknown rule " + j.at("rule").get<std::string>(), 0);
  p.rule = *rid;
  p.conclusion = parse_sequent(j.at("conclusion").get<std::string>(), sig);
  if (j.contains("principal")) {
    const json& pj = j.at("principal");
    Sign s = pj.at("sign").get<std::string>() == "L" ? Sign::L : Sign::R;
    p.data.principal = make_signed(s, parse_term(pj.at("sentence").get<std::string>(), sig));
  }
  if (j.contains("inst"))
    for (const auto& t : j.at("inst"))
      p.data.inst.push_back(parse_term(t.get<std::string>(), sig));
  if (j.contains("fresh"))
    for (const auto& c : j.at("fresh"))
      p.data.fresh.push_back(
          mk_const(c.at("name").get<std::string>(), parse_type(c.at("type").get<std::string>())));
  for (const auto& q : j.at("premises")) p.premises.push_back(node_from_json(q, sig));
  return p;
}

}  // namespace

std::string serialize_proof(const Proof& p) {
  std::map<std::string, Type> consts;
  collect_proof_constants(p, consts);
  json j;
  j["format"] = "itl-proof";
  json cj = json::object();
  for (const auto& [name, type] : consts) cj[name] = print_type(type);
  j["constants"] = cj;
  j["proof"] = node_to_json(p);
  return j.dump(2) + "\n";
}

Proof parse_proof(const std::string& text, const Signature& sig) {
  json j = json::parse(text);
  if (!j.contains("format") || j.at("format") != "itl-proof")
    throw SyntaxError("not an itl-proof file", 0);
  Signature merged = sig;
  for (const auto& [name, type] : j.at("constants").items())
    merged.declare(name, parse_type(type.get<std::string>()));
  return node_from_json(j.at("proof"), merged);
}

}  // namespace itl
