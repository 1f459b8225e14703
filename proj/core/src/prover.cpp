#include "itl/prover.hpp"

#include <algorithm>

#include "itl/error.hpp"
#include "itl/print.hpp"

namespace itl {

std::string SaturationReport::summary() const {
  return hintikka.summary() + "\n  fresh-constants=" + std::to_string(fresh_constants) +
         " axioms-included=" + std::to_string(axioms_included);
}

namespace {

using Clock = std::chrono::steady_clock;

struct Branch {
  Sequent seq;
  std::set<std::string> contracted;                       // "L:<key>" / "R:<key>"
  std::set<std::string> witnessed;                        // R-subset principals done
  std::map<std::string, std::set<std::string>> used;      // principal -> used C-vector keys
  std::map<std::string, int> inst_count;                  // principal -> instantiations spent
  std::map<Type, std::vector<Term>> occ;                  // closed subterms by type
  std::set<std::string> occ_seen;
  int depth = 0;

  void register_sentence(const Term& sentence) {
    std::vector<Term> subs;
    collect_subterms(sentence, subs);
    for (const auto& s : subs) {
      if (!is_closed(s)) continue;
      const std::string& k = print_term(s);
      if (!occ_seen.insert(k).second) continue;
      auto& col = occ[s.type()];
      auto cmp = [](const Term& a, const Term& b) {
        const std::string& pa = print_term(a);
        const std::string& pb = print_term(b);
        if (pa.size() != pb.size()) return pa.size() < pb.size();
        return pa < pb;
      };
      col.insert(std::lower_bound(col.begin(), col.end(), s, cmp), s);
    }
  }
};

struct Result {
  enum class Tag { Closed, Open, Exhausted } tag;
  Proof proof;      // Closed
  Branch open;      // Open
  std::string dim;  // Exhausted
};

Result closed(Proof p) { return {Result::Tag::Closed, std::move(p), {}, {}}; }
Result open_r(Branch b) { return {Result::Tag::Open, {}, std::move(b), {}}; }
Result exhausted(std::string dim) { return {Result::Tag::Exhausted, {}, {}, std::move(dim)}; }

std::string member_mark(const SignedSentence& m) {
  return std::string(1, sign_char(m.sign)) + ":" + m.key;
}

std::string vec_key(const std::vector<Term>& ts) {
  std::string k;
  for (const auto& t : ts) k += print_term(t) + "\x01";
  return k;
}

int reserved_index_max(const std::set<std::string>& names, char tag) {
  int best = -1;
  for (const auto& n : names) {
    if (n.size() < 3 || n[0] != '$' || n[1] != tag) continue;
    int k = 0;
    bool digits = true;
    for (size_t i = 2; i < n.size(); ++i) {
      if (n[i] < '0' || n[i] > '9') { digits = false; break; }
      k = k * 10 + (n[i] - '0');
    }
    if (digits && k > best) best = k;
  }
  return best;
}

struct Engine {
  const Signature& sig;
  const Theory& theory;
  const SearchBudget& budget;
  const TermUniverse& universe;
  const ProveHints* hints;
  Clock::time_point deadline;
  // Lazy mode drops the mandatory clause-5 exhaustion and counts every
  // instantiation against a global cap; used for iterative-deepening proof
  // phases whose open branches are never trusted.
  bool lazy = false;
  int global_cap = 0;
  int global_insts = 0;
  int fresh_counter = 0;
  size_t fresh_used = 0;

  // axiom demand collection for restart rounds
  std::set<std::string> demand_keys;
  std::vector<std::vector<Term>> pending_requests;

  bool time_up() const { return Clock::now() > deadline; }

  // ---- scheme demand -----------------------------------------------------

  bool reserved_free(const Term& t) {
    std::set<std::string> cs;
    collect_constants(t, cs);
    for (const auto& c : cs)
      if (is_reserved_name(c)) return false;
    return true;
  }

  void demand(std::vector<Term> req) {
    for (const auto& t : req)
      if (!reserved_free(t) || !is_closed(t)) return;
    std::string k = vec_key(req);
    if (demand_keys.insert(k).second) pending_requests.push_back(std::move(req));
  }

  // Collect scheme-fitting material from a sentence: argument-position
  // redexes for beta, eta-shaped lambdas, world-style applications for W2/W3.
  void collect_demands(const Term& sentence) {
    if (theory.schemes.empty()) return;
    bool want_beta = false, want_eta = false, want_w2 = false, want_w3 = false;
    for (const auto& s : theory.schemes) {
      if (s.kind == SchemeKind::Beta) want_beta = true;
      if (s.kind == SchemeKind::Eta) want_eta = true;
      if (s.kind == SchemeKind::W2) want_w2 = true;
      if (s.kind == SchemeKind::W3) want_w3 = true;
    }
    if (!want_beta && !want_eta && !want_w2 && !want_w3) return;

    // skip the head spine of the sentence itself; LamL/LamR own those
    std::set<const TermNode*> head_spine;
    {
      Term h = sentence;
      while (h.kind() == Kind::App) {
        head_spine.insert(h.raw());
        h = h.fun();
      }
    }
    std::vector<Term> subs;
    collect_subterms(sentence, subs);
    for (const auto& s : subs) {
      if (want_beta && s.kind() == Kind::App && !head_spine.count(s.raw())) {
        if (auto spine = decompose_redex(s)) {
          if (is_closed(spine->lam) && is_closed(spine->arg)) {
            if (reserved_free(spine->arg)) {
              demand({spine->lam, spine->arg});
            } else {
              // fresh-constant arguments cannot enter root axioms; demand the
              // variable-generalized instance and let the search instantiate
              demand({spine->lam, mk_var(Var{"b0", spine->arg.type()})});
            }
          }
        }
      }
      if (want_eta && s.kind() == Kind::Lam && is_closed(s)) {
        const Term& b = s.body();
        if (b.kind() == Kind::App && b.arg().kind() == Kind::Variable &&
            b.arg().var() == s.var() && !free_vars(b.fun()).count(s.var()))
          demand({s});
      }
      if (want_w2 && s.kind() == Kind::App && s.arg().kind() == Kind::Subset &&
          is_closed(s.arg()))
        demand({s.arg().lhs(), s.arg().rhs()});
      if (want_w3 && s.kind() == Kind::App && s.arg().kind() == Kind::App &&
          is_closed(s.arg()) && s.arg().fun().type() == Type::complex({Type::prop()}))
        demand({s.arg().arg()});
    }
  }

  // ---- instantiation candidates -------------------------------------------

  static std::vector<std::vector<Term>> product(const std::vector<std::vector<Term>>& cols,
                                                size_t cap) {
    std::vector<std::vector<Term>> tuples;
    for (const auto& c : cols)
      if (c.empty()) return tuples;
    if (cols.empty()) return tuples;
    std::vector<size_t> idx(cols.size(), 0);
    while (tuples.size() < cap) {
      std::vector<Term> tup;
      for (size_t i = 0; i < cols.size(); ++i) tup.push_back(cols[i][idx[i]]);
      tuples.push_back(std::move(tup));
      size_t pos = 0;
      while (pos < cols.size() && ++idx[pos] == cols[pos].size()) idx[pos++] = 0;
      if (pos == cols.size()) break;
    }
    return tuples;
  }

  // Leibniz-negative contexts lam v. H v -> bot over the occurring H. These
  // recover the symmetric direction of the defined equality, which the
  // one-sided desugaring cannot reach with plain occurring terms.
  static void push_negated(const std::vector<Term>& base, const Type& at,
                           std::set<std::string>& seen, std::vector<Term>& col) {
    if (!at.is_complex() || at.arity() != 1) return;
    Var v{"$n", at.args()[0]};
    for (const auto& h : base) {
      if (h.kind() == Kind::Lam && h.body().kind() == Kind::Subset &&
          h.body().rhs().kind() == Kind::Bottom)
        continue;  // don't stack negations
      Term wrapped = mk_lam(v, mk_subset(mk_app(h, mk_var(v)), mk_bottom()));
      if (seen.insert(print_term(wrapped)).second) col.push_back(wrapped);
    }
  }

  // Mandatory instantiations mirror bounded Hintikka clause 5: closed terms
  // occurring in the branch, canonical inhabitants, plus negative contexts
  // over the occurring terms (open verdicts are unsound without those on
  // equation-shaped members). Never capped.
  std::vector<std::vector<Term>> mandatory_vectors(const Branch& br,
                                                   const SignedSentence& principal) {
    const Type& subset_type = principal.sentence.lhs().type();
    // Clause-5 coverage is the occurring-term approximation; negative
    // contexts stay in the budgeted phase, where proofs pick them up.
    bool is_equation = false;
    (void)principal;
    std::vector<std::vector<Term>> cols;
    static const std::vector<Term> kNone;
    for (const auto& at : subset_type.args()) {
      auto occ_it = br.occ.find(at);
      const std::vector<Term>& base = occ_it == br.occ.end() ? kNone : occ_it->second;
      std::vector<Term> col = base;
      std::set<std::string> seen;
      for (const auto& t : col) seen.insert(print_term(t));
      if (at.is_complex()) {
        Term inh = TermUniverse::canonical_inhabitant(at);
        if (seen.insert(print_term(inh)).second) col.push_back(inh);
      }
      if (is_equation) push_negated(base, at, seen, col);
      cols.push_back(std::move(col));
    }
    return product(cols, 4096);
  }

  std::vector<std::vector<Term>> optional_vectors(const Branch& br,
                                                  const SignedSentence& principal, size_t cap) {
    const Type& subset_type = principal.sentence.lhs().type();
    // Negative contexts recover the symmetric direction of the defined
    // equality; other principals only see plain occurring and universe terms.
    bool is_equation = match_equation(principal.sentence).has_value();
    std::vector<std::vector<Term>> cols;
    static const std::vector<Term> kNone;
    for (const auto& at : subset_type.args()) {
      auto occ_it = br.occ.find(at);
      const std::vector<Term>& base = occ_it == br.occ.end() ? kNone : occ_it->second;
      std::vector<Term> col = base;
      std::set<std::string> seen;
      for (const auto& t : col) seen.insert(print_term(t));
      if (is_equation) push_negated(base, at, seen, col);
      for (const auto& t : universe.terms_of(at))
        if (seen.insert(print_term(t)).second) col.push_back(t);
      cols.push_back(std::move(col));
    }
    return product(cols, cap);
  }

  // ---- engine --------------------------------------------------------------

  Branch extend(const Branch& br, std::initializer_list<SignedSentence> adds) {
    Branch out = br;
    for (const auto& a : adds) {
      out.seq.insert(a);
      out.register_sentence(a.sentence);
      collect_demands(a.sentence);
    }
    out.depth += 1;
    return out;
  }

  struct TraceStep {
    RuleId rule;
    RuleData data;
    std::vector<SignedSentence> new_adds;
  };

  // applies a linear (single-premise) step in place
  void apply_linear(Branch& br, std::vector<TraceStep>& trace, RuleId rule, RuleData data,
                    const std::vector<SignedSentence>& adds) {
    TraceStep step{rule, std::move(data), {}};
    for (const auto& a : adds) {
      if (br.seq.count(a)) continue;
      br.seq.insert(a);
      br.register_sentence(a.sentence);
      collect_demands(a.sentence);
      step.new_adds.push_back(a);
    }
    br.depth += 1;
    if (!step.new_adds.empty()) trace.push_back(std::move(step));
  }

  // rebuilds the linear chain above a closed subtree; parent conclusions are
  // recovered by removing each step's genuinely new additions
  Proof wrap(const std::vector<TraceStep>& trace, Proof leaf) {
    Proof cur = std::move(leaf);
    Sequent s = cur.conclusion;
    for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
      for (const auto& a : it->new_adds) s.erase(a);
      Proof node;
      node.conclusion = s;
      node.rule = it->rule;
      node.data = it->data;
      node.premises.push_back(std::move(cur));
      cur = std::move(node);
    }
    return cur;
  }

  Result solve(Branch br) {
    std::vector<TraceStep> trace;
    while (true) {
      if (time_up()) return exhausted("time");
      // closure
      if (seq_contains(br.seq, make_signed(Sign::L, mk_bottom())))
        return closed(wrap(trace, Proof{br.seq, RuleId::BottomL, {}, {}}));
      for (const auto& m : br.seq)
        if (m.sign == Sign::L &&
            seq_contains(br.seq, SignedSentence{Sign::R, m.sentence, m.key}))
          return closed(wrap(trace, Proof{br.seq, RuleId::Axiom, {}, {}}));
      if (br.depth >= budget.max_depth) return exhausted("depth");

      // 1. contractions
      bool stepped = false;
      for (const auto& m : br.seq) {
        if (br.contracted.count(member_mark(m))) continue;
        auto spine = decompose_redex(m.sentence);
        if (!spine) continue;
        if (!is_free_for(spine->arg, spine->lam.var(), spine->lam.body())) continue;
        SignedSentence contractum = make_signed(m.sign, contract_redex(*spine));
        SignedSentence principal = m;
        br.contracted.insert(member_mark(m));
        if (!seq_contains(br.seq, contractum))
          apply_linear(br, trace, principal.sign == Sign::L ? RuleId::LamL : RuleId::LamR,
                       RuleData{principal, {}, {}}, {contractum});
        stepped = true;
        break;
      }
      if (stepped) continue;

      // 2. witnesses for R-subsets
      for (const auto& m : br.seq) {
        if (m.sign != Sign::R || m.sentence.kind() != Kind::Subset) continue;
        if (br.witnessed.count(m.key)) continue;
        SignedSentence principal = m;
        br.witnessed.insert(m.key);
        const Type& ty = principal.sentence.lhs().type();
        std::vector<Term> cs;
        for (const auto& at : ty.args()) {
          cs.push_back(mk_const("$c" + std::to_string(fresh_counter++), at));
          ++fresh_used;
        }
        SignedSentence la = make_signed(Sign::L, apply_all(principal.sentence.lhs(), cs));
        SignedSentence ra = make_signed(Sign::R, apply_all(principal.sentence.rhs(), cs));
        if (!seq_contains(br.seq, la) || !seq_contains(br.seq, ra))
          apply_linear(br, trace, RuleId::SubR, RuleData{principal, {}, std::move(cs)},
                       {la, ra});
        stepped = true;
        break;
      }
      if (stepped) continue;

      // 3. an L-subset instance: propositional ones eagerly, hinted vectors
      //    next, then fair universe instantiation.
      struct Pick {
        SignedSentence principal;
        std::vector<Term> vec;
      };
      std::optional<Pick> pick;

      auto satisfied = [&](const SignedSentence& m, const std::vector<Term>& vec) {
        return seq_contains(br.seq, make_signed(Sign::L, apply_all(m.sentence.rhs(), vec))) ||
               seq_contains(br.seq, make_signed(Sign::R, apply_all(m.sentence.lhs(), vec)));
      };
      auto try_vec = [&](const SignedSentence& m, const std::vector<Term>& vec) {
        std::string vk = vec_key(vec);
        if (br.used[m.key].count(vk)) return false;
        if (satisfied(m, vec)) {
          br.used[m.key].insert(vk);
          return false;
        }
        pick = Pick{m, vec};
        return true;
      };
      // an addition that clashes or is L:bot closes its child on the spot
      auto immediate = [&](Sign sign, const Term& t) {
        if (sign == Sign::L && t.kind() == Kind::Bottom) return true;
        SignedSentence other = make_signed(sign == Sign::L ? Sign::R : Sign::L, t);
        return seq_contains(br.seq, other);
      };
      auto propagating = [&](const SignedSentence& m) {
        return immediate(Sign::L, m.sentence.rhs()) || immediate(Sign::R, m.sentence.lhs());
      };

      // propositional splits with an immediately closing side come first;
      // the rest wait until nothing else is left, so junk conjuncts never
      // double the remaining search
      for (const auto& m : br.seq) {
        if (pick) break;
        if (m.sign != Sign::L || m.sentence.kind() != Kind::Subset) continue;
        if (m.sentence.lhs().type().arity() != 0) continue;
        if (!propagating(m)) continue;
        try_vec(m, {});
      }
      // hinted instantiations
      if (!pick && hints) {
        for (const auto& m : br.seq) {
          if (pick) break;
          if (m.sign != Sign::L || m.sentence.kind() != Kind::Subset) continue;
          auto it = hints->instantiations.find(m.key);
          if (it == hints->instantiations.end()) continue;
          for (const auto& vec : it->second) {
            if (vec.size() != m.sentence.lhs().type().arity()) continue;
            if (try_vec(m, vec)) break;
          }
        }
      }
      // mandatory instantiations: occurring terms and canonical inhabitants
      if (!pick && !lazy) {
        for (const auto& m : br.seq) {
          if (pick) break;
          if (m.sign != Sign::L || m.sentence.kind() != Kind::Subset) continue;
          if (m.sentence.lhs().type().arity() < 1) continue;
          for (const auto& vec : mandatory_vectors(br, m))
            if (try_vec(m, vec)) break;
        }
      }
      // optional universe instantiation: fair, least-spent principal first
      if (!pick) {
        if (!lazy || global_insts < global_cap) {
          std::vector<const SignedSentence*> principals;
          for (const auto& m : br.seq)
            if (m.sign == Sign::L && m.sentence.kind() == Kind::Subset &&
                m.sentence.lhs().type().arity() >= 1)
              principals.push_back(&m);
          std::stable_sort(principals.begin(), principals.end(),
                           [&](const SignedSentence* a, const SignedSentence* b) {
                             return br.inst_count[a->key] < br.inst_count[b->key];
                           });
          for (const auto* mp : principals) {
            if (pick) break;
            if (br.inst_count[mp->key] >= budget.max_instantiations) continue;
            auto tuples = optional_vectors(br, *mp, 512);
            for (const auto& vec : tuples)
              if (try_vec(*mp, vec)) break;
          }
          if (pick && lazy) ++global_insts;
        } else if (lazy) {
          return exhausted("instantiations");
        }
      }
      // deferred non-propagating propositional splits
      if (!pick) {
        for (const auto& m : br.seq) {
          if (pick) break;
          if (m.sign != Sign::L || m.sentence.kind() != Kind::Subset) continue;
          if (m.sentence.lhs().type().arity() != 0) continue;
          try_vec(m, {});
        }
      }

      if (!pick) {
        if (lazy) return exhausted("instantiations");
        // saturated under the budgeted universe
        return open_r(std::move(br));
      }

      SignedSentence principal = pick->principal;
      std::vector<Term> vec = pick->vec;
      br.used[principal.key].insert(vec_key(vec));
      if (!vec.empty()) br.inst_count[principal.key] += 1;
      SignedSentence la = make_signed(Sign::L, apply_all(principal.sentence.rhs(), vec));
      SignedSentence ra = make_signed(Sign::R, apply_all(principal.sentence.lhs(), vec));

      Branch left = br;
      left.seq.insert(la);
      left.register_sentence(la.sentence);
      collect_demands(la.sentence);
      left.depth += 1;
      Result rl = solve(std::move(left));
      if (rl.tag != Result::Tag::Closed) return rl;

      Sequent conclusion = br.seq;
      Branch right = std::move(br);
      right.seq.insert(ra);
      right.register_sentence(ra.sentence);
      collect_demands(ra.sentence);
      right.depth += 1;
      Result rr = solve(std::move(right));
      if (rr.tag != Result::Tag::Closed) return rr;

      Proof node;
      node.conclusion = std::move(conclusion);
      node.rule = RuleId::SubL;
      node.data = RuleData{principal, std::move(vec), {}};
      node.premises.push_back(std::move(rl.proof));
      node.premises.push_back(std::move(rr.proof));
      return closed(wrap(trace, std::move(node)));
    }
  }
};

// Scheme requests gathered by demand heuristics are best effort: apply every
// scheme that fits and ignore tuples that fit none.
std::vector<Term> lenient_instances(const Theory& th, const std::vector<Term>& req) {
  std::vector<Term> out;
  for (const auto& sch : th.schemes) {
    auto inst = sch.make(req);
    if (inst) out.push_back(desugar(*inst));
  }
  return out;
}

SearchOutcome run_search(const Sequent& goal, const Theory& theory, const SearchBudget& budget,
                         const Signature& sig, const ProveHints* hints) {
  Signature full = sig.merged(theory.extra_sig);
  SearchOutcome out;
  std::vector<Term> axioms;
  std::set<std::string> axiom_keys;
  Clock::time_point deadline = Clock::now() + budget.time_limit;

  auto admit = [&](const Term& inst) {
    std::string k = print_term(inst);
    if (axiom_keys.count(k)) return false;
    if ((int)axioms.size() >= budget.max_axiom_instances) return false;
    axiom_keys.insert(k);
    axioms.push_back(inst);
    return true;
  };

  for (const auto& ax : theory.axioms) admit(desugar(ax));
  if (hints)
    for (const auto& req : hints->scheme_requests)
      for (const auto& inst : lenient_instances(theory, req)) admit(inst);

  // one attempt at the current axiom set; lazy attempts iteratively deepen
  // the instantiation budget and only trust Closed results
  TermUniverse universe(full, budget.universe_depth);
  auto attempt = [&](bool lazy, int cap, Result& r, size_t& fresh_used) -> bool /* widened */ {
    Engine eng{full, theory, budget, universe, hints, deadline, lazy, cap};
    for (const auto& m : goal) eng.collect_demands(m.sentence);
    Branch root;
    root.seq = goal;
    for (const auto& m : goal) root.register_sentence(m.sentence);
    for (const auto& ax : axioms) {
      root.seq.insert(make_signed(Sign::L, ax));
      root.register_sentence(ax);
      eng.collect_demands(ax);
    }
    size_t before_root = axioms.size();
    for (const auto& req : eng.pending_requests)
      for (const auto& inst : lenient_instances(theory, req)) admit(inst);
    if (axioms.size() > before_root) {
      r = exhausted("axioms changed");
      return true;
    }
    eng.fresh_counter = reserved_index_max(sequent_constants(root.seq), 'c') + 1;
    r = eng.solve(root);
    fresh_used = eng.fresh_used;
    bool widened = false;
    for (const auto& req : eng.pending_requests)
      for (const auto& inst : lenient_instances(theory, req))
        if (admit(inst)) widened = true;
    return widened;
  };

  for (int round = 0; round < 16; ++round) {
    out.axioms_used = axioms;
    Result r{Result::Tag::Exhausted, {}, {}, ""};
    size_t fresh_used = 0;

    // proof phase: lazy instantiation, deepened
    bool widened = false;
    for (int cap : {8, 32, 128, 512, 4096}) {
      widened = attempt(true, cap, r, fresh_used) || widened;
      if (r.tag == Result::Tag::Closed) break;
      if (Clock::now() > deadline) break;
      if (budget.proof_only && cap == 4096) break;
    }
    // saturation phase: exhaustive over occurring terms and inhabitants
    if (!budget.proof_only && r.tag != Result::Tag::Closed && Clock::now() <= deadline)
      widened = attempt(false, 0, r, fresh_used) || widened;

    if (r.tag == Result::Tag::Closed) {
      // kernel re-check is part of the contract, not an optional extra
      Verdict v = check_proof(r.proof, full);
      if (!v.valid) throw Error("search produced a proof the kernel rejects: " + v.reason);
      out.status = SearchOutcome::Status::ProofFound;
      out.proof = std::move(r.proof);
      out.axioms_used = axioms;
      return out;
    }
    if (widened && Clock::now() <= deadline) continue;

    out.axioms_used = axioms;
    if (r.tag == Result::Tag::Open) {
      out.status = SearchOutcome::Status::OpenBranch;
      out.branch = r.open.seq;
      SaturationReport rep;
      rep.hintikka = check_hintikka(r.open.seq, universe);
      rep.fresh_constants = fresh_used;
      rep.axioms_included = axioms.size();
      out.report = rep;
      return out;
    }
    out.status = SearchOutcome::Status::Exhausted;
    out.exhausted_dimension = r.dim;
    return out;
  }
  out.status = SearchOutcome::Status::Exhausted;
  out.exhausted_dimension = "axiom rounds";
  return out;
}

}  // namespace

SearchOutcome prove(const Sequent& goal, const Theory& theory, const SearchBudget& budget,
                    const Signature& sig) {
  return run_search(goal, theory, budget, sig, nullptr);
}

SearchOutcome saturate(const Sequent& goal, const SearchBudget& budget, const Signature& sig) {
  Theory empty;
  empty.name = "empty";
  return run_search(goal, empty, budget, sig, nullptr);
}

SearchOutcome prove_with_hints(const Sequent& goal, const Theory& theory,
                               const SearchBudget& budget, const Signature& sig,
                               const ProveHints& hints) {
  return run_search(goal, theory, budget, sig, &hints);
}

}  // namespace itl
