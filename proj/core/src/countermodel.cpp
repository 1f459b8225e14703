#include "itl/countermodel.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstdio>

#include "itl/error.hpp"
#include "itl/print.hpp"

namespace itl {

namespace {

struct Builder {
  const Sequent& seq;
  const Signature& sig;

  std::set<Type> needed;                       // domain types
  std::map<Type, std::vector<Term>> carriers;  // terms backing each domain, sorted
  std::map<std::string, Extension> ext_memo;   // term print -> computed extension
  std::set<std::string> in_progress;

  void need(const Type& ty) {
    if (!needed.insert(ty).second) return;
    for (const auto& a : ty.args()) need(a);
  }

  void collect_needed() {
    for (const auto& m : seq) {
      std::vector<Term> subs;
      collect_subterms(m.sentence, subs);
      for (const auto& s : subs)
        if (is_closed(s)) need(s.type());
    }
  }

  void build_carriers() {
    for (const auto& ty : needed) {
      std::vector<Term> terms;
      std::set<std::string> seen;
      auto add = [&](const Term& t) {
        if (seen.insert(print_term(t)).second) terms.push_back(t);
      };
      if (ty.is_basic()) {
        for (const auto& [name, cty] : sig.constants)
          if (cty == ty) add(mk_const(name, cty));
        if (terms.empty())
          throw ValidationFailed("basic type " + print_type(ty) +
                                 " has no constant to inhabit its domain");
      } else {
        for (const auto& m : seq) {
          std::vector<Term> subs;
          collect_subterms(m.sentence, subs);
          for (const auto& s : subs)
            if (is_closed(s) && s.type() == ty) add(s);
        }
        add(TermUniverse::canonical_inhabitant(ty));
      }
      std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        return print_term(a) < print_term(b);
      });
      carriers.emplace(ty, std::move(terms));
    }
  }

  Token token_of(const Term& t) const { return print_term(t); }

  bool left_member(const Term& sentence) const {
    return seq_contains(seq, make_signed(Sign::L, sentence));
  }

  // The Takahashi-Prawitz possible extension of a closed term, by term
  // induction with the domains fixed. Constants take exactly the L-forced
  // tuples; everything else follows the model clauses.
  bool used_default = false;

  // The forcing rule: tuples whose full application is an L member are in,
  // everything else is out. Constants take exactly this; it also seeds the
  // fixpoint pass for terms caught in self-application loops.
  Extension forced_extension(const Term& t) {
    Extension out;
    const Type& ty = t.type();
    std::vector<const std::vector<Term>*> cols;
    bool feasible = true;
    for (const auto& at : ty.args()) {
      auto c = carriers.find(at);
      if (c == carriers.end() || c->second.empty()) feasible = false;
      else cols.push_back(&c->second);
    }
    if (cols.empty()) {
      if (left_member(t)) out.tuples.insert(std::vector<Token>{});
      return out;
    }
    if (!feasible) return out;
    std::vector<size_t> idx(cols.size(), 0);
    while (true) {
      Term app = t;
      std::vector<Token> tup;
      for (size_t i = 0; i < cols.size(); ++i) {
        app = mk_app(app, (*cols[i])[idx[i]]);
        tup.push_back(token_of((*cols[i])[idx[i]]));
      }
      if (left_member(app)) out.tuples.insert(tup);
      size_t pos = 0;
      while (pos < cols.size() && ++idx[pos] == cols[pos]->size()) idx[pos++] = 0;
      if (pos == cols.size()) break;
    }
    return out;
  }

  Extension extension_of(const Term& t) {
    std::string key = print_term(t);
    auto it = ext_memo.find(key);
    if (it != ext_memo.end()) return it->second;
    if (!in_progress.insert(key).second) {
      // self-application loop through a spawned term; seed with the branch's
      // own forced values and let the fixpoint pass below settle the rest
      used_default = true;
      return forced_extension(t);
    }

    Extension out;
    switch (t.kind()) {
      case Kind::Bottom:
        break;
      case Kind::Const: {
        if (!t.type().is_complex()) throw ValidationFailed("extension of basic-typed constant");
        out = forced_extension(t);
        break;
      }
      case Kind::App: {
        Extension f = extension_of(t.fun());
        Token d = token_of(t.arg());
        for (const auto& tup : f.tuples) {
          if (tup.empty() || tup[0] != d) continue;
          out.tuples.insert(std::vector<Token>(tup.begin() + 1, tup.end()));
        }
        break;
      }
      case Kind::Lam: {
        auto dom = carriers.find(t.var().type);
        if (dom == carriers.end())
          throw ValidationFailed("no carrier for binder type " + print_type(t.var().type));
        for (const auto& w : dom->second) {
          Term inst = subst_one(t.body(), t.var(), w);
          Extension sub = extension_of(inst);
          for (const auto& tup : sub.tuples) {
            std::vector<Token> wide;
            wide.push_back(token_of(w));
            for (const auto& x : tup) wide.push_back(x);
            out.tuples.insert(std::move(wide));
          }
        }
        break;
      }
      case Kind::Subset: {
        Extension l = extension_of(t.lhs());
        Extension r = extension_of(t.rhs());
        out = Extension::boolean(l.subset_of(r));
        break;
      }
      default:
        throw ValidationFailed("non-core term in countermodel construction");
    }
    in_progress.erase(key);
    ext_memo.emplace(key, out);
    return out;
  }

  FiniteModel run() {
    collect_needed();
    if (needed.empty()) need(Type::prop());
    build_carriers();

    FiniteModel m;
    m.sig = sig;
    for (const auto& [ty, terms] : carriers) {
      std::vector<Token> toks;
      for (const auto& t : terms) toks.push_back(token_of(t));
      m.domains.emplace(ty, std::move(toks));
    }
    for (const auto& [ty, terms] : carriers) {
      for (const auto& t : terms) {
        Token tok = token_of(t);
        if (t.kind() == Kind::Const)
          m.const_intension.emplace(t.const_name(), tok);
        else
          m.term_intension.emplace(print_term(t), tok);
        if (ty.is_complex()) m.extensions.emplace(tok, extension_of(t));
      }
    }
    // constants of complex type that occur get both tables
    for (const auto& [ty, terms] : carriers)
      for (const auto& t : terms)
        if (t.kind() == Kind::Const) m.term_intension.emplace(print_term(t), token_of(t));
    m.reindex();

    // Cyclic defaults may disagree with compositional evaluation; iterate
    // the compound entries until the table is a fixpoint of eval.
    for (int iter = 0; used_default; ++iter) {
      if (iter >= 8) throw ValidationFailed("extension table does not reach a fixpoint");
      bool changed = false;
      std::map<Token, Extension> fresh;
      for (const auto& [ty, terms] : carriers) {
        if (!ty.is_complex()) continue;
        for (const auto& t : terms) {
          if (t.kind() == Kind::Const) continue;
          Extension e;
          try {
            e = eval_extension(m, {}, t);
          } catch (const CarrierEscape& esc) {
            throw ValidationFailed(std::string("fixpoint pass escaped the carrier: ") +
                                   esc.what());
          }
          if (!(e == m.extensions.at(token_of(t)))) changed = true;
          fresh.emplace(token_of(t), std::move(e));
        }
      }
      for (auto& [tok, e] : fresh) m.extensions[tok] = std::move(e);
      if (!changed) break;
    }
    return m;
  }
};

}  // namespace

FiniteModel build_countermodel(const Sequent& seq, const Signature& sig) {
  // The signature must cover every constant in the sequent, including the
  // reserved witnesses introduced by saturation.
  Signature full = sig;
  for (const auto& m : seq) {
    std::vector<Term> subs;
    collect_subterms(m.sentence, subs);
    for (const auto& s : subs)
      if (s.kind() == Kind::Const) full.declare(s.const_name(), s.type());
  }

  Builder b{seq, full};
  FiniteModel m = b.run();

  try {
    if (!refutes(m, seq)) {
      if (std::getenv("ITL_CM_DEBUG")) {
        for (const auto& member : seq) {
          bool want = member.sign == Sign::L;
          bool got = eval_extension(m, {}, member.sentence).truth();
          if (got != want)
            fprintf(stderr, "mismatch %c: %s -> %d\n", sign_char(member.sign),
                    member.key.c_str(), (int)got);
        }
      }
      throw ValidationFailed("constructed model does not refute the sequent");
    }
  } catch (const CarrierEscape& e) {
    throw ValidationFailed(std::string("carrier escape during refutation check: ") + e.what());
  }
  std::vector<Term> probes;
  for (const auto& member : seq) probes.push_back(member.sentence);
  ModelReport rep = check_model(m, probes);
  if (!rep.ok()) throw ValidationFailed("countermodel fails check_model: " + rep.summary());
  return m;
}

}  // namespace itl
