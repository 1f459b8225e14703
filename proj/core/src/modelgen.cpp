#include "itl/modelgen.hpp"

#include <algorithm>

#include "itl/error.hpp"
#include "itl/print.hpp"
#include "itl/universe.hpp"

namespace itl {

namespace {

struct Rng {
  uint64_t s;
  uint64_t next() {
    s += 0x9e3779b97f4a7c15ULL;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  bool flip() { return next() & 1; }
};

struct Gen {
  std::vector<Term> probes;
  Signature sig;
  Rng rng;
  size_t max_tuples;
  std::map<std::string, std::string> alias;  // constant -> canonical constant

  std::set<Type> needed;
  std::map<Type, std::vector<Term>> carriers;         // canonical terms, deduped
  std::map<Type, std::vector<Term>> raw_terms;        // incl. alias originals
  std::map<std::string, Extension> sep_ext;           // separator constant -> ext
  std::map<std::string, Extension> ext_memo;          // canonical print -> ext
  std::set<std::string> in_progress;

  void need(const Type& ty) {
    if (!needed.insert(ty).second) return;
    for (const auto& a : ty.args()) need(a);
  }

  Term canon(const Term& t) {
    switch (t.kind()) {
      case Kind::Const: {
        auto it = alias.find(t.const_name());
        if (it == alias.end()) return t;
        return mk_const(it->second, t.type());
      }
      case Kind::Variable:
      case Kind::Bottom:
        return t;
      case Kind::App:
        return mk_app(canon(t.fun()), canon(t.arg()));
      case Kind::Lam:
        return mk_lam(t.var(), canon(t.body()));
      case Kind::Subset:
        return mk_subset(canon(t.lhs()), canon(t.rhs()));
      default:
        throw ValidationFailed("non-core probe term");
    }
  }

  Token token_of(const Term& t) { return print_term(canon(t)); }

  Extension random_extension(const Type& ty) {
    Extension out;
    std::vector<const std::vector<Term>*> cols;
    for (const auto& at : ty.args()) cols.push_back(&carriers.at(at));
    if (cols.empty()) return Extension::boolean(rng.flip());
    std::vector<size_t> idx(cols.size(), 0);
    size_t produced = 0;
    while (produced < max_tuples * 4) {
      ++produced;
      if (rng.flip() && out.tuples.size() < max_tuples) {
        std::vector<Token> tup;
        for (size_t i = 0; i < cols.size(); ++i) tup.push_back(token_of((*cols[i])[idx[i]]));
        out.tuples.insert(std::move(tup));
      }
      size_t pos = 0;
      while (pos < cols.size() && ++idx[pos] == cols[pos]->size()) idx[pos++] = 0;
      if (pos == cols.size()) break;
    }
    return out;
  }

  // canonical term expected
  bool used_default = false;

  Extension extension_of(const Term& t) {
    std::string key = print_term(t);
    auto it = ext_memo.find(key);
    if (it != ext_memo.end()) return it->second;
    if (!in_progress.insert(key).second) {
      // self-application loop; the fixpoint pass below settles the value
      used_default = true;
      return Extension{};
    }

    Extension out;
    switch (t.kind()) {
      case Kind::Bottom:
        break;
      case Kind::Const: {
        auto sep = sep_ext.find(t.const_name());
        if (sep != sep_ext.end()) out = sep->second;
        else out = random_extension(t.type());
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
        for (const auto& w : carriers.at(t.var().type)) {
          Extension sub = extension_of(canon(subst_one(t.body(), t.var(), w)));
          for (const auto& tup : sub.tuples) {
            std::vector<Token> wide;
            wide.push_back(token_of(w));
            for (const auto& x : tup) wide.push_back(x);
            out.tuples.insert(std::move(wide));
          }
        }
        break;
      }
      case Kind::Subset:
        out = Extension::boolean(extension_of(t.lhs()).subset_of(extension_of(t.rhs())));
        break;
      default:
        throw ValidationFailed("non-core probe term");
    }
    in_progress.erase(key);
    ext_memo.emplace(key, out);
    return out;
  }

  FiniteModel run(int spares, bool separators) {
    for (const auto& p : probes) {
      std::vector<Term> subs;
      collect_subterms(p, subs);
      for (const auto& s : subs) {
        if (s.kind() == Kind::Const) sig.declare(s.const_name(), s.type());
        if (is_closed(s)) need(s.type());
      }
    }
    need(Type::prop());

    // spares enrich every domain; basic types must end up inhabited
    int m_counter = 0;
    for (const auto& ty : needed) {
      bool has_const = false;
      for (const auto& [name, cty] : sig.constants)
        if (cty == ty) has_const = true;
      int want = spares + (ty.is_basic() && !has_const ? 1 : 0);
      for (int i = 0; i < want; ++i)
        sig.declare("$m" + std::to_string(m_counter++), ty);
    }

    // carriers smallest type first, so separator counts see final domains
    std::vector<Type> order(needed.begin(), needed.end());
    std::sort(order.begin(), order.end(), [](const Type& a, const Type& b) {
      std::string pa = print_type(a), pb = print_type(b);
      if (pa.size() != pb.size()) return pa.size() < pb.size();
      return pa < pb;
    });
    int s_counter = 0;
    for (const auto& ty : order) {
      std::vector<Term> terms;
      std::set<std::string> seen_tok;
      std::vector<Term> raw;
      auto add = [&](const Term& t) {
        raw.push_back(t);
        if (seen_tok.insert(token_of(t)).second) terms.push_back(canon(t));
      };
      for (const auto& [name, cty] : sig.constants)
        if (cty == ty) add(mk_const(name, cty));
      for (const auto& p : probes) {
        std::vector<Term> subs;
        collect_subterms(p, subs);
        for (const auto& s : subs)
          if (is_closed(s) && s.type() == ty) add(s);
      }
      if (ty.is_complex()) add(TermUniverse::canonical_inhabitant(ty));
      // singleton separators over the (final) carrier of the argument type;
      // with these, the defined equality relates tokens only to themselves
      if (separators && ty.is_complex() && ty.arity() == 1 && carriers.count(ty.args()[0])) {
        const auto& base = carriers.at(ty.args()[0]);
        for (size_t i = 0; i < base.size(); ++i) {
          std::string name = "$s" + std::to_string(s_counter++);
          sig.declare(name, ty);
          Extension e;
          e.tuples.insert({token_of(base[i])});
          sep_ext.emplace(name, std::move(e));
          add(mk_const(name, ty));
        }
      }
      std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        return print_term(a) < print_term(b);
      });
      carriers.emplace(ty, std::move(terms));
      raw_terms.emplace(ty, std::move(raw));
    }

    FiniteModel m;
    m.sig = sig;
    for (const auto& [ty, terms] : carriers) {
      std::vector<Token> toks;
      for (const auto& t : terms) toks.push_back(print_term(t));
      m.domains.emplace(ty, std::move(toks));
    }
    for (const auto& [ty, terms] : carriers)
      for (const auto& t : terms)
        if (ty.is_complex()) m.extensions.emplace(print_term(t), extension_of(t));
    for (const auto& [ty, terms] : raw_terms)
      for (const auto& t : terms) {
        Token tok = token_of(t);
        if (t.kind() == Kind::Const) m.const_intension.emplace(t.const_name(), tok);
        m.term_intension.emplace(print_term(t), tok);
        m.term_intension.emplace(tok, tok);  // canonical print as well
      }
    m.reindex();

    // cyclic defaults must settle into a fixpoint of evaluation
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
          if (!(e == m.extensions.at(print_term(t)))) changed = true;
          fresh.emplace(print_term(t), std::move(e));
        }
      }
      for (auto& [tok, e] : fresh) m.extensions[tok] = std::move(e);
      if (!changed) break;
    }
    return m;
  }
};

}  // namespace

FiniteModel random_model(const std::vector<Term>& probes, const Signature& sig,
                         const GenOptions& opt) {
  std::vector<Term> core;
  core.reserve(probes.size());
  for (const auto& p : probes) core.push_back(desugar(p));
  std::map<std::string, std::string> alias;
  for (const auto& [from, to] : opt.alias_constants) alias[from] = to;
  for (uint64_t attempt = 0; attempt < 8; ++attempt) {
    Gen g;
    g.probes = core;
    g.sig = sig;
    g.rng = Rng{opt.seed + attempt * 0x1000193ULL};
    g.max_tuples = opt.max_tuples;
    g.alias = alias;
    try {
      return g.run(opt.spares_per_type, opt.separators);
    } catch (const ValidationFailed&) {
      if (attempt == 7) throw;
    }
  }
  throw ValidationFailed("random_model: unreachable");
}

FiniteModel inject_duplicate(const FiniteModel& m, const Type& type, size_t idx) {
  auto dom = m.domains.find(type);
  if (dom == m.domains.end() || idx >= dom->second.size())
    throw Error("inject_duplicate: no such token");
  Token d = dom->second[idx];
  Token d2 = d + "@dup";
  int k = 0;
  while (m.token_type.count(d2)) d2 = d + "@dup" + std::to_string(++k);

  FiniteModel out = m;
  out.domains[type].push_back(d2);
  // a fresh constant names the twin so resolution can instantiate through it
  std::string cname;
  for (int i = 0;; ++i) {
    cname = "$d" + std::to_string(i);
    if (!out.sig.has_constant(cname)) break;
  }
  out.sig.declare(cname, type);
  out.const_intension.emplace(cname, d2);

  // close every extension under swapping d for d2, position by position
  auto close_ext = [&](Extension& e) {
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<Token>> fresh;
      for (const auto& tup : e.tuples)
        for (size_t i = 0; i < tup.size(); ++i)
          if (tup[i] == d) {
            std::vector<Token> alt = tup;
            alt[i] = d2;
            if (!e.tuples.count(alt)) fresh.push_back(std::move(alt));
          }
      for (auto& f : fresh)
        if (e.tuples.insert(std::move(f)).second) grew = true;
    }
  };
  for (auto& [tok, ext] : out.extensions) close_ext(ext);
  if (type.is_complex()) {
    Extension copy = out.extensions.at(d);
    out.extensions[d2] = copy;
  }
  out.reindex();
  return out;
}

}  // namespace itl
