#include "itl/model.hpp"

#include <algorithm>

#include <json.hpp>

#include "itl/error.hpp"
#include "itl/parse.hpp"
#include "itl/print.hpp"

namespace itl {

void FiniteModel::reindex() {
  token_type.clear();
  token_name.clear();
  for (const auto& [ty, toks] : domains)
    for (const auto& t : toks) token_type.emplace(t, ty);
  // constants name their tokens first, then tabled terms in key order
  for (const auto& [name, tok] : const_intension) {
    auto it = sig.constants.find(name);
    if (it == sig.constants.end()) continue;
    token_name.emplace(tok, mk_const(name, it->second));
  }
  for (const auto& [key, tok] : term_intension) {
    if (token_name.count(tok)) continue;
    try {
      token_name.emplace(tok, parse_term(key, sig));
    } catch (const Error&) {
      // unnameable entry; resolution through it will escape instead
    }
  }
}

Token resolve_intension(const FiniteModel& m, const Assignment& a, const Term& t) {
  switch (t.kind()) {
    case Kind::Variable: {
      auto it = a.find(t.var());
      if (it == a.end()) throw CarrierEscape("unassigned variable " + t.var().name);
      return it->second;
    }
    case Kind::Const: {
      auto it = m.const_intension.find(t.const_name());
      if (it == m.const_intension.end())
        throw CarrierEscape("constant " + t.const_name() + " has no intension");
      return it->second;
    }
    default: {
      Term closed = t;
      std::set<Var> fv = free_vars(t);
      if (!fv.empty()) {
        Substitution sub;
        for (const auto& v : fv) {
          auto it = a.find(v);
          if (it == a.end()) throw CarrierEscape("unassigned variable " + v.name);
          auto nm = m.token_name.find(it->second);
          if (nm == m.token_name.end())
            throw CarrierEscape("token " + it->second + " has no canonical name");
          sub.emplace(v, nm->second);
        }
        closed = apply_subst(t, sub);
      }
      std::string key = print_term(closed);
      auto it = m.term_intension.find(key);
      if (it == m.term_intension.end())
        throw CarrierEscape("no intension table entry for " + key);
      return it->second;
    }
  }
}

Extension eval_extension(const FiniteModel& m, const Assignment& a, const Term& t) {
  if (!t.type().is_complex())
    throw TypeError("eval_extension needs a complex-typed term, got " + print_type(t.type()));
  switch (t.kind()) {
    case Kind::Bottom:
      return Extension::boolean(false);
    case Kind::Subset: {
      Extension l = eval_extension(m, a, t.lhs());
      Extension r = eval_extension(m, a, t.rhs());
      return Extension::boolean(l.subset_of(r));
    }
    case Kind::App: {
      Token d = resolve_intension(m, a, t.arg());
      Extension f = eval_extension(m, a, t.fun());
      Extension out;
      for (const auto& tup : f.tuples) {
        if (tup.empty() || tup[0] != d) continue;
        out.tuples.insert(std::vector<Token>(tup.begin() + 1, tup.end()));
      }
      return out;
    }
    case Kind::Lam: {
      auto dom = m.domains.find(t.var().type);
      if (dom == m.domains.end())
        throw CarrierEscape("no domain for type " + print_type(t.var().type));
      Extension out;
      for (const auto& d : dom->second) {
        Assignment inner = a;
        inner[t.var()] = d;
        Extension body = eval_extension(m, inner, t.body());
        for (const auto& tup : body.tuples) {
          std::vector<Token> wide;
          wide.reserve(tup.size() + 1);
          wide.push_back(d);
          for (const auto& x : tup) wide.push_back(x);
          out.tuples.insert(std::move(wide));
        }
      }
      return out;
    }
    case Kind::Const:
    case Kind::Variable: {
      Token tok = resolve_intension(m, a, t);
      auto it = m.extensions.find(tok);
      if (it == m.extensions.end())
        throw CarrierEscape("token " + tok + " has no extension");
      return it->second;
    }
    default:
      throw TypeError("eval_extension requires a core term");
  }
}

bool eval_truth(const FiniteModel& m, const Term& sentence) {
  Term d = desugar(sentence);
  if (!d.type().is_prop()) throw TypeError("eval_truth needs a sentence");
  return eval_extension(m, {}, d).truth();
}

std::string ModelReport::summary() const {
  if (violations.empty()) return "model: ok";
  std::string out = "model: " + std::to_string(violations.size()) + " violation(s)";
  for (const auto& v : violations) out += "\n  " + v;
  return out;
}

namespace {

// Two assignments that differ somewhere, for the sentence
// assignment-irrelevance check.
std::pair<Assignment, Assignment> probe_assignments(const FiniteModel& m) {
  Assignment a, b;
  for (const auto& [ty, toks] : m.domains) {
    if (toks.empty()) continue;
    Var v{"$probe", ty};
    a[v] = toks.front();
    b[v] = toks.back();
    break;
  }
  return {a, b};
}

}  // namespace

ModelReport check_model(const FiniteModel& m, const std::vector<Term>& probes) {
  ModelReport rep;
  auto bad = [&rep](const std::string& s) { rep.violations.push_back(s); };

  // domains: nonempty, pairwise disjoint
  std::map<Token, Type> owner;
  for (const auto& [ty, toks] : m.domains) {
    if (toks.empty()) bad("empty domain for type " + print_type(ty));
    for (const auto& t : toks) {
      auto [it, fresh] = owner.emplace(t, ty);
      if (!fresh && it->second != ty)
        bad("token " + t + " lives in two domains: " + print_type(it->second) + " and " +
            print_type(ty));
    }
  }
  // extensions: typed against argument domains; every complex token covered
  for (const auto& [ty, toks] : m.domains) {
    if (!ty.is_complex()) continue;
    for (const auto& t : toks) {
      auto it = m.extensions.find(t);
      if (it == m.extensions.end()) {
        bad("complex token " + t + " lacks an extension");
        continue;
      }
      for (const auto& tup : it->second.tuples) {
        if (tup.size() != ty.arity()) {
          bad("token " + t + " has a tuple of wrong arity");
          continue;
        }
        for (size_t i = 0; i < tup.size(); ++i) {
          auto dom = m.domains.find(ty.args()[i]);
          bool found = dom != m.domains.end() &&
                       std::find(dom->second.begin(), dom->second.end(), tup[i]) !=
                           dom->second.end();
          if (!found)
            bad("token " + t + " tuple component " + tup[i] + " escapes its domain");
        }
      }
    }
  }
  // constants resolve into the right domains
  for (const auto& [name, tok] : m.const_intension) {
    auto ct = m.sig.constants.find(name);
    if (ct == m.sig.constants.end()) {
      bad("intension for undeclared constant " + name);
      continue;
    }
    auto tt = m.token_type.find(tok);
    if (tt == m.token_type.end() || tt->second != ct->second)
      bad("constant " + name + " maps to a token outside its type domain");
  }

  // probe coherence
  for (const auto& probe : probes) {
    Term t = desugar(probe);
    if (!is_closed(t)) continue;
    std::vector<Term> subs;
    collect_subterms(t, subs);
    for (const auto& s : subs) {
      if (!is_closed(s) || !s.type().is_complex()) continue;
      // tabled intension must match compositional evaluation
      Token tok;
      try {
        tok = resolve_intension(m, {}, s);
      } catch (const CarrierEscape&) {
        continue;
      }
      try {
        Extension ev = eval_extension(m, {}, s);
        auto it = m.extensions.find(tok);
        if (it == m.extensions.end() || !(it->second == ev))
          bad("intension of " + print_term(s) + " disagrees with its evaluation");
      } catch (const CarrierEscape&) {
      }
      // substitution coherence through head aliasing: I(H B) = I(H' B) when
      // H and H' share a token and H' names it
      if (s.kind() == Kind::App && is_closed(s.fun())) {
        try {
          Token htok = resolve_intension(m, {}, s.fun());
          auto nm = m.token_name.find(htok);
          if (nm != m.token_name.end() && nm->second != s.fun()) {
            Term alias = mk_app(nm->second, s.arg());
            Token left = resolve_intension(m, {}, s);
            Token right = resolve_intension(m, {}, alias);
            if (left != right)
              bad("substitution coherence: " + print_term(s) + " vs " + print_term(alias));
          }
        } catch (const CarrierEscape&) {
        }
      }
      // clause-4 instances on redex probes: I under x := I(B) of the body
      // must match I of the substituted body, when both resolve
      if (s.kind() == Kind::App && s.fun().kind() == Kind::Lam && is_closed(s.arg())) {
        const Term& lam = s.fun();
        try {
          Token arg_tok = resolve_intension(m, {}, s.arg());
          Assignment inner;
          inner[lam.var()] = arg_tok;
          Token via_assignment = resolve_intension(m, inner, lam.body());
          Token via_subst =
              resolve_intension(m, {}, subst_one(lam.body(), lam.var(), s.arg()));
          if (via_assignment != via_subst)
            bad("substitution coherence (clause 4) fails at " + print_term(s));
        } catch (const CarrierEscape&) {
        } catch (const CaptureError&) {
        }
      }
    }
  }
  return rep;
}

bool refutes(const FiniteModel& m, const Sequent& seq) {
  auto [a, b] = probe_assignments(m);
  for (const auto& member : seq) {
    Extension va = eval_extension(m, a, member.sentence);
    Extension vb = eval_extension(m, b, member.sentence);
    if (!(va == vb))
      throw CarrierEscape("sentence " + member.key + " is assignment-dependent");
    bool want = member.sign == Sign::L;
    if (va.truth() != want) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// JSON form
// ---------------------------------------------------------------------------

namespace {

using json = nlohmann::ordered_json;

}  // namespace

std::string serialize_model(const FiniteModel& m) {
  json j;
  j["format"] = "itl-model";
  json sigj;
  json types = json::array();
  for (const auto& b : m.sig.basic_types) types.push_back(b);
  sigj["types"] = types;
  json consts = json::object();
  for (const auto& [name, ty] : m.sig.constants) consts[name] = print_type(ty);
  sigj["constants"] = consts;
  j["signature"] = sigj;

  json doms = json::object();
  for (const auto& [ty, toks] : m.domains) {
    json arr = json::array();
    for (const auto& t : toks) arr.push_back(t);
    doms[print_type(ty)] = arr;
  }
  j["domains"] = doms;

  json cj = json::object();
  for (const auto& [name, tok] : m.const_intension) cj[name] = tok;
  j["constants"] = cj;

  json ij = json::object();
  for (const auto& [key, tok] : m.term_intension) ij[key] = tok;
  j["intensions"] = ij;

  json ej = json::object();
  for (const auto& [tok, ext] : m.extensions) {
    auto tt = m.token_type.find(tok);
    if (tt != m.token_type.end() && tt->second.is_prop()) {
      ej[tok] = ext.truth() ? 1 : 0;
    } else {
      json tuples = json::array();
      for (const auto& tup : ext.tuples) {
        json row = json::array();
        for (const auto& t : tup) row.push_back(t);
        tuples.push_back(row);
      }
      ej[tok] = tuples;
    }
  }
  j["extensions"] = ej;
  return j.dump(2) + "\n";
}

FiniteModel parse_model(const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("format") || j.at("format") != "itl-model")
    throw SyntaxError("not an itl-model file", 0);
  FiniteModel m;
  for (const auto& b : j.at("signature").at("types"))
    m.sig.declare_basic(b.get<std::string>());
  for (const auto& [name, ty] : j.at("signature").at("constants").items())
    m.sig.declare(name, parse_type(ty.get<std::string>()));
  for (const auto& [ty, toks] : j.at("domains").items()) {
    std::vector<Token> v;
    for (const auto& t : toks) v.push_back(t.get<std::string>());
    m.domains.emplace(parse_type(ty), std::move(v));
  }
  for (const auto& [name, tok] : j.at("constants").items())
    m.const_intension.emplace(name, tok.get<std::string>());
  for (const auto& [key, tok] : j.at("intensions").items())
    m.term_intension.emplace(key, tok.get<std::string>());
  m.reindex();
  for (const auto& [tok, ext] : j.at("extensions").items()) {
    Extension e;
    if (ext.is_number()) {
      if (ext.get<int>() != 0) e.tuples.insert(std::vector<Token>{});
    } else {
      for (const auto& row : ext) {
        std::vector<Token> tup;
        for (const auto& t : row) tup.push_back(t.get<std::string>());
        e.tuples.insert(std::move(tup));
      }
    }
    m.extensions.emplace(tok, std::move(e));
  }
  return m;
}

}  // namespace itl
