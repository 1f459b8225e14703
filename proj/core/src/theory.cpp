#include "itl/theory.hpp"

#include <set>

#include "itl/error.hpp"
#include "itl/print.hpp"

namespace itl {

Theory Theory::merged(const Theory& other) const {
  Theory out = *this;
  out.name = name + "+" + other.name;
  out.extra_sig = extra_sig.merged(other.extra_sig);
  for (const auto& a : other.axioms) out.axioms.push_back(a);
  for (const auto& s : other.schemes) out.schemes.push_back(s);
  return out;
}

Term universal_closure(const Term& t) {
  Term out = t;
  std::set<Var> fv = free_vars(t);
  // wrap innermost-first so the first variable ends up outermost
  std::vector<Var> vars(fv.begin(), fv.end());
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) out = mk_forall(*it, out);
  return out;
}

std::vector<Term> theory_instances(const Theory& th,
                                   const std::vector<std::vector<Term>>& requests) {
  std::vector<Term> out;
  std::set<std::string> seen;
  auto push = [&](const Term& t) {
    Term d = desugar(t);
    std::string k = print_term(d);
    if (seen.insert(k).second) out.push_back(d);
  };
  for (const auto& ax : th.axioms) push(ax);
  for (const auto& req : requests) {
    bool hit = false;
    for (const auto& sch : th.schemes) {
      auto inst = sch.make(req);
      if (inst) {
        push(*inst);
        hit = true;
      }
    }
    if (!hit) {
      std::string shown;
      for (const auto& t : req) shown += (shown.empty() ? "" : ", ") + print_term(t);
      throw TypeError("request tuple fits no scheme of theory " + th.name + ": " + shown);
    }
  }
  return out;
}

namespace {

std::optional<Term> alpha_make(const std::vector<Term>& req) {
  if (req.size() != 2 || req[0].kind() != Kind::Lam || req[1].kind() != Kind::Variable)
    return std::nullopt;
  const Term& lam = req[0];
  const Var& y = req[1].var();
  if (y.type != lam.var().type) return std::nullopt;
  if (!is_free_for(req[1], lam.var(), lam.body())) return std::nullopt;
  Term renamed;
  try {
    renamed = mk_lam(y, subst_one(lam.body(), lam.var(), req[1]));
  } catch (const CaptureError&) {
    return std::nullopt;
  }
  return universal_closure(mk_eq(lam, renamed));
}

std::optional<Term> beta_make(const std::vector<Term>& req) {
  if (req.size() != 2 || req[0].kind() != Kind::Lam) return std::nullopt;
  const Term& lam = req[0];
  const Term& arg = req[1];
  if (arg.type() != lam.var().type) return std::nullopt;
  if (!is_free_for(arg, lam.var(), lam.body())) return std::nullopt;
  Term contracted;
  try {
    contracted = subst_one(lam.body(), lam.var(), arg);
  } catch (const CaptureError&) {
    return std::nullopt;
  }
  return universal_closure(mk_eq(mk_app(lam, arg), contracted));
}

std::optional<Term> eta_make(const std::vector<Term>& req) {
  if (req.size() != 1 || req[0].kind() != Kind::Lam) return std::nullopt;
  const Term& lam = req[0];
  const Term& body = lam.body();
  if (body.kind() != Kind::App || body.arg().kind() != Kind::Variable ||
      body.arg().var() != lam.var())
    return std::nullopt;
  if (free_vars(body.fun()).count(lam.var())) return std::nullopt;
  return universal_closure(mk_eq(lam, body.fun()));
}

}  // namespace

Theory lambda_conv_theory() {
  Theory th;
  th.name = "lambda-conv";
  th.schemes.push_back({"alpha", SchemeKind::Alpha, alpha_make});
  th.schemes.push_back({"beta", SchemeKind::Beta, beta_make});
  th.schemes.push_back({"eta", SchemeKind::Eta, eta_make});
  return th;
}

}  // namespace itl
