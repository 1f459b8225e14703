#include "itl/normalize.hpp"

#include <map>

#include "itl/error.hpp"

namespace itl {

namespace {

Term rebuild(const Term& t, const Term& a, const Term& b) {
  switch (t.kind()) {
    case Kind::App: return mk_app(a, b);
    case Kind::Subset: return mk_subset(a, b);
    case Kind::Eq: return mk_eq(a, b);
    case Kind::And: return mk_and(a, b);
    case Kind::Or: return mk_or(a, b);
    case Kind::Iff: return mk_iff(a, b);
    default: throw Error("rebuild: not a binary kind");
  }
}

Term rebind(const Term& t, const Var& v, const Term& body) {
  switch (t.kind()) {
    case Kind::Lam: return mk_lam(v, body);
    case Kind::Forall: return mk_forall(v, body);
    case Kind::Exists: return mk_exists(v, body);
    default: throw Error("rebind: not a binder kind");
  }
}

Var rename_away(const Var& v, const std::set<Var>& avoid_vars,
                const std::set<std::string>& avoid_names) {
  Var fresh = v;
  while (true) {
    fresh.name += "'";
    if (avoid_names.count(fresh.name)) continue;
    bool clash = false;
    for (const auto& w : avoid_vars)
      if (w.name == fresh.name) { clash = true; break; }
    if (!clash) return fresh;
  }
}

Term subst_ca(const Term& a, const Var& x, const Term& b, const std::set<Var>& fvb) {
  switch (a.kind()) {
    case Kind::Variable:
      return a.var() == x ? b : a;
    case Kind::Const:
    case Kind::Bottom:
    case Kind::Top:
      return a;
    case Kind::Lam:
    case Kind::Forall:
    case Kind::Exists: {
      if (a.var() == x) return a;
      std::set<Var> fv_body = free_vars(a.body());
      if (!fv_body.count(x)) return a;
      if (fvb.count(a.var())) {
        // Binder would capture a free variable of b: rename it first.
        std::set<std::string> names;
        for (const auto& w : fv_body) names.insert(w.name);
        names.insert(x.name);
        Var nv = rename_away(a.var(), fvb, names);
        Term renamed = subst_ca(a.body(), a.var(), mk_var(nv), {nv});
        return rebind(a, nv, subst_ca(renamed, x, b, fvb));
      }
      return rebind(a, a.var(), subst_ca(a.body(), x, b, fvb));
    }
    case Kind::Not:
      return mk_not(subst_ca(a.child(), x, b, fvb));
    default:
      return rebuild(a, subst_ca(a.raw()->a, x, b, fvb), subst_ca(a.raw()->b, x, b, fvb));
  }
}

struct Fuel {
  size_t left;
  void burn() {
    if (left == 0) throw BudgetExceeded("normalization fuel exhausted");
    --left;
  }
};

Term nf(const Term& t, Fuel& fuel) {
  fuel.burn();
  switch (t.kind()) {
    case Kind::Const:
    case Kind::Variable:
    case Kind::Bottom:
    case Kind::Top:
      return t;
    case Kind::App: {
      Term f = nf(t.fun(), fuel);
      Term a = nf(t.arg(), fuel);
      if (f.kind() == Kind::Lam)
        return nf(subst_capture_avoiding(f.body(), f.var(), a), fuel);
      return mk_app(f, a);
    }
    case Kind::Lam: {
      Term body = nf(t.body(), fuel);
      // eta: lam x. A x => A when x not free in A
      if (body.kind() == Kind::App && body.arg().kind() == Kind::Variable &&
          body.arg().var() == t.var() && !free_vars(body.fun()).count(t.var()))
        return body.fun();
      return mk_lam(t.var(), body);
    }
    case Kind::Forall:
    case Kind::Exists:
      return rebind(t, t.var(), nf(t.body(), fuel));
    case Kind::Not:
      return mk_not(nf(t.child(), fuel));
    default:
      return rebuild(t, nf(t.raw()->a, fuel), nf(t.raw()->b, fuel));
  }
}

bool aeq(const Term& a, const Term& b, std::map<Var, int>& la, std::map<Var, int>& lb,
         int depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Const:
      return a.const_name() == b.const_name() && a.type() == b.type();
    case Kind::Variable: {
      auto ia = la.find(a.var());
      auto ib = lb.find(b.var());
      if ((ia == la.end()) != (ib == lb.end())) return false;
      if (ia == la.end()) return a.var() == b.var();  // both free
      return ia->second == ib->second;
    }
    case Kind::Bottom:
    case Kind::Top:
      return true;
    case Kind::Lam:
    case Kind::Forall:
    case Kind::Exists: {
      if (a.var().type != b.var().type) return false;
      auto sa = la.find(a.var());
      auto sb = lb.find(b.var());
      int olda = sa == la.end() ? -1 : sa->second;
      int oldb = sb == lb.end() ? -1 : sb->second;
      la[a.var()] = depth;
      lb[b.var()] = depth;
      bool ok = aeq(a.body(), b.body(), la, lb, depth + 1);
      if (olda < 0) la.erase(a.var()); else la[a.var()] = olda;
      if (oldb < 0) lb.erase(b.var()); else lb[b.var()] = oldb;
      return ok;
    }
    case Kind::Not:
      return aeq(a.child(), b.child(), la, lb, depth);
    default:
      return aeq(a.raw()->a, b.raw()->a, la, lb, depth) &&
             aeq(a.raw()->b, b.raw()->b, la, lb, depth);
  }
}

}  // namespace

Term subst_capture_avoiding(const Term& a, const Var& x, const Term& b) {
  return subst_ca(a, x, b, free_vars(b));
}

Term beta_eta_normalize(const Term& t, size_t fuel) {
  Fuel f{fuel};
  // Iterate: eta-contraction can expose nothing new for beta in the simply
  // typed case, but a second pass is cheap and keeps the result stable.
  Term cur = nf(t, f);
  Term again = nf(cur, f);
  while (again != cur) {
    cur = again;
    again = nf(cur, f);
  }
  return cur;
}

bool alpha_eq(const Term& a, const Term& b) {
  std::map<Var, int> la, lb;
  return aeq(a, b, la, lb, 0);
}

}  // namespace itl
