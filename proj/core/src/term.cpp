#include "itl/term.hpp"

#include <algorithm>
#include <cassert>

#include "itl/error.hpp"

namespace itl {

namespace {

size_t mix(size_t h, size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Term make(TermNode n) {
  size_t h = mix(0x3, static_cast<size_t>(n.kind));
  h = mix(h, n.type.hash());
  h = mix(h, std::hash<std::string>{}(n.name));
  h = mix(h, std::hash<std::string>{}(n.var.name));
  h = mix(h, n.var.type.hash());
  if (n.a.ok()) h = mix(h, n.a.hash());
  if (n.b.ok()) h = mix(h, n.b.hash());
  n.hash = h;
  n.core = n.kind <= Kind::Subset && (!n.a.ok() || n.a.is_core()) &&
           (!n.b.ok() || n.b.is_core());
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

void require_prop(const Term& t, const char* what) {
  if (!t.type().is_prop())
    throw TypeError(std::string(what) + " requires a proposition, got " + print_type(t.type()));
}

}  // namespace

Term mk_const(const std::string& name, const Type& type) {
  if (name.empty()) throw TypeError("constant with empty name");
  return make({Kind::Const, type, name, {}, {}, {}, 0});
}

Term mk_var(const Var& v) { return make({Kind::Variable, v.type, "", v, {}, {}, 0}); }

Term mk_bottom() { return make({Kind::Bottom, Type::prop(), "", {}, {}, {}, 0}); }

Term mk_app(const Term& fun, const Term& arg) {
  const Type& ft = fun.type();
  if (!ft.is_complex() || ft.args().empty())
    throw TypeError("application head has type " + print_type(ft) +
                    ", which takes no argument");
  if (ft.args()[0] != arg.type())
    throw TypeError("application expects " + print_type(ft.args()[0]) + ", got " +
                    print_type(arg.type()));
  return make({Kind::App, ft.applied(), "", {}, fun, arg, 0});
}

Term mk_lam(const Var& binder, const Term& body) {
  if (!body.type().is_complex())
    throw TypeError("lambda body must have complex type, got " + print_type(body.type()));
  std::vector<Type> args;
  args.push_back(binder.type);
  for (const auto& a : body.type().args()) args.push_back(a);
  return make({Kind::Lam, Type::complex(std::move(args)), "", binder, body, {}, 0});
}

Term mk_subset(const Term& lhs, const Term& rhs) {
  if (lhs.type() != rhs.type())
    throw TypeError("sub requires equal types, got " + print_type(lhs.type()) + " and " +
                    print_type(rhs.type()));
  if (!lhs.type().is_complex())
    throw TypeError("sub requires a complex type, got " + print_type(lhs.type()));
  return make({Kind::Subset, Type::prop(), "", {}, lhs, rhs, 0});
}

Term mk_top() { return make({Kind::Top, Type::prop(), "", {}, {}, {}, 0}); }

Term mk_forall(const Var& binder, const Term& body) {
  require_prop(body, "forall body");
  return make({Kind::Forall, Type::prop(), "", binder, body, {}, 0});
}

Term mk_exists(const Var& binder, const Term& body) {
  require_prop(body, "exists body");
  return make({Kind::Exists, Type::prop(), "", binder, body, {}, 0});
}

Term mk_eq(const Term& lhs, const Term& rhs) {
  if (lhs.type() != rhs.type())
    throw TypeError("= requires equal types, got " + print_type(lhs.type()) + " and " +
                    print_type(rhs.type()));
  return make({Kind::Eq, Type::prop(), "", {}, lhs, rhs, 0});
}

Term mk_not(const Term& t) {
  require_prop(t, "~");
  return make({Kind::Not, Type::prop(), "", {}, t, {}, 0});
}

static Term mk_bin(Kind k, const char* what, const Term& l, const Term& r) {
  require_prop(l, what);
  require_prop(r, what);
  return make({k, Type::prop(), "", {}, l, r, 0});
}

Term mk_and(const Term& l, const Term& r) { return mk_bin(Kind::And, "&", l, r); }
Term mk_or(const Term& l, const Term& r) { return mk_bin(Kind::Or, "|", l, r); }
Term mk_iff(const Term& l, const Term& r) { return mk_bin(Kind::Iff, "<->", l, r); }

bool Term::is_core() const { return node_->core; }

int Term::cmp(const Term& o) const {
  if (node_ == o.node_) return 0;
  if (kind() != o.kind()) return kind() < o.kind() ? -1 : 1;
  switch (kind()) {
    case Kind::Const: {
      int c = const_name().compare(o.const_name());
      if (c) return c;
      return type().cmp(o.type());
    }
    case Kind::Variable: {
      int c = var().name.compare(o.var().name);
      if (c) return c;
      return var().type.cmp(o.var().type);
    }
    case Kind::Bottom:
    case Kind::Top:
      return 0;
    case Kind::Lam:
    case Kind::Forall:
    case Kind::Exists: {
      int c = var().name.compare(o.var().name);
      if (c) return c;
      c = var().type.cmp(o.var().type);
      if (c) return c;
      return body().cmp(o.body());
    }
    case Kind::Not:
      return child().cmp(o.child());
    default: {  // App, Subset, Eq, And, Or, Iff
      int c = node_->a.cmp(o.node_->a);
      if (c) return c;
      return node_->b.cmp(o.node_->b);
    }
  }
}

Type type_of(const Term& t, const Signature& sig, const std::map<Var, Type>& ctx) {
  switch (t.kind()) {
    case Kind::Const: {
      auto it = sig.constants.find(t.const_name());
      if (it == sig.constants.end()) throw UndeclaredConstant(t.const_name());
      if (it->second != t.type())
        throw TypeError("constant " + t.const_name() + " carries " + print_type(t.type()) +
                        " but is declared " + print_type(it->second));
      return t.type();
    }
    case Kind::Variable: {
      auto it = ctx.find(t.var());
      if (it == ctx.end())
        throw TypeError("free variable " + t.var().name + " not in context");
      if (it->second != t.var().type)
        throw TypeError("variable " + t.var().name + " type mismatch against context");
      return t.type();
    }
    case Kind::Bottom:
    case Kind::Top:
      return Type::prop();
    case Kind::App: {
      Type ft = type_of(t.fun(), sig, ctx);
      Type at = type_of(t.arg(), sig, ctx);
      if (!ft.is_complex() || ft.args().empty() || ft.args()[0] != at)
        throw TypeError("bad application");
      return ft.applied();
    }
    case Kind::Lam:
    case Kind::Forall:
    case Kind::Exists: {
      auto inner = ctx;
      inner[t.var()] = t.var().type;
      type_of(t.body(), sig, inner);
      return t.type();
    }
    case Kind::Not:
      type_of(t.child(), sig, ctx);
      return Type::prop();
    default: {  // Subset, Eq, And, Or, Iff
      type_of(t.lhs(), sig, ctx);
      type_of(t.rhs(), sig, ctx);
      return Type::prop();
    }
  }
}

namespace {

void free_vars_into(const Term& t, std::set<Var>& bound, std::set<Var>& out) {
  switch (t.kind()) {
    case Kind::Variable:
      if (!bound.count(t.var())) out.insert(t.var());
      return;
    case Kind::Const:
    case Kind::Bottom:
    case Kind::Top:
      return;
    case Kind::Lam:
    case Kind::Forall:
    case Kind::Exists: {
      bool fresh = bound.insert(t.var()).second;
      free_vars_into(t.body(), bound, out);
      if (fresh) bound.erase(t.var());
      return;
    }
    case Kind::Not:
      free_vars_into(t.child(), bound, out);
      return;
    default:
      free_vars_into(t.raw()->a, bound, out);
      free_vars_into(t.raw()->b, bound, out);
      return;
  }
}

}  // namespace

std::set<Var> free_vars(const Term& t) {
  std::set<Var> bound, out;
  free_vars_into(t, bound, out);
  return out;
}

bool is_closed(const Term& t) { return free_vars(t).empty(); }

namespace {

// Walks a looking for free occurrences of x; at each, every enclosing binder
// must avoid the free variables of b.
bool free_for_rec(const Term& a, const Var& x, const std::set<Var>& fvb,
                  std::set<Var>& binders) {
  switch (a.kind()) {
    case Kind::Variable:
      if (a.var() == x) {
        for (const auto& v : fvb)
          if (binders.count(v)) return false;
      }
      return true;
    case Kind::Const:
    case Kind::Bottom:
    case Kind::Top:
      return true;
    case Kind::Lam:
    case Kind::Forall:
    case Kind::Exists: {
      if (a.var() == x) return true;  // x bound below here
      bool fresh = binders.insert(a.var()).second;
      bool ok = free_for_rec(a.body(), x, fvb, binders);
      if (fresh) binders.erase(a.var());
      return ok;
    }
    case Kind::Not:
      return free_for_rec(a.child(), x, fvb, binders);
    default:
      return free_for_rec(a.raw()->a, x, fvb, binders) &&
             free_for_rec(a.raw()->b, x, fvb, binders);
  }
}

}  // namespace

bool is_free_for(const Term& b, const Var& x, const Term& a) {
  if (b.type() != x.type)
    throw TypeError("is_free_for: term type " + print_type(b.type()) +
                    " differs from variable type " + print_type(x.type));
  std::set<Var> fvb = free_vars(b);
  std::set<Var> binders;
  return free_for_rec(a, x, fvb, binders);
}

namespace {

Term subst_rec(const Term& a, const Substitution& sigma) {
  switch (a.kind()) {
    case Kind::Variable: {
      auto it = sigma.find(a.var());
      if (it == sigma.end()) return a;
      if (it->second.type() != a.var().type)
        throw TypeError("substitution changes type of " + a.var().name);
      return it->second;
    }
    case Kind::Const:
    case Kind::Bottom:
    case Kind::Top:
      return a;
    case Kind::Lam:
    case Kind::Forall:
    case Kind::Exists: {
      Substitution inner = sigma;
      inner.erase(a.var());
      if (inner.empty()) return a;
      // Refuse capture: if some replaced variable occurs free in the body and
      // its replacement mentions this binder, stop.
      std::set<Var> fv = free_vars(a.body());
      for (const auto& [v, repl] : inner) {
        if (v == a.var() || !fv.count(v)) continue;
        if (free_vars(repl).count(a.var()))
          throw CaptureError(a.var().name, v.name);
      }
      Term nb = subst_rec(a.body(), inner);
      if (a.kind() == Kind::Lam) return mk_lam(a.var(), nb);
      if (a.kind() == Kind::Forall) return mk_forall(a.var(), nb);
      return mk_exists(a.var(), nb);
    }
    case Kind::App:
      return mk_app(subst_rec(a.fun(), sigma), subst_rec(a.arg(), sigma));
    case Kind::Subset:
      return mk_subset(subst_rec(a.lhs(), sigma), subst_rec(a.rhs(), sigma));
    case Kind::Eq:
      return mk_eq(subst_rec(a.lhs(), sigma), subst_rec(a.rhs(), sigma));
    case Kind::Not:
      return mk_not(subst_rec(a.child(), sigma));
    case Kind::And:
      return mk_and(subst_rec(a.lhs(), sigma), subst_rec(a.rhs(), sigma));
    case Kind::Or:
      return mk_or(subst_rec(a.lhs(), sigma), subst_rec(a.rhs(), sigma));
    case Kind::Iff:
      return mk_iff(subst_rec(a.lhs(), sigma), subst_rec(a.rhs(), sigma));
  }
  throw Error("unreachable");
}

}  // namespace

Term apply_subst(const Term& a, const Substitution& sigma) {
  if (sigma.empty()) return a;
  for (const auto& [v, repl] : sigma)
    if (repl.type() != v.type)
      throw TypeError("substitution maps " + v.name + " across types");
  return subst_rec(a, sigma);
}

Term subst_one(const Term& a, const Var& x, const Term& b) {
  Substitution s;
  s.emplace(x, b);
  return apply_subst(a, s);
}

void collect_constants(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Kind::Const:
      out.insert(t.const_name());
      return;
    case Kind::Variable:
    case Kind::Bottom:
    case Kind::Top:
      return;
    case Kind::Lam:
    case Kind::Forall:
    case Kind::Exists:
      collect_constants(t.body(), out);
      return;
    case Kind::Not:
      collect_constants(t.child(), out);
      return;
    default:
      collect_constants(t.raw()->a, out);
      collect_constants(t.raw()->b, out);
      return;
  }
}

bool mentions_constant(const Term& t, const std::string& name) {
  std::set<std::string> cs;
  collect_constants(t, cs);
  return cs.count(name) != 0;
}

void collect_subterms(const Term& t, std::vector<Term>& out) {
  out.push_back(t);
  switch (t.kind()) {
    case Kind::Const:
    case Kind::Variable:
    case Kind::Bottom:
    case Kind::Top:
      return;
    case Kind::Lam:
    case Kind::Forall:
    case Kind::Exists:
      collect_subterms(t.body(), out);
      return;
    case Kind::Not:
      collect_subterms(t.child(), out);
      return;
    default:
      collect_subterms(t.raw()->a, out);
      collect_subterms(t.raw()->b, out);
      return;
  }
}

namespace {

// Largest k such that $q<k> occurs as a variable name, or -1.
void max_eq_binder(const Term& t, int& best) {
  auto consider = [&best](const Var& v) {
    const std::string& n = v.name;
    if (n.size() > 2 && n[0] == '$' && n[1] == 'q') {
      int k = 0;
      bool digits = true;
      for (size_t i = 2; i < n.size(); ++i) {
        if (n[i] < '0' || n[i] > '9') { digits = false; break; }
        k = k * 10 + (n[i] - '0');
      }
      if (digits && k > best) best = k;
    }
  };
  switch (t.kind()) {
    case Kind::Variable:
      consider(t.var());
      return;
    case Kind::Const:
    case Kind::Bottom:
    case Kind::Top:
      return;
    case Kind::Lam:
    case Kind::Forall:
    case Kind::Exists:
      consider(t.var());
      max_eq_binder(t.body(), best);
      return;
    case Kind::Not:
      max_eq_binder(t.child(), best);
      return;
    default:
      max_eq_binder(t.raw()->a, best);
      max_eq_binder(t.raw()->b, best);
      return;
  }
}

Term core_top() { return mk_subset(mk_bottom(), mk_bottom()); }

Term desugar_forall(const Var& x, const Term& body) {
  return mk_subset(mk_lam(x, core_top()), mk_lam(x, body));
}

}  // namespace

Term desugar(const Term& t) {
  if (t.is_core()) return t;
  switch (t.kind()) {
    case Kind::Const:
    case Kind::Variable:
    case Kind::Bottom:
      return t;
    case Kind::App:
      return mk_app(desugar(t.fun()), desugar(t.arg()));
    case Kind::Lam:
      return mk_lam(t.var(), desugar(t.body()));
    case Kind::Subset:
      return mk_subset(desugar(t.lhs()), desugar(t.rhs()));
    case Kind::Top:
      return core_top();
    case Kind::Forall:
      return desugar_forall(t.var(), desugar(t.body()));
    case Kind::Eq: {
      Term a = desugar(t.lhs());
      Term b = desugar(t.rhs());
      int best = -1;
      max_eq_binder(a, best);
      max_eq_binder(b, best);
      Var z{"$q" + std::to_string(best + 1), Type::complex({a.type()})};
      return desugar_forall(z, mk_subset(mk_app(mk_var(z), a), mk_app(mk_var(z), b)));
    }
    case Kind::Not:
      return mk_subset(desugar(t.child()), mk_bottom());
    case Kind::And: {
      Term a = desugar(t.lhs());
      Term b = desugar(t.rhs());
      return mk_subset(mk_subset(a, mk_subset(b, mk_bottom())), mk_bottom());
    }
    case Kind::Or: {
      Term a = desugar(t.lhs());
      Term b = desugar(t.rhs());
      return mk_subset(mk_subset(a, mk_bottom()), b);
    }
    case Kind::Iff: {
      Term a = desugar(t.lhs());
      Term b = desugar(t.rhs());
      Term ab = mk_subset(a, b);
      Term ba = mk_subset(b, a);
      return mk_subset(mk_subset(ab, mk_subset(ba, mk_bottom())), mk_bottom());
    }
    case Kind::Exists: {
      Term nbody = mk_subset(desugar(t.body()), mk_bottom());
      return mk_subset(desugar_forall(t.var(), nbody), mk_bottom());
    }
  }
  throw Error("unreachable");
}

}  // namespace itl
