#include "itl/print.hpp"

#include "itl/error.hpp"

namespace itl {

namespace {

// Precedence: binders 0, <-> 1, | 3, & 4, ~ 5, sub/= 6, application 7,
// atoms 8. Parenthesization depends only on these, so the bare content of a
// node is context-independent and can be cached on the node.
enum { P_BODY = 0, P_IFF = 1, P_OR = 3, P_AND = 4, P_NOT = 5, P_CMP = 6, P_APP = 7, P_ATOM = 8 };

int prec(const Term& t) {
  switch (t.kind()) {
    case Kind::Const:
    case Kind::Variable:
    case Kind::Bottom:
    case Kind::Top:
      return P_ATOM;
    case Kind::App:
      return P_APP;
    case Kind::Subset:
    case Kind::Eq:
      return P_CMP;
    case Kind::Not:
      return P_NOT;
    case Kind::And:
      return P_AND;
    case Kind::Or:
      return P_OR;
    case Kind::Iff:
      return P_IFF;
    case Kind::Lam:
    case Kind::Forall:
    case Kind::Exists:
      return P_BODY;
  }
  throw Error("unreachable");
}

void pr(const Term& t, int level, std::string& out);

const std::string& content(const Term& t) {
  std::string& cache = t.raw()->print_cache;
  if (!cache.empty()) return cache;
  std::string out;
  switch (t.kind()) {
    case Kind::Const:
      out = t.const_name();
      break;
    case Kind::Variable:
      out = t.var().name;
      break;
    case Kind::Bottom:
      out = "bot";
      break;
    case Kind::Top:
      out = "top";
      break;
    case Kind::App:
      pr(t.fun(), P_APP, out);
      out += " ";
      pr(t.arg(), P_ATOM, out);
      break;
    case Kind::Subset:
    case Kind::Eq:
      pr(t.lhs(), P_APP, out);
      out += t.kind() == Kind::Subset ? " sub " : " = ";
      pr(t.rhs(), P_APP, out);
      break;
    case Kind::Not:
      out = "~";
      pr(t.child(), P_NOT, out);
      break;
    case Kind::And:
    case Kind::Or: {
      int self = t.kind() == Kind::And ? P_AND : P_OR;
      pr(t.lhs(), self, out);
      out += t.kind() == Kind::And ? " & " : " | ";
      pr(t.rhs(), self + 1, out);
      break;
    }
    case Kind::Iff:
      pr(t.lhs(), P_IFF + 1, out);
      out += " <-> ";
      pr(t.rhs(), P_IFF + 1, out);
      break;
    case Kind::Lam:
    case Kind::Forall:
    case Kind::Exists:
      out = t.kind() == Kind::Lam ? "lam " : t.kind() == Kind::Forall ? "forall " : "exists ";
      out += t.var().name;
      out += ":";
      out += print_type(t.var().type);
      out += " . ";
      pr(t.body(), P_BODY, out);
      break;
  }
  cache = std::move(out);
  return cache;
}

void pr(const Term& t, int level, std::string& out) {
  bool paren = prec(t) < level;
  if (paren) out += "(";
  out += content(t);
  if (paren) out += ")";
}

}  // namespace

std::string print_term(const Term& t) { return content(t); }

}  // namespace itl
