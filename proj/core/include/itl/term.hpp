#ifndef ITL_TERM_HPP
#define ITL_TERM_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "itl/type.hpp"

namespace itl {

// Core kinds come first; everything after Subset is surface sugar that
// desugar() eliminates. Kernel, prover and models only ever see core terms.
enum class Kind {
  Const, Variable, Bottom, App, Lam, Subset,
  Top, Forall, Exists, Eq, Not, And, Or, Iff,
};

struct TermNode;

class Term {
 public:
  Term() = default;
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}

  Kind kind() const;
  const Type& type() const;
  const std::string& const_name() const;
  const Var& var() const;      // Variable payload or binder
  const Term& fun() const;     // App
  const Term& arg() const;     // App
  const Term& body() const;    // Lam / Forall / Exists
  const Term& lhs() const;     // Subset / Eq / And / Or / Iff
  const Term& rhs() const;
  const Term& child() const;   // Not

  bool ok() const { return node_ != nullptr; }
  bool is_core() const;  // no sugar kinds anywhere in the tree, O(1)

  int cmp(const Term& o) const;
  bool operator==(const Term& o) const {
    return node_ == o.node_ || (hash() == o.hash() && cmp(o) == 0);
  }
  bool operator!=(const Term& o) const { return !(*this == o); }
  bool operator<(const Term& o) const { return cmp(o) < 0; }
  size_t hash() const;

  const TermNode* raw() const { return node_.get(); }

 private:
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  Kind kind;
  Type type;
  std::string name;  // Const
  Var var;           // Variable, or binder of Lam/Forall/Exists
  Term a, b;
  size_t hash;
  bool core;                        // no sugar kinds anywhere below
  mutable std::string print_cache;  // canonical print, filled on first use
};

inline Kind Term::kind() const { return node_->kind; }
inline const Type& Term::type() const { return node_->type; }
inline const std::string& Term::const_name() const { return node_->name; }
inline const Var& Term::var() const { return node_->var; }
inline const Term& Term::fun() const { return node_->a; }
inline const Term& Term::arg() const { return node_->b; }
inline const Term& Term::body() const { return node_->a; }
inline const Term& Term::lhs() const { return node_->a; }
inline const Term& Term::rhs() const { return node_->b; }
inline const Term& Term::child() const { return node_->a; }
inline size_t Term::hash() const { return node_->hash; }

using Substitution = std::map<Var, Term>;

// Factories type-check at construction; ill-typed trees are unrepresentable.
Term mk_const(const std::string& name, const Type& type);
Term mk_var(const Var& v);
Term mk_bottom();
Term mk_app(const Term& fun, const Term& arg);
Term mk_lam(const Var& binder, const Term& body);
Term mk_subset(const Term& lhs, const Term& rhs);
Term mk_top();
Term mk_forall(const Var& binder, const Term& body);
Term mk_exists(const Var& binder, const Term& body);
Term mk_eq(const Term& lhs, const Term& rhs);
Term mk_not(const Term& t);
Term mk_and(const Term& lhs, const Term& rhs);
Term mk_or(const Term& lhs, const Term& rhs);
Term mk_iff(const Term& lhs, const Term& rhs);

// Checks constants against sig and free variables against ctx, then returns
// the term's type. Throws UndeclaredConstant / TypeError.
Type type_of(const Term& t, const Signature& sig, const std::map<Var, Type>& ctx = {});

std::set<Var> free_vars(const Term& t);
bool is_closed(const Term& t);

// True iff no free variable of b would be captured by a binder of a at a
// free occurrence of x. Throws TypeError if type(b) != type(x).
bool is_free_for(const Term& b, const Var& x, const Term& a);

// Capture-free simultaneous substitution. Binders shadow sigma on their own
// variable; refuses capture with CaptureError rather than renaming.
Term apply_subst(const Term& a, const Substitution& sigma);

// Convenience single-variable form.
Term subst_one(const Term& a, const Var& x, const Term& b);

// Constant names occurring anywhere in the term.
void collect_constants(const Term& t, std::set<std::string>& out);
bool mentions_constant(const Term& t, const std::string& name);

// All subterms (including t itself), preorder.
void collect_subterms(const Term& t, std::vector<Term>& out);

// Expands Def.-3 style sugar to the six core constructors. Idempotent.
//   phi -> psi   is phi sub psi (parser already maps -> to sub)
//   top          is bot sub bot
//   forall x phi is (lam x.top) sub (lam x.phi)
//   A = B        is forall z:<a>. (z A -> z B), z fresh in the $q namespace
//   ~phi         is phi -> bot
//   phi & psi    is ~(phi -> ~psi)
//   phi | psi    is ~phi -> psi
//   phi <-> psi  is (phi -> psi) & (psi -> phi)
//   exists x phi is ~forall x ~phi
Term desugar(const Term& t);

}  // namespace itl

#endif
