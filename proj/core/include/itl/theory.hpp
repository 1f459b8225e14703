#ifndef ITL_THEORY_HPP
#define ITL_THEORY_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "itl/term.hpp"

namespace itl {

// Tags drive the prover's demand heuristics; Generic schemes are only
// instantiated through explicit requests.
enum class SchemeKind { Alpha, Beta, Eta, W2, W3, Generic };

struct Scheme {
  std::string id;
  SchemeKind kind;
  // Returns a closed sentence (sugar allowed; callers desugar) or nullopt if
  // the tuple does not fit this scheme. Throws TypeError on genuinely
  // ill-typed tuples.
  std::function<std::optional<Term>(const std::vector<Term>&)> make;
};

// A finite list of closed axioms plus scheme generators. `extra_sig` holds
// constants the theory itself introduces (e.g. the name-bearer constants).
struct Theory {
  std::string name;
  Signature extra_sig;
  std::vector<Term> axioms;   // closed sentences, sugar allowed
  std::vector<Scheme> schemes;

  Theory merged(const Theory& other) const;
};

// Fixed axioms first, then per-request scheme instances in request order.
// Tuples that fit no scheme throw TypeError. Deterministic, deduplicated.
std::vector<Term> theory_instances(const Theory& th,
                                   const std::vector<std::vector<Term>>& requests);

// forall-closes over the free variables of t (sorted), then returns it.
Term universal_closure(const Term& t);

// alpha / beta / eta conversion schemes:
//   alpha: (lam x.A, y)  ->  lam x.A = lam y.A{x:=y},  y free for x in A
//   beta:  (lam x.A, B)  ->  (lam x.A) B = A{x:=B},    B free for x in A
//   eta:   (lam x.A x)   ->  lam x.A x = A,            x not free in A
Theory lambda_conv_theory();

}  // namespace itl

#endif
