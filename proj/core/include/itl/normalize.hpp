#ifndef ITL_NORMALIZE_HPP
#define ITL_NORMALIZE_HPP

#include "itl/term.hpp"

namespace itl {

// Full beta-reduction to normal form (capture-avoiding, renames binders with
// primes when needed) followed by eta-contraction of lam x. A x with x not
// free in A. Simply typed, so this terminates; the fuel guard is defensive.
Term beta_eta_normalize(const Term& t, size_t fuel = 1u << 20);

// Substitution that renames instead of refusing; used by normalization only.
Term subst_capture_avoiding(const Term& a, const Var& x, const Term& b);

bool alpha_eq(const Term& a, const Term& b);

}  // namespace itl

#endif
