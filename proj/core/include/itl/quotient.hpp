#ifndef ITL_QUOTIENT_HPP
#define ITL_QUOTIENT_HPP

#include "itl/model.hpp"

namespace itl {

// d ~ d' iff <d,d'> in V(lam x. lam x'. x = x'), computed directly over the
// finite carrier: every u in D_<a> containing d must contain d'. Types whose
// predicate domain D_<a> is absent never relate distinct tokens.
bool sim_related(const FiniteModel& m, const Token& d, const Token& e);

// Quotients every domain by the symmetric core of ~, refined until extension
// images are class-consistent, rebuilds the tables with minimal-token
// representatives and rewrites extensions tuple-wise. Preserves the truth of
// every probe sentence; throws CoherenceError when the input tables cannot
// support a congruent quotient.
FiniteModel normalize_model(const FiniteModel& m, const std::vector<Term>& probe_sentences);

// The recomputed ~ on the model identifies no two distinct tokens.
bool is_normal_model(const FiniteModel& m);

}  // namespace itl

#endif
