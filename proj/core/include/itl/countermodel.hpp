#ifndef ITL_COUNTERMODEL_HPP
#define ITL_COUNTERMODEL_HPP

#include "itl/model.hpp"
#include "itl/universe.hpp"

namespace itl {

// Finite-carrier V-complex construction over the closed terms occurring in a
// saturated sequent plus canonical inhabitants. Basic domains carry one token
// per signature constant; complex tokens pair each occurring term with its
// computed possible extension, where constants take exactly the L-forced
// tuples and compounds evaluate compositionally. The result is validated:
// it must refute `seq` and pass check_model over the occurring subterms, or
// ValidationFailed is thrown.
FiniteModel build_countermodel(const Sequent& seq, const Signature& sig);

}  // namespace itl

#endif
