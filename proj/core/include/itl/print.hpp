#ifndef ITL_PRINT_HPP
#define ITL_PRINT_HPP

#include <string>

#include "itl/term.hpp"

namespace itl {

// Canonical text form; parse_term(print_term(t)) reproduces t exactly.
// Binders carry type annotations, occurrences never do. Desugared prints are
// the keys used for sequent membership and model intension tables.
std::string print_term(const Term& t);

}  // namespace itl

#endif
