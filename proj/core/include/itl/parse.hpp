#ifndef ITL_PARSE_HPP
#define ITL_PARSE_HPP

#include <map>
#include <string>

#include "itl/sequent.hpp"
#include "itl/term.hpp"

namespace itl {

Type parse_type(const std::string& text);

// Grammar (loosest to tightest): binders, <->, ->, |, &, ~, sub/=,
// application by juxtaposition, atoms. `->` is sub at type <>.
// Free identifiers resolve through `vars`, then `sig`.
Term parse_term(const std::string& text, const Signature& sig,
                const std::map<std::string, Type>& vars = {});

// "phi1, ..., phim => psi1, ..., psin"; either side may be empty.
// Members are desugared on construction.
Sequent parse_sequent(const std::string& text, const Signature& sig);

// Lines: "type NAME" | "const name : TYPE" | blank | "# comment".
// Rejects reserved ($-prefixed) names.
Signature parse_signature(const std::string& text);

}  // namespace itl

#endif
