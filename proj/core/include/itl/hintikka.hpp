#ifndef ITL_HINTIKKA_HPP
#define ITL_HINTIKKA_HPP

#include <string>
#include <vector>

#include "itl/sequent.hpp"
#include "itl/universe.hpp"

namespace itl {

// Downward-saturation check. Clauses 1-2 are absolute; 3-4 cover every member
// with a head redex; 5 is checked against closed terms occurring in the
// sequent plus canonical inhabitants; 6 looks for witness constants already
// in the sequent.
struct HintikkaViolation {
  int clause;
  std::string instance;              // the offending member / instantiation
  std::vector<std::string> missing;  // minimal consistent repairs, printed "L: ..." / "R: ..."
};

struct HintikkaReport {
  std::vector<HintikkaViolation> violations;
  size_t member_count = 0;
  size_t universe_size = 0;  // total C-vector candidates consulted for clause 5
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

HintikkaReport check_hintikka(const Sequent& seq, const TermUniverse& universe);

// Closed subterms of the sequent's sentences with the given type, in
// deterministic order (used for clause 5 and by the prover's instantiation).
std::vector<Term> occurring_closed_terms(const Sequent& seq, const Type& type);

}  // namespace itl

#endif
