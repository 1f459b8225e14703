#ifndef ITL_ENTAIL_HPP
#define ITL_ENTAIL_HPP

#include "itl/countermodel.hpp"
#include "itl/prover.hpp"

namespace itl {

struct EntailResult {
  enum class Verdict { Yes, No, Unknown };
  Verdict verdict = Verdict::Unknown;
  std::optional<Proof> proof;              // Yes
  std::optional<Sequent> branch;           // No: the saturated branch
  std::optional<SaturationReport> report;  // No
  std::optional<FiniteModel> model;        // No, when carrier closure succeeded
  std::vector<Term> axioms_used;
  std::string note;
};

// prove/saturate wrapper; negative verdicts run the countermodel builder and
// attach a validated certificate when the finite carrier closes.
EntailResult entails(const std::vector<Term>& premises, const std::vector<Term>& conclusions,
                     const Theory& theory, const SearchBudget& budget, const Signature& sig);

EntailResult entails_sequent(const Sequent& goal, const Theory& theory,
                             const SearchBudget& budget, const Signature& sig);

}  // namespace itl

#endif
