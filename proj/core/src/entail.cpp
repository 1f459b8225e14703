#include "itl/entail.hpp"

#include "itl/error.hpp"

namespace itl {

EntailResult entails_sequent(const Sequent& goal, const Theory& theory,
                             const SearchBudget& budget, const Signature& sig) {
  EntailResult out;
  SearchOutcome s = prove(goal, theory, budget, sig);
  out.axioms_used = s.axioms_used;
  switch (s.status) {
    case SearchOutcome::Status::ProofFound:
      out.verdict = EntailResult::Verdict::Yes;
      out.proof = std::move(s.proof);
      return out;
    case SearchOutcome::Status::OpenBranch: {
      out.verdict = EntailResult::Verdict::No;
      out.branch = s.branch;
      out.report = s.report;
      try {
        out.model = build_countermodel(*s.branch, sig.merged(theory.extra_sig));
      } catch (const ValidationFailed& e) {
        out.note = e.what();
      }
      return out;
    }
    case SearchOutcome::Status::Exhausted:
      out.verdict = EntailResult::Verdict::Unknown;
      out.note = "budget exhausted: " + s.exhausted_dimension;
      return out;
  }
  return out;
}

EntailResult entails(const std::vector<Term>& premises, const std::vector<Term>& conclusions,
                     const Theory& theory, const SearchBudget& budget, const Signature& sig) {
  return entails_sequent(make_sequent(premises, conclusions), theory, budget, sig);
}

}  // namespace itl
