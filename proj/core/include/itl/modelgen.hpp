#ifndef ITL_MODELGEN_HPP
#define ITL_MODELGEN_HPP

#include "itl/model.hpp"

namespace itl {

struct GenOptions {
  uint64_t seed = 1;
  int spares_per_type = 2;  // anonymous extra tokens (reserved $m constants)
  size_t max_tuples = 64;   // cap per randomly chosen extension
  // Constants forced to share an intension token (pairs of names declared at
  // the same type). Coherent tabling keeps Def.-6 substitution instances
  // consistent with the aliasing.
  std::vector<std::pair<std::string, std::string>> alias_constants;
  // Bit-index separator predicates make the defined equality coincide with
  // token identity, so the Prop.-9 facts hold structurally.
  bool separators = true;
};

// A random well-formed finite model whose intension tables cover every closed
// subterm of the probe sentences: constants get random extensions, compounds
// evaluate compositionally, so check_model passes by construction.
// Deterministic in the seed.
FiniteModel random_model(const std::vector<Term>& probes, const Signature& sig,
                         const GenOptions& opt);

// Clones the idx-th token of `type` into an indistinguishable twin: every
// extension is closed under substituting the twin for the original, and the
// twin gets a fresh naming constant. The result still satisfies the same
// probe sentences and normalizes back by merging the pair.
FiniteModel inject_duplicate(const FiniteModel& m, const Type& type, size_t idx);

}  // namespace itl

#endif
