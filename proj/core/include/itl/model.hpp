#ifndef ITL_MODEL_HPP
#define ITL_MODEL_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "itl/sequent.hpp"

namespace itl {

using Token = std::string;

// Tuples of domain tokens; the proposition type uses the zero-length tuple,
// so {} is false and {()} is true and no case split is ever needed.
struct Extension {
  std::set<std::vector<Token>> tuples;

  bool truth() const { return tuples.count({}) != 0; }
  static Extension boolean(bool b) {
    Extension e;
    if (b) e.tuples.insert(std::vector<Token>{});
    return e;
  }
  bool subset_of(const Extension& o) const {
    for (const auto& t : tuples)
      if (!o.tuples.count(t)) return false;
    return true;
  }
  bool operator==(const Extension& o) const { return tuples == o.tuples; }
  bool operator!=(const Extension& o) const { return !(*this == o); }
};

// Finite carriers with intension tables and extension tables. Term intensions
// are partial: evaluation raises CarrierEscape when it needs a missing entry,
// and no verdict is valid past an escape.
struct FiniteModel {
  Signature sig;
  std::map<Type, std::vector<Token>> domains;
  std::map<std::string, Token> const_intension;  // constant name -> token
  std::map<std::string, Token> term_intension;   // canonical print -> token
  std::map<Token, Extension> extensions;         // complex-typed tokens

  // derived by reindex()
  std::map<Token, Type> token_type;
  std::map<Token, Term> token_name;  // canonical closed term denoting the token

  void reindex();
  bool has_domain(const Type& t) const { return domains.count(t) != 0; }
};

using Assignment = std::map<Var, Token>;

// Def.-6 style resolution: variables through the assignment, constants
// through their table, anything else through the canonical closed
// instantiation (free variables replaced by their tokens' names) looked up in
// term_intension. Throws CarrierEscape.
Token resolve_intension(const FiniteModel& m, const Assignment& a, const Term& t);

// Compositional evaluation of a core term of complex type. Throws
// CarrierEscape when resolution fails underneath, TypeError on sugar or
// basic-typed input.
Extension eval_extension(const FiniteModel& m, const Assignment& a, const Term& t);

// eval_extension truth of a closed sentence under the empty assignment.
bool eval_truth(const FiniteModel& m, const Term& sentence);

struct ModelReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

// Structural well-formedness (disjoint nonempty domains, typed extensions)
// plus probe-relative coherence: tabled intensions must agree with
// compositional evaluation, and substitution instances that resolve on both
// sides must resolve identically.
ModelReport check_model(const FiniteModel& m, const std::vector<Term>& probes);

// True iff every L sentence evaluates to 1 and every R sentence to 0,
// checked under two distinct assignments. CarrierEscape propagates.
bool refutes(const FiniteModel& m, const Sequent& seq);

std::string serialize_model(const FiniteModel& m);
FiniteModel parse_model(const std::string& text);

}  // namespace itl

#endif
