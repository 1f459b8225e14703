#ifndef ITL_FRAGMENT_HPP
#define ITL_FRAGMENT_HPP

#include "itl/entail.hpp"
#include "itl/error.hpp"
#include "itl/theory.hpp"

namespace itl {

struct UnknownWord : Error {
  explicit UnknownWord(const std::string& w) : Error("unknown word: " + w), word(w) {}
  std::string word;
};

struct Untranslatable : Error {
  explicit Untranslatable(const std::string& side)
      : Error("untranslatable structure: " + side) {}
};

// A word leaf or a binary pair [X Y].
struct SynStructure {
  std::string word;  // nonempty for leaves
  std::vector<SynStructure> children;

  bool is_word() const { return children.empty(); }
  std::string text() const;
};

// "[X Y]" bracket syntax with word leaves; a bare word or "[word]" is a leaf.
// Words are case sensitive and must come from the lexicon.
SynStructure parse_structure(const std::string& text);

// e plus man, unicorn, run, laugh : <e>; love : <e e>; know, believe : <e <>>;
// bill, ann, tully, cicero : <<e>>.
Signature fragment_signature();

// word -> closed translation term, sugar allowed.
const std::map<std::string, Term>& lexicon();

// Smallest-relation semantics: words map to their entries, [X Y] yields every
// well-typed A B and B A. Empty result means uninterpretable.
std::vector<Term> translate(const SynStructure& s);

// names: the four quantifier-type name postulates plus bearer constants
// a, b, t, c : e.
Theory names_theory();

// "lambda-conv", "names", or unions joined with "+".
Theory postulate_set(const std::string& spec);

// Entailment between structures: beta-eta-normal forms of the translations,
// existential over translation pairs. Premise structures may be several.
EntailResult fragment_entails(const std::vector<SynStructure>& premises,
                              const SynStructure& conclusion, const Theory& postulates,
                              const SearchBudget& budget);

}  // namespace itl

#endif
