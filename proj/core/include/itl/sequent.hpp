#ifndef ITL_SEQUENT_HPP
#define ITL_SEQUENT_HPP

#include <set>
#include <string>
#include <vector>

#include "itl/print.hpp"
#include "itl/term.hpp"

namespace itl {

enum class Sign { L, R };

inline char sign_char(Sign s) { return s == Sign::L ? 'L' : 'R'; }

// A sign plus a closed desugared sentence. Ordering is by canonical print,
// then sign, so iteration over sequents is deterministic.
struct SignedSentence {
  Sign sign;
  Term sentence;   // always core (desugared), closed, of type <>
  std::string key; // cached canonical print of `sentence`

  bool operator<(const SignedSentence& o) const {
    if (key != o.key) return key < o.key;
    return sign < o.sign;
  }
  bool operator==(const SignedSentence& o) const {
    return sign == o.sign && key == o.key;
  }
};

// Desugars and validates (closed, type <>). Throws TypeError on violations.
SignedSentence make_signed(Sign sign, const Term& sentence);

using Sequent = std::set<SignedSentence>;

Sequent make_sequent(const std::vector<Term>& left, const std::vector<Term>& right);

inline bool seq_contains(const Sequent& s, const SignedSentence& x) { return s.count(x) != 0; }
bool seq_subset(const Sequent& small, const Sequent& big);
Sequent seq_union(const Sequent& a, const Sequent& b);
Sequent seq_with(const Sequent& s, const SignedSentence& x);
Sequent seq_without(const Sequent& s, const SignedSentence& x);

// "l1, l2 => r1, r2" with members in canonical order.
std::string print_sequent(const Sequent& s);

// Every constant name occurring in some member sentence.
std::set<std::string> sequent_constants(const Sequent& s);

}  // namespace itl

#endif
