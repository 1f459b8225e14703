#include "itl/sequent.hpp"

#include "itl/error.hpp"

namespace itl {

SignedSentence make_signed(Sign sign, const Term& sentence) {
  Term d = desugar(sentence);
  if (!d.type().is_prop())
    throw TypeError("signed sentence must have type <>, got " + print_type(d.type()));
  if (!is_closed(d))
    throw TypeError("signed sentence must be closed: " + print_term(d));
  return SignedSentence{sign, d, print_term(d)};
}

Sequent make_sequent(const std::vector<Term>& left, const std::vector<Term>& right) {
  Sequent out;
  for (const auto& t : left) out.insert(make_signed(Sign::L, t));
  for (const auto& t : right) out.insert(make_signed(Sign::R, t));
  return out;
}

bool seq_subset(const Sequent& small, const Sequent& big) {
  for (const auto& x : small)
    if (!big.count(x)) return false;
  return true;
}

Sequent seq_union(const Sequent& a, const Sequent& b) {
  Sequent out = a;
  out.insert(b.begin(), b.end());
  return out;
}

Sequent seq_with(const Sequent& s, const SignedSentence& x) {
  Sequent out = s;
  out.insert(x);
  return out;
}

Sequent seq_without(const Sequent& s, const SignedSentence& x) {
  Sequent out = s;
  out.erase(x);
  return out;
}

std::string print_sequent(const Sequent& s) {
  std::string l, r;
  for (const auto& m : s) {
    std::string& side = m.sign == Sign::L ? l : r;
    if (!side.empty()) side += ", ";
    side += m.key;
  }
  return l + (l.empty() ? "=>" : " =>") + (r.empty() ? "" : " " + r);
}

std::set<std::string> sequent_constants(const Sequent& s) {
  std::set<std::string> out;
  for (const auto& m : s) collect_constants(m.sentence, out);
  return out;
}

}  // namespace itl
