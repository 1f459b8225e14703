#include "itl/hintikka.hpp"

#include <algorithm>

#include "itl/error.hpp"
#include "itl/proof.hpp"

namespace itl {

std::vector<Term> occurring_closed_terms(const Sequent& seq, const Type& type) {
  std::vector<Term> out;
  std::set<std::string> seen;
  for (const auto& m : seq) {
    std::vector<Term> subs;
    collect_subterms(m.sentence, subs);
    for (const auto& s : subs) {
      if (s.type() != type || !is_closed(s)) continue;
      if (seen.insert(print_term(s)).second) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    std::string pa = print_term(a), pb = print_term(b);
    if (pa.size() != pb.size()) return pa.size() < pb.size();
    return pa < pb;
  });
  return out;
}

namespace {

std::string show(const SignedSentence& s) {
  return std::string(1, sign_char(s.sign)) + ": " + s.key;
}

// Candidate C-vectors for clause 5: occurring closed terms plus the canonical
// inhabitant, per argument position.
std::vector<std::vector<Term>> clause5_vectors(const Sequent& seq, const Type& subset_type,
                                               size_t cap) {
  std::vector<std::vector<Term>> cols;
  for (const auto& at : subset_type.args()) {
    std::vector<Term> col = occurring_closed_terms(seq, at);
    if (at.is_complex()) {
      Term inh = TermUniverse::canonical_inhabitant(at);
      std::string k = print_term(inh);
      bool have = false;
      for (const auto& t : col)
        if (print_term(t) == k) have = true;
      if (!have) col.push_back(inh);
    }
    cols.push_back(std::move(col));
  }
  std::vector<std::vector<Term>> tuples;
  if (subset_type.arity() == 0) {
    tuples.push_back({});
    return tuples;
  }
  for (const auto& c : cols)
    if (c.empty()) return tuples;  // no candidates at some position
  std::vector<size_t> idx(cols.size(), 0);
  while (tuples.size() < cap) {
    std::vector<Term> tup;
    for (size_t i = 0; i < cols.size(); ++i) tup.push_back(cols[i][idx[i]]);
    tuples.push_back(std::move(tup));
    size_t pos = 0;
    while (pos < cols.size() && ++idx[pos] == cols[pos].size()) idx[pos++] = 0;
    if (pos == cols.size()) break;
  }
  return tuples;
}

}  // namespace

std::string HintikkaReport::summary() const {
  std::string out = "hintikka: members=" + std::to_string(member_count) +
                    " clause5-candidates=" + std::to_string(universe_size);
  if (violations.empty()) {
    out += " violations=0";
    return out;
  }
  out += " violations=" + std::to_string(violations.size());
  for (const auto& v : violations) {
    out += "\n  clause " + std::to_string(v.clause) + ": " + v.instance;
    if (!v.missing.empty()) {
      out += " (missing:";
      for (const auto& m : v.missing) out += " " + m;
      out += ")";
    }
  }
  return out;
}

HintikkaReport check_hintikka(const Sequent& seq, const TermUniverse& universe) {
  HintikkaReport rep;
  rep.member_count = seq.size();
  SignedSentence lbot = make_signed(Sign::L, mk_bottom());

  // clause 1: no sentence signed both ways
  for (const auto& m : seq) {
    if (m.sign != Sign::L) continue;
    if (seq_contains(seq, SignedSentence{Sign::R, m.sentence, m.key}))
      rep.violations.push_back({1, "L and R: " + m.key, {}});
  }
  // clause 2: no L:bot
  if (seq_contains(seq, lbot)) rep.violations.push_back({2, "L: bot", {}});

  auto consistent_add = [&](const SignedSentence& s) {
    // a repair is consistent if it does not immediately break clauses 1-2
    if (s.sign == Sign::L && s.sentence.kind() == Kind::Bottom) return false;
    Sign other = s.sign == Sign::L ? Sign::R : Sign::L;
    if (seq_contains(seq, SignedSentence{other, s.sentence, s.key})) return false;
    return true;
  };

  for (const auto& m : seq) {
    // clauses 3-4: head redexes must be contracted with the same sign
    if (auto spine = decompose_redex(m.sentence)) {
      if (is_free_for(spine->arg, spine->lam.var(), spine->lam.body())) {
        SignedSentence want = make_signed(m.sign, contract_redex(*spine));
        if (!seq_contains(seq, want))
          rep.violations.push_back(
              {m.sign == Sign::L ? 3 : 4, show(m), {show(want)}});
      }
      continue;
    }
    if (m.sentence.kind() != Kind::Subset) continue;
    const Term& a = m.sentence.lhs();
    const Term& b = m.sentence.rhs();
    if (m.sign == Sign::L) {
      // clause 5 over the bounded candidate vectors
      auto tuples = clause5_vectors(seq, a.type(), 4096);
      rep.universe_size += tuples.size();
      for (const auto& tup : tuples) {
        SignedSentence lw = make_signed(Sign::L, apply_all(b, tup));
        SignedSentence rw = make_signed(Sign::R, apply_all(a, tup));
        if (seq_contains(seq, lw) || seq_contains(seq, rw)) continue;
        std::vector<std::string> missing;
        if (consistent_add(lw)) missing.push_back(show(lw));
        if (consistent_add(rw)) missing.push_back(show(rw));
        std::string inst = show(m);
        if (!tup.empty()) {
          inst += " at";
          for (const auto& t : tup) inst += " " + print_term(t);
        }
        rep.violations.push_back({5, inst, missing});
      }
    } else {
      // clause 6: witness constants must already be present
      bool found = false;
      if (a.type().arity() == 0) {
        found = seq_contains(seq, make_signed(Sign::L, a)) &&
                seq_contains(seq, make_signed(Sign::R, b));
      } else {
        // try every vector of occurring constants of the right types
        std::vector<std::vector<Term>> cols;
        bool feasible = true;
        for (const auto& at : a.type().args()) {
          std::vector<Term> col;
          for (const auto& t : occurring_closed_terms(seq, at))
            if (t.kind() == Kind::Const) col.push_back(t);
          if (col.empty()) feasible = false;
          cols.push_back(std::move(col));
        }
        if (feasible) {
          std::vector<size_t> idx(cols.size(), 0);
          while (!found) {
            std::vector<Term> tup;
            for (size_t i = 0; i < cols.size(); ++i) tup.push_back(cols[i][idx[i]]);
            found = seq_contains(seq, make_signed(Sign::L, apply_all(a, tup))) &&
                    seq_contains(seq, make_signed(Sign::R, apply_all(b, tup)));
            size_t pos = 0;
            while (pos < cols.size() && ++idx[pos] == cols[pos].size()) idx[pos++] = 0;
            if (pos == cols.size()) break;
          }
        }
      }
      if (!found) rep.violations.push_back({6, show(m), {}});
    }
  }
  (void)universe;
  return rep;
}

}  // namespace itl
