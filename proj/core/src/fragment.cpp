#include "itl/fragment.hpp"

#include <algorithm>
#include <cctype>

#include "itl/normalize.hpp"
#include "itl/parse.hpp"
#include "itl/print.hpp"

namespace itl {

std::string SynStructure::text() const {
  if (is_word()) return word;
  return "[" + children[0].text() + " " + children[1].text() + "]";
}

Signature fragment_signature() {
  return parse_signature(
      "type e\n"
      "const man : <e>\n"
      "const unicorn : <e>\n"
      "const run : <e>\n"
      "const laugh : <e>\n"
      "const love : <e e>\n"
      "const know : <e <>>\n"
      "const believe : <e <>>\n"
      "const bill : <<e>>\n"
      "const ann : <<e>>\n"
      "const tully : <<e>>\n"
      "const cicero : <<e>>\n");
}

const std::map<std::string, Term>& lexicon() {
  static const std::map<std::string, Term> table = [] {
    Signature sig = fragment_signature();
    auto t = [&sig](const char* s) { return parse_term(s, sig); };
    std::map<std::string, Term> m;
    m.emplace("if", t("lam p:<> . lam q:<> . p -> q"));
    m.emplace("no", t("lam P':<e> . lam P:<e> . ~exists x:e . P' x & P x"));
    m.emplace("some", t("lam P':<e> . lam P:<e> . exists x:e . P' x & P x"));
    m.emplace("every", t("lam P':<e> . lam P:<e> . forall x:e . P' x -> P x"));
    m.emplace("loves", t("lam Q:<<e>> . lam x:e . Q (lam y:e . love x y)"));
    m.emplace("is", t("lam Q:<<e>> . lam x:e . Q (lam y:e . x = y)"));
    m.emplace("knows", t("lam p:<> . lam x:e . know x p"));
    m.emplace("believes", t("lam p:<> . lam x:e . believe x p"));
    m.emplace("man", t("man"));
    m.emplace("unicorn", t("unicorn"));
    m.emplace("runs", t("run"));
    m.emplace("laughs", t("laugh"));
    m.emplace("Bill", t("bill"));
    m.emplace("Ann", t("ann"));
    m.emplace("Tully", t("tully"));
    m.emplace("Cicero", t("cicero"));
    return m;
  }();
  return table;
}

namespace {

struct StructParser {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  SynStructure node() {
    skip_ws();
    if (i >= s.size()) throw SyntaxError("unexpected end of structure", i);
    if (s[i] == '[') {
      ++i;
      SynStructure first = node();
      skip_ws();
      if (i < s.size() && s[i] == ']') {
        ++i;  // "[word]" stands for the word itself
        return first;
      }
      SynStructure second = node();
      skip_ws();
      if (i >= s.size() || s[i] != ']') throw SyntaxError("expected ']'", i);
      ++i;
      SynStructure out;
      out.children.push_back(std::move(first));
      out.children.push_back(std::move(second));
      return out;
    }
    size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '[' &&
           s[i] != ']')
      ++i;
    if (i == start) throw SyntaxError("expected a word", i);
    SynStructure out;
    out.word = s.substr(start, i - start);
    if (!lexicon().count(out.word)) throw UnknownWord(out.word);
    return out;
  }
};

}  // namespace

SynStructure parse_structure(const std::string& text) {
  StructParser p{text};
  SynStructure out = p.node();
  p.skip_ws();
  if (p.i != text.size()) throw SyntaxError("trailing input after structure", p.i);
  return out;
}

std::vector<Term> translate(const SynStructure& s) {
  if (s.is_word()) {
    auto it = lexicon().find(s.word);
    if (it == lexicon().end()) return {};
    return {it->second};
  }
  std::vector<Term> left = translate(s.children[0]);
  std::vector<Term> right = translate(s.children[1]);
  std::vector<Term> out;
  std::set<std::string> seen;
  auto push = [&](const Term& t) {
    if (seen.insert(print_term(t)).second) out.push_back(t);
  };
  for (const auto& a : left)
    for (const auto& b : right) {
      try {
        push(mk_app(a, b));
      } catch (const TypeError&) {
      }
      try {
        push(mk_app(b, a));
      } catch (const TypeError&) {
      }
    }
  return out;
}

Theory names_theory() {
  Theory th;
  th.name = "names";
  th.extra_sig.declare("a", Type::basic("e"));
  th.extra_sig.declare("b", Type::basic("e"));
  th.extra_sig.declare("t", Type::basic("e"));
  th.extra_sig.declare("c", Type::basic("e"));
  Signature sig = fragment_signature().merged(th.extra_sig);
  auto t = [&sig](const char* s) { return parse_term(s, sig); };
  th.axioms.push_back(t("forall P:<e> . ann P <-> P a"));
  th.axioms.push_back(t("forall P:<e> . bill P <-> P b"));
  th.axioms.push_back(t("forall P:<e> . tully P <-> P t"));
  th.axioms.push_back(t("forall P:<e> . cicero P <-> P c"));
  return th;
}

Theory postulate_set(const std::string& spec) {
  Theory out;
  out.name = "";
  size_t start = 0;
  bool first = true;
  while (start <= spec.size()) {
    size_t plus = spec.find('+', start);
    std::string part = spec.substr(start, plus == std::string::npos ? plus : plus - start);
    if (part == "lambda-conv") {
      out = first ? lambda_conv_theory() : out.merged(lambda_conv_theory());
    } else if (part == "names") {
      out = first ? names_theory() : out.merged(names_theory());
    } else if (part == "empty" || part.empty()) {
      if (first) out.name = "empty";
    } else {
      throw Error("unknown postulate set: " + part);
    }
    first = false;
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return out;
}

EntailResult fragment_entails(const std::vector<SynStructure>& premises,
                              const SynStructure& conclusion, const Theory& postulates,
                              const SearchBudget& budget) {
  Signature sig = fragment_signature();
  auto norm = [](const Term& t) { return beta_eta_normalize(desugar(t)); };

  std::vector<std::vector<Term>> premise_options;
  for (const auto& p : premises) {
    std::vector<Term> ts = translate(p);
    if (ts.empty()) throw Untranslatable(p.text());
    std::vector<Term> ns;
    for (const auto& t : ts)
      if (t.type().is_prop()) ns.push_back(norm(t));
    if (ns.empty()) throw Untranslatable(p.text() + " (no sentence-typed translation)");
    premise_options.push_back(std::move(ns));
  }
  std::vector<Term> conclusion_terms = translate(conclusion);
  if (conclusion_terms.empty()) throw Untranslatable(conclusion.text());
  std::vector<Term> conclusion_norms;
  for (const auto& t : conclusion_terms)
    if (t.type().is_prop()) conclusion_norms.push_back(norm(t));
  if (conclusion_norms.empty())
    throw Untranslatable(conclusion.text() + " (no sentence-typed translation)");

  // entailment holds if some combination of translations entails
  std::vector<size_t> idx(premise_options.size(), 0);
  EntailResult last_no;
  bool saw_no = false, saw_unknown = false;
  while (true) {
    for (const auto& cn : conclusion_norms) {
      std::vector<Term> prem;
      for (size_t i = 0; i < idx.size(); ++i) prem.push_back(premise_options[i][idx[i]]);
      EntailResult r = entails(prem, {cn}, postulates, budget, sig);
      if (r.verdict == EntailResult::Verdict::Yes) return r;
      if (r.verdict == EntailResult::Verdict::No) {
        saw_no = true;
        last_no = std::move(r);
      } else {
        saw_unknown = true;
      }
    }
    size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == premise_options[pos].size()) idx[pos++] = 0;
    if (pos == idx.size() || idx.empty()) break;
  }
  if (saw_no && !saw_unknown) return last_no;
  if (saw_no) return last_no;  // a concrete certificate beats an unknown
  EntailResult unk;
  unk.verdict = EntailResult::Verdict::Unknown;
  return unk;
}

}  // namespace itl
