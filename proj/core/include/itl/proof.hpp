#ifndef ITL_PROOF_HPP
#define ITL_PROOF_HPP

#include <optional>
#include <string>
#include <vector>

#include "itl/sequent.hpp"

namespace itl {

// Base rules are the kernel; derived rules are macros that expand_derived
// rewrites into base rules before checking.
enum class RuleId {
  W, Axiom, BottomL, LamL, LamR, SubL, SubR,          // base
  TopR, ImpL, ImpR, AllL, AllR, EqL, EqR,             // derived
};

bool is_base_rule(RuleId r);
const char* rule_name(RuleId r);
std::optional<RuleId> rule_from_name(const std::string& s);

struct RuleData {
  std::optional<SignedSentence> principal;
  std::vector<Term> inst;   // SubL instantiation vector / AllL witness / EqL context lambda
  std::vector<Term> fresh;  // SubR / AllR fresh constants, as Const terms
};

struct Proof {
  Sequent conclusion;
  RuleId rule = RuleId::Axiom;
  RuleData data;
  std::vector<Proof> premises;
};

struct Verdict {
  bool valid = false;
  std::string reason;  // empty when valid
  explicit operator bool() const { return valid; }
};

// Validates every node against its base rule schema. Rejects derived rules.
// Freshness for SubR is relative to the node's own conclusion sequent.
// Never throws on structurally well-formed trees.
Verdict check_proof(const Proof& p, const Signature& sig);

// Rewrites derived-rule nodes into base-rule subtrees with the same
// conclusions. check_proof accepts the result. Throws ExpansionError when a
// node's ruleData is inconsistent with its conclusion.
Proof expand_derived(const Proof& p);

// expand_derived + check_proof.
Verdict check_full(const Proof& p, const Signature& sig);

size_t proof_size(const Proof& p);

// Deterministic JSON text form; round-trips bit-exactly. The file embeds the
// constants it mentions so it can be parsed on its own.
std::string serialize_proof(const Proof& p);
Proof parse_proof(const std::string& text, const Signature& sig);

// ---- helpers shared with the prover and derived-rule templates ----

// Decomposes a head redex sentence ((lam x.A) B) C1..Cn with n >= 0.
struct RedexSpine {
  Term lam;                // lam x.A
  Term arg;                // B
  std::vector<Term> rest;  // C1..Cn in application order
};
std::optional<RedexSpine> decompose_redex(const Term& sentence);

// A{x:=B} C1..Cn. Throws CaptureError if B is not free for x in A.
Term contract_redex(const RedexSpine& r);

// t C1..Cn.
Term apply_all(const Term& t, const std::vector<Term>& args);

// Recognizes a desugared forall: (lam x.top) sub (lam x.phi) with the same
// binder on both sides. Returns (x, phi).
std::optional<std::pair<Var, Term>> match_forall(const Term& t);

// Recognizes a desugared equation forall z. (z A sub z B). Returns (A, B).
std::optional<std::pair<Term, Term>> match_equation(const Term& t);

// First "$c<k>" name not occurring in the sequent, k counting from `start`.
Term fresh_constant(const Sequent& avoid, const Type& type, int start = 0);

}  // namespace itl

#endif
