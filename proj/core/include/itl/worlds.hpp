#ifndef ITL_WORLDS_HPP
#define ITL_WORLDS_HPP

#include "itl/entail.hpp"
#include "itl/model.hpp"
#include "itl/theory.hpp"

namespace itl {

// Worldhood layer: Omega : <<<>>> carves out the proposition sets that behave
// like possible worlds, w0 : <<>> is the actual world.
//   W1          forall w (Omega w -> ~(w bot))
//   W2 (A,B)    forall w (Omega w -> (w (A sub B) <-> forall xs (w (A xs) -> w (B xs))))
//   W3 (phi)    forall w w' (Omega w & Omega w' -> (w (w' phi) <-> w' phi))
//   W4          forall w (Omega w -> forall w' (Omega w' <-> w (Omega w')))
// plus, when requested, Omega w0 and forall p (w0 p <-> p).
struct WorldsOptions {
  bool with_actual_world = false;
  bool with_serial_belief = false;  // existence of an accessible belief world
  // in-logic universally quantified distribution axioms at the used types;
  // needed by the iterated-modality scripts, too heavy for the simple goals
  bool with_general_distribution = false;
};

Signature worlds_signature();  // Omega, w0, believe, john, plus demo atoms p, q, P, ca, cb

Theory worlds_theory(const WorldsOptions& opt = {});

// theory_instances over the worlds schemes; W2 requests are (A, B) pairs of
// equal complex type, W3 requests are single sentences.
std::vector<Term> world_axiom_instances(const std::vector<std::vector<Term>>& requests,
                                        const WorldsOptions& opt = {});

// [R]phi and <R>phi in their reduced forms; R must have type <<<>>> and the
// result is beta-eta normal so the calculus never sees the wrapper redex.
Term box_term(const Term& accessibility, const Term& phi);
Term diamond_term(const Term& accessibility, const Term& phi);

// lam w . forall p ((believe agent p <-> w (believe agent p)) &
//                   (believe agent p -> w p))
Term belief_accessibility(const Term& agent);

// A two-world finite model satisfying the requested W1/W2 instances; the
// distribution statements and the Omega-accessibility equivalence instances
// all evaluate to true on it.
FiniteModel worlds_demo_model();

struct WorldsGoal {
  enum class Mode { Prove, CheckScript, ModelValidate };
  std::string name;
  Mode mode;
  // Prove / CheckScript
  Sequent goal;
  Theory theory;
  ProveHints hints;
  // ModelValidate
  Term statement;
};

std::vector<WorldsGoal> worlds_goal_corpus();

struct WorldsGoalResult {
  std::string name;
  bool passed = false;
  std::string detail;
  std::optional<Proof> proof;
};

WorldsGoalResult run_worlds_goal(const WorldsGoal& g, const SearchBudget& budget);

}  // namespace itl

#endif
