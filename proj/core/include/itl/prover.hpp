#ifndef ITL_PROVER_HPP
#define ITL_PROVER_HPP

#include <chrono>
#include <optional>
#include <string>

#include "itl/hintikka.hpp"
#include "itl/proof.hpp"
#include "itl/theory.hpp"
#include "itl/universe.hpp"

namespace itl {

struct SearchBudget {
  int max_depth = 4000;           // rule applications along one branch
  int max_instantiations = 6;     // per SubL principal
  int max_axiom_instances = 32;   // total scheme instances admitted at the root
  int universe_depth = 2;
  std::chrono::milliseconds time_limit{30000};
  // skip the exhaustive saturation phase; failures stay Exhausted instead of
  // producing open branches (used by scripted goals that must prove)
  bool proof_only = false;
};

struct SaturationReport {
  HintikkaReport hintikka;
  size_t fresh_constants = 0;
  size_t axioms_included = 0;
  std::string summary() const;
};

struct SearchOutcome {
  enum class Status { ProofFound, OpenBranch, Exhausted };
  Status status = Status::Exhausted;
  std::optional<Proof> proof;      // ProofFound: kernel-checked before returning
  std::optional<Sequent> branch;   // OpenBranch: saturated branch including the goal
  std::optional<SaturationReport> report;
  std::string exhausted_dimension;
  std::vector<Term> axioms_used;   // theory instances included at the root

  bool found() const { return status == Status::ProofFound; }
  bool open() const { return status == Status::OpenBranch; }
};

// Backward search over the base rules: eager contractions and witness
// introduction, propositional splits, then fair SubL instantiation from
// branch terms first and the universe second. Theory axioms join the root
// on demand across restart rounds, always as closed instances free of
// reserved constants. Single deterministic engine for both outcomes: a
// fully expanded open branch is a bounded Hintikka sequent, a fully closed
// tree is a kernel proof.
SearchOutcome prove(const Sequent& goal, const Theory& theory, const SearchBudget& budget,
                    const Signature& sig);

// prove with the empty theory; emphasizes the saturation report.
SearchOutcome saturate(const Sequent& goal, const SearchBudget& budget, const Signature& sig);

// Optional per-principal instantiation hints, tried before anything else.
// Scripted goals (worlds corpus) drive the engine with these.
struct ProveHints {
  // key: canonical print of the L-signed subset principal
  std::map<std::string, std::vector<std::vector<Term>>> instantiations;
  std::vector<std::vector<Term>> scheme_requests;  // forced theory instance requests
};

SearchOutcome prove_with_hints(const Sequent& goal, const Theory& theory,
                               const SearchBudget& budget, const Signature& sig,
                               const ProveHints& hints);

}  // namespace itl

#endif
