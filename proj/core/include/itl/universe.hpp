#ifndef ITL_UNIVERSE_HPP
#define ITL_UNIVERSE_HPP

#include <map>
#include <vector>

#include "itl/term.hpp"

namespace itl {

// Deterministic enumerator of closed terms per type: constants first, then
// applications and lambda abstractions with canonical $u binders, by depth.
// Every complex type also gets its canonical inhabitant lam x... . bot.
class TermUniverse {
 public:
  TermUniverse(Signature sig, int max_depth, size_t max_terms_per_type = 128);

  // Ordered by (depth, canonical print), deduplicated, capped.
  const std::vector<Term>& terms_of(const Type& type) const;

  // lam $u0:a1 . ... lam $u{n-1}:an . bot  (bot itself for <>)
  static Term canonical_inhabitant(const Type& type);

  const Signature& signature() const { return sig_; }
  int max_depth() const { return max_depth_; }

 private:
  Signature sig_;
  int max_depth_;
  size_t cap_;
  mutable std::map<Type, std::vector<Term>> pools_;
  mutable std::map<Type, int> building_;  // recursion guard per (type, depth)

  std::vector<Term> build(const Type& type) const;
  std::vector<Term> terms_at(const Type& type, int depth) const;
  mutable std::map<std::pair<Type, int>, std::vector<Term>> memo_;
};

}  // namespace itl

#endif
