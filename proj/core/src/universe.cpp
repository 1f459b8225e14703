#include "itl/universe.hpp"

#include <algorithm>
#include <set>

#include "itl/print.hpp"

namespace itl {

TermUniverse::TermUniverse(Signature sig, int max_depth, size_t max_terms_per_type)
    : sig_(std::move(sig)), max_depth_(max_depth), cap_(max_terms_per_type) {}

Term TermUniverse::canonical_inhabitant(const Type& type) {
  Term body = mk_bottom();
  if (type.is_basic()) return body;  // callers must not ask; basic types have no inhabitant
  for (size_t i = type.args().size(); i-- > 0;)
    body = mk_lam(Var{"$u" + std::to_string(i), type.args()[i]}, body);
  return body;
}

std::vector<Term> TermUniverse::terms_at(const Type& type, int depth) const {
  auto key = std::make_pair(type, depth);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  memo_[key] = {};  // break recursive cycles; overwritten below

  std::set<std::string> seen;
  std::vector<Term> out;
  auto add = [&](const Term& t) {
    if (seen.insert(print_term(t)).second) out.push_back(t);
  };

  if (depth == 0) {
    for (const auto& [name, ty] : sig_.constants)
      if (ty == type) add(mk_const(name, ty));
    if (type.is_prop()) add(mk_bottom());
    if (type.is_complex() && !type.args().empty()) add(canonical_inhabitant(type));
  } else {
    // applications h a with h of type <b> ++ type.args
    if (type.is_complex()) {
      for (const auto& [name, hty] : sig_.constants) {
        if (!hty.is_complex() || hty.args().empty()) continue;
        // does applying k arguments of hty reach `type`?
        for (size_t k = 1; k <= hty.args().size(); ++k) {
          if (hty.args().size() - k != type.args().size()) continue;
          bool tail_ok = true;
          for (size_t i = 0; i < type.args().size(); ++i)
            if (hty.args()[k + i] != type.args()[i]) tail_ok = false;
          if (!tail_ok) continue;
          // enumerate argument tuples at lower depth
          std::vector<std::vector<Term>> cols;
          bool feasible = true;
          for (size_t i = 0; i < k; ++i) {
            cols.push_back(terms_at(hty.args()[i], 0));
            auto deeper = terms_at(hty.args()[i], depth - 1);
            for (const auto& t : deeper) cols.back().push_back(t);
            if (cols.back().empty()) feasible = false;
          }
          if (!feasible) continue;
          std::vector<size_t> idx(k, 0);
          while (true) {
            Term app = mk_const(name, hty);
            for (size_t i = 0; i < k; ++i) app = mk_app(app, cols[i][idx[i]]);
            add(app);
            if (out.size() > cap_ * 2) break;
            size_t pos = 0;
            while (pos < k && ++idx[pos] == cols[pos].size()) idx[pos++] = 0;
            if (pos == k) break;
          }
        }
      }
      // abstractions over closed bodies
      if (!type.args().empty()) {
        Type body_type = type.applied();
        if (body_type.is_complex())
          for (const auto& b : terms_at(body_type, depth - 1))
            add(mk_lam(Var{"$u0", type.args()[0]}, b));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    std::string pa = print_term(a), pb = print_term(b);
    if (pa.size() != pb.size()) return pa.size() < pb.size();
    return pa < pb;
  });
  memo_[key] = out;
  return out;
}

std::vector<Term> TermUniverse::build(const Type& type) const {
  std::vector<Term> out;
  std::set<std::string> seen;
  for (int d = 0; d <= max_depth_ && out.size() < cap_; ++d)
    for (const auto& t : terms_at(type, d)) {
      if (out.size() >= cap_) break;
      if (seen.insert(print_term(t)).second) out.push_back(t);
    }
  return out;
}

const std::vector<Term>& TermUniverse::terms_of(const Type& type) const {
  auto it = pools_.find(type);
  if (it != pools_.end()) return it->second;
  return pools_.emplace(type, build(type)).first->second;
}

}  // namespace itl
