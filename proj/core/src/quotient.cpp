#include "itl/quotient.hpp"

#include <algorithm>

#include "itl/error.hpp"
#include "itl/print.hpp"

namespace itl {

namespace {

// one-directional ~: every <a>-predicate containing d also contains e
bool sim_dir(const FiniteModel& m, const Type& ty, const Token& d, const Token& e) {
  Type pred = Type::complex({ty});
  auto dom = m.domains.find(pred);
  if (dom == m.domains.end()) return d == e;
  for (const auto& u : dom->second) {
    auto ext = m.extensions.find(u);
    if (ext == m.extensions.end()) continue;
    if (ext->second.tuples.count({d}) && !ext->second.tuples.count({e})) return false;
  }
  return true;
}

struct Partition {
  std::map<Token, int> cls;
  std::map<int, std::vector<Token>> members;

  void rebuild_members() {
    members.clear();
    for (const auto& [t, c] : cls) members[c].push_back(t);
  }
};

}  // namespace

bool sim_related(const FiniteModel& m, const Token& d, const Token& e) {
  auto td = m.token_type.find(d);
  auto te = m.token_type.find(e);
  if (td == m.token_type.end() || te == m.token_type.end() || td->second != te->second)
    return false;
  return sim_dir(m, td->second, d, e);
}

FiniteModel normalize_model(const FiniteModel& m, const std::vector<Term>& probes) {
  ModelReport pre = check_model(m, probes);
  if (!pre.ok()) throw CoherenceError("normalize_model input: " + pre.summary());

  std::vector<bool> before;
  try {
    for (const auto& p : probes) before.push_back(eval_truth(m, p));
  } catch (const CarrierEscape& e) {
    throw CoherenceError(std::string("probe not carrier-closed: ") + e.what());
  }

  // initial partition: symmetric core of ~ per type
  Partition part;
  int next = 0;
  for (const auto& [ty, toks] : m.domains) {
    for (const auto& t : toks) {
      bool placed = false;
      for (const auto& s : toks) {
        if (s == t) break;
        if (part.cls.count(s) && sim_dir(m, ty, t, s) && sim_dir(m, ty, s, t)) {
          part.cls[t] = part.cls[s];
          placed = true;
          break;
        }
      }
      if (!placed) part.cls[t] = next++;
    }
  }

  // refine until extension images are class-consistent
  auto image_sig = [&](const Token& t) -> std::string {
    auto ext = m.extensions.find(t);
    if (ext == m.extensions.end()) return "-";
    std::set<std::vector<int>> img;
    for (const auto& tup : ext->second.tuples) {
      std::vector<int> row;
      for (const auto& x : tup) row.push_back(part.cls.at(x));
      img.insert(std::move(row));
    }
    std::string s;
    for (const auto& row : img) {
      s += "[";
      for (int c : row) s += std::to_string(c) + ",";
      s += "]";
    }
    return s;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    part.rebuild_members();
    for (auto& [c, toks] : part.members) {
      if (toks.size() < 2) continue;
      std::map<std::string, std::vector<Token>> by_sig;
      for (const auto& t : toks) by_sig[image_sig(t)].push_back(t);
      if (by_sig.size() > 1) {
        bool first = true;
        for (const auto& [s, group] : by_sig) {
          if (first) { first = false; continue; }
          for (const auto& t : group) part.cls[t] = next;
          ++next;
        }
        changed = true;
      }
    }
  }
  part.rebuild_members();

  // representatives: minimal token per class
  std::map<int, Token> rep;
  for (const auto& [c, toks] : part.members)
    rep[c] = *std::min_element(toks.begin(), toks.end());
  auto rep_of = [&](const Token& t) { return rep.at(part.cls.at(t)); };

  FiniteModel out;
  out.sig = m.sig;
  for (const auto& [ty, toks] : m.domains) {
    std::vector<Token> v;
    std::set<Token> seen;
    for (const auto& t : toks) {
      Token r = rep_of(t);
      if (seen.insert(r).second) v.push_back(r);
    }
    out.domains.emplace(ty, std::move(v));
  }
  for (const auto& [name, tok] : m.const_intension)
    out.const_intension.emplace(name, rep_of(tok));
  for (const auto& [key, tok] : m.term_intension)
    out.term_intension.emplace(key, rep_of(tok));
  for (const auto& [tok, ext] : m.extensions) {
    Token r = rep_of(tok);
    Extension img;
    for (const auto& tup : ext.tuples) {
      std::vector<Token> row;
      for (const auto& x : tup) row.push_back(rep_of(x));
      img.tuples.insert(std::move(row));
    }
    auto [it, fresh] = out.extensions.emplace(r, img);
    if (!fresh && !(it->second == img))
      throw CoherenceError("merged tokens disagree on extensions at " + r);
  }
  out.reindex();

  for (size_t i = 0; i < probes.size(); ++i) {
    bool after;
    try {
      after = eval_truth(out, probes[i]);
    } catch (const CarrierEscape& e) {
      throw CoherenceError(std::string("quotient broke carrier closure: ") + e.what());
    }
    if (after != before[i])
      throw CoherenceError("quotient changed the truth of " + print_term(probes[i]));
  }
  return out;
}

bool is_normal_model(const FiniteModel& m) {
  for (const auto& [ty, toks] : m.domains)
    for (const auto& d : toks)
      for (const auto& e : toks) {
        if (d == e) continue;
        if (sim_dir(m, ty, d, e) && sim_dir(m, ty, e, d)) return false;
      }
  return true;
}

}  // namespace itl
