#pragma once

// Rotations and the rotation poset.
//
// A rotation is an ordered cycle (m0,w0),...,(mk,wk) exposed in a stable
// matching M: wi+1 is the best woman after wi in mi's list who prefers mi to
// her partner in M. Eliminating it moves every mi to wi+1, yielding another
// stable matching. Closed subsets (down-sets) of the rotation poset are in
// bijection with the stable matchings, which is what every algorithm in this
// library walks over.

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rsm/bitset.hpp"
#include "rsm/matching.hpp"

namespace rsm {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Rotation {
  int id = -1;
  std::vector<std::pair<int, int>> pairs;  // (man, woman); man moves to the
                                           // next pair's woman, cyclically

  int size() const { return static_cast<int>(pairs.size()); }
  int next_woman(int k) const { return pairs[(k + 1) % pairs.size()].second; }
};

// Cycles start at their smallest man so tests and dumps are order-stable.
inline void canonicalize(Rotation& rho) {
  auto at = std::min_element(
      rho.pairs.begin(), rho.pairs.end(),
      [](const auto& a, const auto& b) { return a.first < b.first; });
  std::rotate(rho.pairs.begin(), at, rho.pairs.end());
}

struct RotationData {
  Matching m0, mz;
  std::vector<Rotation> rotations;             // in discovery (topological) order
  std::vector<std::vector<int>> produce;       // [man][woman] -> id or -1
  std::vector<std::vector<int>> eliminate;     // [man][woman] -> id or -1
};

// Requires every pair of the rotation to be present in m.
inline Matching eliminate_rotation(const Matching& m, const Rotation& rho) {
  for (const auto& [man, woman] : rho.pairs)
    if (m.partner_of_man[man] != woman)
      throw std::invalid_argument("rotation is not exposed in the matching");
  Matching out = m;
  for (int k = 0; k < rho.size(); ++k) {
    int man = rho.pairs[k].first;
    int w = rho.next_woman(k);
    out.partner_of_man[man] = w;
    out.partner_of_woman[w] = man;
  }
  return out;
}

// Finds all rotations by walking from the man-optimal matching to the
// woman-optimal one. Each man keeps a scan pointer into his preference list
// that only ever advances, so the whole enumeration is O(n^2) plus cycle
// bookkeeping. Walks restart from the smallest man still short of his
// woman-optimal partner, which fixes the discovery order (and ids).
inline RotationData enumerate_rotations(const Instance& inst) {
  const int n = inst.n;
  RotationData out;
  out.m0 = man_optimal(inst);
  out.mz = woman_optimal(inst);
  out.produce.assign(n, std::vector<int>(n, -1));
  out.eliminate.assign(n, std::vector<int>(n, -1));

  Matching cur = out.m0;
  std::vector<int> scan(n);
  for (int m = 0; m < n; ++m) scan[m] = inst.men_rank[m][cur.partner_of_man[m]] + 1;

  auto done = [&](int m) { return cur.partner_of_man[m] == out.mz.partner_of_man[m]; };

  std::vector<int> stack;
  stack.reserve(n);
  std::vector<int> pos_on_stack(n, -1);
  int lowest_open = 0;  // men below this are settled for good

  for (;;) {
    if (stack.empty()) {
      while (lowest_open < n && done(lowest_open)) ++lowest_open;
      if (lowest_open == n) break;
      pos_on_stack[lowest_open] = 0;
      stack.push_back(lowest_open);
    }
    int m = stack.back();
    // Next woman after m's current partner_of_man who would take him.
    int& p = scan[m];
    for (;;) {
      if (p >= n) throw std::logic_error("rotation scan ran off a preference list");
      int w = inst.men_prefs[m][p];
      if (inst.women_rank[w][m] < inst.women_rank[w][cur.partner_of_woman[w]]) break;
      ++p;
    }
    int w = inst.men_prefs[m][p];
    int m2 = cur.partner_of_woman[w];
    if (pos_on_stack[m2] < 0) {
      pos_on_stack[m2] = static_cast<int>(stack.size());
      stack.push_back(m2);
      continue;
    }
    // Cycle from m2 to the top of the stack: an exposed rotation.
    const std::size_t cut = static_cast<std::size_t>(pos_on_stack[m2]);
    Rotation rho;
    rho.id = static_cast<int>(out.rotations.size());
    for (std::size_t k = cut; k < stack.size(); ++k)
      rho.pairs.emplace_back(stack[k], cur.partner_of_man[stack[k]]);
    for (int k = 0; k < rho.size(); ++k) {
      auto [man, old_w] = rho.pairs[k];
      int new_w = rho.next_woman(k);
      out.eliminate[man][old_w] = rho.id;
      out.produce[man][new_w] = rho.id;
      cur.partner_of_man[man] = new_w;
      cur.partner_of_woman[new_w] = man;
      scan[man] = inst.men_rank[man][new_w] + 1;
    }
    for (std::size_t k = cut; k < stack.size(); ++k)
      pos_on_stack[stack[k]] = -1;
    stack.resize(cut);
    canonicalize(rho);
    out.rotations.push_back(std::move(rho));
  }
  if (cur != out.mz)
    throw std::logic_error("rotation elimination did not reach the woman-optimal matching");
  return out;
}

struct RotationPoset {
  int n = 0;
  Matching m0, mz;
  std::vector<Rotation> rotations;
  std::vector<std::vector<int>> produce, eliminate;

  std::vector<std::vector<int>> direct_preds, direct_succs;  // transitive reduction
  std::vector<IndexSet> trans_preds, trans_succs;            // strict (exclude self)
  std::vector<IndexSet> men_of;                              // men moved, as n-bit sets
  std::vector<std::vector<int>> rotations_of_man;            // ascending ids per man

  std::size_t size() const { return rotations.size(); }

  bool is_closed(const IndexSet& s) const {
    bool ok = true;
    s.for_each([&](std::size_t r) {
      if (ok && !trans_preds[r].subset_of(s)) ok = false;
    });
    return ok;
  }

  IndexSet closure_of(int rho) const {
    IndexSet s = trans_preds[rho];
    s.set(rho);
    return s;
  }

  IndexSet add_with_predecessors(IndexSet s, int rho) const {
    s |= trans_preds[rho];
    s.set(rho);
    return s;
  }

  IndexSet remove_with_successors(IndexSet s, int rho) const {
    s.subtract(trans_succs[rho]);
    s.reset(rho);
    return s;
  }

  IndexSet toggle(IndexSet s, int rho) const {
    return s.test(rho) ? remove_with_successors(std::move(s), rho)
                       : add_with_predecessors(std::move(s), rho);
  }
};

// Precedence edges come from two dependency rules, both derived from what
// must already have happened before a rotation can be exposed:
//   1. the pair (m, w) a rotation eliminates must first be produced, so
//      produce(m, w) precedes eliminate(m, w);
//   2. when a rotation moves m from w_old past w to w_new, the rotation that
//      gave w a partner she prefers to m must come first, otherwise (m, w)
//      would block.
// Raw edges always point from a smaller id to a larger one (discovery order
// is topological), so one ascending/descending sweep builds the closures, and
// the transitive reduction only needs to test raw edges (a cover edge is
// present in every generating edge set).
inline RotationPoset build_poset(const Instance& inst, RotationData data) {
  RotationPoset p;
  p.n = inst.n;
  p.m0 = std::move(data.m0);
  p.mz = std::move(data.mz);
  p.rotations = std::move(data.rotations);
  p.produce = std::move(data.produce);
  p.eliminate = std::move(data.eliminate);

  const int V = static_cast<int>(p.rotations.size());
  std::vector<std::vector<int>> raw_preds(V);

  // Per woman, her partner-rank history: (old_rank, new_rank, rotation),
  // old_rank strictly decreasing, consecutive entries sharing a boundary.
  struct Pass {
    int old_rank, new_rank, rho;
  };
  std::vector<std::vector<Pass>> chain(p.n);
  for (const Rotation& rho : p.rotations)
    for (int k = 0; k < rho.size(); ++k) {
      int w = rho.pairs[k].second;
      int from = rho.pairs[k].first;
      int to = rho.pairs[(k + rho.size() - 1) % rho.size()].first;
      chain[w].push_back(
          {inst.women_rank[w][from], inst.women_rank[w][to], rho.id});
    }

  for (const Rotation& rho : p.rotations) {
    for (int k = 0; k < rho.size(); ++k) {
      auto [man, w_old] = rho.pairs[k];
      int w_new = rho.next_woman(k);
      int pr = p.produce[man][w_old];
      if (pr >= 0) raw_preds[rho.id].push_back(pr);  // rule 1
      int lo = inst.men_rank[man][w_old] + 1;
      int hi = inst.men_rank[man][w_new];
      for (int q = lo; q < hi; ++q) {  // rule 2
        int w = inst.men_prefs[man][q];
        int x = inst.women_rank[w][man];
        const auto& ch = chain[w];
        if (ch.empty() || x > ch.front().old_rank) continue;
        // last entry with old_rank >= x
        std::size_t a = 0, b = ch.size();
        while (b - a > 1) {
          std::size_t mid = (a + b) / 2;
          if (ch[mid].old_rank >= x)
            a = mid;
          else
            b = mid;
        }
        if (ch[a].new_rank < x && ch[a].rho != rho.id)
          raw_preds[rho.id].push_back(ch[a].rho);
      }
    }
    auto& rp = raw_preds[rho.id];
    std::sort(rp.begin(), rp.end());
    rp.erase(std::unique(rp.begin(), rp.end()), rp.end());
  }

  p.trans_preds.assign(V, IndexSet(V));
  p.trans_succs.assign(V, IndexSet(V));
  for (int v = 0; v < V; ++v)
    for (int u : raw_preds[v]) {
      p.trans_preds[v] |= p.trans_preds[u];
      p.trans_preds[v].set(u);
    }
  std::vector<std::vector<int>> raw_succs(V);
  for (int v = 0; v < V; ++v)
    for (int u : raw_preds[v]) raw_succs[u].push_back(v);
  for (int u = V - 1; u >= 0; --u)
    for (int v : raw_succs[u]) {
      p.trans_succs[u] |= p.trans_succs[v];
      p.trans_succs[u].set(v);
    }

  p.direct_preds.assign(V, {});
  p.direct_succs.assign(V, {});
  for (int v = 0; v < V; ++v)
    for (int u : raw_preds[v])
      if (!p.trans_succs[u].intersects(p.trans_preds[v])) {
        p.direct_preds[v].push_back(u);
        p.direct_succs[u].push_back(v);
      }
  for (auto& ds : p.direct_succs) std::sort(ds.begin(), ds.end());

  p.men_of.assign(V, IndexSet(p.n));
  p.rotations_of_man.assign(p.n, {});
  for (const Rotation& rho : p.rotations)
    for (const auto& [man, woman] : rho.pairs) {
      p.men_of[rho.id].set(man);
      p.rotations_of_man[man].push_back(rho.id);
    }

  return p;
}

inline RotationPoset build_poset(const Instance& inst) {
  return build_poset(inst, enumerate_rotations(inst));
}

inline Matching matching_of_closed_subset(const RotationPoset& p,
                                          const IndexSet& s) {
  if (s.universe() != p.size())
    throw std::invalid_argument("subset universe does not match the poset");
  if (!p.is_closed(s))
    throw std::invalid_argument("subset is not closed under predecessors");
  std::vector<int> partner_of_man = p.m0.partner_of_man;
  s.for_each([&](std::size_t r) {  // ascending id = topological order
    const Rotation& rho = p.rotations[r];
    for (int k = 0; k < rho.size(); ++k)
      partner_of_man[rho.pairs[k].first] = rho.next_woman(k);
  });
  return matching_from_partners(partner_of_man);
}

inline IndexSet closed_subset_of_matching(const RotationPoset& p,
                                          const Matching& m) {
  if (m.partner_of_man.size() != static_cast<std::size_t>(p.n))
    throw std::invalid_argument("matching size does not match the poset");
  IndexSet s(p.size());
  for (int man = 0; man < p.n; ++man) {
    if (m.partner_of_man[man] == p.m0.partner_of_man[man]) continue;
    int pr = p.produce[man][m.partner_of_man[man]];
    if (pr < 0) throw std::invalid_argument("matching is not stable");
    s |= p.trans_preds[pr];
    s.set(pr);
  }
  if (matching_of_closed_subset(p, s) != m)
    throw std::invalid_argument("matching is not stable");
  return s;
}

// Pairs matched in every stable matching: exactly those in both M0 and Mz.
inline std::vector<std::pair<int, int>> fixed_pairs(const Matching& m0,
                                                    const Matching& mz) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t man = 0; man < m0.partner_of_man.size(); ++man)
    if (m0.partner_of_man[man] == mz.partner_of_man[man])
      out.emplace_back(static_cast<int>(man), m0.partner_of_man[man]);
  return out;
}

// Visits every closed subset once (iteratively: |V| can exceed any safe
// recursion depth). The visitor returns false to stop early; the function
// returns false iff stopped. Rotations are decided in ascending id order, so
// membership of all predecessors is known when a rotation is reached.
template <typename F>
bool for_each_closed_subset(const RotationPoset& p, F&& visit) {
  const int V = static_cast<int>(p.size());
  IndexSet cur(V);
  std::vector<signed char> state(V, 0);  // 1 = included, 2 = excluded
  int pos = 0;
  for (;;) {
    if (pos == V) {
      if (!visit(std::as_const(cur))) return false;
      for (--pos; pos >= 0; --pos) {
        if (state[pos] == 1) break;
        state[pos] = 0;
      }
      if (pos < 0) return true;
      cur.reset(pos);
      state[pos] = 2;
      ++pos;
      continue;
    }
    bool includable = true;
    for (int u : p.direct_preds[pos])
      if (!cur.test(u)) {
        includable = false;
        break;
      }
    if (includable) {
      cur.set(pos);
      state[pos] = 1;
    } else {
      state[pos] = 2;
    }
    ++pos;
  }
}

// Materializes all closed subsets; throws BudgetExceeded past max_count.
inline std::vector<IndexSet> enumerate_closed_subsets(const RotationPoset& p,
                                                      std::size_t max_count) {
  std::vector<IndexSet> out;
  bool finished = for_each_closed_subset(p, [&](const IndexSet& s) {
    if (out.size() >= max_count) return false;
    out.push_back(s);
    return true;
  });
  if (!finished)
    throw BudgetExceeded("closed subset enumeration exceeded " +
                         std::to_string(max_count));
  return out;
}

}  // namespace rsm
