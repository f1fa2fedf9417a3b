#pragma once

// Robustness of a stable matching M with ideal S: if the pair of a non-fixed
// man i breaks, the closest repairs are
//   S-up   = S \ ({rho_p} ∪ (N+*(rho_p) ∩ S))    (rho_p produces (i, M(i)))
//   S-down = S ∪ {rho_e} ∪ (N-*(rho_e) \ S)      (rho_e eliminates it)
// with repair cost b_i = min(d_up, d_down) - 1, where d counts the men moved
// by the rotation difference. The matching's robustness value b is the worst
// b_i; M is then a (1,b)-supermatch. A side is absent (never a sentinel) when
// the pair lies in M0 / Mz.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "rsm/rotations.hpp"

namespace rsm {

struct RepairResult {
  int man = -1;
  std::optional<IndexSet> s_up, s_down;
  std::optional<int> d_up, d_down;
  int b_i = 0;
};

struct RobustnessReport {
  std::vector<RepairResult> per_man;  // non-fixed men, ascending
  int b = 0;                          // max b_i; 0 when every pair is fixed
};

namespace detail {

// Men moved by {rho} ∪ (succs(rho) ∩ s): the up-repair difference set.
inline int men_removed_up(const RotationPoset& p, const IndexSet& s, int rho) {
  IndexSet men = p.men_of[rho];
  IndexSet diff = p.trans_succs[rho];
  diff &= s;
  diff.for_each([&](std::size_t r) { men |= p.men_of[r]; });
  return static_cast<int>(men.count());
}

// Men moved by {rho} ∪ (preds(rho) \ s): the down-repair difference set.
inline int men_added_down(const RotationPoset& p, const IndexSet& s, int rho) {
  IndexSet men = p.men_of[rho];
  IndexSet diff = p.trans_preds[rho];
  diff.subtract(s);
  diff.for_each([&](std::size_t r) { men |= p.men_of[r]; });
  return static_cast<int>(men.count());
}

}  // namespace detail

inline bool is_fixed_man(const RotationPoset& p, int man) {
  return p.m0.partner_of_man[man] == p.mz.partner_of_man[man];
}

inline std::optional<IndexSet> repair_up(const RotationPoset& p,
                                         const IndexSet& s, int man,
                                         const Matching& m) {
  int w = m.partner_of_man[man];
  if (w == p.m0.partner_of_man[man]) return std::nullopt;
  int pr = p.produce[man][w];
  if (pr < 0) throw std::invalid_argument("matching is not stable");
  return p.remove_with_successors(s, pr);
}

inline std::optional<IndexSet> repair_down(const RotationPoset& p,
                                           const IndexSet& s, int man,
                                           const Matching& m) {
  int w = m.partner_of_man[man];
  if (w == p.mz.partner_of_man[man]) return std::nullopt;
  int el = p.eliminate[man][w];
  if (el < 0) throw std::invalid_argument("matching is not stable");
  return p.add_with_predecessors(s, el);
}

inline RepairResult man_repair(const RotationPoset& p, const IndexSet& s,
                               int man, const Matching& m) {
  if (is_fixed_man(p, man))
    throw std::invalid_argument("man " + std::to_string(man) +
                                " is fixed and has no repair");
  RepairResult r;
  r.man = man;
  int w = m.partner_of_man[man];
  int best = INT_MAX;
  if (w != p.m0.partner_of_man[man]) {
    int pr = p.produce[man][w];
    if (pr < 0) throw std::invalid_argument("matching is not stable");
    r.s_up = p.remove_with_successors(s, pr);
    r.d_up = detail::men_removed_up(p, s, pr);
    best = std::min(best, *r.d_up);
  }
  if (w != p.mz.partner_of_man[man]) {
    int el = p.eliminate[man][w];
    if (el < 0) throw std::invalid_argument("matching is not stable");
    r.s_down = p.add_with_predecessors(s, el);
    r.d_down = detail::men_added_down(p, s, el);
    best = std::min(best, *r.d_down);
  }
  r.b_i = best - 1;
  return r;
}

inline RobustnessReport robustness(const RotationPoset& p, const Matching& m) {
  IndexSet s = closed_subset_of_matching(p, m);  // rejects unstable input
  RobustnessReport report;
  for (int man = 0; man < p.n; ++man) {
    if (is_fixed_man(p, man)) continue;
    report.per_man.push_back(man_repair(p, s, man, m));
    report.b = std::max(report.b, report.per_man.back().b_i);
  }
  return report;
}

// O(n x |V|) membership-test version; stops a man early once one side is
// already affordable and skips the rest once the answer is known to be false.
inline bool is_one_b_supermatch(const RotationPoset& p, const Matching& m,
                                int b) {
  if (b < 0) throw std::invalid_argument("b must be non-negative");
  IndexSet s = closed_subset_of_matching(p, m);
  for (int man = 0; man < p.n; ++man) {
    if (is_fixed_man(p, man)) continue;
    int w = m.partner_of_man[man];
    int best = INT_MAX;
    if (w != p.m0.partner_of_man[man])
      best = detail::men_removed_up(p, s, p.produce[man][w]);
    if (best - 1 > b && w != p.mz.partner_of_man[man])
      best = std::min(best, detail::men_added_down(p, s, p.eliminate[man][w]));
    if (best - 1 > b) return false;
  }
  return true;
}

// Robustness value of a closed subset, with optional memoization on the
// subset. evaluations() counts actual computations (cache misses), which is
// what solver outcome reporting wants.
class Evaluator {
 public:
  explicit Evaluator(const RotationPoset& p, bool memoize = true)
      : p_(&p), memoize_(memoize) {}

  int b_of(const IndexSet& s) {
    if (s.universe() != p_->size() || !p_->is_closed(s))
      throw std::invalid_argument("subset is not a closed subset of the poset");
    if (!memoize_) {
      ++evaluations_;
      return compute(s);
    }
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    ++evaluations_;
    int b = compute(s);
    memo_.emplace(s, b);
    return b;
  }

  std::uint64_t evaluations() const { return evaluations_; }

 private:
  int compute(const IndexSet& s) const {
    const RotationPoset& p = *p_;
    std::vector<int> partner = p.m0.partner_of_man;
    s.for_each([&](std::size_t r) {
      const Rotation& rho = p.rotations[r];
      for (int k = 0; k < rho.size(); ++k)
        partner[rho.pairs[k].first] = rho.next_woman(k);
    });
    int b = 0;
    for (int man = 0; man < p.n; ++man) {
      if (is_fixed_man(p, man)) continue;
      int w = partner[man];
      int best = INT_MAX;
      if (w != p.m0.partner_of_man[man])
        best = detail::men_removed_up(p, s, p.produce[man][w]);
      if (w != p.mz.partner_of_man[man])
        best = std::min(best, detail::men_added_down(p, s, p.eliminate[man][w]));
      b = std::max(b, best - 1);
    }
    return b;
  }

  const RotationPoset* p_;
  bool memoize_;
  std::uint64_t evaluations_ = 0;
  std::unordered_map<IndexSet, int, IndexSetHash> memo_;
};

}  // namespace rsm
