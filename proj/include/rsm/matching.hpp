#pragma once

// Matchings over an Instance: deferred acceptance from either side, stability
// checks, and the Hamming-style distance used throughout robustness work.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rsm/instance.hpp"

namespace rsm {

struct Matching {
  std::vector<int> partner_of_man;     // partner_of_man[m] = woman matched to man m
  std::vector<int> partner_of_woman;  // partner_of_woman[w] = man matched to woman w

  bool operator==(const Matching& o) const { return partner_of_man == o.partner_of_man; }
  bool operator!=(const Matching& o) const { return partner_of_man != o.partner_of_man; }
};

// Builds the inverse side and rejects anything that is not a perfect matching.
inline Matching matching_from_partners(const std::vector<int>& partner_of_man) {
  const int n = static_cast<int>(partner_of_man.size());
  Matching m;
  m.partner_of_man = partner_of_man;
  m.partner_of_woman.assign(n, -1);
  for (int man = 0; man < n; ++man) {
    int w = partner_of_man[man];
    if (w < 0 || w >= n)
      throw std::invalid_argument("partner index " + std::to_string(w) +
                                  " out of range for man " + std::to_string(man));
    if (m.partner_of_woman[w] != -1)
      throw std::invalid_argument("woman " + std::to_string(w) +
                                  " matched twice");
    m.partner_of_woman[w] = man;
  }
  return m;
}

namespace detail {

// Proposer-side deferred acceptance; returns partner_of_man[] from the proposers' view.
inline std::vector<int> propose(const std::vector<std::vector<int>>& prop_prefs,
                                const std::vector<std::vector<int>>& recv_rank) {
  const int n = static_cast<int>(prop_prefs.size());
  std::vector<int> next(n, 0);           // next rank each proposer will try
  std::vector<int> engaged_to(n, -1);    // per receiver, current proposer
  std::vector<int> free_stack;
  free_stack.reserve(n);
  for (int p = n - 1; p >= 0; --p) free_stack.push_back(p);
  while (!free_stack.empty()) {
    int p = free_stack.back();
    free_stack.pop_back();
    int r = prop_prefs[p][next[p]++];
    int cur = engaged_to[r];
    if (cur == -1) {
      engaged_to[r] = p;
    } else if (recv_rank[r][p] < recv_rank[r][cur]) {
      engaged_to[r] = p;
      free_stack.push_back(cur);
    } else {
      free_stack.push_back(p);
    }
  }
  std::vector<int> partner(n, -1);
  for (int r = 0; r < n; ++r) partner[engaged_to[r]] = r;
  return partner;
}

}  // namespace detail

inline Matching man_optimal(const Instance& inst) {
  return matching_from_partners(detail::propose(inst.men_prefs, inst.women_rank));
}

inline Matching woman_optimal(const Instance& inst) {
  std::vector<int> partner_of_woman = detail::propose(inst.women_prefs, inst.men_rank);
  std::vector<int> partner_of_man(inst.n, -1);
  for (int w = 0; w < inst.n; ++w) partner_of_man[partner_of_woman[w]] = w;
  return matching_from_partners(partner_of_man);
}

// All pairs (m, w) that prefer each other to their assigned partners.
inline std::vector<std::pair<int, int>> blocking_pairs(const Instance& inst,
                                                       const Matching& m) {
  std::vector<std::pair<int, int>> out;
  for (int man = 0; man < inst.n; ++man) {
    int limit = inst.men_rank[man][m.partner_of_man[man]];
    for (int k = 0; k < limit; ++k) {
      int w = inst.men_prefs[man][k];
      if (inst.women_rank[w][man] < inst.women_rank[w][m.partner_of_woman[w]])
        out.emplace_back(man, w);
    }
  }
  return out;
}

inline bool is_stable(const Instance& inst, const Matching& m) {
  for (int man = 0; man < inst.n; ++man) {
    int limit = inst.men_rank[man][m.partner_of_man[man]];
    for (int k = 0; k < limit; ++k) {
      int w = inst.men_prefs[man][k];
      if (inst.women_rank[w][man] < inst.women_rank[w][m.partner_of_woman[w]])
        return false;
    }
  }
  return true;
}

// Number of men matched differently; the metric under which repairs are
// "closest" and robustness is measured.
inline int distance(const Matching& a, const Matching& b) {
  if (a.partner_of_man.size() != b.partner_of_man.size())
    throw std::invalid_argument("matchings over different instance sizes");
  int d = 0;
  for (std::size_t i = 0; i < a.partner_of_man.size(); ++i) d += a.partner_of_man[i] != b.partner_of_man[i];
  return d;
}

}  // namespace rsm
