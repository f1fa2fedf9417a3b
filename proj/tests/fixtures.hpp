#pragma once

// The size-7 worked example used throughout: preference lists, both optimal
// matchings, all six rotations with their produce/eliminate entries, the
// reduced precedence edges, the eleven stable matchings with robustness
// values, and the per-man repair sets of M5. Everything here is frozen
// expected data; tests compare computed results against it.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsm/bitset.hpp"
#include "rsm/instance.hpp"

namespace fx {

inline const char* kTable1Text =
    "7\n"
    "0 6 5 2 4 1 3\n"
    "6 1 4 5 0 2 3\n"
    "6 0 3 1 5 4 2\n"
    "3 2 0 1 4 6 5\n"
    "1 2 0 3 4 5 6\n"
    "6 1 0 3 5 4 2\n"
    "2 5 0 6 4 3 1\n"
    "\n"
    "2 1 6 4 5 3 0\n"
    "0 4 3 5 2 6 1\n"
    "2 5 0 4 3 1 6\n"
    "6 1 2 3 4 0 5\n"
    "4 6 0 5 3 1 2\n"
    "3 1 2 6 5 4 0\n"
    "4 6 2 1 3 0 5\n";

inline rsm::Instance table1() { return rsm::parse_instance(kTable1Text); }

inline const std::vector<int> kM0{5, 4, 6, 3, 1, 0, 2};
inline const std::vector<int> kM2{2, 5, 6, 3, 1, 4, 0};
inline const std::vector<int> kMz{1, 3, 0, 5, 4, 2, 6};
inline const std::vector<int> kM5{4, 5, 6, 3, 1, 2, 0};
inline const std::vector<int> kM6{4, 5, 0, 3, 1, 2, 6};

// Rotations in discovery order, cycles starting at the smallest man.
inline const std::vector<std::vector<std::pair<int, int>>> kRotations{
    {{0, 5}, {6, 2}},          // rho0
    {{1, 4}, {6, 5}, {5, 0}},  // rho1
    {{0, 2}, {5, 4}},          // rho2
    {{0, 4}, {4, 1}},          // rho3
    {{2, 6}, {6, 0}},          // rho4
    {{1, 5}, {3, 3}},          // rho5
};

// Every stable pair with its producing and eliminating rotation (-1 = none,
// i.e. the pair belongs to M0 / Mz respectively).
struct PairRotations {
  int man, woman, produce, eliminate;
};
inline const std::vector<PairRotations> kStablePairs{
    {0, 5, -1, 0}, {0, 2, 0, 2},  {0, 4, 2, 3},  {0, 1, 3, -1},
    {1, 4, -1, 1}, {1, 5, 1, 5},  {1, 3, 5, -1}, {2, 6, -1, 4},
    {2, 0, 4, -1}, {3, 3, -1, 5}, {3, 5, 5, -1}, {4, 1, -1, 3},
    {4, 4, 3, -1}, {5, 0, -1, 1}, {5, 4, 1, 2},  {5, 2, 2, -1},
    {6, 2, -1, 0}, {6, 5, 0, 1},  {6, 0, 1, 4},  {6, 6, 4, -1},
};

// Transitive reduction of the precedence DAG.
inline const std::vector<std::pair<int, int>> kDirectEdges{
    {0, 1}, {1, 2}, {1, 4}, {2, 3}, {4, 5},
};

// Table 4: the eleven closed subsets S0..S10 and their robustness values.
inline const std::vector<std::vector<int>> kClosedSubsets{
    {},                 // S0  = M0
    {0},                // S1
    {0, 1},             // S2
    {0, 1, 4},          // S3
    {0, 1, 4, 5},       // S4
    {0, 1, 2},          // S5
    {0, 1, 2, 4},       // S6  = most robust
    {0, 1, 2, 4, 5},    // S7
    {0, 1, 2, 3},       // S8
    {0, 1, 2, 3, 4},    // S9
    {0, 1, 2, 3, 4, 5}, // S10 = Mz
};
inline const std::vector<int> kRobustnessColumn{5, 4, 3, 2, 3, 3, 1, 3, 3, 2, 3};

// Table 2: per-man repairs of M5 (closed subset S5 = {0,1,2}); absent sides
// are the pairs sitting in M0 (no up-repair) or Mz (no down-repair).
struct RepairRow {
  int man, woman;
  std::optional<std::vector<int>> s_up, s_down;
};
inline const std::vector<RepairRow> kTable2{
    {0, 4, {{0, 1}}, {{0, 1, 2, 3}}},
    {1, 5, {{0}}, {{0, 1, 2, 4, 5}}},
    {2, 6, std::nullopt, {{0, 1, 2, 4}}},
    {3, 3, std::nullopt, {{0, 1, 2, 4, 5}}},
    {4, 1, std::nullopt, {{0, 1, 2, 3}}},
    {5, 2, {{0, 1}}, std::nullopt},
    {6, 0, {{0}}, {{0, 1, 2, 4}}},
};

// Table 3: (d_up, d_down, b_i) per man of M5; absent means no repair on that side.
struct CostRow {
  int man;
  std::optional<int> d_up, d_down;
  int b_i;
};
inline const std::vector<CostRow> kTable3{
    {0, 2, 2, 1},  {1, 4, 4, 3},        {2, std::nullopt, 2, 1},
    {3, std::nullopt, 4, 3}, {4, std::nullopt, 2, 1}, {5, 2, std::nullopt, 1},
    {6, 4, 2, 1},
};

// Three size-8 matchings whose pairwise distances are all 8.
inline const std::vector<int> kSize8M8{0, 2, 3, 7, 1, 4, 5, 6};
inline const std::vector<int> kSize8M15{4, 3, 2, 5, 7, 6, 1, 0};
inline const std::vector<int> kSize8M21{6, 7, 1, 0, 5, 3, 2, 4};

inline rsm::IndexSet subset_of(const std::vector<int>& ids,
                               std::size_t universe) {
  rsm::IndexSet s(universe);
  for (int id : ids) s.set(static_cast<std::size_t>(id));
  return s;
}

// An instance whose M0 equals Mz: man i and woman i rank each other first.
inline rsm::Instance unique_stable_instance(int n) {
  rsm::Instance inst;
  inst.n = n;
  for (int i = 0; i < n; ++i) {
    std::vector<int> row(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) row[static_cast<std::size_t>(k)] = (i + k) % n;
    inst.men_prefs.push_back(row);
    inst.women_prefs.push_back(row);
  }
  rsm::finalize_ranks(inst);
  return inst;
}

}  // namespace fx
