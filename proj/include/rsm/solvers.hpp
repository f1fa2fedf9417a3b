#pragma once

// Most-robust stable matching search: exact scan over all closed subsets,
// iterated local search with periodic restarts, and a genetic algorithm over
// closed subsets. All three report a SolveOutcome with an anytime trace.
//
// Every random decision draws from a purpose-split stream derived from the
// config seed (init / selection / crossover / mutation), so outcomes are
// reproducible even though the phases interleave differently from run to run.

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rsm/rng.hpp"
#include "rsm/robustness.hpp"

namespace rsm {

struct SolverConfig {
  double time_limit = 1200.0;  // seconds
  std::uint64_t cutoff = 10000;
  int restart_period = 50;
  int population_size = 10;
  double mutation_prob = 0.8;
  double c0 = 0.5;
  std::uint64_t seed = 0;
  std::size_t exact_budget = 1'000'000;  // closed-subset cap for exact search

  void validate() const {
    if (!(time_limit > 0)) throw std::invalid_argument("time_limit must be > 0");
    if (cutoff == 0) throw std::invalid_argument("cutoff must be > 0");
    if (restart_period <= 0)
      throw std::invalid_argument("restart_period must be > 0");
    if (population_size < 2)
      throw std::invalid_argument("population_size must be >= 2");
    if (mutation_prob < 0 || mutation_prob > 1)
      throw std::invalid_argument("mutation_prob must be in [0, 1]");
    if (!(c0 > 0)) throw std::invalid_argument("c0 must be > 0");
  }
};

enum class Termination { optimal_b_reached, cutoff, time_limit, exhausted };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::optimal_b_reached: return "optimal_b_reached";
    case Termination::cutoff: return "cutoff";
    case Termination::time_limit: return "time_limit";
    case Termination::exhausted: return "exhausted";
  }
  return "unknown";
}

struct TracePoint {
  double t_ms = 0;  // since solver start
  int b = 0;        // global best at that moment
};

struct SolveOutcome {
  Matching best_matching;
  IndexSet best_subset;
  int best_b = 0;
  std::uint64_t iterations = 0;
  std::uint64_t evaluations = 0;
  double elapsed_ms = 0;
  Termination termination = Termination::exhausted;
  std::vector<TracePoint> trace;  // one point per global-best improvement
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Stream tags for derive_seed(config.seed, tag).
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kSelectStream = 2;
constexpr std::uint64_t kCrossoverStream = 3;
constexpr std::uint64_t kMutationStream = 4;

inline int pick_member(const IndexSet& s, Rng& rng) {
  std::uint64_t k = rng.below(s.count());
  int chosen = -1;
  s.for_each([&](std::size_t i) {
    if (k-- == 0) chosen = static_cast<int>(i);
  });
  return chosen;
}

}  // namespace detail

// One uniformly drawn rotation together with everything it requires.
inline IndexSet random_closed_subset(const RotationPoset& p, Rng& rng) {
  if (p.size() == 0) return IndexSet(0);
  return p.closure_of(static_cast<int>(rng.below(p.size())));
}

// All subsets one rotation away: members whose removal keeps the set closed
// (no successor inside s), then non-members whose addition does (all direct
// predecessors inside s). Ascending rotation id within each group.
inline std::vector<IndexSet> ls_neighbors(const RotationPoset& p,
                                          const IndexSet& s) {
  std::vector<IndexSet> out;
  const int V = static_cast<int>(p.size());
  for (int rho = 0; rho < V; ++rho) {
    if (!s.test(rho) || p.trans_succs[rho].intersects(s)) continue;
    IndexSet nb = s;
    nb.reset(rho);
    out.push_back(std::move(nb));
  }
  for (int rho = 0; rho < V; ++rho) {
    if (s.test(rho)) continue;
    bool addable = true;
    for (int u : p.direct_preds[rho])
      if (!s.test(u)) {
        addable = false;
        break;
      }
    if (!addable) continue;
    IndexSet nb = s;
    nb.set(rho);
    out.push_back(std::move(nb));
  }
  return out;
}

inline SolveOutcome local_search(const RotationPoset& p,
                                 const SolverConfig& cfg) {
  cfg.validate();
  const auto t0 = detail::Clock::now();
  const double limit_ms = cfg.time_limit * 1000.0;
  Evaluator eval(p);
  Rng rng(derive_seed(cfg.seed, detail::kInitStream));

  SolveOutcome out;
  IndexSet s = random_closed_subset(p, rng);
  int b = eval.b_of(s);
  out.best_subset = s;
  out.best_b = b;
  out.trace.push_back({detail::ms_since(t0), b});

  if (p.size() == 0) {
    out.termination = Termination::exhausted;
  } else {
    std::uint64_t cnt = 0;
    for (;;) {
      if (out.best_b <= 1) {
        out.termination = Termination::optimal_b_reached;
        break;
      }
      if (detail::ms_since(t0) >= limit_ms) {
        out.termination = Termination::time_limit;
        break;
      }
      if (cnt >= cfg.cutoff) {
        out.termination = Termination::cutoff;
        break;
      }
      ++out.iterations;
      if (out.iterations % static_cast<std::uint64_t>(cfg.restart_period) == 0) {
        s = random_closed_subset(p, rng);
        b = eval.b_of(s);
      } else {
        // Best-improvement step; ties go to the earliest neighbor, which is
        // the lexicographically least subset given the neighbor ordering.
        std::vector<IndexSet> neighbors = ls_neighbors(p, s);
        int cand_b = INT_MAX;
        const IndexSet* cand = nullptr;
        bool timed_out = false;
        for (const IndexSet& nb : neighbors) {
          if (detail::ms_since(t0) >= limit_ms) {
            timed_out = true;
            break;
          }
          int nb_b = eval.b_of(nb);
          if (nb_b < cand_b) {
            cand_b = nb_b;
            cand = &nb;
          }
        }
        if (timed_out) {
          out.termination = Termination::time_limit;
          break;
        }
        if (cand && cand_b < b) {  // strict improvement only
          s = *cand;
          b = cand_b;
        }
      }
      if (b < out.best_b) {
        out.best_b = b;
        out.best_subset = s;
        out.trace.push_back({detail::ms_since(t0), b});
        cnt = 0;
      } else {
        ++cnt;
      }
    }
  }
  out.best_matching = matching_of_closed_subset(p, out.best_subset);
  out.evaluations = eval.evaluations();
  out.elapsed_ms = detail::ms_since(t0);
  return out;
}

// v_i = (max_b + c0 - b_i) / sum_j (max_b + c0 - b_j); all positive, sum 1.
inline std::vector<double> ga_evaluate(const std::vector<int>& b_values,
                                       double c0) {
  if (b_values.empty())
    throw std::invalid_argument("fitness of an empty population");
  int max_b = *std::max_element(b_values.begin(), b_values.end());
  std::vector<double> v(b_values.size());
  double sum = 0;
  for (std::size_t i = 0; i < b_values.size(); ++i) {
    v[i] = static_cast<double>(max_b) + c0 - static_cast<double>(b_values[i]);
    sum += v[i];
  }
  for (double& x : v) x /= sum;
  return v;
}

// Roulette wheel against an explicit draw r in [0, 1).
inline int ga_select_at(const std::vector<double>& fitness, double r) {
  double cum = 0;
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    cum += fitness[i];
    if (r < cum) return static_cast<int>(i);
  }
  return static_cast<int>(fitness.size()) - 1;  // guard against rounding
}

inline int ga_select(const std::vector<double>& fitness, Rng& rng) {
  return ga_select_at(fitness, rng.unit());
}

// Exchange step with explicit rotations, for replaying worked examples: c1 is
// s1 with rho2 toggled, c2 is s2 with rho1 toggled. An absent rotation leaves
// the corresponding child an unchanged copy of its parent.
inline std::pair<IndexSet, IndexSet> ga_crossover_with(
    const RotationPoset& p, const IndexSet& s1, const IndexSet& s2,
    std::optional<int> rho1, std::optional<int> rho2) {
  return {rho2 ? p.toggle(s1, *rho2) : s1, rho1 ? p.toggle(s2, *rho1) : s2};
}

// Draws rho1 from s1 and rho2 from s2 uniformly; an empty parent (possible:
// the empty subset is a legitimate population member) contributes nothing.
inline std::pair<IndexSet, IndexSet> ga_crossover(const RotationPoset& p,
                                                  const IndexSet& s1,
                                                  const IndexSet& s2,
                                                  Rng& rng) {
  std::optional<int> rho1, rho2;
  if (s1.any()) rho1 = detail::pick_member(s1, rng);
  if (s2.any()) rho2 = detail::pick_member(s2, rng);
  return ga_crossover_with(p, s1, s2, rho1, rho2);
}

// Toggle of a rotation drawn uniformly from all of V.
inline IndexSet ga_mutate(const RotationPoset& p, const IndexSet& s, Rng& rng) {
  if (p.size() == 0) return s;
  return p.toggle(s, static_cast<int>(rng.below(p.size())));
}

struct GaMember {
  IndexSet subset;
  int b = 0;
};

// Appends both children, then evicts the two least-fit members (highest b,
// ties broken towards the oldest). Population size is left unchanged.
inline void ga_refine(std::vector<GaMember>& population, GaMember c1,
                      GaMember c2) {
  population.push_back(std::move(c1));
  population.push_back(std::move(c2));
  for (int round = 0; round < 2; ++round) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < population.size(); ++i)
      if (population[i].b > population[worst].b) worst = i;
    population.erase(population.begin() + static_cast<std::ptrdiff_t>(worst));
  }
}

inline SolveOutcome genetic_algorithm(const RotationPoset& p,
                                      const SolverConfig& cfg) {
  cfg.validate();
  const auto t0 = detail::Clock::now();
  const double limit_ms = cfg.time_limit * 1000.0;
  Evaluator eval(p);
  Rng init_rng(derive_seed(cfg.seed, detail::kInitStream));
  Rng select_rng(derive_seed(cfg.seed, detail::kSelectStream));
  Rng cross_rng(derive_seed(cfg.seed, detail::kCrossoverStream));
  Rng mut_rng(derive_seed(cfg.seed, detail::kMutationStream));

  auto fittest = [](const std::vector<GaMember>& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
      if (pop[i].b < pop[best].b) best = i;
    return best;
  };

  SolveOutcome out;
  std::vector<GaMember> pop;
  pop.reserve(static_cast<std::size_t>(cfg.population_size));
  for (int i = 0; i < cfg.population_size; ++i) {
    IndexSet s = random_closed_subset(p, init_rng);
    int b = eval.b_of(s);
    pop.push_back({std::move(s), b});
  }
  std::size_t fit = fittest(pop);
  out.best_subset = pop[fit].subset;
  out.best_b = pop[fit].b;
  out.trace.push_back({detail::ms_since(t0), out.best_b});

  if (p.size() == 0) {
    out.termination = Termination::exhausted;
  } else {
    std::uint64_t cnt = 0;
    for (;;) {
      if (out.best_b <= 1) {
        out.termination = Termination::optimal_b_reached;
        break;
      }
      if (detail::ms_since(t0) >= limit_ms) {
        out.termination = Termination::time_limit;
        break;
      }
      if (cnt >= cfg.cutoff) {
        out.termination = Termination::cutoff;
        break;
      }
      ++out.iterations;

      std::vector<int> bs(pop.size());
      for (std::size_t i = 0; i < pop.size(); ++i) bs[i] = pop[i].b;
      std::vector<double> fitness = ga_evaluate(bs, cfg.c0);
      int i1 = ga_select(fitness, select_rng);
      int i2 = ga_select(fitness, select_rng);
      if (pop[i1].subset != pop[i2].subset) {
        auto [c1, c2] = ga_crossover(p, pop[i1].subset, pop[i2].subset, cross_rng);
        int b1 = eval.b_of(c1);
        int b2 = eval.b_of(c2);
        ga_refine(pop, {std::move(c1), b1}, {std::move(c2), b2});
        for (std::size_t i = 0; i < pop.size(); ++i) bs[i] = pop[i].b;
        fitness = ga_evaluate(bs, cfg.c0);  // re-evaluate after refinement
      }
      int mi = ga_select(fitness, select_rng);
      fit = fittest(pop);
      if (pop[mi].subset != pop[fit].subset &&
          mut_rng.unit() < cfg.mutation_prob) {
        IndexSet mutated = ga_mutate(p, pop[mi].subset, mut_rng);
        pop[mi].b = eval.b_of(mutated);
        pop[mi].subset = std::move(mutated);
      }

      fit = fittest(pop);
      if (pop[fit].b < out.best_b) {
        out.best_b = pop[fit].b;
        out.best_subset = pop[fit].subset;
        out.trace.push_back({detail::ms_since(t0), out.best_b});
        cnt = 0;
      } else {
        ++cnt;
      }
    }
  }
  out.best_matching = matching_of_closed_subset(p, out.best_subset);
  out.evaluations = eval.evaluations();
  out.elapsed_ms = detail::ms_since(t0);
  return out;
}

// Scans every closed subset (no early exit; ties keep the first minimum) and
// throws BudgetExceeded when the ideal count passes the configured cap.
inline SolveOutcome exact_most_robust(const RotationPoset& p,
                                      std::size_t ideal_budget = 1'000'000) {
  const auto t0 = detail::Clock::now();
  Evaluator eval(p, /*memoize=*/false);
  SolveOutcome out;
  bool have = false;
  bool finished = for_each_closed_subset(p, [&](const IndexSet& s) {
    if (out.iterations >= ideal_budget) return false;
    ++out.iterations;
    int b = eval.b_of(s);
    if (!have || b < out.best_b) {
      have = true;
      out.best_b = b;
      out.best_subset = s;
      out.trace.push_back({detail::ms_since(t0), b});
    }
    return true;
  });
  if (!finished)
    throw BudgetExceeded("closed subset count exceeds the exact budget of " +
                         std::to_string(ideal_budget));
  out.best_matching = matching_of_closed_subset(p, out.best_subset);
  out.evaluations = eval.evaluations();
  out.elapsed_ms = detail::ms_since(t0);
  out.termination = Termination::exhausted;
  return out;
}

inline SolveOutcome exact_most_robust(const RotationPoset& p,
                                      const SolverConfig& cfg) {
  return exact_most_robust(p, cfg.exact_budget);
}

}  // namespace rsm
