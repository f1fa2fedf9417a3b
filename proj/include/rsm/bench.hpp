#pragma once

// Benchmark harness: batch instance generation, (instance x method x seed)
// run grids with a worker pool, normalized scores, and CSV / trace output.
//
// score(h, I) = (ub - h + 1) / (ub - lb + 1), where lb/ub are the best/worst
// objective any run found on I; 0 when a method found nothing.

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rsm/solvers.hpp"

namespace rsm {

struct BenchRun {
  std::string instance;  // id: file stem
  std::string method;    // "exact" | "ls" | "ga"
  std::uint64_t seed = 0;
  std::optional<int> best_b;  // absent when the run failed to produce one
  double elapsed_ms = 0;
  std::string termination;
  std::vector<TracePoint> trace;
};

struct ScoreRow {
  std::string instance;
  std::string method;
  double score = 0;
};

struct BenchResult {
  std::vector<BenchRun> runs;
  std::vector<ScoreRow> scores;
};

inline double score(std::optional<int> h, int lb, int ub) {
  if (lb > ub) throw std::invalid_argument("score requires lb <= ub");
  if (!h) return 0.0;
  if (*h < lb || *h > ub)
    throw std::invalid_argument("objective outside [lb, ub]");
  return static_cast<double>(ub - *h + 1) / static_cast<double>(ub - lb + 1);
}

// Wall-clock time of the last global-best improvement.
inline double time_to_best_ms(const BenchRun& run) {
  return run.trace.empty() ? 0.0 : run.trace.back().t_ms;
}

// Pure function of the runs, so a re-parsed CSV scores identically: lb/ub per
// instance from every best_b present; one row per (instance, method) scoring
// that method's best run (absent best -> 0).
inline std::vector<ScoreRow> score_table(const std::vector<BenchRun>& runs) {
  std::vector<std::string> instances, methods;
  for (const BenchRun& r : runs) {
    if (std::find(instances.begin(), instances.end(), r.instance) ==
        instances.end())
      instances.push_back(r.instance);
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
      methods.push_back(r.method);
  }
  std::vector<ScoreRow> out;
  for (const std::string& inst : instances) {
    int lb = INT_MAX, ub = INT_MIN;
    for (const BenchRun& r : runs)
      if (r.instance == inst && r.best_b) {
        lb = std::min(lb, *r.best_b);
        ub = std::max(ub, *r.best_b);
      }
    for (const std::string& method : methods) {
      std::optional<int> h;
      for (const BenchRun& r : runs)
        if (r.instance == inst && r.method == method && r.best_b &&
            (!h || *r.best_b < *h))
          h = *r.best_b;
      double s = (h && lb <= ub) ? score(h, lb, ub) : 0.0;
      out.push_back({inst, method, s});
    }
  }
  return out;
}

namespace detail {

inline std::string file_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

inline SolveOutcome run_method(const RotationPoset& poset,
                               const std::string& method,
                               const SolverConfig& cfg) {
  if (method == "exact") return exact_most_robust(poset, cfg);
  if (method == "ls") return local_search(poset, cfg);
  if (method == "ga") return genetic_algorithm(poset, cfg);
  throw std::invalid_argument("unknown method '" + method + "'");
}

}  // namespace detail

// Runs every (instance, method, seed) cell. Instance load or solver failures
// are recorded as best-less runs with the error in the termination column,
// never thrown. Cells execute on up to `workers` threads; the run order in
// the result is the deterministic grid order regardless of scheduling.
inline BenchResult run_bench(const std::vector<std::string>& instance_paths,
                             const std::vector<std::string>& methods,
                             const std::vector<std::uint64_t>& seeds,
                             const SolverConfig& base_config, int workers = 1) {
  if (instance_paths.empty() || methods.empty() || seeds.empty())
    throw std::invalid_argument("run_bench requires instances, methods, seeds");

  struct Prepared {
    std::string id;
    std::optional<RotationPoset> poset;
    std::string error;
  };
  std::vector<Prepared> prepared;
  for (const std::string& path : instance_paths) {
    Prepared pr;
    pr.id = detail::file_stem(path);
    try {
      std::ifstream in(path);
      if (!in) throw std::runtime_error("cannot open " + path);
      Instance inst = parse_instance(in);
      pr.poset = build_poset(inst);
    } catch (const std::exception& e) {
      pr.error = e.what();
    }
    prepared.push_back(std::move(pr));
  }

  const std::size_t cells = prepared.size() * methods.size() * seeds.size();
  BenchResult result;
  result.runs.resize(cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t cell = next.fetch_add(1);
      if (cell >= cells) return;
      std::size_t si = cell % seeds.size();
      std::size_t mi = (cell / seeds.size()) % methods.size();
      std::size_t ii = cell / (seeds.size() * methods.size());
      const Prepared& pr = prepared[ii];
      BenchRun run;
      run.instance = pr.id;
      run.method = methods[mi];
      run.seed = seeds[si];
      if (!pr.poset) {
        run.termination = "error: " + pr.error;
      } else {
        SolverConfig cfg = base_config;
        cfg.seed = seeds[si];
        try {
          SolveOutcome o = detail::run_method(*pr.poset, methods[mi], cfg);
          run.best_b = o.best_b;
          run.elapsed_ms = o.elapsed_ms;
          run.termination = to_string(o.termination);
          run.trace = std::move(o.trace);
        } catch (const std::exception& e) {
          run.termination = std::string("error: ") + e.what();
        }
      }
      result.runs[cell] = std::move(run);
    }
  };
  int nworkers = std::max(1, std::min<int>(workers, static_cast<int>(cells)));
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nworkers; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  result.scores = score_table(result.runs);
  return result;
}

// Writes count instances per size as `sm_n{n}_i{index}.txt`; byte-identical
// for identical (sizes, count, seed). Returns the file paths written.
inline std::vector<std::string> gen_batch(const std::vector<int>& sizes,
                                          int count, std::uint64_t seed,
                                          const std::string& out_dir) {
  if (count <= 0) throw std::invalid_argument("count must be positive");
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> paths;
  for (int n : sizes)
    for (int i = 0; i < count; ++i) {
      Instance inst = generate_instance(
          n, derive_seed(seed, static_cast<std::uint64_t>(n),
                         static_cast<std::uint64_t>(i)));
      std::filesystem::path file =
          std::filesystem::path(out_dir) /
          ("sm_n" + std::to_string(n) + "_i" + std::to_string(i) + ".txt");
      std::ofstream out(file);
      if (!out) throw std::runtime_error("cannot write " + file.string());
      serialize_instance(inst, out);
      paths.push_back(file.string());
    }
  return paths;
}

inline void write_runs_csv(std::ostream& out,
                           const std::vector<BenchRun>& runs) {
  out << "instance,method,seed,best_b,elapsed_ms,termination\n";
  for (const BenchRun& r : runs) {
    out << r.instance << ',' << r.method << ',' << r.seed << ',';
    if (r.best_b) out << *r.best_b;
    out << ',' << static_cast<long long>(r.elapsed_ms + 0.5) << ','
        << r.termination << '\n';
  }
}

inline std::vector<BenchRun> read_runs_csv(std::istream& in) {
  std::vector<BenchRun> runs;
  std::string line;
  if (!std::getline(in, line) ||
      line != "instance,method,seed,best_b,elapsed_ms,termination")
    throw std::runtime_error("bad runs CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (int f = 0; f < 5; ++f) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string::npos)
        throw std::runtime_error("bad runs CSV row: " + line);
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    fields.push_back(line.substr(start));  // termination may contain commas
    BenchRun r;
    r.instance = fields[0];
    r.method = fields[1];
    r.seed = std::stoull(fields[2]);
    if (!fields[3].empty()) r.best_b = std::stoi(fields[3]);
    r.elapsed_ms = std::stod(fields[4]);
    r.termination = fields[5];
    runs.push_back(std::move(r));
  }
  return runs;
}

inline void write_scores_csv(std::ostream& out,
                             const std::vector<ScoreRow>& scores) {
  out << "instance,method,score\n";
  char buf[32];
  for (const ScoreRow& s : scores) {
    std::snprintf(buf, sizeof buf, "%.6f", s.score);
    out << s.instance << ',' << s.method << ',' << buf << '\n';
  }
}

// One JSON object per run: {"instance","method","seed","trace":[[ms,b],...]}.
inline void write_traces_jsonl(std::ostream& out,
                               const std::vector<BenchRun>& runs) {
  char buf[32];
  for (const BenchRun& r : runs) {
    out << "{\"instance\":\"" << r.instance << "\",\"method\":\"" << r.method
        << "\",\"seed\":" << r.seed << ",\"trace\":[";
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.3f", r.trace[i].t_ms);
      out << (i ? "," : "") << '[' << buf << ',' << r.trace[i].b << ']';
    }
    out << "]}\n";
  }
}

}  // namespace rsm
