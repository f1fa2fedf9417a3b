// Command-line front end: instance generation, rotation poset dumps,
// (1,b)-supermatch verification, single solver runs, and benchmark grids.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsm/rsm.hpp"

namespace {

constexpr int kExitError = 2;  // parse/data errors; 1 is "--b not met"

rsm::Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return rsm::parse_instance(in);
  } catch (const rsm::ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int run_gen(const std::string& sizes_csv, int count, std::uint64_t seed,
            const std::string& out_dir) {
  std::vector<int> sizes;
  for (const std::string& s : split_list(sizes_csv)) sizes.push_back(std::stoi(s));
  if (sizes.empty()) throw std::runtime_error("no sizes given");
  auto files = rsm::gen_batch(sizes, count, seed, out_dir);
  std::cout << "wrote " << files.size() << " instances to " << out_dir << "\n";
  return 0;
}

int run_rotations(const std::string& path) {
  rsm::RotationPoset p = rsm::build_poset(load_instance(path));
  std::cout << "rotations: " << p.size() << "\n";
  for (const rsm::Rotation& rho : p.rotations) {
    std::cout << "ρ" << rho.id << ":";
    for (const auto& [m, w] : rho.pairs) std::cout << " (" << m << "," << w << ")";
    std::cout << "\n";
  }
  std::cout << "edges:\n";
  for (std::size_t u = 0; u < p.size(); ++u)
    for (int v : p.direct_succs[u])
      std::cout << "ρ" << u << " -> ρ" << v << "\n";
  return 0;
}

int run_verify(const std::string& path, const std::string& matching_text,
               int b_limit, bool b_given) {
  rsm::Instance inst = load_instance(path);
  std::vector<int> partners;
  std::stringstream ss(matching_text);
  for (int v; ss >> v;) partners.push_back(v);
  if (static_cast<int>(partners.size()) != inst.n)
    throw std::runtime_error("--matching needs exactly " +
                             std::to_string(inst.n) + " integers");
  rsm::Matching m = rsm::matching_from_partners(partners);
  if (!rsm::is_stable(inst, m))
    throw std::runtime_error("matching is not stable");
  rsm::RotationPoset p = rsm::build_poset(inst);
  rsm::RobustnessReport report = rsm::robustness(p, m);
  std::cout << "man d_up d_down b_i\n";
  for (const rsm::RepairResult& r : report.per_man) {
    std::cout << r.man << " ";
    if (r.d_up) std::cout << *r.d_up; else std::cout << "-";
    std::cout << " ";
    if (r.d_down) std::cout << *r.d_down; else std::cout << "-";
    std::cout << " " << r.b_i << "\n";
  }
  std::cout << "b " << report.b << "\n";
  if (!b_given) return 0;
  bool met = report.b <= b_limit;
  std::cout << "(1," << b_limit << ")-supermatch: " << (met ? "yes" : "no")
            << "\n";
  return met ? 0 : 1;
}

int run_solve(const std::string& path, const std::string& method,
              const rsm::SolverConfig& cfg, const std::string& out_path) {
  rsm::Instance inst = load_instance(path);
  rsm::RotationPoset poset = rsm::build_poset(inst);
  rsm::SolveOutcome o;
  if (method == "exact")
    o = rsm::exact_most_robust(poset, cfg);
  else if (method == "ls")
    o = rsm::local_search(poset, cfg);
  else if (method == "ga")
    o = rsm::genetic_algorithm(poset, cfg);
  else
    throw std::runtime_error("unknown method '" + method + "'");

  nlohmann::ordered_json j;
  j["instance"] = path;
  j["method"] = method;
  j["seed"] = cfg.seed;
  j["best_b"] = o.best_b;
  j["matching"] = o.best_matching.partner_of_man;
  j["closed_subset"] = o.best_subset.members();
  j["iterations"] = o.iterations;
  j["evaluations"] = o.evaluations;
  j["elapsed_ms"] = static_cast<long long>(o.elapsed_ms);
  j["termination"] = rsm::to_string(o.termination);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << j.dump(2) << "\n";
  std::cout << "best_b " << o.best_b << " termination "
            << rsm::to_string(o.termination) << " -> " << out_path << "\n";
  return 0;
}

int run_bench_cmd(const std::string& dir, const std::string& methods_csv,
                  int seed_count, const rsm::SolverConfig& cfg, int workers,
                  const std::string& out_path, std::string scores_path,
                  const std::string& traces_path) {
  std::vector<std::string> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw std::runtime_error("no .txt instances in " + dir);
  std::vector<std::string> methods = split_list(methods_csv);
  if (methods.empty()) throw std::runtime_error("no methods given");
  if (seed_count <= 0) throw std::runtime_error("--seeds must be positive");
  std::vector<std::uint64_t> seeds;
  for (int i = 1; i <= seed_count; ++i) seeds.push_back(i);

  rsm::BenchResult result = rsm::run_bench(paths, methods, seeds, cfg, workers);

  std::ofstream runs_out(out_path);
  if (!runs_out) throw std::runtime_error("cannot write " + out_path);
  rsm::write_runs_csv(runs_out, result.runs);
  if (scores_path.empty())
    scores_path =
        std::filesystem::path(out_path).replace_extension(".scores.csv").string();
  std::ofstream scores_out(scores_path);
  if (!scores_out) throw std::runtime_error("cannot write " + scores_path);
  rsm::write_scores_csv(scores_out, result.scores);
  if (!traces_path.empty()) {
    std::ofstream traces_out(traces_path);
    if (!traces_out) throw std::runtime_error("cannot write " + traces_path);
    rsm::write_traces_jsonl(traces_out, result.runs);
  }
  std::cout << "ran " << result.runs.size() << " cells over " << paths.size()
            << " instances -> " << out_path << ", " << scores_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robustness of stable matchings: rotation posets, repairs, solvers"};
  app.require_subcommand(1);

  std::string instance_path, out_path, matching_text, method = "exact";
  std::string sizes_csv, methods_csv = "ls,ga", scores_path, traces_path;
  std::string gen_dir = "instances";
  int count = 1, b_limit = 0, seed_count = 4, workers = 1;
  rsm::SolverConfig cfg;

  CLI::App* gen = app.add_subcommand("gen", "generate random instance files");
  gen->add_option("--sizes", sizes_csv, "comma-separated instance sizes")
      ->required();
  gen->add_option("--count", count, "instances per size")->required();
  gen->add_option("--seed", cfg.seed, "base seed");
  gen->add_option("--out", gen_dir, "output directory")->required();

  CLI::App* rot = app.add_subcommand("rotations", "print the rotation poset");
  rot->add_option("instance", instance_path, "instance file")->required();

  CLI::App* verify =
      app.add_subcommand("verify", "robustness of a given stable matching");
  verify->add_option("instance", instance_path, "instance file")->required();
  verify->add_option("--matching", matching_text, "n space-separated partners")
      ->required();
  CLI::Option* b_opt =
      verify->add_option("--b", b_limit, "required (1,b)-supermatch level");

  CLI::App* solve = app.add_subcommand("solve", "find a most robust matching");
  solve->add_option("instance", instance_path, "instance file")->required();
  solve->add_option("--method", method, "exact|ls|ga")->required();
  solve->add_option("--seed", cfg.seed, "RNG seed");
  solve->add_option("--time-limit", cfg.time_limit, "seconds");
  solve->add_option("--cutoff", cfg.cutoff, "non-improving iteration cap");
  solve->add_option("--restart", cfg.restart_period, "LS restart period");
  solve->add_option("--pop", cfg.population_size, "GA population size");
  solve->add_option("--mutation-prob", cfg.mutation_prob, "GA mutation probability");
  solve->add_option("--c0", cfg.c0, "GA fitness offset");
  solve->add_option("--exact-budget", cfg.exact_budget, "exact ideal cap");
  solve->add_option("--out", out_path, "result JSON path")->required();

  CLI::App* bench = app.add_subcommand("bench", "run a benchmark grid");
  bench->add_option("--instances", instance_path, "directory of .txt instances")
      ->required();
  bench->add_option("--methods", methods_csv, "comma-separated: exact,ls,ga");
  bench->add_option("--seeds", seed_count, "number of seeds (1..N)");
  bench->add_option("--time-limit", cfg.time_limit, "seconds per run");
  bench->add_option("--cutoff", cfg.cutoff, "non-improving iteration cap");
  bench->add_option("--restart", cfg.restart_period, "LS restart period");
  bench->add_option("--pop", cfg.population_size, "GA population size");
  bench->add_option("--mutation-prob", cfg.mutation_prob, "GA mutation probability");
  bench->add_option("--c0", cfg.c0, "GA fitness offset");
  bench->add_option("--exact-budget", cfg.exact_budget, "exact ideal cap");
  bench->add_option("--workers", workers, "concurrent runs");
  bench->add_option("--out", out_path, "runs CSV path")->required();
  bench->add_option("--scores", scores_path, "scores CSV path");
  bench->add_option("--traces", traces_path, "anytime traces JSONL path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_gen(sizes_csv, count, cfg.seed, gen_dir);
    if (rot->parsed()) return run_rotations(instance_path);
    if (verify->parsed())
      return run_verify(instance_path, matching_text, b_limit,
                        b_opt->count() > 0);
    if (solve->parsed()) return run_solve(instance_path, method, cfg, out_path);
    if (bench->parsed())
      return run_bench_cmd(instance_path, methods_csv, seed_count, cfg, workers,
                           out_path, scores_path, traces_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
