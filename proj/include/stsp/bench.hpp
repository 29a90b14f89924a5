#ifndef STSP_BENCH_HPP
#define STSP_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stsp/annealer.hpp"
#include "stsp/generator.hpp"

namespace stsp {

enum class SolverKind { sa, exact, export_lp, export_qubo };

struct ExperimentConfig {
  /// Total node counts |V|, depot included; at least 3.
  std::vector<int> sizes;
  int repetitions = 10;
  std::uint64_t seed_base = 0;
  bool with_pmra = true;
  bool without_pmra = true;
  SolverKind solver = SolverKind::sa;
  /// Seconds; zero or negative disables the limit.
  double time_limit = 10.0;
  GeneratorConfig generator;
  int reads = 1000;
  int sweeps = 1000;
  int threads = 1;
  /// Directory receiving exported files for the export solvers.
  std::string export_dir = ".";
};

/// Outcome of one repetition.
struct RunRecord {
  int size;
  int repetition;
  bool reduced;
  bool solved;
  double cost;     ///< true route cost when solved
  double seconds;  ///< excludes generation and file output
};

/// One table line. Objective statistics cover solved runs only; timing
/// statistics cover every run. Standard deviations are population values.
struct ResultsRow {
  int size;
  std::string variant;
  std::optional<double> avg_objective;
  std::optional<double> std_objective;
  double pct_solved;
  double avg_time;
  double std_time;
};

std::string variant_name(SolverKind solver, bool reduced);

/// Validates the config (throws InvalidArgument before doing any work), then
/// runs every (size, variant, repetition); the instance of repetition r uses
/// seed seed_base + r. Rows are ordered by size, standard before reduced.
std::vector<ResultsRow> run_experiment(const ExperimentConfig& cfg,
                                       std::vector<RunRecord>* runs = nullptr);

ResultsRow aggregate(int size, std::string variant, const std::vector<RunRecord>& runs);

struct GapRow {
  int size;
  std::uint64_t seed;
  std::size_t nvar_standard;
  std::optional<std::size_t> nvar_reduced;  ///< empty when reduction is infeasible
  std::optional<int> gap;                   ///< percent
};

int gap_percent(std::size_t nvar_standard, std::size_t nvar_reduced);

/// Total QUBO variable counts (decision + slack) with and without reduction.
std::vector<GapRow> gap_table(const std::vector<int>& sizes, const std::vector<std::uint64_t>& seeds,
                              const GeneratorConfig& generator);

/// `V,variant,avg_obj,std_obj,pct_solved[,avg_time,std_time]`, point
/// decimals, "-" for missing objective statistics.
std::string emit_csv(const std::vector<ResultsRow>& rows, bool with_timing = true);
std::string emit_gap_csv(const std::vector<GapRow>& rows);

}  // namespace stsp

#endif  // STSP_BENCH_HPP
