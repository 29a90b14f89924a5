#include "stsp/bench.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stsp/decoder.hpp"
#include "stsp/error.hpp"
#include "stsp/model.hpp"
#include "stsp/oracle.hpp"
#include "stsp/pmra.hpp"
#include "stsp/qubo.hpp"

namespace stsp {

std::string variant_name(SolverKind solver, bool reduced) {
  switch (solver) {
    case SolverKind::sa:
    case SolverKind::export_qubo:
      return reduced ? "RQUBO" : "SQUBO";
    case SolverKind::exact:
    case SolverKind::export_lp:
      return reduced ? "RILP" : "SILP";
  }
  return reduced ? "reduced" : "standard";
}

namespace {

void validate(const ExperimentConfig& cfg) {
  if (cfg.sizes.empty()) throw InvalidArgument("config: sizes must be nonempty");
  for (int s : cfg.sizes)
    if (s < 3) throw InvalidArgument("config: size " + std::to_string(s) + " is below 3");
  if (cfg.repetitions < 1) throw InvalidArgument("config: repetitions must be at least 1");
  if (!cfg.with_pmra && !cfg.without_pmra) throw InvalidArgument("config: no pipeline variant selected");
  if (!(cfg.generator.density >= 0.0 && cfg.generator.density <= 1.0))
    throw InvalidArgument("config: density must lie in [0, 1]");
  if (cfg.reads < 1 || cfg.sweeps < 1) throw InvalidArgument("config: reads and sweeps must be positive");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os << text;
}

RunRecord run_once(const ExperimentConfig& cfg, int size, int rep, bool reduced) {
  const Instance generated = generate_instance(size - 1, cfg.seed_base + static_cast<std::uint64_t>(rep), cfg.generator);
  RunRecord rec{size, rep, reduced, false, 0.0, 0.0};
  const std::string stem = variant_name(cfg.solver, reduced) + "_V" + std::to_string(size) + "_r" + std::to_string(rep);
  std::string pending_file;

  using clock = std::chrono::steady_clock;
  const auto started = clock::now();
  try {
    const Instance inst = reduced ? reduce(generated).instance : generated;
    switch (cfg.solver) {
      case SolverKind::exact: {
        rec.cost = optimal_cost(inst).cost;
        rec.solved = true;
        break;
      }
      case SolverKind::sa: {
        const ConstrainedModel model = build_model(inst);
        const Qubo q = to_qubo(model);
        AnnealParams params;
        params.num_reads = cfg.reads;
        params.sweeps = cfg.sweeps;
        params.seed = cfg.seed_base + static_cast<std::uint64_t>(rep);
        params.threads = cfg.threads;
        if (cfg.time_limit > 0.0) params.time_limit = cfg.time_limit;
        const SampleSet samples = anneal(q, params);
        const DecodeReport dec = decode(samples.best().assignment, model, inst);
        if (dec.feasible()) {
          rec.solved = true;
          rec.cost = dec.true_cost;
        }
        break;
      }
      case SolverKind::export_lp:
        pending_file = export_lp(build_model(inst));
        break;
      case SolverKind::export_qubo:
        pending_file = export_qubo(to_qubo(build_model(inst)));
        break;
    }
  } catch (const InfeasibleError&) {
    rec.solved = false;
  }
  rec.seconds = std::chrono::duration<double>(clock::now() - started).count();

  if (!pending_file.empty()) {
    const std::string ext = cfg.solver == SolverKind::export_lp ? ".lp" : ".qubo";
    std::filesystem::create_directories(cfg.export_dir);
    write_file(std::filesystem::path(cfg.export_dir) / (stem + ext), pending_file);
  }
  return rec;
}

std::pair<double, double> mean_std(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

}  // namespace

ResultsRow aggregate(int size, std::string variant, const std::vector<RunRecord>& runs) {
  ResultsRow row{size, std::move(variant), std::nullopt, std::nullopt, 0.0, 0.0, 0.0};
  if (runs.empty()) return row;
  std::vector<double> costs, times;
  for (const RunRecord& r : runs) {
    times.push_back(r.seconds);
    if (r.solved) costs.push_back(r.cost);
  }
  row.pct_solved = 100.0 * static_cast<double>(costs.size()) / static_cast<double>(runs.size());
  if (!costs.empty()) {
    const auto [m, s] = mean_std(costs);
    row.avg_objective = m;
    row.std_objective = s;
  }
  std::tie(row.avg_time, row.std_time) = mean_std(times);
  return row;
}

std::vector<ResultsRow> run_experiment(const ExperimentConfig& cfg, std::vector<RunRecord>* runs) {
  validate(cfg);
  std::vector<ResultsRow> rows;
  for (int size : cfg.sizes)
    for (bool reduced : {false, true}) {
      if ((reduced && !cfg.with_pmra) || (!reduced && !cfg.without_pmra)) continue;
      std::vector<RunRecord> group;
      for (int rep = 0; rep < cfg.repetitions; ++rep) group.push_back(run_once(cfg, size, rep, reduced));
      rows.push_back(aggregate(size, variant_name(cfg.solver, reduced), group));
      if (runs) runs->insert(runs->end(), group.begin(), group.end());
    }
  return rows;
}

int gap_percent(std::size_t nvar_standard, std::size_t nvar_reduced) {
  if (nvar_standard == 0) return 0;
  return static_cast<int>(std::lround(
      100.0 * (1.0 - static_cast<double>(nvar_reduced) / static_cast<double>(nvar_standard))));
}

std::vector<GapRow> gap_table(const std::vector<int>& sizes, const std::vector<std::uint64_t>& seeds,
                              const GeneratorConfig& generator) {
  for (int s : sizes)
    if (s < 3) throw InvalidArgument("size " + std::to_string(s) + " is below 3");
  std::vector<GapRow> rows;
  for (int size : sizes)
    for (std::uint64_t seed : seeds) {
      const Instance inst = generate_instance(size - 1, seed, generator);
      GapRow row{size, seed, to_qubo(build_model(inst)).num_variables(), std::nullopt, std::nullopt};
      try {
        const Instance reduced = reduce(inst).instance;
        row.nvar_reduced = to_qubo(build_model(reduced)).num_variables();
        row.gap = gap_percent(row.nvar_standard, *row.nvar_reduced);
      } catch (const InfeasibleError&) {
      }
      rows.push_back(row);
    }
  return rows;
}

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string emit_csv(const std::vector<ResultsRow>& rows, bool with_timing) {
  std::ostringstream os;
  os << "V,variant,avg_obj,std_obj,pct_solved";
  if (with_timing) os << ",avg_time,std_time";
  os << '\n';
  for (const ResultsRow& r : rows) {
    os << r.size << ',' << r.variant << ',' << (r.avg_objective ? fixed2(*r.avg_objective) : "-") << ','
       << (r.std_objective ? fixed2(*r.std_objective) : "-") << ',' << fixed2(r.pct_solved);
    if (with_timing) os << ',' << fixed2(r.avg_time) << ',' << fixed2(r.std_time);
    os << '\n';
  }
  return os.str();
}

std::string emit_gap_csv(const std::vector<GapRow>& rows) {
  std::ostringstream os;
  os << "V,seed,nvar_SQUBO,nvar_RQUBO,GAP\n";
  for (const GapRow& r : rows) {
    os << r.size << ',' << r.seed << ',' << r.nvar_standard << ','
       << (r.nvar_reduced ? std::to_string(*r.nvar_reduced) : "-") << ','
       << (r.gap ? std::to_string(*r.gap) : "-") << '\n';
  }
  return os.str();
}

}  // namespace stsp
