#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "stsp/annealer.hpp"
#include "stsp/bench.hpp"
#include "stsp/decoder.hpp"
#include "stsp/error.hpp"
#include "stsp/generator.hpp"
#include "stsp/instance.hpp"
#include "stsp/model.hpp"
#include "stsp/oracle.hpp"
#include "stsp/pmra.hpp"
#include "stsp/qubo.hpp"

namespace {

using namespace stsp;

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Writes to `path`, or to stdout when it is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  os << text;
}

std::string join(const std::vector<ArcId>& ids) {
  std::string out;
  for (ArcId id : ids) out += (out.empty() ? "" : " ") + std::to_string(id);
  return out;
}

struct InstanceInput {
  std::string path;
  bool pmra = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("instance", path, "Instance file")->required()->check(CLI::ExistingFile);
    auto* on = cmd->add_flag("--pmra", pmra, "Reduce the instance first");
    auto* off = cmd->add_flag("--no-pmra", "Use the instance as is (default)");
    on->excludes(off);
  }

  Instance load() const {
    const Instance inst = load_instance(read_file(path));
    return pmra ? reduce(inst).instance : inst;
  }
};

std::string format_route(const Route& route) {
  return "cost " + format_number(route.cost) + "\nroute " + join(route.arcs) + "\n";
}

int hardware_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steiner TSP toolkit: instance generation, PMRA reduction, ILP/QUBO export, annealing"};
  app.require_subcommand(1);
  std::string out;

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random instance");
  int nodes = 4;
  std::uint64_t seed = 0;
  double density = 0.3;
  bool euclidean = false;
  gen->add_option("-n,--nodes", nodes, "Non-depot node count")->check(CLI::Range(2, 1 << 20));
  gen->add_option("--seed", seed);
  gen->add_option("--density", density, "Probability of each non-cycle arc")->check(CLI::Range(0.0, 1.0));
  gen->add_flag("--euclidean", euclidean, "Rounded Euclidean costs instead of uniform [20, 50]");
  gen->add_option("-o,--out", out);

  // reduce
  auto* red = app.add_subcommand("reduce", "Apply PMRA and write the reduced instance");
  std::string red_path, report_path;
  red->add_option("instance", red_path)->required()->check(CLI::ExistingFile);
  red->add_option("-o,--out", out);
  red->add_option("--report", report_path, "Report file (default stderr)");

  // build
  auto* bld = app.add_subcommand("build", "Print the size of the time-indexed model");
  InstanceInput bld_in;
  bld_in.attach(bld);

  // export-lp
  auto* elp = app.add_subcommand("export-lp", "Write the time-indexed model in LP format");
  InstanceInput elp_in;
  elp_in.attach(elp);
  elp->add_option("-o,--out", out);

  // export-qubo
  auto* equ = app.add_subcommand("export-qubo", "Write the QUBO and its variable map");
  InstanceInput equ_in;
  std::string varmap_path;
  double penalty = 0.0;
  equ_in.attach(equ);
  equ->add_option("-o,--out", out);
  equ->add_option("--varmap", varmap_path, "Variable map file");
  equ->add_option("--penalty", penalty, "Penalty weight (default 2x objective bound)")->check(CLI::PositiveNumber);

  // solve-sa
  auto* sa = app.add_subcommand("solve-sa", "Anneal the QUBO and decode the best sample");
  InstanceInput sa_in;
  AnnealParams params;
  double beta_hot = 0.0, beta_cold = 0.0, time_limit = 10.0;
  sa_in.attach(sa);
  sa->add_option("--reads", params.num_reads)->check(CLI::PositiveNumber);
  sa->add_option("--sweeps", params.sweeps)->check(CLI::PositiveNumber);
  auto* hot_opt = sa->add_option("--beta-hot", beta_hot)->check(CLI::PositiveNumber);
  auto* cold_opt = sa->add_option("--beta-cold", beta_cold)->check(CLI::PositiveNumber);
  hot_opt->needs(cold_opt);
  cold_opt->needs(hot_opt);
  sa->add_option("--seed", params.seed);
  sa->add_option("--threads", params.threads, "Worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
  sa->add_option("--time-limit", time_limit, "Seconds, 0 disables")->check(CLI::NonNegativeNumber);
  sa->add_flag("--random-order", params.random_order, "Shuffle the variable order every sweep");
  sa->add_option("-o,--out", out);

  // exact
  auto* ex = app.add_subcommand("exact", "Solve to optimality by subset dynamic programming");
  InstanceInput ex_in;
  ex_in.attach(ex);

  // bench
  auto* bench = app.add_subcommand("bench", "Run repeated experiments and print a CSV table");
  ExperimentConfig cfg;
  cfg.threads = hardware_threads();
  std::string solver = "sa";
  bool only_pmra = false, only_plain = false, no_timing = false;
  bench->add_option("--sizes", cfg.sizes, "Node counts |V| including the depot")->required()->delimiter(',');
  bench->add_option("--reps", cfg.repetitions)->check(CLI::PositiveNumber);
  bench->add_option("--seed", cfg.seed_base, "Seed of repetition 0");
  bench->add_option("--solver", solver)->check(CLI::IsMember({"sa", "exact", "export-lp", "export-qubo"}));
  auto* b_on = bench->add_flag("--pmra", only_pmra, "Reduced variant only");
  auto* b_off = bench->add_flag("--no-pmra", only_plain, "Standard variant only");
  b_on->excludes(b_off);
  bench->add_option("--time-limit", cfg.time_limit, "Annealing budget per run in seconds, 0 disables");
  bench->add_option("--reads", cfg.reads)->check(CLI::PositiveNumber);
  bench->add_option("--sweeps", cfg.sweeps)->check(CLI::PositiveNumber);
  bench->add_option("--threads", cfg.threads)->check(CLI::PositiveNumber);
  bench->add_option("--density", cfg.generator.density)->check(CLI::Range(0.0, 1.0));
  bench->add_option("--export-dir", cfg.export_dir, "Destination of export-lp/export-qubo files");
  bench->add_flag("--no-timing", no_timing, "Omit the timing columns");
  bench->add_option("-o,--out", out);

  // gap
  auto* gap = app.add_subcommand("gap", "Compare QUBO sizes with and without PMRA");
  std::vector<int> gap_sizes;
  int gap_reps = 10;
  std::uint64_t gap_seed = 0;
  double gap_density = 0.3;
  gap->add_option("--sizes", gap_sizes, "Node counts |V| including the depot")->required()->delimiter(',');
  gap->add_option("--reps", gap_reps, "Instances per size")->check(CLI::PositiveNumber);
  gap->add_option("--seed", gap_seed, "Seed of the first instance");
  gap->add_option("--density", gap_density)->check(CLI::Range(0.0, 1.0));
  gap->add_option("-o,--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      GeneratorConfig gc;
      gc.density = density;
      gc.cost_mode = euclidean ? CostMode::euclidean : CostMode::uniform;
      emit(out, save_instance(generate_instance(nodes, seed, gc)));
    } else if (*red) {
      const Reduction r = reduce(load_instance(read_file(red_path)));
      emit(out, save_instance(r.instance));
      if (report_path.empty()) std::cerr << format_report(r.report);
      else emit(report_path, format_report(r.report));
    } else if (*bld) {
      const Instance inst = bld_in.load();
      const ConstrainedModel m = build_model(inst);
      const Qubo q = to_qubo(m);
      std::cout << "nodes " << inst.num_nodes() << "\narcs " << inst.num_arcs() << "\nterminals "
                << inst.terminals().size() << "\nhorizon " << m.time_indexing()->horizon << "\nvariables "
                << m.num_variables() << "\nconstraints " << m.num_constraints() << "\nqubo_variables "
                << q.num_variables() << "\nqubo_terms " << q.num_nonzero_linear() + q.quadratic.size()
                << "\npenalty " << format_number(q.penalty) << "\n";
    } else if (*elp) {
      emit(out, export_lp(build_model(elp_in.load())));
    } else if (*equ) {
      const Qubo q = to_qubo(build_model(equ_in.load()),
                             penalty > 0 ? PenaltySpec::fixed(penalty) : PenaltySpec::automatic_weight());
      emit(out, export_qubo(q));
      if (!varmap_path.empty()) emit(varmap_path, export_varmap(q));
    } else if (*sa) {
      const Instance inst = sa_in.load();
      const ConstrainedModel m = build_model(inst);
      const Qubo q = to_qubo(m);
      if (*hot_opt) params.beta_range = BetaRange{beta_hot, beta_cold};
      if (time_limit > 0) params.time_limit = time_limit;
      if (params.threads == 0) params.threads = hardware_threads();
      const SampleSet samples = anneal(q, params);
      const DecodeReport rep = decode(samples.best().assignment, q, m, inst);
      std::string text = "feasible " + std::string(rep.feasible() ? "true" : "false") + "\n";
      if (rep.route) text += format_route(*rep.route);
      text += "energy " + format_number(rep.energy) + "\npenalty_part " + format_number(rep.penalty_part) +
              "\nreads " + std::to_string(samples.records.size()) + "\nbeta " +
              format_number(samples.beta_range.hot) + " " + format_number(samples.beta_range.cold) + "\n";
      if (samples.truncated) text += "truncated true\n";
      for (const std::string& v : rep.violations) text += "violation " + v + "\n";
      emit(out, text);
    } else if (*ex) {
      std::cout << format_route(optimal_cost(ex_in.load()).route);
    } else if (*bench) {
      if (solver == "sa") cfg.solver = SolverKind::sa;
      else if (solver == "exact") cfg.solver = SolverKind::exact;
      else if (solver == "export-lp") cfg.solver = SolverKind::export_lp;
      else cfg.solver = SolverKind::export_qubo;
      cfg.with_pmra = !only_plain;
      cfg.without_pmra = !only_pmra;
      emit(out, emit_csv(run_experiment(cfg), !no_timing));
    } else if (*gap) {
      std::vector<std::uint64_t> seeds;
      for (int r = 0; r < gap_reps; ++r) seeds.push_back(gap_seed + static_cast<std::uint64_t>(r));
      GeneratorConfig gc;
      gc.density = gap_density;
      emit(out, emit_gap_csv(gap_table(gap_sizes, seeds, gc)));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
