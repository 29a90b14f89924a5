#ifndef STSP_MODEL_HPP
#define STSP_MODEL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stsp/instance.hpp"

namespace stsp {

using VarIndex = int;
using Assignment = std::vector<std::uint8_t>;

enum class Relation { equal, greater_equal, less_equal };

struct Term {
  VarIndex var;
  double coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

struct LinearConstraint {
  std::vector<Term> terms;
  Relation relation;
  double rhs;
  std::string tag;
};

/// Arc/period layout of a time-indexed model. Variable y[k][t] for the arc at
/// position p of `arcs` and period t in 1..horizon has index
/// (t - 1) * arcs.size() + p.
struct TimeIndexing {
  int horizon = 0;
  std::vector<ArcId> arcs;

  VarIndex var(std::size_t arc_pos, int period) const {
    return static_cast<VarIndex>((period - 1) * arcs.size() + arc_pos);
  }
};

/// Binary program: minimize a linear objective subject to linear constraints.
class ConstrainedModel {
 public:
  VarIndex add_variable(std::string label, double objective = 0.0);
  void add_constraint(LinearConstraint constraint);

  std::size_t num_variables() const { return labels_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }

  /// Upper bound on the objective of the solutions the penalty must dominate.
  /// Defaults to the sum of positive objective coefficients.
  double objective_bound() const;
  void set_objective_bound(double bound) { objective_bound_ = bound; }

  const std::optional<TimeIndexing>& time_indexing() const { return time_; }
  void set_time_indexing(TimeIndexing layout) { time_ = std::move(layout); }

 private:
  std::vector<std::string> labels_;
  std::vector<double> objective_;
  std::vector<LinearConstraint> constraints_;
  std::optional<double> objective_bound_;
  std::optional<TimeIndexing> time_;
};

struct BuildOptions {
  /// Number of periods; the arc count when unset.
  std::optional<int> horizon;
};

/// Time-indexed STSP model over binary y[k][t]:
///   min  sum_t sum_k c_k y[k][t]
///   eq2        sum_{k out of 0} y[k][1] = 1
///   eq3_k<k>   y[k][1] = 0 for k not leaving the depot
///   eq4        sum_t (sum_{k out of 0} y[k][t] - sum_{k into 0} y[k][t]) = 0
///   eq5_i<i>   sum_t sum_{k out of i} y[k][t] >= 1 for terminals i
///   eq6_i<i>_t<t>  sum_{k into i} y[k][t] - sum_{k out of i} y[k][t+1] = 0
///              for i != 0 and 1 <= t < horizon
/// Throws InvalidArgument for an instance without arcs.
ConstrainedModel build_model(const Instance& inst, const BuildOptions& options = {});

/// Expected constraint count of build_model for the given sizes.
std::size_t expected_constraint_count(std::size_t num_nodes, std::size_t num_arcs,
                                      std::size_t depot_out_degree, std::size_t num_terminals,
                                      std::size_t horizon);

struct Violation {
  std::string tag;
  double residual;  ///< lhs - rhs

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct Evaluation {
  double objective = 0.0;
  std::vector<Violation> violations;
};

double lhs_value(const LinearConstraint& c, std::span<const std::uint8_t> asg);
bool is_satisfied(Relation rel, double residual);

/// Objective and failed constraints of a full 0/1 assignment. Extra entries
/// beyond the model's variables are ignored; missing ones throw.
Evaluation evaluate_assignment(const ConstrainedModel& model, std::span<const std::uint8_t> asg);

/// CPLEX-LP text: Minimize / Subject To / Binary / End, deterministic order.
std::string export_lp(const ConstrainedModel& model);

}  // namespace stsp

#endif  // STSP_MODEL_HPP
