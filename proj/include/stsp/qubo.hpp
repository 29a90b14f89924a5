#ifndef STSP_QUBO_HPP
#define STSP_QUBO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stsp/model.hpp"

namespace stsp {

enum class VarOrigin { decision, slack };

struct QuadTerm {
  VarIndex i;  ///< i < j
  VarIndex j;
  double coeff;

  friend bool operator==(const QuadTerm&, const QuadTerm&) = default;
};

/// Binary quadratic form: offset + sum_i h_i x_i + sum_{i<j} J_ij x_i x_j.
///
/// Linear biases are stored densely (zeros allowed); quadratic terms are
/// sorted by (i, j), unique, and nonzero.
struct Qubo {
  std::vector<std::string> labels;
  std::vector<VarOrigin> origin;
  std::vector<double> linear;
  std::vector<QuadTerm> quadratic;
  double offset = 0.0;
  double penalty = 0.0;

  std::size_t num_variables() const { return labels.size(); }
  std::size_t num_decision() const;
  std::size_t num_nonzero_linear() const;

  friend bool operator==(const Qubo&, const Qubo&) = default;
};

/// Penalty weight: a positive number, or 2 x the model's objective bound
/// when `automatic`.
struct PenaltySpec {
  bool automatic = true;
  double value = 0.0;

  static PenaltySpec automatic_weight() { return {}; }
  static PenaltySpec fixed(double p) { return {false, p}; }
};

/// Slack weights 1, 2, 4, ... with the last one trimmed so they sum to `range`.
std::vector<double> slack_weights(double range);

/// Squared-penalty conversion. Equalities add P (expr - b)^2; inequalities
/// expr >= b add P (expr - b - s)^2 with s a binary-encoded surplus in
/// [0, U - b], U the sum of positive coefficients. Objective terms are added
/// as-is. Decision variables keep their model order; slack bits follow in
/// constraint order.
///
/// Throws InvalidArgument for a <= constraint or a nonpositive penalty.
Qubo to_qubo(const ConstrainedModel& model, PenaltySpec penalty = {});

/// Full-assignment energy; throws InvalidArgument when `asg` is too short.
double energy(const Qubo& q, std::span<const std::uint8_t> asg);

/// `qubo <nvars> <nterms> <offset> <penalty>` header, then `<i> <j> <coeff>`
/// per nonzero term (i == j for linear), sorted by (i, j).
std::string export_qubo(const Qubo& q);

/// `<index> <label> <decision|slack>` per variable.
std::string export_varmap(const Qubo& q);

/// Inverse of export_qubo/export_varmap. With an empty varmap the labels are
/// `x<index>` and every variable is a decision variable.
Qubo parse_qubo(std::string_view qubo_text, std::string_view varmap_text = {});

}  // namespace stsp

#endif  // STSP_QUBO_HPP
