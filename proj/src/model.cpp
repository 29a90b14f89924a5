#include "stsp/model.hpp"

#include <sstream>

#include "stsp/error.hpp"

namespace stsp {

VarIndex ConstrainedModel::add_variable(std::string label, double objective) {
  labels_.push_back(std::move(label));
  objective_.push_back(objective);
  return static_cast<VarIndex>(labels_.size() - 1);
}

void ConstrainedModel::add_constraint(LinearConstraint constraint) {
  for (const Term& t : constraint.terms)
    if (t.var < 0 || static_cast<std::size_t>(t.var) >= labels_.size())
      throw InvalidArgument("constraint " + constraint.tag + ": unknown variable " + std::to_string(t.var));
  constraints_.push_back(std::move(constraint));
}

double ConstrainedModel::objective_bound() const {
  if (objective_bound_) return *objective_bound_;
  double sum = 0.0;
  for (double c : objective_)
    if (c > 0.0) sum += c;
  return sum;
}

std::size_t expected_constraint_count(std::size_t num_nodes, std::size_t num_arcs,
                                      std::size_t depot_out_degree, std::size_t num_terminals,
                                      std::size_t horizon) {
  const std::size_t periods = horizon > 0 ? horizon - 1 : 0;
  return 1 + (num_arcs - depot_out_degree) + 1 + num_terminals + (num_nodes - 1) * periods;
}

ConstrainedModel build_model(const Instance& inst, const BuildOptions& options) {
  if (inst.num_arcs() == 0) throw InvalidArgument("cannot build a model without arcs");
  const int horizon = options.horizon.value_or(static_cast<int>(inst.num_arcs()));
  if (horizon < 1) throw InvalidArgument("horizon must be positive");

  const AdjacencyIndex adj(inst);
  TimeIndexing layout;
  layout.horizon = horizon;
  std::vector<std::size_t> pos_of(static_cast<std::size_t>(inst.arc_id_bound()), 0);
  for (const Arc& a : inst.arcs()) {
    pos_of[static_cast<std::size_t>(a.id)] = layout.arcs.size();
    layout.arcs.push_back(a.id);
  }
  auto y = [&](ArcId k, int t) { return layout.var(pos_of[static_cast<std::size_t>(k)], t); };

  ConstrainedModel model;
  for (int t = 1; t <= horizon; ++t)
    for (const Arc& a : inst.arcs())
      model.add_variable("y_" + std::to_string(a.id) + "_" + std::to_string(t), a.cost);

  const auto depot_out = adj.out_arcs(kDepot);
  const auto depot_in = adj.in_arcs(kDepot);

  {
    LinearConstraint c{{}, Relation::equal, 1.0, "eq2"};
    for (ArcId k : depot_out) c.terms.push_back({y(k, 1), 1.0});
    model.add_constraint(std::move(c));
  }
  for (const Arc& a : inst.arcs()) {
    if (a.tail == kDepot) continue;
    model.add_constraint({{{y(a.id, 1), 1.0}}, Relation::equal, 0.0, "eq3_k" + std::to_string(a.id)});
  }
  {
    LinearConstraint c{{}, Relation::equal, 0.0, "eq4"};
    for (int t = 1; t <= horizon; ++t) {
      for (ArcId k : depot_out) c.terms.push_back({y(k, t), 1.0});
      for (ArcId k : depot_in) c.terms.push_back({y(k, t), -1.0});
    }
    model.add_constraint(std::move(c));
  }
  for (NodeId i : inst.terminals()) {
    LinearConstraint c{{}, Relation::greater_equal, 1.0, "eq5_i" + std::to_string(i)};
    for (int t = 1; t <= horizon; ++t)
      for (ArcId k : adj.out_arcs(i)) c.terms.push_back({y(k, t), 1.0});
    model.add_constraint(std::move(c));
  }
  for (const Node& n : inst.nodes()) {
    if (n.id == kDepot) continue;
    for (int t = 1; t < horizon; ++t) {
      LinearConstraint c{{}, Relation::equal, 0.0,
                         "eq6_i" + std::to_string(n.id) + "_t" + std::to_string(t)};
      for (ArcId k : adj.in_arcs(n.id)) c.terms.push_back({y(k, t), 1.0});
      for (ArcId k : adj.out_arcs(n.id)) c.terms.push_back({y(k, t + 1), -1.0});
      model.add_constraint(std::move(c));
    }
  }

  // A route using each arc at most once costs at most the total arc cost.
  model.set_objective_bound(inst.total_cost());
  model.set_time_indexing(std::move(layout));
  return model;
}

double lhs_value(const LinearConstraint& c, std::span<const std::uint8_t> asg) {
  double lhs = 0.0;
  for (const Term& t : c.terms)
    if (asg[static_cast<std::size_t>(t.var)]) lhs += t.coeff;
  return lhs;
}

bool is_satisfied(Relation rel, double residual) {
  switch (rel) {
    case Relation::equal:
      return residual == 0.0;
    case Relation::greater_equal:
      return residual >= 0.0;
    case Relation::less_equal:
      return residual <= 0.0;
  }
  return false;
}

Evaluation evaluate_assignment(const ConstrainedModel& model, std::span<const std::uint8_t> asg) {
  if (asg.size() < model.num_variables())
    throw InvalidArgument("assignment covers " + std::to_string(asg.size()) + " of " +
                          std::to_string(model.num_variables()) + " variables; missing " +
                          model.labels()[asg.size()]);
  Evaluation ev;
  for (std::size_t v = 0; v < model.num_variables(); ++v)
    if (asg[v]) ev.objective += model.objective()[v];
  for (const LinearConstraint& c : model.constraints()) {
    const double residual = lhs_value(c, asg) - c.rhs;
    if (!is_satisfied(c.relation, residual)) ev.violations.push_back({c.tag, residual});
  }
  return ev;
}

namespace {

constexpr std::size_t kTermsPerLine = 8;

void write_expression(std::ostream& os, const std::vector<std::string>& labels,
                      const std::vector<Term>& terms) {
  if (terms.empty()) {
    // LP syntax needs at least one term on the left-hand side.
    os << " 0 " << labels.front();
    return;
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && i % kTermsPerLine == 0) os << "\n   ";
    const double c = terms[i].coeff;
    os << (c < 0 ? " - " : (i == 0 ? " " : " + "));
    const double mag = c < 0 ? -c : c;
    if (mag != 1.0) os << format_number(mag) << ' ';
    os << labels[static_cast<std::size_t>(terms[i].var)];
  }
}

}  // namespace

std::string export_lp(const ConstrainedModel& model) {
  std::ostringstream os;
  os << "\\ time-indexed STSP model: " << model.num_variables() << " binaries, "
     << model.num_constraints() << " constraints\n";
  os << "Minimize\n obj:";
  std::vector<Term> objective;
  for (std::size_t v = 0; v < model.num_variables(); ++v)
    if (model.objective()[v] != 0.0) objective.push_back({static_cast<VarIndex>(v), model.objective()[v]});
  if (model.num_variables() > 0) write_expression(os, model.labels(), objective);
  os << "\nSubject To\n";
  for (const LinearConstraint& c : model.constraints()) {
    os << ' ' << c.tag << ':';
    write_expression(os, model.labels(), c.terms);
    switch (c.relation) {
      case Relation::equal:
        os << " = ";
        break;
      case Relation::greater_equal:
        os << " >= ";
        break;
      case Relation::less_equal:
        os << " <= ";
        break;
    }
    os << format_number(c.rhs) << '\n';
  }
  os << "Binary\n";
  for (const std::string& label : model.labels()) os << ' ' << label << '\n';
  os << "End\n";
  return os.str();
}

}  // namespace stsp
