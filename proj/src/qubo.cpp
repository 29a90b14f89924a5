#include "stsp/qubo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "stsp/error.hpp"

namespace stsp {

std::size_t Qubo::num_decision() const {
  return static_cast<std::size_t>(std::count(origin.begin(), origin.end(), VarOrigin::decision));
}

std::size_t Qubo::num_nonzero_linear() const {
  return static_cast<std::size_t>(std::count_if(linear.begin(), linear.end(), [](double h) { return h != 0.0; }));
}

std::vector<double> slack_weights(double range) {
  std::vector<double> weights;
  double remaining = std::ceil(range);
  double w = 1.0;
  while (remaining > 0.0) {
    const double take = std::min(w, remaining);
    weights.push_back(take);
    remaining -= take;
    w *= 2.0;
  }
  return weights;
}

namespace {

class QuboBuilder {
 public:
  VarIndex add(std::string label, VarOrigin origin) {
    q_.labels.push_back(std::move(label));
    q_.origin.push_back(origin);
    q_.linear.push_back(0.0);
    return static_cast<VarIndex>(q_.labels.size() - 1);
  }

  void add_linear(VarIndex v, double c) { q_.linear[static_cast<std::size_t>(v)] += c; }
  void add_offset(double c) { q_.offset += c; }

  /// penalty * (sum terms - rhs)^2 with x*x = x.
  void add_squared(std::vector<Term> terms, double rhs, double penalty) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
    std::vector<Term> merged;
    for (const Term& t : terms) {
      if (!merged.empty() && merged.back().var == t.var)
        merged.back().coeff += t.coeff;
      else
        merged.push_back(t);
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff == 0.0; });

    q_.offset += penalty * rhs * rhs;
    for (std::size_t a = 0; a < merged.size(); ++a) {
      const double ca = merged[a].coeff;
      add_linear(merged[a].var, penalty * (ca * ca - 2.0 * rhs * ca));
      for (std::size_t b = a + 1; b < merged.size(); ++b)
        quad_[{merged[a].var, merged[b].var}] += 2.0 * penalty * ca * merged[b].coeff;
    }
  }

  Qubo finish(double penalty) {
    for (const auto& [key, c] : quad_)
      if (c != 0.0) q_.quadratic.push_back({key.first, key.second, c});
    q_.penalty = penalty;
    return std::move(q_);
  }

 private:
  Qubo q_;
  std::map<std::pair<VarIndex, VarIndex>, double> quad_;
};

}  // namespace

Qubo to_qubo(const ConstrainedModel& model, PenaltySpec spec) {
  double penalty = spec.value;
  if (spec.automatic) {
    penalty = 2.0 * model.objective_bound();
    if (penalty <= 0.0) penalty = 1.0;
  }
  if (!(penalty > 0.0)) throw InvalidArgument("penalty must be positive");
  for (const LinearConstraint& c : model.constraints())
    if (c.relation == Relation::less_equal)
      throw InvalidArgument("constraint " + c.tag + ": only = and >= relations can be penalized");

  QuboBuilder builder;
  for (std::size_t v = 0; v < model.num_variables(); ++v) {
    builder.add(model.labels()[v], VarOrigin::decision);
    builder.add_linear(static_cast<VarIndex>(v), model.objective()[v]);
  }
  for (const LinearConstraint& c : model.constraints()) {
    std::vector<Term> terms = c.terms;
    if (c.relation == Relation::greater_equal) {
      double upper = 0.0;
      for (const Term& t : c.terms)
        if (t.coeff > 0.0) upper += t.coeff;
      const auto weights = slack_weights(upper - c.rhs);
      for (std::size_t b = 0; b < weights.size(); ++b) {
        const VarIndex s = builder.add("s_" + c.tag + "_" + std::to_string(b), VarOrigin::slack);
        terms.push_back({s, -weights[b]});
      }
    }
    builder.add_squared(std::move(terms), c.rhs, penalty);
  }
  return builder.finish(penalty);
}

double energy(const Qubo& q, std::span<const std::uint8_t> asg) {
  if (asg.size() < q.num_variables())
    throw InvalidArgument("assignment covers " + std::to_string(asg.size()) + " of " +
                          std::to_string(q.num_variables()) + " variables; missing " + q.labels[asg.size()]);
  double e = q.offset;
  for (std::size_t i = 0; i < q.linear.size(); ++i)
    if (asg[i]) e += q.linear[i];
  for (const QuadTerm& t : q.quadratic)
    if (asg[static_cast<std::size_t>(t.i)] && asg[static_cast<std::size_t>(t.j)]) e += t.coeff;
  return e;
}

std::string export_qubo(const Qubo& q) {
  std::ostringstream os;
  os << "qubo " << q.num_variables() << ' ' << q.num_nonzero_linear() + q.quadratic.size() << ' '
     << format_number(q.offset) << ' ' << format_number(q.penalty) << '\n';
  // Linear term (i, i) sorts before every (i, j > i).
  std::size_t next_quad = 0;
  for (std::size_t i = 0; i < q.num_variables(); ++i) {
    if (q.linear[i] != 0.0) os << i << ' ' << i << ' ' << format_number(q.linear[i]) << '\n';
    while (next_quad < q.quadratic.size() && static_cast<std::size_t>(q.quadratic[next_quad].i) == i) {
      const QuadTerm& t = q.quadratic[next_quad++];
      os << t.i << ' ' << t.j << ' ' << format_number(t.coeff) << '\n';
    }
  }
  return os.str();
}

std::string export_varmap(const Qubo& q) {
  std::ostringstream os;
  for (std::size_t i = 0; i < q.num_variables(); ++i)
    os << i << ' ' << q.labels[i] << ' ' << (q.origin[i] == VarOrigin::slack ? "slack" : "decision") << '\n';
  return os.str();
}

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T number(std::string_view tok, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(std::string(what) + ": cannot parse '" + std::string(tok) + "'");
  return value;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const auto tok = tokens(line);
    if (!tok.empty()) fn(line_no, tok);
  }
}

}  // namespace

Qubo parse_qubo(std::string_view qubo_text, std::string_view varmap_text) {
  Qubo q;
  bool header = false;
  std::size_t declared_terms = 0, seen_terms = 0;
  std::map<std::pair<VarIndex, VarIndex>, double> quad;

  for_each_line(qubo_text, [&](std::size_t line_no, const std::vector<std::string_view>& tok) {
    const std::string where = "qubo line " + std::to_string(line_no);
    if (!header) {
      if (tok.size() != 5 || tok[0] != "qubo") throw ParseError(where + ": expected 'qubo <nvars> <nterms> <offset> <penalty>'");
      const auto n = number<std::size_t>(tok[1], where + ": nvars");
      declared_terms = number<std::size_t>(tok[2], where + ": nterms");
      q.offset = number<double>(tok[3], where + ": offset");
      q.penalty = number<double>(tok[4], where + ": penalty");
      q.labels.resize(n);
      q.origin.assign(n, VarOrigin::decision);
      q.linear.assign(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) q.labels[i] = "x" + std::to_string(i);
      header = true;
      return;
    }
    if (tok.size() != 3) throw ParseError(where + ": expected '<i> <j> <coeff>'");
    auto i = number<VarIndex>(tok[0], where + ": i");
    auto j = number<VarIndex>(tok[1], where + ": j");
    const double c = number<double>(tok[2], where + ": coeff");
    const auto n = static_cast<VarIndex>(q.labels.size());
    if (i < 0 || j < 0 || i >= n || j >= n) throw ParseError(where + ": variable index out of range");
    if (i == j) {
      q.linear[static_cast<std::size_t>(i)] += c;
    } else {
      if (i > j) std::swap(i, j);
      quad[{i, j}] += c;
    }
    ++seen_terms;
  });
  if (!header) throw ParseError("qubo: missing header");
  if (seen_terms != declared_terms)
    throw ParseError("qubo: header declares " + std::to_string(declared_terms) + " terms, found " +
                     std::to_string(seen_terms));
  for (const auto& [key, c] : quad)
    if (c != 0.0) q.quadratic.push_back({key.first, key.second, c});

  for_each_line(varmap_text, [&](std::size_t line_no, const std::vector<std::string_view>& tok) {
    const std::string where = "varmap line " + std::to_string(line_no);
    if (tok.size() != 2 && tok.size() != 3) throw ParseError(where + ": expected '<index> <label> [decision|slack]'");
    const auto i = number<std::size_t>(tok[0], where + ": index");
    if (i >= q.labels.size()) throw ParseError(where + ": index out of range");
    q.labels[i] = std::string(tok[1]);
    if (tok.size() == 3) {
      if (tok[2] == "slack")
        q.origin[i] = VarOrigin::slack;
      else if (tok[2] == "decision")
        q.origin[i] = VarOrigin::decision;
      else
        throw ParseError(where + ": unknown origin '" + std::string(tok[2]) + "'");
    }
  });
  return q;
}

}  // namespace stsp
