#ifndef STSP_DECODER_HPP
#define STSP_DECODER_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stsp/instance.hpp"
#include "stsp/model.hpp"
#include "stsp/qubo.hpp"
#include "stsp/route.hpp"

namespace stsp {

struct DecodeReport {
  std::optional<Route> route;  ///< set iff feasible
  std::vector<std::string> violations;
  double true_cost = 0.0;
  double energy = 0.0;
  /// energy minus the objective of the decision bits; zero for samples whose
  /// constraints (and slacks) are all satisfied.
  double penalty_part = 0.0;

  bool feasible() const { return route.has_value(); }
};

/// Reads the walk out of a time-indexed assignment. Slack bits past the
/// model's variables are ignored. Never throws on bad samples: every failure
/// is reported as a named violation.
DecodeReport decode(std::span<const std::uint8_t> asg, const ConstrainedModel& model,
                    const Instance& inst);

/// As above, with energy and penalty part filled in from `q`.
DecodeReport decode(std::span<const std::uint8_t> asg, const Qubo& q,
                    const ConstrainedModel& model, const Instance& inst);

/// Empty when the route is a closed depot walk over existing arcs that visits
/// every terminal and whose stored cost matches.
std::vector<std::string> validate_route(const Route& route, const Instance& inst);

/// y[arc at step t][t] = 1, everything else 0. Throws InvalidArgument when the
/// route is longer than the horizon or uses an arc outside the model.
Assignment encode_route(const Route& route, const ConstrainedModel& model);

}  // namespace stsp

#endif  // STSP_DECODER_HPP
