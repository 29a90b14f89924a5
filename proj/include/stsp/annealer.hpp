#ifndef STSP_ANNEALER_HPP
#define STSP_ANNEALER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "stsp/model.hpp"
#include "stsp/qubo.hpp"

namespace stsp {

struct BetaRange {
  double hot;
  double cold;

  friend bool operator==(const BetaRange&, const BetaRange&) = default;
};

/// Schedule endpoints. hot = ln 2 / max_i d_i with d_i = |h_i| + sum_j |J_ij|
/// the largest energy change of a single flip; cold = ln 1000 / c_min with
/// c_min the smallest nonzero |h_i| or |J_ij|, so that the finest energy step
/// of the form is frozen out at the end. An all-zero QUBO gets (0.1, 10).
BetaRange auto_beta_range(const Qubo& q);

struct AnnealParams {
  int num_reads = 1000;
  int sweeps = 1000;
  std::optional<BetaRange> beta_range;
  std::uint64_t seed = 0;
  /// Visit variables in a per-sweep shuffled order instead of index order.
  bool random_order = false;
  /// Worker threads; 0 uses the hardware concurrency.
  int threads = 1;
  /// Wall-clock budget in seconds; reads not started before it expires are
  /// skipped and the sample set is marked truncated. Unset means unlimited.
  std::optional<double> time_limit;
};

struct SampleRecord {
  Assignment assignment;
  double energy;  ///< full recomputation from `assignment`
  int read;
  double tracked_energy;  ///< incrementally maintained during the read
};

struct SampleSet {
  std::vector<SampleRecord> records;  ///< ascending energy, ties by read index
  AnnealParams params;
  BetaRange beta_range{};
  double elapsed_seconds = 0.0;
  bool truncated = false;

  const SampleRecord& best() const { return records.front(); }
};

/// Metropolis single-flip simulated annealing with a geometric beta schedule.
/// Each read starts from its own uniform random state, seeded from
/// (seed, read index), so the result is independent of the thread count.
SampleSet anneal(const Qubo& q, const AnnealParams& params);

}  // namespace stsp

#endif  // STSP_ANNEALER_HPP
