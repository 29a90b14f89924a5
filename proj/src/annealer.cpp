#include "stsp/annealer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "stsp/error.hpp"
#include "stsp/rng.hpp"

namespace stsp {

namespace {

constexpr double kNoCoeff = std::numeric_limits<double>::infinity();

/// Symmetric neighbor lists in CSR layout.
struct Couplings {
  std::vector<std::size_t> start;
  std::vector<VarIndex> neighbor;
  std::vector<double> coeff;

  explicit Couplings(const Qubo& q) {
    const std::size_t n = q.num_variables();
    std::vector<std::size_t> count(n, 0);
    for (const QuadTerm& t : q.quadratic) {
      ++count[static_cast<std::size_t>(t.i)];
      ++count[static_cast<std::size_t>(t.j)];
    }
    start.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) start[i + 1] = start[i] + count[i];
    neighbor.resize(start[n]);
    coeff.resize(start[n]);
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (const QuadTerm& t : q.quadratic) {
      const auto i = static_cast<std::size_t>(t.i), j = static_cast<std::size_t>(t.j);
      neighbor[fill[i]] = t.j;
      coeff[fill[i]++] = t.coeff;
      neighbor[fill[j]] = t.i;
      coeff[fill[j]++] = t.coeff;
    }
  }
};

std::vector<double> geometric_schedule(BetaRange range, int sweeps) {
  std::vector<double> betas(static_cast<std::size_t>(sweeps));
  if (sweeps == 1) {
    betas[0] = range.cold;
    return betas;
  }
  const double ratio = range.cold / range.hot;
  for (int s = 0; s < sweeps; ++s)
    betas[static_cast<std::size_t>(s)] =
        range.hot * std::pow(ratio, static_cast<double>(s) / static_cast<double>(sweeps - 1));
  return betas;
}

SampleRecord run_read(const Qubo& q, const Couplings& cpl, const std::vector<double>& betas,
                      const AnnealParams& params, int read) {
  const std::size_t n = q.num_variables();
  Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(read)));

  Assignment x(n);
  for (auto& bit : x) bit = static_cast<std::uint8_t>(rng.next() >> 63);

  std::vector<double> field(q.linear);
  for (std::size_t i = 0; i < n; ++i) {
    if (!x[i]) continue;
    for (std::size_t e = cpl.start[i]; e < cpl.start[i + 1]; ++e)
      field[static_cast<std::size_t>(cpl.neighbor[e])] += cpl.coeff[e];
  }
  double e_now = energy(q, x);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (double beta : betas) {
    if (params.random_order)
      for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i - 1)))]);
    for (std::size_t i : order) {
      const double delta = x[i] ? -field[i] : field[i];
      if (delta > 0.0 && rng.uniform01() >= std::exp(-beta * delta)) continue;
      x[i] ^= 1;
      e_now += delta;
      const double sign = x[i] ? 1.0 : -1.0;
      for (std::size_t e = cpl.start[i]; e < cpl.start[i + 1]; ++e)
        field[static_cast<std::size_t>(cpl.neighbor[e])] += sign * cpl.coeff[e];
    }
  }
  // The stored energy is always the full recomputation.
  const double exact = energy(q, x);
  return {std::move(x), exact, read, e_now};
}

}  // namespace

BetaRange auto_beta_range(const Qubo& q) {
  const std::size_t n = q.num_variables();
  if (n == 0) throw InvalidArgument("QUBO has no variables");
  std::vector<double> delta(n, 0.0);
  double min_coeff = kNoCoeff;
  for (std::size_t i = 0; i < n; ++i) {
    delta[i] = std::abs(q.linear[i]);
    if (q.linear[i] != 0.0) min_coeff = std::min(min_coeff, std::abs(q.linear[i]));
  }
  for (const QuadTerm& t : q.quadratic) {
    delta[static_cast<std::size_t>(t.i)] += std::abs(t.coeff);
    delta[static_cast<std::size_t>(t.j)] += std::abs(t.coeff);
    min_coeff = std::min(min_coeff, std::abs(t.coeff));
  }
  const double max_delta = *std::max_element(delta.begin(), delta.end());
  if (max_delta == 0.0) return {0.1, 10.0};

  BetaRange range{std::log(2.0) / max_delta, std::log(1000.0) / std::max(min_coeff, 1e-9)};
  if (!(range.hot < range.cold)) range.cold = range.hot * 1000.0;
  return range;
}

SampleSet anneal(const Qubo& q, const AnnealParams& params) {
  if (params.num_reads < 1) throw InvalidArgument("num_reads must be positive");
  if (params.sweeps < 1) throw InvalidArgument("sweeps must be positive");
  if (q.num_variables() == 0) throw InvalidArgument("QUBO has no variables");

  const auto started = std::chrono::steady_clock::now();
  SampleSet out;
  out.params = params;
  out.beta_range = params.beta_range.value_or(auto_beta_range(q));
  if (!(out.beta_range.hot > 0.0 && out.beta_range.hot < out.beta_range.cold))
    throw InvalidArgument("beta range must satisfy 0 < hot < cold");

  const Couplings cpl(q);
  const auto betas = geometric_schedule(out.beta_range, params.sweeps);
  std::vector<std::optional<SampleRecord>> slots(static_cast<std::size_t>(params.num_reads));
  std::atomic<int> next{0};
  std::atomic<bool> expired{false};

  auto worker = [&] {
    for (;;) {
      const int read = next.fetch_add(1);
      if (read >= params.num_reads) return;
      // Read 0 always runs so the set is never empty.
      if (params.time_limit && read > 0) {
        const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - started;
        if (expired || spent.count() > *params.time_limit) {
          expired = true;
          return;
        }
      }
      slots[static_cast<std::size_t>(read)] = run_read(q, cpl, betas, params, read);
    }
  };

  int threads = params.threads > 0 ? params.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, params.num_reads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (auto& slot : slots)
    if (slot) out.records.push_back(std::move(*slot));
  out.truncated = expired && out.records.size() < static_cast<std::size_t>(params.num_reads);
  std::stable_sort(out.records.begin(), out.records.end(),
                   [](const SampleRecord& a, const SampleRecord& b) { return a.energy < b.energy; });
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

}  // namespace stsp
