#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qroute/architecture.hpp"
#include "qroute/circuit.hpp"
#include "qroute/router.hpp"

namespace qroute {

/// SplitMix64 step; used to derive independent per-sample seeds from a master
/// seed so parallel or reordered runs cannot change results.
std::uint64_t mix_seed(std::uint64_t x);

/// Random circuit of `timesteps` slices, each holding floor(density*floor(n/2))
/// CX gates on uniformly random disjoint qubit pairs. No single-qubit gates.
/// Deterministic per seed. Throws std::invalid_argument when the per-slice
/// gate budget is zero (density too low) or n < 2.
Circuit gen_random_circuit(std::uint32_t n, double density, std::uint32_t timesteps,
                           std::uint64_t seed);

// ---------------------------------------------------------------------------
// Scaling experiments
// ---------------------------------------------------------------------------

struct DepthScalingRow {
  std::string arch;
  unsigned timesteps = 0;  ///< input slice count t
  double mean_r = 0.0;     ///< mean of output/input timestep ratio R
  double std_r = 0.0;      ///< population standard deviation of R
  unsigned samples = 0;
};

/// Routes `samples` random circuits (density 1, `t` slices, circuit width =
/// node count) per t in [t_min, t_max], with the placement heuristic on.
/// Circuit seeds depend only on (master seed, t, sample index), so
/// architectures of equal size share the exact same circuit sets.
std::vector<DepthScalingRow> depth_scaling_experiment(const Architecture& arch,
                                                      unsigned t_min, unsigned t_max,
                                                      unsigned samples, std::uint64_t seed,
                                                      const RoutingConfig& cfg = {});

struct SizeScalingRow {
  std::string arch;
  std::uint32_t n = 0;  ///< node count
  double density = 0.0;
  double mean_n = 0.0;  ///< mean timestep overhead N = out - in
  double std_n = 0.0;
  unsigned samples = 0;
};

/// Routes `samples` single-slice random circuits of width = node count from a
/// fresh uniformly random complete initial mapping each (placement heuristic
/// bypassed) and aggregates the timestep overhead N.
SizeScalingRow size_scaling_point(const Architecture& arch, double density,
                                  unsigned samples, std::uint64_t seed,
                                  const RoutingConfig& cfg = {});

// ---------------------------------------------------------------------------
// Curve fits
// ---------------------------------------------------------------------------

struct Fit {
  double coefficient = 0.0;
  double exponent = 0.0;
};

/// Least-squares fit of y = coefficient * x^exponent in log-log coordinates.
/// Throws std::invalid_argument for fewer than 3 points or non-positive data.
Fit fit_power_law(const std::vector<std::pair<double, double>>& points);

/// Least-squares fit of y = coefficient * ln(x)^exponent in log-loglog
/// coordinates (x > 1 required). Same error conditions as fit_power_law.
Fit fit_polylog(const std::vector<std::pair<double, double>>& points);

// ---------------------------------------------------------------------------
// Sorting-network baseline (ring)
// ---------------------------------------------------------------------------

using SwapRound = std::vector<std::pair<unsigned, unsigned>>;

/// Cyclic odd-even transposition schedule on ring(n): n-1 rounds, round r
/// compares every ring edge (i, i+1 mod n) with even i when r is even, odd i
/// otherwise; each comparator puts the smaller value at the lower position.
/// For even n the schedule provably sorts every permutation. (For odd n the
/// wrap edge collides with edge 0 and is dropped in its rounds; sorting then
/// needs n rounds in the worst case, so the guarantee applies to even n.)
std::vector<SwapRound> odd_even_sort_schedule(unsigned n);

/// Timestep overhead of routing an arbitrary permutation on ring(n) with the
/// schedule above: n - 1.
unsigned sort_baseline_overhead(unsigned n);

// ---------------------------------------------------------------------------
// Realistic benchmark set
// ---------------------------------------------------------------------------

struct BenchmarkRow {
  std::string name;
  bool ok = false;
  std::string error;     ///< parse/route failure, empty when ok
  std::size_t g_in = 0;  ///< input CX count
  std::size_t d_in = 0;  ///< input CX depth
  std::size_t g_out = 0;
  std::size_t d_out = 0;
  double r_d = 0.0;  ///< d_out/d_in (1 when d_in = 0)
  double r_c = 0.0;  ///< g_out/g_in (1 when g_in = 0)
  double ms = 0.0;   ///< wall time of the full pipeline
};

/// Runs the full pipeline (place, route, decompose swaps, redirect CNOTs on
/// directed architectures, cleanup) on every .qasm file in `dir`, sorted by
/// file name. Per-file failures are reported in the row and do not stop the
/// run.
std::vector<BenchmarkRow> realistic_benchmark(const std::string& dir,
                                              const Architecture& arch,
                                              const RoutingConfig& cfg = {});

// ---------------------------------------------------------------------------
// CSV serialization (deterministic; doubles use shortest round-trip form)
// ---------------------------------------------------------------------------

std::string depth_scaling_csv(const std::vector<DepthScalingRow>& rows);
std::string size_scaling_csv(const std::vector<SizeScalingRow>& rows);
std::string realistic_csv(const std::vector<BenchmarkRow>& rows);

}  // namespace qroute
