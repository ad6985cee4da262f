#include "qroute/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <random>
#include <stdexcept>

#include "qroute/placement.hpp"
#include "qroute/qasm.hpp"
#include "qroute/synthesis.hpp"

namespace qroute {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

namespace {

/// Explicit Fisher-Yates so shuffles are identical across standard libraries
/// (std::shuffle's draw sequence is implementation-defined).
template <typename T>
void shuffle_values(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng() % i]);
}

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

Stats population_stats(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  for (const double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (const double x : xs) var += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(xs.size()));
  return s;
}

void append_number(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace

Circuit gen_random_circuit(std::uint32_t n, double density, std::uint32_t timesteps,
                           std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_random_circuit: need at least 2 qubits");
  const std::uint32_t budget =
      static_cast<std::uint32_t>(density * static_cast<double>(n / 2));
  if (budget < 1)
    throw std::invalid_argument("gen_random_circuit: density yields no gates per slice");
  std::mt19937_64 rng(seed);
  Circuit c(n);
  std::vector<Qubit> order(n);
  for (std::uint32_t t = 0; t < timesteps; ++t) {
    for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    shuffle_values(order, rng);
    for (std::uint32_t g = 0; g < budget; ++g) c.cx(order[2 * g], order[2 * g + 1]);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Scaling experiments
// ---------------------------------------------------------------------------

std::vector<DepthScalingRow> depth_scaling_experiment(const Architecture& arch,
                                                      unsigned t_min, unsigned t_max,
                                                      unsigned samples, std::uint64_t seed,
                                                      const RoutingConfig& cfg) {
  if (t_min < 1 || t_max < t_min)
    throw std::invalid_argument("depth_scaling_experiment: bad timestep range");
  std::vector<DepthScalingRow> rows;
  for (unsigned t = t_min; t <= t_max; ++t) {
    std::vector<double> ratios;
    ratios.reserve(samples);
    for (unsigned i = 0; i < samples; ++i) {
      // Depends only on (seed, t, i): same-size architectures share circuits.
      const std::uint64_t circuit_seed = mix_seed(mix_seed(seed ^ t) ^ i);
      const Circuit c = gen_random_circuit(arch.node_count(), 1.0, t, circuit_seed);
      const auto slices = slice_timesteps(c);
      const Mapping start = initial_map(
          build_interaction_graph(slices, c.num_qubits()), arch);
      const RoutingResult r = route(c, arch, start, cfg);
      ratios.push_back(static_cast<double>(timestep_count(r.routed)) /
                       static_cast<double>(slices.size()));
    }
    const Stats s = population_stats(ratios);
    rows.push_back({arch.name(), t, s.mean, s.stddev, samples});
  }
  return rows;
}

SizeScalingRow size_scaling_point(const Architecture& arch, double density,
                                  unsigned samples, std::uint64_t seed,
                                  const RoutingConfig& cfg) {
  const std::uint32_t n = arch.node_count();
  std::vector<double> overhead;
  overhead.reserve(samples);
  for (unsigned i = 0; i < samples; ++i) {
    const std::uint64_t base = mix_seed(mix_seed(seed ^ n) ^ i);
    const Circuit c = gen_random_circuit(n, density, 1, mix_seed(base ^ 1));

    std::vector<Node> slots(n);
    for (std::uint32_t v = 0; v < n; ++v) slots[v] = v;
    std::mt19937_64 rng(mix_seed(base ^ 2));
    shuffle_values(slots, rng);
    Mapping start(n, n);
    for (Qubit q = 0; q < n; ++q) start.assign(q, slots[q]);

    const RoutingResult r = route(c, arch, start, cfg);
    const std::size_t in_steps = timestep_count(c);
    overhead.push_back(static_cast<double>(timestep_count(r.routed)) -
                       static_cast<double>(in_steps));
  }
  const Stats s = population_stats(overhead);
  return {arch.name(), n, density, s.mean, s.stddev, samples};
}

// ---------------------------------------------------------------------------
// Curve fits
// ---------------------------------------------------------------------------

namespace {

Fit fit_line(const std::vector<std::pair<double, double>>& xy) {
  const double n = static_cast<double>(xy.size());
  double sx = 0, sy = 0;
  for (const auto& [x, y] : xy) {
    sx += x;
    sy += y;
  }
  const double mean_x = sx / n;
  const double mean_y = sy / n;
  double sxx = 0, sxy = 0;  // centered sums: robust when abscissae cluster
  for (const auto& [x, y] : xy) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
  }
  if (sxx <= 1e-12) throw std::invalid_argument("fit: degenerate abscissae");
  Fit f;
  f.exponent = sxy / sxx;                                // slope
  f.coefficient = std::exp(mean_y - f.exponent * mean_x);  // exp(intercept)
  return f;
}

std::vector<std::pair<double, double>> to_log_space(
    const std::vector<std::pair<double, double>>& points, bool loglog_x) {
  if (points.size() < 3) throw std::invalid_argument("fit: need at least 3 points");
  std::vector<std::pair<double, double>> xy;
  xy.reserve(points.size());
  for (const auto& [x, y] : points) {
    if (x <= (loglog_x ? 1.0 : 0.0) || y <= 0.0)
      throw std::invalid_argument("fit: non-positive data");
    xy.emplace_back(loglog_x ? std::log(std::log(x)) : std::log(x), std::log(y));
  }
  return xy;
}

}  // namespace

Fit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  return fit_line(to_log_space(points, false));
}

Fit fit_polylog(const std::vector<std::pair<double, double>>& points) {
  return fit_line(to_log_space(points, true));
}

// ---------------------------------------------------------------------------
// Sorting-network baseline
// ---------------------------------------------------------------------------

std::vector<SwapRound> odd_even_sort_schedule(unsigned n) {
  if (n < 2) throw std::invalid_argument("odd_even_sort_schedule: need n >= 2");
  std::vector<SwapRound> rounds;
  rounds.reserve(n - 1);
  for (unsigned r = 0; r + 1 < n; ++r) {
    SwapRound round;
    for (unsigned i = (r % 2 == 0) ? 0u : 1u; i < n; i += 2) {
      const unsigned a = i;
      const unsigned b = (i + 1) % n;
      if (a == b) continue;                      // n == 1 guard, unreachable
      if (n % 2 == 1 && b == 0) continue;        // odd n: wrap collides with edge 0
      round.emplace_back(std::min(a, b), std::max(a, b));
    }
    rounds.push_back(std::move(round));
  }
  return rounds;
}

unsigned sort_baseline_overhead(unsigned n) {
  return static_cast<unsigned>(odd_even_sort_schedule(n).size());
}

// ---------------------------------------------------------------------------
// Realistic benchmark set
// ---------------------------------------------------------------------------

std::vector<BenchmarkRow> realistic_benchmark(const std::string& dir,
                                              const Architecture& arch,
                                              const RoutingConfig& cfg) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".qasm")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<BenchmarkRow> rows;
  rows.reserve(files.size());
  for (const fs::path& file : files) {
    BenchmarkRow row;
    row.name = file.stem().string();
    const auto start_time = std::chrono::steady_clock::now();
    try {
      const Circuit input = parse_qasm_file(file.string());
      if (input.num_qubits() > arch.node_count())
        throw std::invalid_argument("circuit wider than the architecture");
      row.g_in = cx_count(input);
      row.d_in = cx_depth(input);

      const Mapping start = initial_map(
          build_interaction_graph(slice_timesteps(input), input.num_qubits()), arch);
      const RoutingResult routed = route(input, arch, start, cfg);
      Circuit out = decompose_swaps(routed.routed, arch);
      if (arch.directed()) out = redirect_cnots(out, arch);
      out = cleanup(out);

      row.g_out = cx_count(out);
      row.d_out = cx_depth(out);
      row.r_d = row.d_in ? static_cast<double>(row.d_out) / static_cast<double>(row.d_in) : 1.0;
      row.r_c = row.g_in ? static_cast<double>(row.g_out) / static_cast<double>(row.g_in) : 1.0;
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                       start_time)
                 .count();
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV serialization
// ---------------------------------------------------------------------------

std::string depth_scaling_csv(const std::vector<DepthScalingRow>& rows) {
  std::string out = "arch,t,mean_R,std_R,samples\n";
  for (const auto& r : rows) {
    out += r.arch + ',' + std::to_string(r.timesteps) + ',';
    append_number(out, r.mean_r);
    out += ',';
    append_number(out, r.std_r);
    out += ',' + std::to_string(r.samples) + '\n';
  }
  return out;
}

std::string size_scaling_csv(const std::vector<SizeScalingRow>& rows) {
  std::string out = "arch,n,d,mean_N,std_N,samples\n";
  for (const auto& r : rows) {
    out += r.arch + ',' + std::to_string(r.n) + ',';
    append_number(out, r.density);
    out += ',';
    append_number(out, r.mean_n);
    out += ',';
    append_number(out, r.std_n);
    out += ',' + std::to_string(r.samples) + '\n';
  }
  return out;
}

std::string realistic_csv(const std::vector<BenchmarkRow>& rows) {
  std::string out = "name,g_in,d_in,g_out,d_out,R_D,R_C,ms\n";
  for (const auto& r : rows) {
    if (!r.ok) {
      std::string note = r.error;
      std::replace(note.begin(), note.end(), ',', ';');
      out += r.name + ",error:" + note + ",,,,,,\n";
      continue;
    }
    out += r.name + ',' + std::to_string(r.g_in) + ',' + std::to_string(r.d_in) + ',' +
           std::to_string(r.g_out) + ',' + std::to_string(r.d_out) + ',';
    append_number(out, r.r_d);
    out += ',';
    append_number(out, r.r_c);
    out += ',';
    append_number(out, r.ms);
    out += '\n';
  }
  return out;
}

}  // namespace qroute
