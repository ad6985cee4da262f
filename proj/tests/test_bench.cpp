#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "qroute/bench.hpp"

using namespace qroute;

namespace {

// Applies one comparator round: the smaller value ends at the lower position.
void apply_round(std::vector<unsigned>& values, const SwapRound& round) {
  for (const auto& [a, b] : round)
    if (values[a] > values[b]) std::swap(values[a], values[b]);
}

bool schedule_sorts_everything(unsigned n) {
  const auto schedule = odd_even_sort_schedule(n);
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  do {
    std::vector<unsigned> values = perm;
    for (const SwapRound& round : schedule) apply_round(values, round);
    if (!std::is_sorted(values.begin(), values.end())) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

}  // namespace

TEST_CASE("seed mixing is deterministic and spreads inputs") {
  CHECK(mix_seed(1) == mix_seed(1));
  CHECK(mix_seed(1) != mix_seed(2));
  CHECK(mix_seed(0) != 0);
}

TEST_CASE("random circuits have the requested shape") {
  const Circuit tiny = gen_random_circuit(4, 1.0, 1, 7);
  CHECK(tiny.size() == 2);  // floor(1.0 * 4/2) gates in the single slice
  for (const Gate& g : tiny.gates()) CHECK(g.kind == GateKind::CX);
  const auto slices = slice_timesteps(tiny);
  REQUIRE(slices.size() == 1);
  CHECK(slices[0].size() == 2);

  const Circuit big = gen_random_circuit(64, 1.0, 10, 99);
  CHECK(big.size() == 320);
  CHECK(timestep_count(big) == 10);  // full-density slices cannot merge
  for (const Timestep& s : slice_timesteps(big)) CHECK(s.size() == 32);

  CHECK(gen_random_circuit(5, 1.0, 3, 1).size() == 6);  // floor(5/2) = 2 per slice

  CHECK(gen_random_circuit(8, 1.0, 5, 42) == gen_random_circuit(8, 1.0, 5, 42));
  CHECK_FALSE(gen_random_circuit(8, 1.0, 5, 42) == gen_random_circuit(8, 1.0, 5, 43));

  CHECK_THROWS_AS(gen_random_circuit(4, 0.4, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_random_circuit(1, 1.0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_random_circuit(3, 0.9, 1, 0), std::invalid_argument);
}

TEST_CASE("power-law fits recover exact relationships") {
  const Fit linear = fit_power_law({{10, 2.5}, {20, 5.0}, {40, 10.0}});
  CHECK(linear.coefficient == Approx(0.25));
  CHECK(linear.exponent == Approx(1.0));

  const Fit sqrt_fit = fit_power_law({{4, 4}, {9, 6}, {16, 8}, {25, 10}});
  CHECK(sqrt_fit.coefficient == Approx(2.0));
  CHECK(sqrt_fit.exponent == Approx(0.5));

  CHECK_THROWS_AS(fit_power_law({{1, 1}, {2, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_power_law({{1, 1}, {2, 0.0}, {3, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_power_law({{2, 1}, {2, 2}, {2, 3}}), std::invalid_argument);
}

TEST_CASE("polylog fits recover exact relationships") {
  std::vector<std::pair<double, double>> points;
  for (const double k : {1.0, 2.0, 3.0, 4.0})
    points.emplace_back(std::exp(k), 1.5 * std::pow(k, 2.72));
  const Fit f = fit_polylog(points);
  CHECK(f.coefficient == Approx(1.5));
  CHECK(f.exponent == Approx(2.72));

  CHECK_THROWS_AS(fit_polylog({{1.0, 1}, {2, 2}, {3, 3}}), std::invalid_argument);
}

TEST_CASE("a noisy square-root law is still recovered") {
  std::vector<std::pair<double, double>> points;
  for (int i = 0; i < 12; ++i) {
    const double x = 10.0 + 10.0 * i;
    const double wiggle = (i % 2 == 0) ? 1.04 : 0.96;
    points.emplace_back(x, 3.0 * std::pow(x, 0.58) * wiggle);
  }
  const Fit f = fit_power_law(points);
  CHECK(f.exponent == Approx(0.58).margin(0.02));
}

TEST_CASE("odd-even transposition schedule shape") {
  const auto s8 = odd_even_sort_schedule(8);
  REQUIRE(s8.size() == 7);
  CHECK(s8[0] == SwapRound{{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  CHECK(s8[1] == SwapRound{{1, 2}, {3, 4}, {5, 6}, {0, 7}});
  CHECK(s8[2] == s8[0]);
  for (const SwapRound& round : s8)
    for (const auto& [a, b] : round)
      CHECK((b - a == 1 || (a == 0 && b == 7)));  // ring edges only

  CHECK(odd_even_sort_schedule(2) == std::vector<SwapRound>{{{0, 1}}});
  CHECK_THROWS_AS(odd_even_sort_schedule(1), std::invalid_argument);

  // Odd n: the wrap comparator would collide with edge (0,1) and is dropped.
  const auto s5 = odd_even_sort_schedule(5);
  REQUIRE(s5.size() == 4);
  CHECK(s5[0] == SwapRound{{0, 1}, {2, 3}});
  CHECK(s5[1] == SwapRound{{1, 2}, {3, 4}});

  CHECK(sort_baseline_overhead(8) == 7);
  CHECK(sort_baseline_overhead(2) == 1);
}

TEST_CASE("the schedule sorts every permutation for even n") {
  CHECK(schedule_sorts_everything(2));
  CHECK(schedule_sorts_everything(4));
  CHECK(schedule_sorts_everything(6));
}

TEST_CASE("depth scaling on a complete graph is overhead free") {
  const Architecture k4 = Architecture::complete(4);
  const auto rows = depth_scaling_experiment(k4, 2, 4, 3, 9);
  REQUIRE(rows.size() == 3);
  for (unsigned i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].arch == k4.name());
    CHECK(rows[i].timesteps == 2 + i);
    CHECK(rows[i].samples == 3);
    CHECK(rows[i].mean_r == 1.0);
    CHECK(rows[i].std_r == 0.0);
  }
  CHECK_THROWS_AS(depth_scaling_experiment(k4, 3, 2, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(depth_scaling_experiment(k4, 0, 2, 1, 0), std::invalid_argument);
}

TEST_CASE("size scaling on a complete graph has zero overhead") {
  const SizeScalingRow row = size_scaling_point(Architecture::complete(6), 1.0, 4, 5);
  CHECK(row.arch == Architecture::complete(6).name());
  CHECK(row.n == 6);
  CHECK(row.density == 1.0);
  CHECK(row.samples == 4);
  CHECK(row.mean_n == 0.0);
  CHECK(row.std_n == 0.0);
}

TEST_CASE("experiments are reproducible per seed") {
  const Architecture ring = Architecture::ring(6);
  const auto a = depth_scaling_experiment(ring, 2, 3, 4, 77);
  const auto b = depth_scaling_experiment(ring, 2, 3, 4, 77);
  CHECK(depth_scaling_csv(a) == depth_scaling_csv(b));

  const SizeScalingRow x = size_scaling_point(ring, 1.0, 5, 13);
  const SizeScalingRow y = size_scaling_point(ring, 1.0, 5, 13);
  CHECK(x.mean_n == y.mean_n);
  CHECK(x.std_n == y.std_n);
  CHECK(x.mean_n >= 0.0);  // a ring cannot beat its input depth
}

TEST_CASE("CSV output is pinned") {
  CHECK(depth_scaling_csv({{"ring:4", 3, 1.5, 0.25, 10}}) ==
        "arch,t,mean_R,std_R,samples\nring:4,3,1.5,0.25,10\n");

  CHECK(size_scaling_csv({{"grid:3", 9, 1.0, 2.5, 0.5, 7}}) ==
        "arch,n,d,mean_N,std_N,samples\ngrid:3,9,1,2.5,0.5,7\n");

  BenchmarkRow ok;
  ok.name = "foo";
  ok.ok = true;
  ok.g_in = 2;
  ok.d_in = 2;
  ok.g_out = 5;
  ok.d_out = 6;
  ok.r_d = 3.0;
  ok.r_c = 2.5;
  ok.ms = 1.5;
  BenchmarkRow bad;
  bad.name = "bad";
  bad.error = "x, y";
  CHECK(realistic_csv({ok, bad}) ==
        "name,g_in,d_in,g_out,d_out,R_D,R_C,ms\n"
        "foo,2,2,5,6,3,2.5,1.5\n"
        "bad,error:x; y,,,,,,\n");
}

TEST_CASE("realistic benchmark walks a directory") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qroute_bench_test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  std::ofstream(dir / "a.qasm") << "OPENQASM 2.0;\n"
                                   "include \"qelib1.inc\";\n"
                                   "qreg q[2];\n"
                                   "cx q[0],q[1];\n";
  std::ofstream(dir / "b.qasm") << "OPENQASM 2.0;\n"
                                   "include \"qelib1.inc\";\n"
                                   "qreg q[3];\n"
                                   "ccx q[0],q[1],q[2];\n";
  std::ofstream(dir / "notes.txt") << "not a circuit\n";

  const auto rows = realistic_benchmark(dir.string(), Architecture::ring(4));
  fs::remove_all(dir);

  REQUIRE(rows.size() == 2);
  CHECK(rows[0].name == "a");
  CHECK(rows[0].ok);
  CHECK(rows[0].g_in == 1);
  CHECK(rows[0].d_in == 1);
  CHECK(rows[0].g_out == 1);
  CHECK(rows[0].d_out == 1);
  CHECK(rows[0].r_d == 1.0);
  CHECK(rows[0].r_c == 1.0);
  CHECK(rows[0].ms >= 0.0);

  CHECK(rows[1].name == "b");
  CHECK_FALSE(rows[1].ok);
  CHECK_FALSE(rows[1].error.empty());
}
