// Times the OpenMP kernels against their serial reference implementations and
// checks that both return identical results. --quick shrinks the workloads for
// use as a smoke test.

#include "groupmms/experiment.hpp"
#include "groupmms/instance.hpp"
#include "groupmms/maximin.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>

using namespace groupmms;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Instance random_instance(std::mt19937_64& rng, std::vector<std::size_t> shape, std::size_t m) {
  std::uniform_int_distribution<int> dist(0, 100);
  std::vector<std::vector<UtilityVector>> groups;
  for (std::size_t n : shape) {
    std::vector<UtilityVector> grp;
    for (std::size_t a = 0; a < n; ++a) {
      UtilityVector u;
      for (std::size_t g = 0; g < m; ++g) u.emplace_back(dist(rng));
      grp.push_back(std::move(u));
    }
    groups.push_back(std::move(grp));
  }
  return Instance(m, std::move(groups));
}

int bench_best_ratio(bool quick) {
  std::size_t m = quick ? 12 : 18;
  std::mt19937_64 rng(7);
  Instance inst = random_instance(rng, {2, 2}, m);

  auto t0 = std::chrono::steady_clock::now();
  BestRatioResult serial = best_egalitarian_ratio_serial(inst);
  double serial_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  BestRatioResult parallel = best_egalitarian_ratio(inst);
  double parallel_s = seconds_since(t0);

  bool same = serial.best_ratio == parallel.best_ratio &&
              serial.allocation == parallel.allocation &&
              serial.mms_values == parallel.mms_values;
  std::printf("best-ratio scan  (2,2), m=%zu, %zu codes: serial %.0f ms, parallel %.0f ms, "
              "speedup %.2fx, results %s\n",
              m, checked_power(2, m), serial_s * 1e3, parallel_s * 1e3,
              parallel_s > 0 ? serial_s / parallel_s : 0.0, same ? "identical" : "DIFFER");
  return same ? 0 : 1;
}

int bench_experiment(bool quick) {
  ExperimentConfig config;
  config.shape = {3, 2};
  config.goods = 4;
  config.distribution = Distribution::uniform01;
  config.trials = quick ? 2000 : 50000;
  config.seed = 3;

  auto t0 = std::chrono::steady_clock::now();
  ExperimentTable serial = run_experiment_serial(config);
  double serial_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  ExperimentTable parallel = run_experiment(config);
  double parallel_s = seconds_since(t0);

  bool same = serial.counts == parallel.counts;
  std::printf("experiment       (3,2), %zu trials: serial %.0f ms, parallel %.0f ms, "
              "speedup %.2fx, counts %s\n",
              config.trials, serial_s * 1e3, parallel_s * 1e3,
              parallel_s > 0 ? serial_s / parallel_s : 0.0, same ? "identical" : "DIFFER");
  return same ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;
  }
  std::printf("threads: %d\n", omp_get_max_threads());
  int rc = 0;
  rc |= bench_best_ratio(quick);
  rc |= bench_experiment(quick);
  return rc;
}
