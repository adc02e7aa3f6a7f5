// Timing harness: single-point evaluation latency for both built-in models,
// and parallel vs serial sweep throughput on the success-rate surface.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "fuzzrisk/inference.hpp"
#include "fuzzrisk/models.hpp"
#include "fuzzrisk/surface.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  return xs[xs.size() / 2];
}

// Median single-evaluation latency over `rounds` batches of `batch` calls.
double time_eval(const fuzzrisk::Evaluator& evaluator, std::size_t arity, int rounds, int batch) {
  std::vector<double> inputs(arity, 0.0);
  std::vector<double> times;
  double sink = 0.0;
  for (int round = 0; round < rounds; ++round) {
    const auto start = Clock::now();
    for (int i = 0; i < batch; ++i) {
      // Walk the diagonal so successive calls see different firing patterns.
      const double x = static_cast<double>(i % 101) / 100.0;
      for (std::size_t j = 0; j < arity; ++j) inputs[j] = x;
      sink += evaluator.crisp(inputs);
    }
    times.push_back(seconds_since(start) / static_cast<double>(batch));
  }
  if (sink < -1.0) std::printf("unreachable %f\n", sink);  // keep the loop live
  return median(times);
}

double time_sweep(bool parallel, const fuzzrisk::FisDefinition& fis,
                  const fuzzrisk::SweepRequest& request, int rounds) {
  std::vector<double> times;
  for (int round = 0; round < rounds; ++round) {
    const auto start = Clock::now();
    const fuzzrisk::SweepResult result = parallel ? fuzzrisk::sweep(fis, request)
                                                  : fuzzrisk::sweep_serial(fis, request);
    times.push_back(seconds_since(start));
    if (result.values.empty()) std::printf("unreachable\n");
  }
  return median(times);
}

}  // namespace

int main(int argc, char** argv) {
  int steps = 201;
  int rounds = 5;
  CLI::App app{"fuzzrisk benchmark: single evaluations and sweep scaling"};
  app.add_option("--steps", steps, "Sweep samples per axis (default 201)")
      ->check(CLI::Range(2, 5000));
  app.add_option("--rounds", rounds, "Timing repetitions (median is reported)")
      ->check(CLI::Range(1, 100));
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::printf("OpenMP: enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP: not available in this build (parallel == serial path)\n");
#endif

  const fuzzrisk::Evaluator attacker(fuzzrisk::attacker_profile_fis());
  const fuzzrisk::Evaluator success(fuzzrisk::success_rate_fis());
  const double attacker_us = time_eval(attacker, 3, rounds, 2000) * 1e6;
  const double success_us = time_eval(success, 4, rounds, 2000) * 1e6;
  std::printf("single eval, attacker-profile (27 rules):     %8.2f us\n", attacker_us);
  std::printf("single eval, attack-success-rate (81 rules):  %8.2f us\n", success_us);

  fuzzrisk::SweepRequest request;
  request.axes = {"profile", "protection"};
  request.fixed = {{"vulnerabilities", 0.5}, {"restore_cost", 0.9}};
  request.steps = steps;

  const fuzzrisk::FisDefinition& fis = fuzzrisk::success_rate_fis();
  const double serial_s = time_sweep(false, fis, request, rounds);
  const double parallel_s = time_sweep(true, fis, request, rounds);
  const double points = static_cast<double>(steps) * static_cast<double>(steps);
  std::printf("sweep %dx%d (%d points), serial:   %8.1f ms  (%.2f us/point)\n", steps, steps,
              static_cast<int>(points), serial_s * 1e3, serial_s / points * 1e6);
  std::printf("sweep %dx%d (%d points), parallel: %8.1f ms  (%.2f us/point)\n", steps, steps,
              static_cast<int>(points), parallel_s * 1e3, parallel_s / points * 1e6);
  std::printf("parallel speedup: %.2fx\n", serial_s / parallel_s);
  return 0;
}
