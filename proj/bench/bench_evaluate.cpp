// Times batch fitness evaluation, OpenMP against the serial reference, and
// checks that both produce the same fitness vectors.
//
//   bench_evaluate [batch_size] [repeats]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <omp.h>

#include "microevo/moea.hpp"

using namespace microevo;

int main(int argc, char** argv) {
  const int batch_size = argc > 1 ? std::atoi(argv[1]) : 16;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

  Rng rng(7);
  const auto suite = training_suite(rng);
  const Chromosome opponent = random_chromosome(rng);
  std::vector<Chromosome> batch;
  for (int i = 0; i < batch_size; ++i) batch.push_back(random_chromosome(rng));
  const SimConfig sim;

  using clock = std::chrono::steady_clock;
  auto time = [&](auto&& fn) {
    double best = 1e300;
    std::vector<FitnessVector> out;
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = clock::now();
      out = fn();
      best = std::min(best, std::chrono::duration<double>(clock::now() - t0).count());
    }
    return std::make_pair(best, out);
  };

  const auto [serial_s, serial] =
      time([&] { return evaluate_batch_serial(batch, opponent, suite, sim); });
  const auto [parallel_s, parallel] =
      time([&] { return evaluate_batch(batch, opponent, suite, sim); });

  const bool same = serial == parallel;
  std::cout << "threads " << omp_get_max_threads() << "\n"
            << "batch " << batch_size << " x " << suite.size() << " skirmishes\n"
            << "serial   " << serial_s << " s (" << serial_s / batch_size << " s/eval)\n"
            << "parallel " << parallel_s << " s (" << parallel_s / batch_size << " s/eval)\n"
            << "speedup  " << serial_s / parallel_s << "\n"
            << "identical " << (same ? "yes" : "NO") << "\n";
  return same ? 0 : 1;
}
