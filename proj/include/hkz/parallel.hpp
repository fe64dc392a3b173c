#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace hkz {

// Worker count: HKZ_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
inline unsigned WorkerCount() {
  if (char const* env = std::getenv("HKZ_THREADS")) {
    try {
      int const requested = std::stoi(env);
      if (requested > 0) return static_cast<unsigned>(requested);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, count) over `workers` threads with a static
// strided partition. Callers write results into per-index slots, so the
// outcome does not depend on scheduling. The first exception is rethrown.
template <typename Body>
void ParallelFor(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(
                                                         std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto const& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace hkz
