#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace esg {

/// Seed-derivation rule for reproducible simulation: substream `index` of a
/// run seeded with `seed` is an mt19937_64 seeded with
/// splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15). Every path (or
/// antithetic pair) owns one substream, so results do not depend on how
/// paths are chunked across threads.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t index);
  double next() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Runs body(begin, end) over [0, count) split into contiguous chunks, one
/// per worker. threads == 0 means hardware concurrency.
template <typename Body>
void parallel_chunks(std::size_t count, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads, std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    body(std::size_t{0}, count);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace esg
