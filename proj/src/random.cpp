#include "esg/random.hpp"

namespace esg {

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t index)
    : engine_(substream_seed(seed, index)) {}

}  // namespace esg
