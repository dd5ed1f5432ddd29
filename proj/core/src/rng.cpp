#include "credal/rng.hpp"

#include <cmath>

namespace credal {

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t state = mix64(master);
  for (std::uint64_t step : path) state = mix64(state ^ mix64(step + 0x632be59bd9b4e019ULL));
  return state;
}

double Rng::exponential() { return -std::log(uniform_pos()); }

}  // namespace credal
