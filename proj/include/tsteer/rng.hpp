#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace tsteer {

// Deterministic uniform generator. Raw mt19937_64 output is mapped to [0, 1)
// by hand because std::uniform_real_distribution is not guaranteed to produce
// identical streams across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return (eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("uniform bounds out of order");
    return lo + (hi - lo) * uniform();
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace tsteer
