#pragma once

#include <cstdint>
#include <random>

namespace gaudin {

/// Seeded generator whose draws are identical on every platform.
///
/// std::mt19937_64 output is fully specified; the standard distributions are
/// not, so uniform reals are formed from the top 53 bits directly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool coin(double p = 0.5) { return uniform() < p; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gaudin
