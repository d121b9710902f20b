#pragma once

#include <cstdint>
#include <random>

namespace gpcm {

// Deterministic random source. The engine is std::mt19937_64 (fully
// specified by the standard) and all variate transforms are coded here
// rather than taken from <random> distributions, whose algorithms are
// implementation-defined. Streams are therefore reproducible across
// platforms and standard-library versions, which keeps generated data
// files and fit reports stable for a given seed.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for a (model, restart) cell of a sweep.
  static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; one spare value is cached.
  double gaussian();

  // Unit-rate exponential by inversion.
  double exponential();

  // Uniform integer on [0, bound), bound >= 1, without modulo bias.
  std::uint64_t integer(std::uint64_t bound);

private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gpcm
