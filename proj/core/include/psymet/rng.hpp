#ifndef PSYMET_RNG_HPP
#define PSYMET_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace psymet {

// Seedable generator with fixed, documented transforms so generated fixtures
// are reproducible everywhere: mt19937_64 (bit-exact per the standard),
// uniforms from the top 53 bits, normals by Box-Muller (two draws per
// variate, cosine branch only), Bernoulli by threshold on one uniform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Strictly inside (0, 1).
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal(double mean = 0.0, double sd = 1.0) {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    return mean + sd * z;
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
};

}  // namespace psymet

#endif
