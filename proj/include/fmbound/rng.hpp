#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace fmbound {

// Deterministic random stream addressed by (seed, stream). Uniforms come
// straight from the mt19937_64 bit stream and normals from Box-Muller, so
// the sequence does not depend on standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    gen_.seed(seq);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // Standard complex normal: E|z|^2 = 1.
  std::complex<double> complex_normal() {
    return {normal() * M_SQRT1_2, normal() * M_SQRT1_2};
  }

  std::complex<double> unit_phase() {
    const double angle = 2.0 * M_PI * uniform();
    return {std::cos(angle), std::sin(angle)};
  }

  bool coin() { return (gen_() & 1u) != 0; }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fmbound
