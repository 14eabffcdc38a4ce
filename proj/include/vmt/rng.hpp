#pragma once

#include <cstdint>
#include <random>

#include "vmt/core.hpp"

namespace vmt {

// Deterministic PRNG wrapper.  Double generation is done from raw 64-bit
// draws so that streams depend only on the seed, not on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    const std::uint64_t bits = gen_() >> 11;  // 53 random bits
    return static_cast<double>(bits) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  Vec unit_vector(int dim) {
    Vec v(dim);
    double n2 = 0.0;
    do {
      for (int i = 0; i < dim; ++i) v(i) = gaussian();
      n2 = v.squaredNorm();
    } while (n2 < 1e-24);
    return v / std::sqrt(n2);
  }

  // Uniform point in the ball of radius r around c.
  Vec in_ball(const Vec& c, double r) {
    const int dim = static_cast<int>(c.size());
    const double u = std::pow(uniform(), 1.0 / dim);
    return c + (r * u) * unit_vector(dim);
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace vmt
