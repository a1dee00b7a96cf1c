#pragma once

// Counter-based random numbers: every draw is a pure function of
// (seed, counter), so streams can be split into disjoint blocks for
// parallel sampling and results are bit-reproducible regardless of
// worker count. The mixer is the splitmix64 finalizer applied twice.

#include <cstdint>
#include <vector>

namespace eqloc {

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t counter) const {
    std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ull * (counter + 1);
    z = mix(z);
    z = mix(z ^ (seed_ >> 1));
    return z;
  }

  // Uniform in [0, 1).
  double uniform(std::uint64_t counter) const {
    return double(bits(counter) >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform(counter);
  }

  // Standard normal pair via Box-Muller from counters (c, c+1).
  std::pair<double, double> normal_pair(std::uint64_t counter) const {
    double u1 = uniform(counter);
    double u2 = uniform(counter + 1);
    if (u1 < 1e-300) u1 = 1e-300;
    double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(6.283185307179586 * u2),
            r * std::sin(6.283185307179586 * u2)};
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }
  std::uint64_t seed_;
};

// Sequential convenience wrapper over the counter stream.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0, std::uint64_t start = 0)
      : rng_(seed), counter_(start) {}
  double uniform() { return rng_.uniform(counter_++); }
  double uniform(double lo, double hi) { return rng_.uniform(counter_++, lo, hi); }
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    auto [a, b] = rng_.normal_pair(counter_);
    counter_ += 2;
    spare_ = b;
    have_spare_ = true;
    return a;
  }

 private:
  CounterRng rng_;
  std::uint64_t counter_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace eqloc
