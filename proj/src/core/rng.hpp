#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "linalg.hpp"

namespace accompany {

// Seeded, stream-splittable RNG. Identical (seed, stream) always yields the
// identical draw sequence; distinct stream ids give decorrelated sequences.
// All variate generation is written out explicitly (no std::*_distribution)
// so that sequences are stable across standard library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream), engine_(mix(seed, stream)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // uniform on [0, 1)
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // standard normal via Box-Muller (no caching, for state simplicity)
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

  // Poisson by cdf inversion; adequate for the small rates used here
  std::uint64_t poisson(double rate) {
    if (rate <= 0.0) return 0;
    double u = uniform();
    double pmf = std::exp(-rate);
    double cdf = pmf;
    std::uint64_t k = 0;
    while (u >= cdf && k < 100000) {
      ++k;
      pmf *= rate / static_cast<double>(k);
      cdf += pmf;
    }
    return k;
  }

  // index draw from cumulative weights (nondecreasing, back() ~ 1)
  std::size_t categorical(const std::vector<double>& cumulative) {
    double u = uniform();
    std::size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (u < cumulative[mid])
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream * 0xA24BAED4963EE407ULL + 1));
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace accompany
