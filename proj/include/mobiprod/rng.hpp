#pragma once

// Portable random streams. std::mt19937_64 output is fixed by the standard,
// but the std:: distributions are not, so draws are built from raw bits here.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace mobiprod {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based seed derivation: mixes each key into the running state.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = 0x6a09e667f3bcc908ULL;
  for (std::uint64_t k : keys) h = splitmix64(h ^ splitmix64(k));
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe for -log().
  double uniform_open0() { return 1.0 - uniform(); }

  // Index drawn from a pmf by inversion; the last positive entry absorbs
  // accumulated rounding.
  int categorical(std::span<const double> pmf) {
    const double u = uniform();
    double acc = 0.0;
    int last = 0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      if (pmf[i] <= 0.0) continue;
      acc += pmf[i];
      last = static_cast<int>(i);
      if (u < acc) return last;
    }
    return last;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mobiprod
