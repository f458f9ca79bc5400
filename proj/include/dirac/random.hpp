#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "dirac/algebra.hpp"

namespace dirac {

// SplitMix64 finalizer; used to derive independent stream seeds from a
// (seed, index) counter pair.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t index = 0) {
  return std::mt19937_64(mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

// Haar sample on U(2): Gram-Schmidt on two complex Gaussian columns, then a
// uniform global phase.
template <class Rng>
Mat2C haar_unitary(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  auto draw = [&] { return Complex(gauss(rng), gauss(rng)); };

  Vec2C c1{draw(), draw()};
  Vec2C c2{draw(), draw()};
  c1 = (1.0 / norm(c1)) * c1;
  c2 = c2 - inner(c1, c2) * c1;
  c2 = (1.0 / norm(c2)) * c2;

  const Complex phase = std::polar(1.0, angle(rng));
  return Mat2C{c1[0], c2[0], c1[1], c2[1]} * phase;
}

inline Mat2C haar_unitary(std::uint64_t seed, std::uint64_t index = 0) {
  auto rng = stream_for(seed, index);
  return haar_unitary(rng);
}

}  // namespace dirac
