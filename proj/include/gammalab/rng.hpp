#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace gammalab {

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, index), so parallel and serial evaluation orders
// produce bit-identical streams.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (0x6a09e667f3bcc909ULL + b));
}

// Derive a stream key from a seed and up to three stream coordinates.
inline std::uint64_t key(std::uint64_t seed, std::uint64_t s0,
                         std::uint64_t s1 = 0, std::uint64_t s2 = 0) {
  return mix(mix(mix(seed, s0), s1), s2);
}

// Uniform in (0,1), never exactly 0 or 1.
inline double uniform(std::uint64_t k, std::uint64_t ctr) {
  std::uint64_t bits = splitmix64(k ^ splitmix64(ctr + 0x2545f4914f6cdd1dULL));
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal via Box-Muller; draw i of stream k.
inline double gaussian(std::uint64_t k, std::uint64_t ctr) {
  const double u1 = uniform(k, 2 * ctr);
  const double u2 = uniform(k, 2 * ctr + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rng

// Fixed-order pairwise tree reduction; identical result for any thread
// schedule that preserves slot indices.
double pairwise_sum(const std::vector<double>& v);

// Mean and batch-means standard error (batch size 64 unless fewer samples).
struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};
MeanStderr batch_mean_stderr(const std::vector<double>& v, int batch = 64);

}  // namespace gammalab
