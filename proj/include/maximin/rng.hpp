#pragma once

#include <cstdint>
#include <limits>

namespace maximin {

// Counter-based 64-bit generator. Draw k of stream (seed, stream) is
//
//   key   = mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019))
//   out_k = mix64(key + (k + 1) * 0x9E3779B97F4A7C15)
//
// where mix64 is the SplitMix64 finalizer (Stafford variant 13). Every stream
// is addressable without generating the ones before it, so parallel work can
// take stream = task index and stay bit-identical to a sequential run.
// Uniform doubles take the top 53 bits; normals use Box-Muller.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next(); }

  std::uint64_t next();
  // Uniform on [0, 1).
  double uniform();
  // Uniform integer in [0, bound), unbiased.
  std::uint64_t below(std::uint64_t bound);
  double normal();

  // Independent generator for a sub-stream, derived from this one's seed.
  CounterRng split(std::uint64_t stream) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace maximin
