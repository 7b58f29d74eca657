#pragma once

#include "planesearch/types.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace planesearch {

/// Named sub-streams derived from one trial or session seed.
enum class Stream : std::uint64_t {
  plane = 1,
  acquisition = 2,
  line = 3,
};

/// Seedable pseudo-random source. Independent streams are obtained by
/// hashing (seed, stream) through SplitMix64, so components that draw in
/// different orders never perturb each other.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);
  RandomSource(std::uint64_t seed, Stream stream)
      : RandomSource(seed, static_cast<std::uint64_t>(stream)) {}

  double uniform();  // [0,1)
  double uniform(double lo, double hi);
  double normal();
  Vector uniform_point(int dim);
  Vector normal_vector(int dim);
  std::uint64_t next_u64() { return engine_(); }

  /// Engine state as text, for session snapshots.
  std::string state() const;
  void set_state(const std::string& state);

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::mt19937_64 engine_;
};

}  // namespace planesearch
