#pragma once

#include <cstdint>

namespace ergolab {

// Counter-based generator: the value at (seed, stream, counter) is a pure
// function of its key, so parallel sweeps over streams reproduce exactly
// regardless of scheduling. Mixing is the splitmix64 finalizer applied
// twice with the stream folded into the key.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))), counter_(0) {}

  std::uint64_t next() { return at(counter_++); }

  // Random access without disturbing the sequential counter.
  std::uint64_t at(std::uint64_t counter) const {
    return mix(key_ + counter * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform in [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t counter() const { return counter_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace ergolab
