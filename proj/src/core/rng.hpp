#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace hawkes {

// All randomness in the library flows from one root seed through named
// sub-streams: substream_seed(root, "simulate", k) etc. Every consumer owns
// its own generator, so results do not depend on evaluation order or on how
// work is split across threads.
uint64_t substream_seed(uint64_t root, std::string_view name, uint64_t index = 0);

// Thin wrapper over mt19937_64 with hand-rolled samplers. The raw 64-bit
// output of mt19937_64 is pinned by the standard; avoiding
// std::*_distribution keeps the streams identical across standard libraries.
class Rng {
public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log argument.
  double uniform01_open_low() { return 1.0 - uniform01(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double exponential(double rate) { return -std::log(uniform01_open_low()) / rate; }

  // Multiplicative jitter, log-uniform on [1/factor, factor].
  double log_uniform_factor(double factor) {
    return std::exp(uniform(-1.0, 1.0) * std::log(factor));
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace hawkes
