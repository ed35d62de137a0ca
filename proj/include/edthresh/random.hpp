#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "edthresh/bigint.hpp"

namespace edthresh {

/// Source of random bytes injected into every randomized operation.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  Bytes bytes(std::size_t n) {
    Bytes out(n);
    fill(out);
    return out;
  }

  /// Uniform value in [0, bound); 64 extra bits keep the modular bias negligible.
  Int below(const Int& bound) {
    if (bound <= 0) throw std::invalid_argument("RandomSource::below: empty range");
    std::size_t len = (bit_length(bound) + 64 + 7) / 8;
    return mod(from_le(bytes(len)), bound);
  }
};

/// Operating-system entropy.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override {
    for (auto& b : out) b = static_cast<std::uint8_t>(dev_());
  }

 private:
  std::random_device dev_;
};

/// Reproducible stream for tests and replayable harness runs. Not for key material.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : gen_(seed) {}

  void fill(std::span<std::uint8_t> out) override {
    for (auto& b : out) b = static_cast<std::uint8_t>(gen_());
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace edthresh
