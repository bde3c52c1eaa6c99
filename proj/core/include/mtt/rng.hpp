#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace mtt {

// Deterministic random stream derived from a tournament seed and a decision
// name. Every random decision point in the engine owns a named stream, so a
// decision never depends on how much randomness an unrelated one consumed.
//
// Bounded draws use rejection sampling on the raw 64-bit output instead of
// std::uniform_int_distribution, whose algorithm differs between standard
// libraries.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view name);

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  static std::uint64_t derive(std::uint64_t seed, std::string_view name);

 private:
  std::mt19937_64 engine_;
};

}  // namespace mtt
