#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace lrd::rng {

using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Counter-style stream derivation: hashes (base, path...) into a fresh seed so
// that every (cell, replication, sub-stream) tuple gets its own engine.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

inline Engine make_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return Engine(seq);
}

}  // namespace lrd::rng
