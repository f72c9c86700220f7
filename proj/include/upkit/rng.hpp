#pragma once

#include <cstdint>
#include <random>

#include "upkit/field.hpp"

namespace upkit {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index * 0xd1b54a32d192ed03ULL));
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  Rng(uint64_t master, uint64_t index) : eng_(derive_seed(master, index)) {}

  uint64_t below(uint64_t n) { return std::uniform_int_distribution<uint64_t>(0, n - 1)(eng_); }
  bool coin() { return below(2) == 1; }
  Field::V elem(const Field& f) { return static_cast<Field::V>(below(f.q())); }
  Field::V nonzero(const Field& f) { return static_cast<Field::V>(1 + below(f.q() - 1)); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace upkit
