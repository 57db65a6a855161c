#pragma once

#include <cstdint>
#include <vector>

#include "convcode/field.hpp"

namespace convcode {

/// splitmix64 stream.  Deterministic across platforms; used wherever a
/// reproducible pseudo-random message or point is needed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Next output reduced into the field.
  FieldElem next_elem(const PrimeField& field) { return field.elem(next()); }

  /// Vector of n successive reduced outputs.
  std::vector<FieldElem> next_vector(const PrimeField& field, std::size_t n) {
    std::vector<FieldElem> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(next_elem(field));
    return out;
  }

 private:
  std::uint64_t state_;
};

}  // namespace convcode
