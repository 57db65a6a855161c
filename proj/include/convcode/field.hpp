#pragma once

#include <cstdint>
#include <vector>

#include "convcode/errors.hpp"

namespace convcode {

/// Residue mod p, stored in [0, p).  Each element carries its modulus so
/// that arithmetic between elements of different fields is rejected at
/// runtime with FieldMismatchError.
struct FieldElem {
  std::uint32_t value = 0;
  std::uint32_t p = 0;

  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

/// Prime field F_p with p an odd-or-2 prime below 2^31.  All intermediate
/// products fit in 64 bits.
class PrimeField {
 public:
  /// Throws ParameterError if p is not prime or not below 2^31.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }

  /// Reduces v mod p.
  FieldElem elem(std::uint64_t v) const;
  /// Reduces a possibly negative value mod p.
  FieldElem elem_signed(std::int64_t v) const;
  FieldElem zero() const { return {0, p_}; }
  FieldElem one() const { return {p_ > 1 ? 1u : 0u, p_}; }

  /// Builds a vector of elements from raw integers.
  std::vector<FieldElem> elems(const std::vector<std::int64_t>& vs) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.p_ == b.p_;
  }

 private:
  std::uint32_t p_;
};

/// Throws FieldMismatchError unless both elements share one modulus.
void check_same_field(const FieldElem& a, const FieldElem& b);

FieldElem operator+(const FieldElem& a, const FieldElem& b);
FieldElem operator-(const FieldElem& a, const FieldElem& b);
FieldElem operator-(const FieldElem& a);
FieldElem operator*(const FieldElem& a, const FieldElem& b);
/// Throws ParameterError on division by zero.
FieldElem operator/(const FieldElem& a, const FieldElem& b);

FieldElem& operator+=(FieldElem& a, const FieldElem& b);
FieldElem& operator-=(FieldElem& a, const FieldElem& b);
FieldElem& operator*=(FieldElem& a, const FieldElem& b);

/// Multiplicative inverse by the extended Euclidean algorithm.
/// Throws ParameterError on zero input.
FieldElem ff_inv(const FieldElem& a);

/// Square-and-multiply exponentiation; ff_pow(0, 0) == 1 by convention.
FieldElem ff_pow(const FieldElem& base, std::uint64_t exponent);

/// True if n is prime (deterministic trial division, n < 2^31).
bool ff_is_prime(std::uint32_t n);

/// Distinct prime factors of n in increasing order.
std::vector<std::uint32_t> prime_factors(std::uint32_t n);

/// Smallest generator of the multiplicative group F_p^*.  Candidates
/// g = 2, 3, ... are tested with g^((p-1)/l) for each prime factor l.
/// Requires p >= 3.
FieldElem primitive_root(const PrimeField& field);

/// Generator of the (unique) multiplicative subgroup of the given order,
/// computed as primitive_root^((p-1)/order).  Throws DivisibilityError
/// unless order divides p - 1.
FieldElem subgroup_generator(const PrimeField& field, std::uint32_t order);

/// Smallest prime p >= min_size with p == 1 (mod subgroup_order), scanned
/// upward and capped at `ceiling`; SearchLimitError past the cap.
PrimeField find_modulus(std::uint32_t subgroup_order, std::uint64_t min_size,
                        std::uint64_t ceiling = (1ull << 31));

}  // namespace convcode
