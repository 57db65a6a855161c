#include "convcode/field.hpp"

#include <string>

namespace convcode {

bool ff_is_prime(std::uint32_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  std::uint32_t m = n;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31)) {
    throw ParameterError("modulus " + std::to_string(p) + " is not below 2^31");
  }
  if (!ff_is_prime(p)) {
    throw ParameterError("modulus " + std::to_string(p) + " is not prime");
  }
}

FieldElem PrimeField::elem(std::uint64_t v) const {
  return {static_cast<std::uint32_t>(v % p_), p_};
}

FieldElem PrimeField::elem_signed(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r), p_};
}

std::vector<FieldElem> PrimeField::elems(
    const std::vector<std::int64_t>& vs) const {
  std::vector<FieldElem> out;
  out.reserve(vs.size());
  for (std::int64_t v : vs) out.push_back(elem_signed(v));
  return out;
}

void check_same_field(const FieldElem& a, const FieldElem& b) {
  if (a.p != b.p) {
    throw FieldMismatchError("elements of F_" + std::to_string(a.p) +
                             " and F_" + std::to_string(b.p) + " mixed");
  }
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  check_same_field(a, b);
  std::uint32_t s = a.value + b.value;
  if (s >= a.p) s -= a.p;
  return {s, a.p};
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
  check_same_field(a, b);
  std::uint32_t s = a.value >= b.value ? a.value - b.value
                                       : a.value + a.p - b.value;
  return {s, a.p};
}

FieldElem operator-(const FieldElem& a) {
  return {a.value == 0 ? 0 : a.p - a.value, a.p};
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  check_same_field(a, b);
  std::uint64_t prod = static_cast<std::uint64_t>(a.value) * b.value;
  return {static_cast<std::uint32_t>(prod % a.p), a.p};
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) {
  return a * ff_inv(b);
}

FieldElem& operator+=(FieldElem& a, const FieldElem& b) { return a = a + b; }
FieldElem& operator-=(FieldElem& a, const FieldElem& b) { return a = a - b; }
FieldElem& operator*=(FieldElem& a, const FieldElem& b) { return a = a * b; }

FieldElem ff_inv(const FieldElem& a) {
  if (a.value == 0) {
    throw ParameterError("inverse of zero in F_" + std::to_string(a.p));
  }
  // Extended Euclid on (a.value, p); invariant r = s * a (mod p).
  std::int64_t r0 = a.value, r1 = a.p;
  std::int64_t s0 = 1, s1 = 0;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  std::int64_t inv = s0 % static_cast<std::int64_t>(a.p);
  if (inv < 0) inv += a.p;
  return {static_cast<std::uint32_t>(inv), a.p};
}

FieldElem ff_pow(const FieldElem& base, std::uint64_t exponent) {
  FieldElem result{base.p > 1 ? 1u : 0u, base.p};
  FieldElem b = base;
  std::uint64_t e = exponent;
  while (e > 0) {
    if (e & 1) result = result * b;
    b = b * b;
    e >>= 1;
  }
  return result;
}

FieldElem primitive_root(const PrimeField& field) {
  std::uint32_t p = field.modulus();
  if (p < 3) {
    throw ParameterError("primitive root requires modulus >= 3");
  }
  std::vector<std::uint32_t> factors = prime_factors(p - 1);
  for (std::uint32_t g = 2; g < p; ++g) {
    bool generates = true;
    for (std::uint32_t l : factors) {
      if (ff_pow(field.elem(g), (p - 1) / l).value == 1) {
        generates = false;
        break;
      }
    }
    if (generates) return field.elem(g);
  }
  throw Error("no primitive root found; modulus is not prime");
}

FieldElem subgroup_generator(const PrimeField& field, std::uint32_t order) {
  std::uint32_t p = field.modulus();
  if (order == 0) throw ParameterError("subgroup order must be positive");
  if ((p - 1) % order != 0) {
    throw DivisibilityError("subgroup order " + std::to_string(order) +
                            " does not divide " + std::to_string(p - 1));
  }
  if (order == 1) return field.one();
  return ff_pow(primitive_root(field), (p - 1) / order);
}

PrimeField find_modulus(std::uint32_t subgroup_order, std::uint64_t min_size,
                        std::uint64_t ceiling) {
  if (subgroup_order == 0) {
    throw ParameterError("subgroup order must be positive");
  }
  if (ceiling > (1ull << 31)) ceiling = 1ull << 31;
  std::uint64_t start = min_size < 2 ? 2 : min_size;
  for (std::uint64_t p = start; p < ceiling; ++p) {
    if (p % subgroup_order == 1 % subgroup_order &&
        ff_is_prime(static_cast<std::uint32_t>(p))) {
      return PrimeField(static_cast<std::uint32_t>(p));
    }
  }
  throw SearchLimitError("no prime p >= " + std::to_string(min_size) +
                         " with p = 1 mod " + std::to_string(subgroup_order) +
                         " below " + std::to_string(ceiling));
}

}  // namespace convcode
