#include "amsolve/field.hpp"

#include <string>

namespace amsolve {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 2 || p >= (1u << 31)) {
    throw Error("modulus " + std::to_string(p) + " outside [2, 2^31)");
  }
  if (!is_prime(p)) {
    throw Error("modulus " + std::to_string(p) + " is not prime");
  }
}

PrimeField::Elem PrimeField::pow(Elem a, std::uint64_t e) const noexcept {
  Elem result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

PrimeField::Elem PrimeField::inverse(Elem a) const {
  if (a.value == 0) throw ZeroInverseError();
  return pow(a, p_ - 2);
}

std::optional<PrimeField::Elem> PrimeField::sqrt(Elem a) const {
  if (a.value == 0) return zero();
  if (p_ == 2) return a;
  if (pow(a, (p_ - 1) / 2) != one()) return std::nullopt;
  if (p_ % 4 == 3) return pow(a, (p_ + 1) / 4);

  // Tonelli-Shanks: p - 1 = q * 2^s with q odd.
  std::uint32_t q = p_ - 1;
  std::uint32_t s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Elem z{2};
  while (pow(z, (p_ - 1) / 2) == one()) z.value++;
  Elem c = pow(z, q);
  Elem r = pow(a, (q + 1) / 2);
  Elem t = pow(a, q);
  std::uint32_t m = s;
  while (t != one()) {
    std::uint32_t i = 0;
    Elem t2 = t;
    while (t2 != one()) {
      t2 = mul(t2, t2);
      ++i;
    }
    Elem b = c;
    for (std::uint32_t k = 0; k + 1 < m - i; ++k) b = mul(b, b);
    r = mul(r, b);
    c = mul(b, b);
    t = mul(t, c);
    m = i;
  }
  return r;
}

}  // namespace amsolve
