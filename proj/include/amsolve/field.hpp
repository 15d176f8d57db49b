#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <optional>

#include "amsolve/errors.hpp"

namespace amsolve {

bool is_prime(std::uint64_t n) noexcept;

/// Element of Z_p, always the canonical representative in [0, p).
struct FieldElem {
  std::uint32_t value = 0;

  friend constexpr bool operator==(FieldElem, FieldElem) = default;
  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

/// The prime field Z_p used for every exact computation.
class PrimeField {
 public:
  using Elem = FieldElem;

  static constexpr std::uint32_t kDefaultModulus = 30011;

  /// Throws Error when p is not a prime in [2, 2^31).
  explicit PrimeField(std::uint32_t p = kDefaultModulus);

  std::uint32_t modulus() const noexcept { return p_; }

  Elem normalize(std::int64_t n) const noexcept {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Elem{static_cast<std::uint32_t>(r)};
  }

  Elem zero() const noexcept { return Elem{0}; }
  Elem one() const noexcept { return Elem{1}; }
  bool is_zero(Elem a) const noexcept { return a.value == 0; }

  Elem add(Elem a, Elem b) const noexcept {
    std::uint32_t s = a.value + b.value;
    return Elem{s >= p_ ? s - p_ : s};
  }
  Elem sub(Elem a, Elem b) const noexcept {
    return Elem{a.value >= b.value ? a.value - b.value : a.value + p_ - b.value};
  }
  Elem neg(Elem a) const noexcept {
    return Elem{a.value == 0 ? 0 : p_ - a.value};
  }
  Elem mul(Elem a, Elem b) const noexcept {
    return Elem{static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(a.value) * b.value % p_)};
  }
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  /// Fermat inverse a^(p-2). Throws ZeroInverseError for a = 0.
  Elem inverse(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inverse(b)); }

  /// Representative in (-p/2, p/2], used when lifting to the integers.
  std::int64_t symmetric(Elem a) const noexcept {
    return a.value > p_ / 2 ? static_cast<std::int64_t>(a.value) - p_
                            : static_cast<std::int64_t>(a.value);
  }

  /// A square root of a, if a is a quadratic residue (Tonelli-Shanks).
  std::optional<Elem> sqrt(Elem a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

/// Complex floating-point coefficients, same interface as PrimeField so
/// polynomial code is shared.
class ComplexField {
 public:
  using Elem = std::complex<double>;

  Elem zero() const noexcept { return {}; }
  Elem one() const noexcept { return {1.0, 0.0}; }
  // Exact test: only used to drop terms that cancel bit-exactly.
  bool is_zero(const Elem& a) const noexcept {
    return a.real() == 0.0 && a.imag() == 0.0;
  }
  Elem normalize(std::int64_t n) const noexcept {
    return {static_cast<double>(n), 0.0};
  }
  Elem add(const Elem& a, const Elem& b) const noexcept { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const noexcept { return a - b; }
  Elem neg(const Elem& a) const noexcept { return -a; }
  Elem mul(const Elem& a, const Elem& b) const noexcept { return a * b; }
  Elem inverse(const Elem& a) const { return 1.0 / a; }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }

  friend bool operator==(const ComplexField&, const ComplexField&) = default;
};

}  // namespace amsolve
