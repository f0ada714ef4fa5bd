#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>

namespace sumsetlab {

/// The prime field Z/pZ. Construction rejects composite moduli, so a
/// PrimeField value always carries a prime; its additive order is p.
class PrimeField {
 public:
  static constexpr std::uint64_t kMaxModulus = 0xFFFFFFFFull;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const noexcept { return p_; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

/// Validating factory; throws Error{not_prime} or Error{out_of_range}.
PrimeField make_field(std::uint64_t p);

/// Deterministic trial division up to sqrt(n).
bool is_prime(std::uint64_t n) noexcept;

/// Element of a PrimeField, always stored as its canonical residue in [0, p).
class FieldElem {
 public:
  FieldElem(PrimeField field, std::int64_t value);

  const PrimeField& field() const noexcept { return field_; }
  std::uint64_t value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElem operator-() const;

  friend FieldElem operator+(const FieldElem& x, const FieldElem& y);
  friend FieldElem operator-(const FieldElem& x, const FieldElem& y);
  friend FieldElem operator*(const FieldElem& x, const FieldElem& y);

  FieldElem& operator+=(const FieldElem& y) { return *this = *this + y; }
  FieldElem& operator-=(const FieldElem& y) { return *this = *this - y; }
  FieldElem& operator*=(const FieldElem& y) { return *this = *this * y; }

  /// Multiplicative inverse; throws Error{division_by_zero} for 0.
  FieldElem inv() const;
  FieldElem pow(std::uint64_t e) const;

  friend bool operator==(const FieldElem&, const FieldElem&) = default;
  // Only meaningful within one field; used for sorted reports.
  friend auto operator<=>(const FieldElem& x, const FieldElem& y) {
    return x.value_ <=> y.value_;
  }

 private:
  FieldElem(PrimeField field, std::uint64_t canonical, int /*tag*/)
      : field_(field), value_(canonical) {}

  PrimeField field_;
  std::uint64_t value_;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& x);

}  // namespace sumsetlab
