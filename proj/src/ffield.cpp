#include "sumsetlab/ffield.hpp"

#include <ostream>
#include <string>

#include "sumsetlab/error.hpp"

namespace sumsetlab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::not_prime: return "NotPrime";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::negative_exponent_input: return "NegativeExponentInput";
    case Errc::too_few_variables: return "TooFewVariables";
    case Errc::parameter_out_of_range: return "ParameterOutOfRange";
    case Errc::non_integer_result: return "NonIntegerResult";
    case Errc::interpolation_mismatch: return "InterpolationMismatch";
    case Errc::hypothesis_violated: return "HypothesisViolated";
    case Errc::degree_infeasible: return "DegreeInfeasible";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::cannot_satisfy_hypothesis: return "CannotSatisfyHypothesis";
    case Errc::not_in_shrink_regime: return "NotInShrinkRegime";
    case Errc::invalid_instance: return "InvalidInstance";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 2 || p > kMaxModulus) {
    throw Error(Errc::out_of_range,
                "modulus " + std::to_string(p) + " outside [2, 2^32)");
  }
  if (!is_prime(p)) {
    throw Error(Errc::not_prime, std::to_string(p) + " is composite");
  }
}

PrimeField make_field(std::uint64_t p) { return PrimeField(p); }

namespace {

void require_same_field(const FieldElem& x, const FieldElem& y) {
  if (x.field() != y.field()) {
    throw Error(Errc::field_mismatch,
                "operands in Z/" + std::to_string(x.field().modulus()) +
                    "Z and Z/" + std::to_string(y.field().modulus()) + "Z");
  }
}

}  // namespace

FieldElem::FieldElem(PrimeField field, std::int64_t value) : field_(field) {
  const auto p = static_cast<std::int64_t>(field.modulus());
  std::int64_t r = value % p;
  if (r < 0) r += p;
  value_ = static_cast<std::uint64_t>(r);
}

FieldElem FieldElem::operator-() const {
  const auto p = field_.modulus();
  return FieldElem(field_, value_ == 0 ? 0 : p - value_, 0);
}

FieldElem operator+(const FieldElem& x, const FieldElem& y) {
  require_same_field(x, y);
  const auto p = x.field_.modulus();
  auto s = x.value_ + y.value_;
  if (s >= p) s -= p;
  return FieldElem(x.field_, s, 0);
}

FieldElem operator-(const FieldElem& x, const FieldElem& y) {
  require_same_field(x, y);
  const auto p = x.field_.modulus();
  return FieldElem(x.field_, x.value_ >= y.value_ ? x.value_ - y.value_
                                                  : x.value_ + p - y.value_,
                   0);
}

FieldElem operator*(const FieldElem& x, const FieldElem& y) {
  require_same_field(x, y);
  // p < 2^32, so the product fits in 64 bits.
  return FieldElem(x.field_, (x.value_ * y.value_) % x.field_.modulus(), 0);
}

FieldElem FieldElem::pow(std::uint64_t e) const {
  FieldElem result(field_, 1 % field_.modulus(), 0);
  FieldElem base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

FieldElem FieldElem::inv() const {
  if (value_ == 0) {
    throw Error(Errc::division_by_zero, "inverse of 0 in Z/" +
                                            std::to_string(field_.modulus()) +
                                            "Z");
  }
  // Extended Euclid on (value, p).
  std::int64_t r0 = static_cast<std::int64_t>(field_.modulus());
  std::int64_t r1 = static_cast<std::int64_t>(value_);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  return FieldElem(field_, t0);
}

std::ostream& operator<<(std::ostream& os, const FieldElem& x) {
  return os << x.value();
}

}  // namespace sumsetlab
