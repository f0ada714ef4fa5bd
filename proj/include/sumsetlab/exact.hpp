#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace sumsetlab {

mpz_class factorial(std::int64_t n);

/// Returns q as an integer; throws Error{non_integer_result} naming `what`
/// when q has a nontrivial denominator.
mpz_class require_integral(const mpq_class& q, std::string_view what);

/// Monomial-basis coefficients (c_0, ..., c_d) of the unique polynomial of
/// degree <= d through (0, y_0), (1, y_1), ..., (d, y_d). Exact Lagrange
/// interpolation over Q.
std::vector<mpq_class> interpolate_at_integers(std::span<const mpq_class> ys);

/// Horner evaluation of sum_i c_i x^i.
mpq_class evaluate(std::span<const mpq_class> coeffs, const mpq_class& x);

}  // namespace sumsetlab
