#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sumsetlab {

/// Exponent vector of a (Laurent) monomial; entries may be negative.
using ExpVec = std::vector<std::int64_t>;

std::int64_t total_degree(const ExpVec& e) noexcept;

/// Graded lexicographic order: total degree first, ties broken
/// lexicographically. Fixes the iteration order of every SparsePoly.
struct GrlexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const noexcept;
};

/// Sparse multivariate Laurent polynomial with arbitrary-precision integer
/// coefficients. Canonical at all times: no stored zero coefficient, every
/// exponent vector has length nvars().
class SparsePoly {
 public:
  using Term = std::pair<ExpVec, mpz_class>;
  using Terms = std::map<ExpVec, mpz_class, GrlexLess>;

  /// The zero polynomial in `nvars` variables.
  explicit SparsePoly(std::size_t nvars);

  static SparsePoly constant(std::size_t nvars, const mpz_class& c);
  static SparsePoly monomial(std::size_t nvars, ExpVec e,
                             const mpz_class& c = 1);
  /// x_i (0-based).
  static SparsePoly variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Coefficient of x^e, or 0 when absent.
  mpz_class coeff(const ExpVec& e) const;

  /// Componentwise minimum / maximum exponent over all terms (zeros for
  /// the zero polynomial).
  ExpVec min_exponents() const;
  ExpVec max_exponents() const;
  std::int64_t min_total_degree() const;
  std::int64_t max_total_degree() const;
  bool has_negative_exponents() const;

  /// x^d * P.
  SparsePoly shifted(const ExpVec& d) const;

  SparsePoly operator-() const;
  SparsePoly& operator+=(const SparsePoly& q);
  SparsePoly& operator-=(const SparsePoly& q);
  SparsePoly& operator*=(const SparsePoly& q);
  friend SparsePoly operator+(SparsePoly p, const SparsePoly& q) { return p += q; }
  friend SparsePoly operator-(SparsePoly p, const SparsePoly& q) { return p -= q; }
  friend SparsePoly operator*(const SparsePoly& p, const SparsePoly& q);

  friend bool operator==(const SparsePoly& p, const SparsePoly& q) {
    return p.nvars_ == q.nvars_ && p.terms_ == q.terms_;
  }

  /// Human-readable rendering, terms in descending grlex order, variables
  /// named x0, x1, ...
  std::string to_string() const;

 private:
  void check_vec(const ExpVec& e) const;
  void add_term(const ExpVec& e, const mpz_class& c);

  std::size_t nvars_;
  Terms terms_;
};

/// Canonicalizing constructor: duplicate exponents are summed and zero
/// coefficients dropped. Throws Error{length_mismatch}.
SparsePoly poly_from_terms(std::size_t nvars,
                           std::span<const SparsePoly::Term> terms);

SparsePoly poly_mul(const SparsePoly& p, const SparsePoly& q);
SparsePoly poly_pow(const SparsePoly& p, std::uint64_t e);
mpz_class coeff(const SparsePoly& p, const ExpVec& e);

/// One entry of a product staged for coefficient extraction: poly^repeat.
struct Factor {
  SparsePoly poly;
  std::uint64_t repeat = 1;
};

using FactorList = std::vector<Factor>;

/// Coefficient of x^target in the product of `factors`, computed without
/// expanding the full product. Factors are multiplied in order; after each
/// step a partial term is dropped as soon as it can no longer reach the
/// target, i.e. when some coordinate (or the total degree) plus the least
/// amount the remaining factors must still add already exceeds the target,
/// or plus the most they can add falls short of it.
///
/// Every factor must be an ordinary polynomial (no negative exponents);
/// throws Error{negative_exponent_input} otherwise, Error{length_mismatch}
/// when lengths disagree.
mpz_class targeted_coeff(const FactorList& factors, const ExpVec& target);

/// Constant term of a product of Laurent polynomials. Each factor is
/// multiplied by the smallest monomial that makes it a polynomial; the
/// constant term of the original product is then the coefficient of the
/// accumulated offset monomial in the cleared product.
mpz_class constant_term_laurent(const FactorList& factors);

}  // namespace sumsetlab
