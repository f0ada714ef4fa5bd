#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sumsetlab {

/// chi(l >= t): 1 if l >= t, else 0.
constexpr std::int64_t chi_ge(std::int64_t l, std::int64_t t) noexcept {
  return l >= t ? 1 : 0;
}

/// chi(l <= t).
constexpr std::int64_t chi_le(std::int64_t l, std::int64_t t) noexcept {
  return l <= t ? 1 : 0;
}

/// Parameters of the weighted constant-term identities. Variables are
/// x_0 (the distinguished one) and x_1..x_n.
struct IdentityParams {
  std::int64_t n = 1;
  std::int64_t s = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t m = 0;

  /// Throws Error{parameter_out_of_range} unless n >= 1, 0 <= s <= n and
  /// a, b, m >= 0.
  void validate() const;
};

/// Which factorial pair the +chi(l >= n-s) shift attaches to in the
/// factorial-product closed form. The shift follows whichever exponent
/// carries the +chi(l <= s) bump in the product; with the bump on the
/// (1 - x_l/x_0) exponent it sits next to `a`.
enum class ChiPlacement { with_a, with_b };

std::string to_string(ChiPlacement placement);

/// One brute-force-vs-closed-form comparison.
struct IdentityReport {
  std::string identity;
  std::vector<std::pair<std::string, std::int64_t>> params;
  mpz_class brute_value;
  mpz_class closed_value;
  bool agree = false;
  std::string note;
};

// -- Dyson family ----------------------------------------------------------

/// Constant term of prod_{i != j} (1 - x_i/x_j)^{a_j}, by expansion.
/// Throws Error{too_few_variables} for fewer than two entries.
mpz_class dyson_ct(std::span<const std::int64_t> avec);

/// (a_0 + ... + a_n)! / (a_0! ... a_n!).
mpz_class dyson_closed_form(std::span<const std::int64_t> avec);

/// Polynomial form of the same constant term: with N = avec.size() - 1,
///   (-1)^{sum_j j a_j} [prod_j x_j^{N a_j}] prod_{i<j} (x_i - x_j)^{a_i + a_j}.
/// Each x_j occurs in N of the pair factors, which is where the N a_j
/// target exponents come from.
mpz_class zeilberger_coeff(std::span<const std::int64_t> avec);

IdentityReport dyson_report(std::span<const std::int64_t> avec);
IdentityReport zeilberger_report(std::span<const std::int64_t> avec);

// -- Aomoto family ---------------------------------------------------------

/// Constant term of
///   prod_{l=1..n} (1 - x_l/x_0)^{a + chi(l<=s)} (1 - x_0/x_l)^b
///   * prod_{1<=i!=j<=n} (1 - x_i/x_j)^m
/// by expansion in n+1 variables.
mpz_class aomoto_ct(const IdentityParams& params);

/// prod_{l=0}^{n-1} (a+b+ml+c_l)! (ml+m)! / ((a+ml+c_l)! (ml+b)! m!) with
/// c_l = chi(l >= n-s), for ChiPlacement::with_a; with_b moves c_l from
/// (a+ml)! to (b+ml)!. Exact rational evaluation, integrality asserted.
mpz_class aomoto_closed_form(const IdentityParams& params,
                             ChiPlacement placement = ChiPlacement::with_a);

/// Closed form of f(a; b, s, m): the Aomoto product with the bump moved to
/// the (1 - x_0/x_l) exponent, i.e.
///   prod_{l=0}^{n-1} (a+b+ml+c_l)! (ml+m)! / ((ml+a)! (b+ml+c_l)! m!).
mpz_class f_absm(std::int64_t a, std::int64_t b, std::int64_t s,
                 std::int64_t m, std::int64_t n);

/// Constant term of
///   prod_{l=1..n} (1 - x_l/x_0)^a (1 - x_0/x_l)^{b + chi(l<=s)}
///   * prod_{1<=i!=j<=n} (1 - x_i/x_j)^m
/// by expansion; the brute-force counterpart of f_absm.
mpz_class f_absm_ct(std::int64_t a, std::int64_t b, std::int64_t s,
                    std::int64_t m, std::int64_t n);

IdentityReport aomoto_report(const IdentityParams& params,
                             ChiPlacement placement = ChiPlacement::with_a);

/// f_absm against aomoto_ct with a and b exchanged (inverting every
/// variable maps one product onto the other).
IdentityReport inversion_report(const IdentityParams& params);

// -- Leading coefficient in a_0 --------------------------------------------

struct LeadingCoeffReport {
  std::int64_t n = 0, s = 0, b = 0, m = 0, slack = 0;
  /// a_l = b + chi(l <= s), l = 1..n.
  std::vector<std::int64_t> exponents;
  /// D = a_1 + ... + a_n.
  std::int64_t degree = 0;
  /// f(a; b, s, m) for a = 0 .. D + slack, by expansion.
  std::vector<mpz_class> samples;
  /// Interpolant through the first D+1 samples, c_0 .. c_D.
  std::vector<mpq_class> interpolant;
  mpq_class leading;
  /// Constant term of (1/D!) (x_1+...+x_n)^D prod x_l^{-a_l}
  /// prod_{i!=j} (1 - x_i/x_j)^m.
  mpq_class expected_leading;
  /// Leading coefficient read off the factorial closed form:
  /// prod_l (ml+m)! / ((b+ml+c_l)! m!).
  mpq_class closed_form_leading;
  bool agree = false;
};

/// Samples f(a; b, s, m) at a = 0..D+slack, fits a degree-<=D polynomial
/// through the first D+1 points, and compares its degree-D coefficient to
/// the independently computed constant term. Throws
/// Error{interpolation_mismatch} if an extra sample is off the interpolant.
LeadingCoeffReport lemma22_check(std::int64_t n, std::int64_t s, std::int64_t b,
                            std::int64_t m, std::int64_t slack = 2);

// -- Key coefficient -------------------------------------------------------

/// Closed form for
///   [x_1^{k_1-1} ... x_n^{k_n-1}] prod_{i!=j} (x_i - x_j)^m
///       * (x_1 + ... + x_n)^{sum(k_j - 1) - mn(n-1)}
/// where s of the k_j equal k+1 and the rest equal k.
/// Throws Error{hypothesis_violated} unless k > m(n-1).
mpz_class prop21_coeff(std::int64_t n, std::int64_t m, std::int64_t k,
                       std::int64_t s);

/// The same coefficient for arbitrary sizes, by pruned expansion.
/// Throws Error{degree_infeasible} if sum(sizes_j - 1) < mn(n-1).
mpz_class key_coefficient(std::span<const std::int64_t> sizes, std::int64_t m);

/// Sizes vector with s entries k+1 followed by n-s entries k.
std::vector<std::int64_t> mixed_sizes(std::int64_t n, std::int64_t k,
                                      std::int64_t s);

IdentityReport prop21_report(std::int64_t n, std::int64_t m, std::int64_t k,
                             std::int64_t s);

}  // namespace sumsetlab
