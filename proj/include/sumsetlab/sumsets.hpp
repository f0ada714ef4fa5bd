#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sumsetlab/ffield.hpp"

namespace sumsetlab {

using Residues = std::vector<std::uint64_t>;

/// Default number of tuples an enumeration may visit.
inline constexpr std::uint64_t kDefaultTupleBudget = 10'000'000;

/// kDefaultTupleBudget, or the value of SUMSETLAB_BUDGET when set.
std::uint64_t default_tuple_budget();

/// Sets A_1..A_n of Z/pZ together with the forbidden difference sets S_ij
/// for every ordered pair i != j. Residues are canonical and sorted.
class SumsetInstance {
 public:
  using ForbiddenMap = std::map<std::pair<std::size_t, std::size_t>, Residues>;

  /// `forbidden` is keyed by 0-based (i, j); pairs not present get the
  /// empty set. Throws Error{invalid_instance} on out-of-range residues,
  /// repeated elements, empty sets or bad keys.
  SumsetInstance(PrimeField field, std::vector<Residues> sets,
                 const ForbiddenMap& forbidden = {});

  /// Every S_ij equal to `forbidden`.
  static SumsetInstance uniform(PrimeField field, std::vector<Residues> sets,
                                const Residues& forbidden);

  const PrimeField& field() const noexcept { return field_; }
  std::uint64_t p() const noexcept { return field_.modulus(); }
  std::size_t n() const noexcept { return sets_.size(); }
  const std::vector<Residues>& sets() const noexcept { return sets_; }
  const Residues& forbidden(std::size_t i, std::size_t j) const;

  std::vector<std::int64_t> sizes() const;
  /// Common |A_j|, if all sizes agree.
  std::optional<std::int64_t> uniform_k() const;
  /// Common |S_ij|, if all forbidden sets have the same size (0 when n = 1).
  std::optional<std::int64_t> uniform_m() const;

  friend bool operator==(const SumsetInstance&, const SumsetInstance&) = default;

 private:
  PrimeField field_;
  std::vector<Residues> sets_;
  // forbidden_[i][j]; the diagonal stays empty.
  std::vector<std::vector<Residues>> forbidden_;
};

/// The restricted sumset { a_1 + ... + a_n : a_j in A_j, a_i - a_j not in
/// S_ij for i != j }, in ascending order. Depth-first over the product with
/// each pair constraint checked as soon as both coordinates are fixed.
/// Throws Error{budget_exceeded} if prod |A_j| exceeds `tuple_budget`.
std::vector<FieldElem> enumerate_restricted_sumset(
    const SumsetInstance& inst, std::uint64_t tuple_budget = default_tuple_budget());

// -- Bound formulas --------------------------------------------------------

std::int64_t cauchy_davenport_bound(std::span<const std::int64_t> sizes);
/// n|A| - n^2 + 1
std::int64_t distinct_summands_bound(std::int64_t n, std::int64_t set_size);
/// sum_j (k_j - j) + 1 over the sizes sorted increasingly.
std::int64_t distinct_increasing_bound(std::span<const std::int64_t> sizes);
/// n floor((p-1)/n) + 1
std::int64_t hou_sun_fallback_bound(std::uint64_t p, std::int64_t n);

struct BoundCheck {
  /// Formula value; nullopt when the formula needs uniformity the instance
  /// lacks.
  std::optional<std::int64_t> bound;
  bool hypothesis = false;
  std::string reason;
  std::string formula;
};

struct BoundReport {
  std::uint64_t p = 0;
  std::int64_t n = 0;
  std::vector<std::int64_t> sizes;
  std::optional<std::int64_t> k;
  std::optional<std::int64_t> m;
  /// Filled by compute_bounds; evaluate_bounds leaves these empty.
  std::optional<std::vector<std::uint64_t>> sumset;
  std::optional<std::int64_t> brute_cardinality;
  BoundCheck thm1;
  BoundCheck thm2;
  BoundCheck thm3;
  BoundCheck old;

  /// Each (name, check) pair in report order.
  std::vector<std::pair<std::string, const BoundCheck*>> checks() const;
  /// Names of checks whose hypothesis holds but whose bound exceeds the
  /// brute-force cardinality. Empty when sound or not enumerated.
  std::vector<std::string> violations() const;
};

/// Bound formulas and hypothesis flags only.
BoundReport evaluate_bounds(const SumsetInstance& inst);
/// evaluate_bounds plus enumeration.
BoundReport compute_bounds(const SumsetInstance& inst,
                           std::uint64_t tuple_budget = default_tuple_budget());

// -- Coefficient certificates ----------------------------------------------

struct CertificateReport {
  /// "power": prod (x_i - x_j)^m; "literal": prod_{s in S_ij} (x_i - x_j - s).
  std::string route;
  std::int64_t degree = 0;
  std::int64_t sum_exponent = 0;
  mpz_class coefficient_integer;
  FieldElem coefficient_mod_p;
  std::int64_t claimed_bound = 0;
  bool certificate_valid = false;
};

/// Literal polynomial route is refused above this degree.
inline constexpr std::int64_t kLiteralDegreeBudget = 24;

/// Coefficient of prod x_j^{|A_j|-1} in P (x_1+...+x_n)^{sum(|A_j|-1) - deg P}.
/// Uniform |S_ij| = m uses P = prod_{i!=j} (x_i - x_j)^m, which has the same
/// top-degree part as the literal product; otherwise the literal product is
/// expanded (budgeted). The certificate is valid iff the coefficient is
/// nonzero mod p. Throws Error{degree_infeasible} when deg P exceeds
/// sum(|A_j| - 1).
CertificateReport certificate_check(const SumsetInstance& inst);

/// Always uses the literal product prod_{i!=j} prod_{s in S_ij} (x_i - x_j - s).
CertificateReport literal_certificate(const SumsetInstance& inst,
                                      std::int64_t degree_budget = kLiteralDegreeBudget);

// -- Shrinking to the exact-p regime ----------------------------------------

/// Sizes in {k', k'+1}^n, k' = floor((p-1)/n) + m(n-1) + 1, with
/// sum(sizes_j - 1) - mn(n-1) = p - 1. The (p-1) mod n larger sizes come
/// first. Throws Error{not_in_shrink_regime} unless mn < p <= n(k-1) - mn(n-1).
std::vector<std::int64_t> shrink_for_thm3(std::uint64_t p, std::int64_t n,
                                          std::int64_t m, std::int64_t k);

/// Keeps the smallest shrink_for_thm3 sizes_j elements of each A_j.
SumsetInstance shrink_instance(const SumsetInstance& inst);

// -- Covering Z/pZ with restricted sums of one set ---------------------------

/// Least integer t with t >= sqrt(4mp + 4m(m-3) + 2) - m + 1, found by
/// integer comparison of squares. May be <= 0 for large m. Throws
/// Error{parameter_out_of_range} for m < 1.
std::int64_t thm4_threshold(std::uint64_t p, std::int64_t m);

struct Thm4Report {
  std::uint64_t p = 0;
  Residues forbidden;
  Residues set;
  std::int64_t m = 0;
  /// floor((|A| - 1 + m) / 2m)
  std::int64_t n = 0;
  std::int64_t threshold = 0;
  bool hypothesis_met = false;
  bool covered = false;
  Residues missing;
  /// (|A| - 1 + m) - 2mn
  std::int64_t r = 0;
  /// n(|A|-1) - mn(n-1) + 1
  std::int64_t derived_bound = 0;
  bool r_in_range = false;
  bool congruence_holds = false;
  bool derived_identity_holds = false;
  /// derived_bound >= p; only demanded when the hypothesis holds.
  bool derived_inequality_holds = false;

  bool proof_arithmetic_ok() const {
    return r_in_range && congruence_holds && derived_identity_holds &&
           (!hypothesis_met || derived_inequality_holds);
  }
};

/// Uses A_j = A and S_ij = S for every pair; enumerates and reports which
/// residues are missed.
Thm4Report thm4_check(PrimeField field, const Residues& forbidden,
                      const Residues& set,
                      std::uint64_t tuple_budget = default_tuple_budget());

// -- Seeded instances --------------------------------------------------------

enum class Enforce { none, thm1, thm2, thm3 };

std::string to_string(Enforce e);
/// Accepts "none", "thm1", "thm2", "thm3".
std::optional<Enforce> parse_enforce(std::string_view name);

/// Whether the selected hypothesis holds for these parameters. thm1 and
/// thm3 additionally need uniform sizes; thm2 needs sizes within {k, k+1}.
bool hypothesis_holds(Enforce e, std::uint64_t p,
                      std::span<const std::int64_t> sizes, std::int64_t m);

/// Deterministic instance: each A_j is a uniform k-subset of Z/pZ, each S_ij
/// a uniform m-subset, drawn in the order A_1..A_n then S_ij by (i, j)
/// lexicographically. See random.hpp for the generator. Throws
/// Error{cannot_satisfy_hypothesis} if `enforce` cannot hold for (p, n, k, m).
SumsetInstance random_instance(std::uint64_t seed, std::uint64_t p,
                               std::int64_t n, std::int64_t k, std::int64_t m,
                               Enforce enforce = Enforce::none);

}  // namespace sumsetlab
