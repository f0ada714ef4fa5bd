#include "sumsetlab/sumsets.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "sumsetlab/error.hpp"
#include "sumsetlab/identities.hpp"
#include "sumsetlab/mpoly.hpp"

namespace sumsetlab {

std::uint64_t default_tuple_budget() {
  if (const char* env = std::getenv("SUMSETLAB_BUDGET"); env && *env) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return kDefaultTupleBudget;
}

namespace {

Residues canonical_residues(Residues values, std::uint64_t p, const std::string& what) {
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw Error(Errc::invalid_instance, what + " repeats an element");
  }
  if (!values.empty() && values.back() >= p) {
    throw Error(Errc::invalid_instance,
                what + " contains " + std::to_string(values.back()) +
                    ", outside [0, " + std::to_string(p) + ")");
  }
  return values;
}

std::string pair_name(std::size_t i, std::size_t j) {
  return "S_{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}";
}

}  // namespace

SumsetInstance::SumsetInstance(PrimeField field, std::vector<Residues> sets,
                               const ForbiddenMap& forbidden)
    : field_(field) {
  const auto p = field.modulus();
  if (sets.empty()) {
    throw Error(Errc::invalid_instance, "need at least one set");
  }
  for (std::size_t j = 0; j < sets.size(); ++j) {
    const auto name = "A_" + std::to_string(j + 1);
    if (sets[j].empty()) throw Error(Errc::invalid_instance, name + " is empty");
    sets_.push_back(canonical_residues(std::move(sets[j]), p, name));
  }
  const auto n = sets_.size();
  forbidden_.assign(n, std::vector<Residues>(n));
  for (const auto& [key, values] : forbidden) {
    const auto [i, j] = key;
    if (i >= n || j >= n || i == j) {
      throw Error(Errc::invalid_instance,
                  "forbidden set for invalid pair (" + std::to_string(i + 1) +
                      "," + std::to_string(j + 1) + ")");
    }
    forbidden_[i][j] = canonical_residues(values, p, pair_name(i, j));
  }
}

SumsetInstance SumsetInstance::uniform(PrimeField field, std::vector<Residues> sets,
                                       const Residues& forbidden) {
  ForbiddenMap map;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (i != j) map[{i, j}] = forbidden;
    }
  }
  return SumsetInstance(field, std::move(sets), map);
}

const Residues& SumsetInstance::forbidden(std::size_t i, std::size_t j) const {
  return forbidden_.at(i).at(j);
}

std::vector<std::int64_t> SumsetInstance::sizes() const {
  std::vector<std::int64_t> out;
  for (const auto& a : sets_) out.push_back(static_cast<std::int64_t>(a.size()));
  return out;
}

std::optional<std::int64_t> SumsetInstance::uniform_k() const {
  const auto k = sets_.front().size();
  for (const auto& a : sets_) {
    if (a.size() != k) return std::nullopt;
  }
  return static_cast<std::int64_t>(k);
}

std::optional<std::int64_t> SumsetInstance::uniform_m() const {
  const auto n = sets_.size();
  if (n == 1) return 0;
  const auto m = forbidden_[0][1].size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && forbidden_[i][j].size() != m) return std::nullopt;
    }
  }
  return static_cast<std::int64_t>(m);
}

std::vector<FieldElem> enumerate_restricted_sumset(const SumsetInstance& inst,
                                                   std::uint64_t tuple_budget) {
  const auto p = inst.p();
  const auto n = inst.n();
  const auto& sets = inst.sets();

  std::uint64_t tuples = 1;
  for (const auto& a : sets) {
    if (tuples > tuple_budget / a.size()) {
      throw Error(Errc::budget_exceeded,
                  "product of set sizes exceeds the budget of " +
                      std::to_string(tuple_budget) + " tuples");
    }
    tuples *= a.size();
  }
  if (tuples > tuple_budget) {
    throw Error(Errc::budget_exceeded,
                std::to_string(tuples) + " tuples exceed the budget of " +
                    std::to_string(tuple_budget));
  }

  // forbidden difference lookup: banned[i * n + j][d] for d = a_i - a_j
  std::vector<std::vector<char>> banned(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      auto& row = banned[i * n + j];
      row.assign(p, 0);
      for (auto d : inst.forbidden(i, j)) row[d] = 1;
    }
  }

  std::vector<char> present(p, 0);
  std::uint64_t found = 0;
  std::vector<std::uint64_t> chosen(n);

  // Returns false once every residue has been found.
  auto dfs = [&](auto&& self, std::size_t depth, std::uint64_t sum) -> bool {
    if (depth == n) {
      if (!present[sum]) {
        present[sum] = 1;
        if (++found == p) return false;
      }
      return true;
    }
    for (auto a : sets[depth]) {
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i) {
        const auto ai = chosen[i];
        const auto d_ij = ai >= a ? ai - a : ai + p - a;
        const auto d_ji = d_ij == 0 ? 0 : p - d_ij;
        ok = !banned[i * n + depth][d_ij] && !banned[depth * n + i][d_ji];
      }
      if (!ok) continue;
      chosen[depth] = a;
      const auto next = sum + a >= p ? sum + a - p : sum + a;
      if (!self(self, depth + 1, next)) return false;
    }
    return true;
  };
  dfs(dfs, 0, 0);

  std::vector<FieldElem> out;
  for (std::uint64_t v = 0; v < p; ++v) {
    if (present[v]) out.emplace_back(inst.field(), static_cast<std::int64_t>(v));
  }
  return out;
}

std::int64_t cauchy_davenport_bound(std::span<const std::int64_t> sizes) {
  return std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0}) -
         static_cast<std::int64_t>(sizes.size()) + 1;
}

std::int64_t distinct_summands_bound(std::int64_t n, std::int64_t set_size) {
  return n * set_size - n * n + 1;
}

std::int64_t distinct_increasing_bound(std::span<const std::int64_t> sizes) {
  std::vector<std::int64_t> sorted(sizes.begin(), sizes.end());
  std::sort(sorted.begin(), sorted.end());
  std::int64_t acc = 1;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    acc += sorted[j] - static_cast<std::int64_t>(j + 1);
  }
  return acc;
}

std::int64_t hou_sun_fallback_bound(std::uint64_t p, std::int64_t n) {
  return n * (static_cast<std::int64_t>(p - 1) / n) + 1;
}

std::vector<std::pair<std::string, const BoundCheck*>> BoundReport::checks() const {
  return {{"thm1", &thm1}, {"thm2", &thm2}, {"thm3", &thm3}, {"old", &old}};
}

std::vector<std::string> BoundReport::violations() const {
  std::vector<std::string> out;
  if (!brute_cardinality) return out;
  for (const auto& [name, check] : checks()) {
    if (check->hypothesis && check->bound && *brute_cardinality < *check->bound) {
      out.push_back(name);
    }
  }
  return out;
}

namespace {

std::string gt_reason(std::int64_t p, std::int64_t rhs, const std::string& rhs_text) {
  return "p=" + std::to_string(p) + (p > rhs ? " > " : " <= ") + rhs_text + "=" +
         std::to_string(rhs);
}

}  // namespace

BoundReport evaluate_bounds(const SumsetInstance& inst) {
  BoundReport r;
  r.p = inst.p();
  r.n = static_cast<std::int64_t>(inst.n());
  r.sizes = inst.sizes();
  r.k = inst.uniform_k();
  r.m = inst.uniform_m();
  const auto p = static_cast<std::int64_t>(r.p);
  const auto n = r.n;
  const auto excess = std::accumulate(r.sizes.begin(), r.sizes.end(), std::int64_t{0}) - n;

  r.thm1.formula = "n(k-1)-mn(n-1)+1";
  r.thm2.formula = "sum(|A_j|-1)-mn(n-1)+1";
  r.thm3.formula = "min{p, n(k-1)-mn(n-1)+1}";
  r.old.formula = "n*floor((p-1)/n)+1";

  if (r.k && r.m) {
    const auto k = *r.k;
    const auto m = *r.m;
    const auto core = n * (k - 1) - m * n * (n - 1);
    r.thm1.bound = core + 1;
    r.thm1.hypothesis = p > std::max(core, m * n);
    r.thm1.reason = gt_reason(p, std::max(core, m * n), "max{n(k-1)-mn(n-1), mn}");
    r.thm3.bound = std::min(p, core + 1);
    r.thm3.hypothesis = p > m * n;
    r.thm3.reason = gt_reason(p, m * n, "mn");
    r.old.bound = hou_sun_fallback_bound(r.p, n);
    r.old.hypothesis = p > m * n && p <= core;
    r.old.reason = r.old.hypothesis
                       ? "mn < p <= n(k-1)-mn(n-1)=" + std::to_string(core)
                       : "needs mn < p <= n(k-1)-mn(n-1)=" + std::to_string(core);
  } else {
    const std::string why = "needs uniform |A_j| and uniform |S_ij|";
    r.thm1.reason = why;
    r.thm3.reason = why;
    r.old.reason = why;
  }

  const auto [lo, hi] = std::minmax_element(r.sizes.begin(), r.sizes.end());
  if (r.m && *hi - *lo <= 1) {
    const auto m = *r.m;
    const auto core = excess - m * n * (n - 1);
    r.thm2.bound = core + 1;
    r.thm2.hypothesis = p > std::max(m * n, core);
    r.thm2.reason = gt_reason(p, std::max(m * n, core), "max{mn, sum(|A_j|-1)-mn(n-1)}");
  } else {
    r.thm2.reason = "needs |A_j| in {k, k+1} and uniform |S_ij|";
  }
  return r;
}

BoundReport compute_bounds(const SumsetInstance& inst, std::uint64_t tuple_budget) {
  BoundReport r = evaluate_bounds(inst);
  std::vector<std::uint64_t> values;
  for (const auto& x : enumerate_restricted_sumset(inst, tuple_budget)) {
    values.push_back(x.value());
  }
  r.brute_cardinality = static_cast<std::int64_t>(values.size());
  r.sumset = std::move(values);
  return r;
}

namespace {

FieldElem reduce(const PrimeField& field, const mpz_class& c) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), field.modulus());
  return FieldElem(field, static_cast<std::int64_t>(r.get_ui()));
}

CertificateReport finish(const SumsetInstance& inst, std::string route,
                         std::int64_t degree, std::int64_t excess, mpz_class c) {
  CertificateReport r{std::move(route), degree, excess - degree, std::move(c),
                      FieldElem(inst.field(), 0), excess - degree + 1, false};
  r.coefficient_mod_p = reduce(inst.field(), r.coefficient_integer);
  r.certificate_valid = !r.coefficient_mod_p.is_zero();
  return r;
}

std::int64_t size_excess(const SumsetInstance& inst) {
  const auto sizes = inst.sizes();
  return std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0}) -
         static_cast<std::int64_t>(sizes.size());
}

}  // namespace

CertificateReport literal_certificate(const SumsetInstance& inst,
                                      std::int64_t degree_budget) {
  const auto n = inst.n();
  const auto excess = size_excess(inst);
  std::int64_t degree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) degree += static_cast<std::int64_t>(inst.forbidden(i, j).size());
    }
  }
  if (degree > excess) {
    throw Error(Errc::degree_infeasible,
                "deg P = " + std::to_string(degree) + " > sum(|A_j|-1) = " +
                    std::to_string(excess));
  }
  if (degree > degree_budget) {
    throw Error(Errc::budget_exceeded,
                "literal product of degree " + std::to_string(degree) +
                    " exceeds the budget " + std::to_string(degree_budget));
  }
  FactorList factors;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (auto s : inst.forbidden(i, j)) {
        auto factor = SparsePoly::variable(n, i) - SparsePoly::variable(n, j) -
                      SparsePoly::constant(n, static_cast<unsigned long>(s));
        factors.push_back({std::move(factor), 1});
      }
    }
  }
  SparsePoly sum(n);
  for (std::size_t i = 0; i < n; ++i) sum += SparsePoly::variable(n, i);
  factors.push_back({std::move(sum), static_cast<std::uint64_t>(excess - degree)});
  ExpVec target;
  for (auto size : inst.sizes()) target.push_back(size - 1);
  return finish(inst, "literal", degree, excess, targeted_coeff(factors, target));
}

CertificateReport certificate_check(const SumsetInstance& inst) {
  const auto m = inst.uniform_m();
  if (!m) return literal_certificate(inst);
  const auto n = static_cast<std::int64_t>(inst.n());
  const auto sizes = inst.sizes();
  return finish(inst, "power", *m * n * (n - 1), size_excess(inst),
                key_coefficient(sizes, *m));
}

std::vector<std::int64_t> shrink_for_thm3(std::uint64_t p, std::int64_t n,
                                          std::int64_t m, std::int64_t k) {
  if (n < 1 || m < 0 || k < 1) {
    throw Error(Errc::parameter_out_of_range, "need n, k >= 1 and m >= 0");
  }
  const auto pp = static_cast<std::int64_t>(p);
  const auto ceiling = n * (k - 1) - m * n * (n - 1);
  if (pp <= m * n || pp > ceiling) {
    throw Error(Errc::not_in_shrink_regime,
                "need mn=" + std::to_string(m * n) + " < p=" + std::to_string(pp) +
                    " <= n(k-1)-mn(n-1)=" + std::to_string(ceiling));
  }
  const auto base = (pp - 1) / n + m * (n - 1) + 1;
  const auto extra = (pp - 1) % n;
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(n), base);
  for (std::int64_t j = 0; j < extra; ++j) sizes[j] += 1;
  return sizes;
}

SumsetInstance shrink_instance(const SumsetInstance& inst) {
  const auto k = inst.uniform_k();
  const auto m = inst.uniform_m();
  if (!k || !m) {
    throw Error(Errc::not_in_shrink_regime, "needs uniform |A_j| and |S_ij|");
  }
  const auto n = inst.n();
  const auto sizes = shrink_for_thm3(inst.p(), static_cast<std::int64_t>(n), *m, *k);
  std::vector<Residues> sets;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& a = inst.sets()[j];
    sets.emplace_back(a.begin(), a.begin() + sizes[j]);
  }
  SumsetInstance::ForbiddenMap forbidden;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) forbidden[{i, j}] = inst.forbidden(i, j);
    }
  }
  return SumsetInstance(inst.field(), std::move(sets), forbidden);
}

std::int64_t thm4_threshold(std::uint64_t p, std::int64_t m) {
  make_field(p);
  if (m < 1) {
    throw Error(Errc::parameter_out_of_range, "m must be at least 1");
  }
  const mpz_class mm = static_cast<long>(m);
  const mpz_class q = 4 * mm * mpz_class(static_cast<unsigned long>(p)) +
                      4 * mm * (mm - 3) + 2;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), q.get_mpz_t());
  if (root * root < q) root += 1;
  return root.get_si() - m + 1;
}

Thm4Report thm4_check(PrimeField field, const Residues& forbidden,
                      const Residues& set, std::uint64_t tuple_budget) {
  Thm4Report r;
  r.p = field.modulus();
  r.m = static_cast<std::int64_t>(forbidden.size());
  if (r.m < 1 || set.empty()) {
    throw Error(Errc::parameter_out_of_range, "need |S| >= 1 and |A| >= 1");
  }
  // Validates and canonicalizes both sets.
  const auto probe = SumsetInstance::uniform(field, {set, set}, forbidden);
  r.set = probe.sets().front();
  r.forbidden = probe.forbidden(0, 1);

  const auto size = static_cast<std::int64_t>(r.set.size());
  const auto m = r.m;
  const auto p = static_cast<std::int64_t>(r.p);
  r.n = (size - 1 + m) / (2 * m);
  r.threshold = thm4_threshold(r.p, m);
  r.hypothesis_met = size >= r.threshold;

  const auto lhs = size - 1 + m;
  r.r = lhs - 2 * m * r.n;
  r.r_in_range = 0 <= r.r && r.r <= 2 * m - 1;
  const auto diff = lhs * lhs - r.r * r.r;
  r.congruence_holds = diff % (4 * m) == 0;
  r.derived_bound = r.n * (size - 1) - m * r.n * (r.n - 1) + 1;
  r.derived_identity_holds = r.congruence_holds && r.derived_bound - 1 == diff / (4 * m);
  r.derived_inequality_holds = r.derived_bound >= p;

  std::vector<char> present(r.p, 0);
  if (r.n == 0) {
    present[0] = 1;  // empty sum
  } else {
    const auto inst = SumsetInstance::uniform(
        field, std::vector<Residues>(static_cast<std::size_t>(r.n), r.set), r.forbidden);
    for (const auto& x : enumerate_restricted_sumset(inst, tuple_budget)) {
      present[x.value()] = 1;
    }
  }
  for (std::uint64_t v = 0; v < r.p; ++v) {
    if (!present[v]) r.missing.push_back(v);
  }
  r.covered = r.missing.empty();
  return r;
}

std::string to_string(Enforce e) {
  switch (e) {
    case Enforce::none: return "none";
    case Enforce::thm1: return "thm1";
    case Enforce::thm2: return "thm2";
    case Enforce::thm3: return "thm3";
  }
  return "none";
}

std::optional<Enforce> parse_enforce(std::string_view name) {
  if (name == "none") return Enforce::none;
  if (name == "thm1") return Enforce::thm1;
  if (name == "thm2") return Enforce::thm2;
  if (name == "thm3") return Enforce::thm3;
  return std::nullopt;
}

bool hypothesis_holds(Enforce e, std::uint64_t p,
                      std::span<const std::int64_t> sizes, std::int64_t m) {
  if (e == Enforce::none) return true;
  if (sizes.empty()) return false;
  const auto pp = static_cast<std::int64_t>(p);
  const auto n = static_cast<std::int64_t>(sizes.size());
  const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  const auto excess = std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0}) - n;
  switch (e) {
    case Enforce::thm1:
      return *lo == *hi && pp > std::max(excess - m * n * (n - 1), m * n);
    case Enforce::thm2:
      return *hi - *lo <= 1 && pp > std::max(m * n, excess - m * n * (n - 1));
    case Enforce::thm3:
      return *lo == *hi && pp > m * n;
    case Enforce::none:
      break;
  }
  return true;
}

}  // namespace sumsetlab
