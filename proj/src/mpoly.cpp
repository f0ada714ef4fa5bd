#include "sumsetlab/mpoly.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "sumsetlab/error.hpp"

namespace sumsetlab {

std::int64_t total_degree(const ExpVec& e) noexcept {
  return std::accumulate(e.begin(), e.end(), std::int64_t{0});
}

bool GrlexLess::operator()(const ExpVec& a, const ExpVec& b) const noexcept {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

SparsePoly::SparsePoly(std::size_t nvars) : nvars_(nvars) {}

SparsePoly SparsePoly::constant(std::size_t nvars, const mpz_class& c) {
  SparsePoly p(nvars);
  p.add_term(ExpVec(nvars, 0), c);
  return p;
}

SparsePoly SparsePoly::monomial(std::size_t nvars, ExpVec e,
                                const mpz_class& c) {
  SparsePoly p(nvars);
  p.check_vec(e);
  p.add_term(e, c);
  return p;
}

SparsePoly SparsePoly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) {
    throw Error(Errc::length_mismatch, "variable index " + std::to_string(i) +
                                           " with nvars " +
                                           std::to_string(nvars));
  }
  ExpVec e(nvars, 0);
  e[i] = 1;
  return monomial(nvars, std::move(e));
}

void SparsePoly::check_vec(const ExpVec& e) const {
  if (e.size() != nvars_) {
    throw Error(Errc::length_mismatch,
                "exponent vector of length " + std::to_string(e.size()) +
                    " for a polynomial in " + std::to_string(nvars_) +
                    " variables");
  }
}

void SparsePoly::add_term(const ExpVec& e, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

mpz_class SparsePoly::coeff(const ExpVec& e) const {
  check_vec(e);
  auto it = terms_.find(e);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

ExpVec SparsePoly::min_exponents() const {
  if (terms_.empty()) return ExpVec(nvars_, 0);
  ExpVec out(nvars_, std::numeric_limits<std::int64_t>::max());
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) out[i] = std::min(out[i], e[i]);
  }
  return out;
}

ExpVec SparsePoly::max_exponents() const {
  if (terms_.empty()) return ExpVec(nvars_, 0);
  ExpVec out(nvars_, std::numeric_limits<std::int64_t>::min());
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) out[i] = std::max(out[i], e[i]);
  }
  return out;
}

// Terms are grlex ordered, so the extremes of total degree sit at the ends.
std::int64_t SparsePoly::min_total_degree() const {
  return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
}

std::int64_t SparsePoly::max_total_degree() const {
  return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
}

bool SparsePoly::has_negative_exponents() const {
  const auto lo = min_exponents();
  return std::any_of(lo.begin(), lo.end(), [](auto v) { return v < 0; });
}

SparsePoly SparsePoly::shifted(const ExpVec& d) const {
  check_vec(d);
  SparsePoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    ExpVec f = e;
    for (std::size_t i = 0; i < nvars_; ++i) f[i] += d[i];
    out.terms_.emplace_hint(out.terms_.end(), std::move(f), c);
  }
  return out;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& q) {
  if (q.nvars_ != nvars_) {
    throw Error(Errc::length_mismatch, "adding polynomials in " +
                                           std::to_string(nvars_) + " and " +
                                           std::to_string(q.nvars_) +
                                           " variables");
  }
  if (&q == this) {
    const SparsePoly copy = q;
    return *this += copy;
  }
  for (const auto& [e, c] : q.terms_) add_term(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& q) { return *this += -q; }

SparsePoly& SparsePoly::operator*=(const SparsePoly& q) {
  return *this = *this * q;
}

SparsePoly operator*(const SparsePoly& p, const SparsePoly& q) {
  if (q.nvars_ != p.nvars_) {
    throw Error(Errc::length_mismatch, "multiplying polynomials in " +
                                           std::to_string(p.nvars_) + " and " +
                                           std::to_string(q.nvars_) +
                                           " variables");
  }
  SparsePoly out(p.nvars_);
  ExpVec f(p.nvars_);
  mpz_class prod;
  for (const auto& [e, c] : p.terms_) {
    for (const auto& [g, d] : q.terms_) {
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = e[i] + g[i];
      mpz_mul(prod.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
      out.add_term(f, prod);
    }
  }
  return out;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool unit_monomial =
        std::all_of(e.begin(), e.end(), [](auto v) { return v == 0; });
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || unit_monomial) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << "x" << i;
      if (e[i] != 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

SparsePoly poly_from_terms(std::size_t nvars,
                           std::span<const SparsePoly::Term> terms) {
  SparsePoly out(nvars);
  for (const auto& [e, c] : terms) out += SparsePoly::monomial(nvars, e, c);
  return out;
}

SparsePoly poly_mul(const SparsePoly& p, const SparsePoly& q) { return p * q; }

SparsePoly poly_pow(const SparsePoly& p, std::uint64_t e) {
  SparsePoly result = SparsePoly::constant(p.nvars(), 1);
  SparsePoly base = p;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

mpz_class coeff(const SparsePoly& p, const ExpVec& e) { return p.coeff(e); }

namespace {

// Bounds on what the not-yet-applied factors can contribute.
struct Remaining {
  ExpVec min_exp;
  ExpVec max_exp;
  std::int64_t min_deg = 0;
  std::int64_t max_deg = 0;
};

}  // namespace

mpz_class targeted_coeff(const FactorList& factors, const ExpVec& target) {
  const std::size_t nvars = target.size();
  for (const auto& f : factors) {
    if (f.poly.nvars() != nvars) {
      throw Error(Errc::length_mismatch,
                  "factor in " + std::to_string(f.poly.nvars()) +
                      " variables, target of length " +
                      std::to_string(nvars));
    }
    if (f.poly.has_negative_exponents()) {
      throw Error(Errc::negative_exponent_input,
                  "factor " + f.poly.to_string() + " is a Laurent polynomial");
    }
  }
  for (const auto& f : factors) {
    if (f.repeat > 0 && f.poly.is_zero()) return 0;
  }

  // One step per factor application; suffix[s] bounds steps s, s+1, ...
  std::vector<const SparsePoly*> steps;
  for (const auto& f : factors) {
    for (std::uint64_t r = 0; r < f.repeat; ++r) steps.push_back(&f.poly);
  }
  std::vector<Remaining> suffix(steps.size() + 1,
                                Remaining{ExpVec(nvars, 0), ExpVec(nvars, 0)});
  for (std::size_t s = steps.size(); s-- > 0;) {
    const auto lo = steps[s]->min_exponents();
    const auto hi = steps[s]->max_exponents();
    auto& cur = suffix[s];
    cur = suffix[s + 1];
    for (std::size_t i = 0; i < nvars; ++i) {
      cur.min_exp[i] += lo[i];
      cur.max_exp[i] += hi[i];
    }
    cur.min_deg += steps[s]->min_total_degree();
    cur.max_deg += steps[s]->max_total_degree();
  }

  const std::int64_t target_deg = total_degree(target);
  auto reachable = [&](const ExpVec& e, const Remaining& rest) {
    std::int64_t deg = 0;
    for (std::size_t i = 0; i < nvars; ++i) {
      if (e[i] + rest.min_exp[i] > target[i]) return false;
      if (e[i] + rest.max_exp[i] < target[i]) return false;
      deg += e[i];
    }
    return deg + rest.min_deg <= target_deg && deg + rest.max_deg >= target_deg;
  };

  std::map<ExpVec, mpz_class> partial;
  {
    ExpVec zero(nvars, 0);
    if (!reachable(zero, suffix[0])) return 0;
    partial.emplace(std::move(zero), 1);
  }

  ExpVec f(nvars);
  mpz_class prod;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    std::map<ExpVec, mpz_class> next;
    for (const auto& [e, c] : partial) {
      for (const auto& [g, d] : steps[s]->terms()) {
        for (std::size_t i = 0; i < nvars; ++i) f[i] = e[i] + g[i];
        if (!reachable(f, suffix[s + 1])) continue;
        mpz_mul(prod.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
        auto [it, inserted] = next.try_emplace(f, prod);
        if (!inserted) it->second += prod;
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    partial = std::move(next);
    if (partial.empty()) return 0;
  }
  auto it = partial.find(target);
  return it == partial.end() ? mpz_class(0) : it->second;
}

mpz_class constant_term_laurent(const FactorList& factors) {
  if (factors.empty()) return 1;
  const std::size_t nvars = factors.front().poly.nvars();
  ExpVec offset(nvars, 0);
  FactorList cleared;
  cleared.reserve(factors.size());
  for (const auto& f : factors) {
    if (f.poly.nvars() != nvars) {
      throw Error(Errc::length_mismatch,
                  "Laurent factors in " + std::to_string(nvars) + " and " +
                      std::to_string(f.poly.nvars()) + " variables");
    }
    if (f.repeat == 0) continue;
    if (f.poly.is_zero()) return 0;
    ExpVec d = f.poly.min_exponents();
    for (std::size_t i = 0; i < nvars; ++i) {
      d[i] = std::max<std::int64_t>(0, -d[i]);
      offset[i] += d[i] * static_cast<std::int64_t>(f.repeat);
    }
    cleared.push_back(Factor{f.poly.shifted(d), f.repeat});
  }
  return targeted_coeff(cleared, offset);
}

}  // namespace sumsetlab
