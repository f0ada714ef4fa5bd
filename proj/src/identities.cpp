#include "sumsetlab/identities.hpp"

#include <numeric>

#include "sumsetlab/error.hpp"
#include "sumsetlab/exact.hpp"
#include "sumsetlab/mpoly.hpp"

namespace sumsetlab {

namespace {

// 1 - x_i/x_j
SparsePoly one_minus_ratio(std::size_t nvars, std::size_t i, std::size_t j) {
  ExpVec e(nvars, 0);
  e[i] += 1;
  e[j] -= 1;
  return SparsePoly::constant(nvars, 1) + SparsePoly::monomial(nvars, e, -1);
}

// x_i - x_j
SparsePoly difference(std::size_t nvars, std::size_t i, std::size_t j) {
  return SparsePoly::variable(nvars, i) - SparsePoly::variable(nvars, j);
}

SparsePoly variable_sum(std::size_t nvars) {
  SparsePoly out(nvars);
  for (std::size_t i = 0; i < nvars; ++i) out += SparsePoly::variable(nvars, i);
  return out;
}

std::uint64_t as_repeat(std::int64_t e) { return static_cast<std::uint64_t>(e); }

void require_nonnegative(std::span<const std::int64_t> v, const char* what) {
  for (auto x : v) {
    if (x < 0) {
      throw Error(Errc::parameter_out_of_range,
                  std::string(what) + " has a negative entry");
    }
  }
}

void require_min_length(std::span<const std::int64_t> avec) {
  if (avec.size() < 2) {
    throw Error(Errc::too_few_variables,
                "need at least two exponents, got " +
                    std::to_string(avec.size()));
  }
}

// Off-diagonal (1 - x_i/x_j)^m over variables first..nvars-1.
void append_symmetric_block(FactorList& out, std::size_t nvars,
                            std::size_t first, std::int64_t m) {
  if (m == 0) return;
  for (std::size_t i = first; i < nvars; ++i) {
    for (std::size_t j = first; j < nvars; ++j) {
      if (i != j) out.push_back({one_minus_ratio(nvars, i, j), as_repeat(m)});
    }
  }
}

std::vector<std::pair<std::string, std::int64_t>> vec_params(
    std::span<const std::int64_t> avec) {
  std::vector<std::pair<std::string, std::int64_t>> out;
  for (std::size_t j = 0; j < avec.size(); ++j) {
    out.emplace_back("a" + std::to_string(j), avec[j]);
  }
  return out;
}

std::vector<std::pair<std::string, std::int64_t>> nsabm_params(
    const IdentityParams& p) {
  return {{"n", p.n}, {"s", p.s}, {"a", p.a}, {"b", p.b}, {"m", p.m}};
}

}  // namespace

void IdentityParams::validate() const {
  if (n < 1) {
    throw Error(Errc::parameter_out_of_range,
                "n = " + std::to_string(n) + " must be at least 1");
  }
  if (s < 0 || s > n) {
    throw Error(Errc::parameter_out_of_range,
                "s = " + std::to_string(s) + " outside [0, " +
                    std::to_string(n) + "]");
  }
  if (a < 0 || b < 0 || m < 0) {
    throw Error(Errc::parameter_out_of_range, "a, b, m must be nonnegative");
  }
}

std::string to_string(ChiPlacement placement) {
  return placement == ChiPlacement::with_a ? "with-a" : "with-b";
}

mpz_class dyson_ct(std::span<const std::int64_t> avec) {
  require_min_length(avec);
  require_nonnegative(avec, "Dyson exponent vector");
  const std::size_t nvars = avec.size();
  FactorList factors;
  for (std::size_t i = 0; i < nvars; ++i) {
    for (std::size_t j = 0; j < nvars; ++j) {
      if (i != j && avec[j] > 0) {
        factors.push_back({one_minus_ratio(nvars, i, j), as_repeat(avec[j])});
      }
    }
  }
  return constant_term_laurent(factors);
}

mpz_class dyson_closed_form(std::span<const std::int64_t> avec) {
  require_nonnegative(avec, "Dyson exponent vector");
  const auto total = std::accumulate(avec.begin(), avec.end(), std::int64_t{0});
  mpz_class out = factorial(total);
  for (auto a : avec) out /= factorial(a);
  return out;
}

mpz_class zeilberger_coeff(std::span<const std::int64_t> avec) {
  require_min_length(avec);
  require_nonnegative(avec, "Dyson exponent vector");
  const std::size_t nvars = avec.size();
  const auto n = static_cast<std::int64_t>(nvars) - 1;
  FactorList factors;
  std::int64_t sign_exp = 0;
  ExpVec target(nvars);
  for (std::size_t j = 0; j < nvars; ++j) {
    target[j] = n * avec[j];
    sign_exp += static_cast<std::int64_t>(j) * avec[j];
    for (std::size_t i = 0; i < j; ++i) {
      factors.push_back({difference(nvars, i, j), as_repeat(avec[i] + avec[j])});
    }
  }
  mpz_class c = targeted_coeff(factors, target);
  return sign_exp % 2 == 0 ? c : mpz_class(-c);
}

IdentityReport dyson_report(std::span<const std::int64_t> avec) {
  IdentityReport r;
  r.identity = "dyson";
  r.params = vec_params(avec);
  r.brute_value = dyson_ct(avec);
  r.closed_value = dyson_closed_form(avec);
  r.agree = r.brute_value == r.closed_value;
  r.note = "constant term of prod_{i!=j}(1-x_i/x_j)^{a_j} vs multinomial";
  return r;
}

IdentityReport zeilberger_report(std::span<const std::int64_t> avec) {
  IdentityReport r;
  r.identity = "zeilberger";
  r.params = vec_params(avec);
  r.brute_value = dyson_ct(avec);
  r.closed_value = zeilberger_coeff(avec);
  r.agree = r.brute_value == r.closed_value &&
            r.closed_value == dyson_closed_form(avec);
  r.note =
      "(-1)^{sum j a_j} [prod x_j^{N a_j}] prod_{i<j}(x_i-x_j)^{a_i+a_j} vs "
      "Laurent constant term";
  return r;
}

mpz_class aomoto_ct(const IdentityParams& p) {
  p.validate();
  const auto nvars = static_cast<std::size_t>(p.n) + 1;
  FactorList factors;
  for (std::size_t l = 1; l < nvars; ++l) {
    const auto up = p.a + chi_le(static_cast<std::int64_t>(l), p.s);
    factors.push_back({one_minus_ratio(nvars, l, 0), as_repeat(up)});
    factors.push_back({one_minus_ratio(nvars, 0, l), as_repeat(p.b)});
  }
  append_symmetric_block(factors, nvars, 1, p.m);
  return constant_term_laurent(factors);
}

mpz_class aomoto_closed_form(const IdentityParams& p, ChiPlacement placement) {
  p.validate();
  mpq_class acc = 1;
  for (std::int64_t l = 0; l < p.n; ++l) {
    const auto c = chi_ge(l, p.n - p.s);
    const auto ca = placement == ChiPlacement::with_a ? c : 0;
    const auto cb = placement == ChiPlacement::with_b ? c : 0;
    mpq_class term(factorial(p.a + p.b + p.m * l + c) * factorial(p.m * l + p.m),
                   factorial(p.a + p.m * l + ca) * factorial(p.m * l + p.b + cb) *
                       factorial(p.m));
    term.canonicalize();
    acc *= term;
  }
  return require_integral(acc, "Aomoto closed form");
}

mpz_class f_absm(std::int64_t a, std::int64_t b, std::int64_t s,
                 std::int64_t m, std::int64_t n) {
  return aomoto_closed_form(IdentityParams{n, s, a, b, m}, ChiPlacement::with_b);
}

mpz_class f_absm_ct(std::int64_t a, std::int64_t b, std::int64_t s,
                    std::int64_t m, std::int64_t n) {
  const IdentityParams p{n, s, a, b, m};
  p.validate();
  const auto nvars = static_cast<std::size_t>(n) + 1;
  FactorList factors;
  for (std::size_t l = 1; l < nvars; ++l) {
    factors.push_back({one_minus_ratio(nvars, l, 0), as_repeat(a)});
    factors.push_back({one_minus_ratio(nvars, 0, l),
                       as_repeat(b + chi_le(static_cast<std::int64_t>(l), s))});
  }
  append_symmetric_block(factors, nvars, 1, m);
  return constant_term_laurent(factors);
}

IdentityReport aomoto_report(const IdentityParams& p, ChiPlacement placement) {
  IdentityReport r;
  r.identity = "aomoto";
  r.params = nsabm_params(p);
  r.brute_value = aomoto_ct(p);
  r.closed_value = aomoto_closed_form(p, placement);
  r.agree = r.brute_value == r.closed_value;
  r.note = "bump chi(l<=s) on (1-x_l/x_0); closed-form shift placed " +
           to_string(placement);
  return r;
}

IdentityReport inversion_report(const IdentityParams& p) {
  IdentityReport r;
  r.identity = "aomoto-inversion";
  r.params = nsabm_params(p);
  r.brute_value = aomoto_ct(IdentityParams{p.n, p.s, p.b, p.a, p.m});
  r.closed_value = f_absm(p.a, p.b, p.s, p.m, p.n);
  r.agree = r.brute_value == r.closed_value &&
            r.closed_value == f_absm_ct(p.a, p.b, p.s, p.m, p.n);
  r.note = "f(a;b,s,m) (bump on (1-x_0/x_l)) vs Aomoto constant term with a,b "
           "exchanged";
  return r;
}

LeadingCoeffReport lemma22_check(std::int64_t n, std::int64_t s, std::int64_t b,
                            std::int64_t m, std::int64_t slack) {
  IdentityParams{n, s, 0, b, m}.validate();
  if (slack < 0) {
    throw Error(Errc::parameter_out_of_range, "slack must be nonnegative");
  }
  LeadingCoeffReport r;
  r.n = n;
  r.s = s;
  r.b = b;
  r.m = m;
  r.slack = slack;
  for (std::int64_t l = 1; l <= n; ++l) r.exponents.push_back(b + chi_le(l, s));
  r.degree = std::accumulate(r.exponents.begin(), r.exponents.end(),
                             std::int64_t{0});

  std::vector<mpq_class> ys;
  for (std::int64_t a = 0; a <= r.degree + slack; ++a) {
    r.samples.push_back(f_absm_ct(a, b, s, m, n));
    ys.emplace_back(r.samples.back());
  }
  const auto fit_points = static_cast<std::size_t>(r.degree) + 1;
  r.interpolant =
      interpolate_at_integers(std::span<const mpq_class>(ys).first(fit_points));
  for (std::size_t a = fit_points; a < ys.size(); ++a) {
    const auto predicted = evaluate(r.interpolant, mpq_class(static_cast<long>(a)));
    if (predicted != ys[a]) {
      throw Error(Errc::interpolation_mismatch,
                  "f(" + std::to_string(a) + ";" + std::to_string(b) + "," +
                      std::to_string(s) + "," + std::to_string(m) +
                      ") = " + ys[a].get_str() + " but the interpolant gives " +
                      predicted.get_str());
    }
  }
  r.leading = r.interpolant.back();

  const auto nvars = static_cast<std::size_t>(n);
  FactorList factors;
  factors.push_back({variable_sum(nvars), as_repeat(r.degree)});
  ExpVec inv(nvars);
  for (std::size_t l = 0; l < nvars; ++l) inv[l] = -r.exponents[l];
  factors.push_back({SparsePoly::monomial(nvars, inv), 1});
  append_symmetric_block(factors, nvars, 0, m);
  r.expected_leading = mpq_class(constant_term_laurent(factors), factorial(r.degree));
  r.expected_leading.canonicalize();

  mpq_class closed = 1;
  for (std::int64_t l = 0; l < n; ++l) {
    mpq_class t(factorial(m * l + m),
                factorial(b + m * l + chi_ge(l, n - s)) * factorial(m));
    t.canonicalize();
    closed *= t;
  }
  r.closed_form_leading = closed;
  r.agree = r.leading == r.expected_leading && r.leading == r.closed_form_leading;
  return r;
}

mpz_class prop21_coeff(std::int64_t n, std::int64_t m, std::int64_t k,
                       std::int64_t s) {
  if (n < 1 || m < 0 || k < 1 || s < 0 || s > n) {
    throw Error(Errc::parameter_out_of_range,
                "need n >= 1, m >= 0, k >= 1, 0 <= s <= n");
  }
  if (k <= m * (n - 1)) {
    throw Error(Errc::hypothesis_violated,
                "k = " + std::to_string(k) + " <= m(n-1) = " +
                    std::to_string(m * (n - 1)));
  }
  mpq_class acc = 1;
  for (std::int64_t j = 0; j < s; ++j) acc /= mpz_class(k - j * m);
  const auto sum_k = n * k + s;
  acc *= mpq_class(factorial(sum_k - m * n * n + m * n - n));
  mpz_class mfact = factorial(m);
  for (std::int64_t j = 0; j < n; ++j) acc /= mpq_class(mfact);
  for (std::int64_t j = 1; j <= n; ++j) {
    acc *= mpq_class(factorial(j * m), factorial(k - 1 - j * m + m));
  }
  acc.canonicalize();
  return require_integral(acc, "key coefficient closed form");
}

mpz_class key_coefficient(std::span<const std::int64_t> sizes, std::int64_t m) {
  if (sizes.empty() || m < 0) {
    throw Error(Errc::parameter_out_of_range, "need n >= 1 sizes and m >= 0");
  }
  const auto n = static_cast<std::int64_t>(sizes.size());
  const auto nvars = sizes.size();
  ExpVec target(nvars);
  std::int64_t excess = 0;
  for (std::size_t j = 0; j < nvars; ++j) {
    if (sizes[j] < 1) {
      throw Error(Errc::parameter_out_of_range, "set sizes must be positive");
    }
    target[j] = sizes[j] - 1;
    excess += sizes[j] - 1;
  }
  const auto sum_exponent = excess - m * n * (n - 1);
  if (sum_exponent < 0) {
    throw Error(Errc::degree_infeasible,
                "sum(|A_j|-1) = " + std::to_string(excess) +
                    " < mn(n-1) = " + std::to_string(m * n * (n - 1)));
  }
  FactorList factors;
  if (m > 0) {
    for (std::size_t i = 0; i < nvars; ++i) {
      for (std::size_t j = 0; j < nvars; ++j) {
        if (i != j) factors.push_back({difference(nvars, i, j), as_repeat(m)});
      }
    }
  }
  factors.push_back({variable_sum(nvars), as_repeat(sum_exponent)});
  return targeted_coeff(factors, target);
}

std::vector<std::int64_t> mixed_sizes(std::int64_t n, std::int64_t k,
                                      std::int64_t s) {
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(n), k);
  for (std::int64_t j = 0; j < s && j < n; ++j) sizes[j] = k + 1;
  return sizes;
}

IdentityReport prop21_report(std::int64_t n, std::int64_t m, std::int64_t k,
                             std::int64_t s) {
  IdentityReport r;
  r.identity = "prop21";
  r.params = {{"n", n}, {"m", m}, {"k", k}, {"s", s}};
  const auto sizes = mixed_sizes(n, k, s);
  r.brute_value = key_coefficient(sizes, m);
  r.closed_value = prop21_coeff(n, m, k, s);
  r.agree = r.brute_value == r.closed_value && r.closed_value > 0;
  r.note = "key coefficient by pruned expansion vs factorial closed form";
  return r;
}

}  // namespace sumsetlab
