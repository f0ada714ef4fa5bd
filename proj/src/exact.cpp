#include "sumsetlab/exact.hpp"

#include <string>

#include "sumsetlab/error.hpp"

namespace sumsetlab {

mpz_class factorial(std::int64_t n) {
  if (n < 0) {
    throw Error(Errc::parameter_out_of_range,
                "factorial of negative " + std::to_string(n));
  }
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

mpz_class require_integral(const mpq_class& q, std::string_view what) {
  mpq_class c = q;
  c.canonicalize();
  if (c.get_den() != 1) {
    throw Error(Errc::non_integer_result,
                std::string(what) + " evaluated to " + c.get_str());
  }
  return c.get_num();
}

std::vector<mpq_class> interpolate_at_integers(std::span<const mpq_class> ys) {
  const std::size_t npts = ys.size();
  std::vector<mpq_class> out(npts, 0);
  for (std::size_t i = 0; i < npts; ++i) {
    // basis = prod_{j != i} (x - j), built up in the monomial basis.
    std::vector<mpq_class> basis{1};
    mpq_class denom = 1;
    for (std::size_t j = 0; j < npts; ++j) {
      if (j == i) continue;
      std::vector<mpq_class> next(basis.size() + 1, 0);
      for (std::size_t t = 0; t < basis.size(); ++t) {
        next[t + 1] += basis[t];
        next[t] -= basis[t] * static_cast<long>(j);
      }
      basis = std::move(next);
      denom *= static_cast<long>(i) - static_cast<long>(j);
    }
    const mpq_class scale = ys[i] / denom;
    for (std::size_t t = 0; t < basis.size(); ++t) out[t] += basis[t] * scale;
  }
  for (auto& c : out) c.canonicalize();
  return out;
}

mpq_class evaluate(std::span<const mpq_class> coeffs, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

}  // namespace sumsetlab
