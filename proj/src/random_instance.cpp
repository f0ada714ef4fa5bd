#include "sumsetlab/random.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "sumsetlab/error.hpp"

namespace sumsetlab {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) {
    throw Error(Errc::parameter_out_of_range, "empty range");
  }
  // 2^64 mod bound, computed without overflow.
  const std::uint64_t excess = (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - excess;
  for (;;) {
    const std::uint64_t x = engine_();
    if (excess == 0 || x <= limit) return x % bound;
  }
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Residues Rng::subset(std::uint64_t p, std::uint64_t size) {
  if (size > p) {
    throw Error(Errc::parameter_out_of_range,
                "cannot draw " + std::to_string(size) + " of " + std::to_string(p));
  }
  Residues pool(p);
  std::iota(pool.begin(), pool.end(), std::uint64_t{0});
  for (std::uint64_t i = 0; i < size; ++i) {
    std::swap(pool[i], pool[i + below(p - i)]);
  }
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

namespace {

SumsetInstance draw_sets(Rng& rng, std::uint64_t p,
                         const std::vector<std::int64_t>& sizes, std::int64_t m) {
  const auto n = sizes.size();
  std::vector<Residues> sets;
  for (auto k : sizes) sets.push_back(rng.subset(p, static_cast<std::uint64_t>(k)));
  SumsetInstance::ForbiddenMap forbidden;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) forbidden[{i, j}] = rng.subset(p, static_cast<std::uint64_t>(m));
    }
  }
  return SumsetInstance(make_field(p), std::move(sets), forbidden);
}

}  // namespace

SumsetInstance random_instance(std::uint64_t seed, std::uint64_t p,
                               std::int64_t n, std::int64_t k, std::int64_t m,
                               Enforce enforce) {
  const auto field = make_field(p);
  if (n < 1 || k < 1 || m < 0 || static_cast<std::uint64_t>(k) > p ||
      static_cast<std::uint64_t>(m) > p) {
    throw Error(Errc::parameter_out_of_range,
                "need n, k >= 1, m >= 0 and k, m <= p");
  }
  const std::vector<std::int64_t> sizes(static_cast<std::size_t>(n), k);
  // The hypotheses depend on (p, n, k, m) only, so redrawing sets with the
  // same parameters can never repair a failure.
  if (!hypothesis_holds(enforce, field.modulus(), sizes, m)) {
    throw Error(Errc::cannot_satisfy_hypothesis,
                to_string(enforce) + " fails for p=" + std::to_string(p) +
                    ", n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                    ", m=" + std::to_string(m));
  }
  Rng rng(seed);
  return draw_sets(rng, p, sizes, m);
}

SumsetInstance draw_trial(Rng& rng, const TrialRanges& ranges, Enforce enforce,
                          int max_retries) {
  if (ranges.primes.empty() || ranges.ns.empty() || ranges.ms.empty() ||
      ranges.k_min < 1 || ranges.k_max < ranges.k_min) {
    throw Error(Errc::parameter_out_of_range, "empty trial range");
  }
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    const auto p = rng.pick(ranges.primes);
    const auto n = rng.pick(ranges.ns);
    const auto m = rng.pick(ranges.ms);
    const auto k = rng.between(ranges.k_min, ranges.k_max);
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(n), k);
    if (enforce == Enforce::thm2) {
      for (auto& size : sizes) size += static_cast<std::int64_t>(rng.below(2));
    }
    const bool fits =
        std::all_of(sizes.begin(), sizes.end(),
                    [&](auto s) { return static_cast<std::uint64_t>(s) <= p; }) &&
        static_cast<std::uint64_t>(m) <= p;
    if (!fits || !hypothesis_holds(enforce, p, sizes, m)) continue;
    return draw_sets(rng, p, sizes, m);
  }
  throw Error(Errc::cannot_satisfy_hypothesis,
              "no parameters satisfying " + to_string(enforce) + " after " +
                  std::to_string(max_retries) + " draws");
}

}  // namespace sumsetlab
