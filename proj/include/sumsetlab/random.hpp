#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sumsetlab/sumsets.hpp"

namespace sumsetlab {

/// Seeded generator used for every random instance. The engine is
/// std::mt19937_64, whose recurrence and seeding are fixed by the C++
/// standard (MT19937-64 with w=64, n=312, m=156, r=31,
/// a=0xB5026F5AA96619E9; the 10000th output from seed 5489 is
/// 9981545732273789042). Bounded draws do not go through std::
/// distributions, whose output is implementation-defined:
///   below(b): draw x until x < 2^64 - (2^64 mod b), return x mod b.
/// Subsets of size k of {0..p-1} are the first k slots of a partial
/// Fisher-Yates shuffle (slot i swapped with i + below(p - i)), sorted.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  Residues subset(std::uint64_t p, std::uint64_t size);

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

/// Parameter space for seeded soundness sweeps.
struct TrialRanges {
  std::vector<std::uint64_t> primes{5, 7, 11, 13};
  std::vector<std::int64_t> ns{2, 3};
  std::vector<std::int64_t> ms{0, 1};
  std::int64_t k_min = 1;
  std::int64_t k_max = 6;
};

inline constexpr int kTrialRetries = 1000;

/// Draws (p, n, m, k) from the ranges and then the sets; when enforcing
/// thm2 each |A_j| is independently k or k+1. Parameters failing the
/// enforced hypothesis (or with k > p, m > p) are redrawn up to
/// `max_retries` times, then Error{cannot_satisfy_hypothesis}.
SumsetInstance draw_trial(Rng& rng, const TrialRanges& ranges, Enforce enforce,
                          int max_retries = kTrialRetries);

}  // namespace sumsetlab
