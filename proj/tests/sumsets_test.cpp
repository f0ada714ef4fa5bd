#include "sumsetlab/sumsets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gtest/gtest.h"
#include "sumsetlab/error.hpp"
#include "sumsetlab/identities.hpp"
#include "sumsetlab/random.hpp"

namespace sumsetlab {
namespace {

using Vec = std::vector<std::int64_t>;

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return Errc::invalid_instance;
}

// Oracle: walk the whole Cartesian product and test every ordered pair.
Residues naive_sumset(const SumsetInstance& inst) {
  const auto n = inst.n();
  const auto p = inst.p();
  std::set<std::uint64_t> out;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    bool ok = true;
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto ai = inst.sets()[i][idx[i]];
      sum = (sum + ai) % p;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const auto aj = inst.sets()[j][idx[j]];
        const auto d = (ai + p - aj) % p;
        const auto& s = inst.forbidden(i, j);
        if (std::find(s.begin(), s.end(), d) != s.end()) ok = false;
      }
    }
    if (ok) out.insert(sum);
    std::size_t t = 0;
    while (t < n && ++idx[t] == inst.sets()[t].size()) idx[t++] = 0;
    if (t == n) break;
  }
  return Residues(out.begin(), out.end());
}

Residues values(const std::vector<FieldElem>& xs) {
  Residues out;
  for (const auto& x : xs) out.push_back(x.value());
  return out;
}

TEST(Enumerate, Examples) {
  const auto f7 = make_field(7);
  const auto eh = SumsetInstance::uniform(f7, {{0, 1, 2, 3}, {0, 1, 2, 3}}, {0});
  EXPECT_EQ(naive_sumset(eh), (Residues{1, 2, 3, 4, 5}));
  EXPECT_EQ(values(enumerate_restricted_sumset(eh)), (Residues{1, 2, 3, 4, 5}));

  const auto free = SumsetInstance::uniform(f7, {{0, 1, 2}, {0, 1, 2}}, {});
  EXPECT_EQ(values(enumerate_restricted_sumset(free)), (Residues{0, 1, 2, 3, 4}));

  const auto empty = SumsetInstance::uniform(make_field(5), {{0}, {0}}, {0});
  EXPECT_TRUE(enumerate_restricted_sumset(empty).empty());
}

TEST(Enumerate, SingleSetIsItself) {
  const SumsetInstance one(make_field(11), {{3, 1, 9}});
  EXPECT_EQ(values(enumerate_restricted_sumset(one)), (Residues{1, 3, 9}));
  EXPECT_EQ(one.uniform_m(), 0);
}

TEST(Enumerate, Budget) {
  const auto inst = SumsetInstance::uniform(make_field(7), {{0, 1, 2}, {0, 1, 2}}, {});
  EXPECT_EQ(code_of([&] { enumerate_restricted_sumset(inst, 8); }), Errc::budget_exceeded);
  EXPECT_EQ(enumerate_restricted_sumset(inst, 9).size(), 5u);
}

TEST(Enumerate, MatchesNaiveOnRandomInstances) {
  Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7, 11}[rng.below(5)];
    const auto n = static_cast<std::size_t>(rng.between(1, 3));
    std::vector<Residues> sets;
    for (std::size_t j = 0; j < n; ++j) {
      sets.push_back(rng.subset(p, static_cast<std::uint64_t>(rng.between(1, static_cast<std::int64_t>(p)))));
    }
    SumsetInstance::ForbiddenMap forbidden;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) {
          forbidden[{i, j}] = rng.subset(p, rng.below(std::min<std::uint64_t>(p, 3) + 1));
        }
      }
    }
    const SumsetInstance inst(make_field(p), sets, forbidden);
    ASSERT_EQ(values(enumerate_restricted_sumset(inst)), naive_sumset(inst));
  }
}

TEST(Instance, Validation) {
  const auto f = make_field(7);
  EXPECT_EQ(code_of([&] { SumsetInstance(f, {}); }), Errc::invalid_instance);
  EXPECT_EQ(code_of([&] { SumsetInstance(f, {{}}); }), Errc::invalid_instance);
  EXPECT_EQ(code_of([&] { SumsetInstance(f, {{7}}); }), Errc::invalid_instance);
  EXPECT_EQ(code_of([&] { SumsetInstance(f, {{1, 1}}); }), Errc::invalid_instance);
  EXPECT_EQ(code_of([&] { SumsetInstance(f, {{1}, {2}}, {{{0, 0}, {1}}}); }),
            Errc::invalid_instance);
  const SumsetInstance ok(f, {{3, 1}, {2}}, {{{0, 1}, {5, 0}}});
  EXPECT_EQ(ok.sets()[0], (Residues{1, 3}));
  EXPECT_EQ(ok.forbidden(0, 1), (Residues{0, 5}));
  EXPECT_TRUE(ok.forbidden(1, 0).empty());
  EXPECT_EQ(ok.uniform_m(), std::nullopt);
  EXPECT_EQ(ok.uniform_k(), std::nullopt);
}

TEST(Bounds, FormulaExamples) {
  const auto f13 = make_field(13);
  Rng rng(3);
  const auto inst = SumsetInstance::uniform(f13, {rng.subset(13, 5), rng.subset(13, 5)}, {4});
  const auto r = evaluate_bounds(inst);
  EXPECT_EQ(r.thm3.bound, 7);  // min{13, 2*4 - 2 + 1}
  EXPECT_TRUE(r.thm3.hypothesis);
  EXPECT_EQ(r.thm1.bound, 7);
  EXPECT_TRUE(r.thm1.hypothesis);
  EXPECT_FALSE(r.old.hypothesis);

  // p=7, n=3, k=5, m=0: p <= n(k-1) = 12
  const Residues a{0, 1, 2, 3, 4};
  const auto big = SumsetInstance::uniform(make_field(7), {a, a, a}, {});
  const auto rb = evaluate_bounds(big);
  EXPECT_EQ(rb.old.bound, 7);  // 3 * floor(6/3) + 1
  EXPECT_TRUE(rb.old.hypothesis);
  EXPECT_EQ(rb.thm3.bound, 7);
  EXPECT_FALSE(rb.thm1.hypothesis);

  const auto eh = SumsetInstance::uniform(make_field(7), {{0, 1, 2, 3}, {0, 1, 2, 3}}, {0});
  const auto re = compute_bounds(eh);
  EXPECT_EQ(re.thm2.bound, 5);
  EXPECT_TRUE(re.thm2.hypothesis);
  EXPECT_EQ(re.brute_cardinality, 5);
  EXPECT_EQ(2 * 4 - 3, 5);
  EXPECT_TRUE(re.violations().empty());
}

TEST(Bounds, NonUniformInstancesAreNotApplicable) {
  const SumsetInstance inst(make_field(7), {{0, 1}, {0, 1, 2, 3}}, {{{0, 1}, {0}}});
  const auto r = compute_bounds(inst);
  EXPECT_FALSE(r.thm1.bound.has_value());
  EXPECT_FALSE(r.thm2.bound.has_value());
  EXPECT_FALSE(r.thm3.bound.has_value());
  EXPECT_FALSE(r.old.bound.has_value());
  EXPECT_FALSE(r.thm2.hypothesis);
  EXPECT_TRUE(r.brute_cardinality.has_value());
}

TEST(Bounds, Specializations) {
  // No restrictions: the mixed-size bound collapses to Cauchy-Davenport.
  const auto free = SumsetInstance::uniform(make_field(11), {{0, 1, 2}, {0, 4, 5, 6}, {1, 2, 3}}, {});
  EXPECT_EQ(evaluate_bounds(free).thm2.bound, cauchy_davenport_bound(free.sizes()));
  // S_ij = {0} with A_j = A: n|A| - n^2 + 1.
  const Residues a{0, 2, 3, 7, 9};
  for (std::int64_t n = 1; n <= 3; ++n) {
    const auto inst = SumsetInstance::uniform(make_field(13), std::vector<Residues>(n, a), {0});
    EXPECT_EQ(evaluate_bounds(inst).thm2.bound, distinct_summands_bound(n, 5));
  }
  EXPECT_EQ(distinct_increasing_bound(Vec{4, 2, 3}), 4);
  EXPECT_EQ(hou_sun_fallback_bound(7, 3), 7);
  EXPECT_EQ(hou_sun_fallback_bound(11, 3), 10);
}

TEST(Bounds, NestedDistinctSumsMeetIncreasingSizeBound) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t p = std::vector<std::uint64_t>{7, 11, 13}[rng.below(3)];
    const auto n = rng.between(2, 3);
    std::vector<Residues> sets;
    Vec sizes;
    std::int64_t size = 0;
    for (std::int64_t j = 0; j < n; ++j) {
      size += rng.between(1, 2);
      sizes.push_back(size);
      sets.push_back(rng.subset(p, static_cast<std::uint64_t>(size)));
    }
    const auto inst = SumsetInstance::uniform(make_field(p), sets, {0});
    const auto card = static_cast<std::int64_t>(enumerate_restricted_sumset(inst).size());
    EXPECT_GE(card, std::min<std::int64_t>(p, distinct_increasing_bound(sizes)));
  }
}

TEST(Certificate, Examples) {
  const auto f7 = make_field(7);
  const auto inst = SumsetInstance::uniform(f7, {{0, 1, 2, 3}, {0, 1, 2, 3}}, {0});
  const auto c = certificate_check(inst);
  EXPECT_EQ(c.route, "power");
  EXPECT_EQ(c.coefficient_integer, 4);
  EXPECT_EQ(c.coefficient_mod_p.value(), 4u);
  EXPECT_EQ(c.claimed_bound, 5);
  EXPECT_TRUE(c.certificate_valid);

  // P = x1 - x2 only: forbid a1 = a2 in one direction.
  const SumsetInstance one_sided(make_field(5), {{0, 1}, {0, 1, 2}}, {{{0, 1}, {0}}});
  const auto l = certificate_check(one_sided);
  EXPECT_EQ(l.route, "literal");
  EXPECT_EQ(l.degree, 1);
  EXPECT_EQ(l.coefficient_integer, -1);
  EXPECT_EQ(l.coefficient_mod_p.value(), 4u);
  EXPECT_EQ(l.claimed_bound, 3);
  EXPECT_TRUE(l.certificate_valid);
  EXPECT_EQ(values(enumerate_restricted_sumset(one_sided)), (Residues{1, 2, 3}));

  const auto f2 = SumsetInstance::uniform(make_field(2), {{0, 1}, {0, 1}}, {0});
  const auto z = certificate_check(f2);
  EXPECT_EQ(z.coefficient_integer, 2);
  EXPECT_TRUE(z.coefficient_mod_p.is_zero());
  EXPECT_FALSE(z.certificate_valid);

  const auto tight = SumsetInstance::uniform(f7, {{0}, {1, 2}}, {0});
  EXPECT_EQ(code_of([&] { certificate_check(tight); }), Errc::degree_infeasible);
  EXPECT_EQ(code_of([&] { literal_certificate(tight); }), Errc::degree_infeasible);
}

TEST(Certificate, LiteralAndPowerRoutesAgree) {
  Rng rng(17);
  int compared = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::uint64_t p = std::vector<std::uint64_t>{5, 7, 11, 13}[rng.below(4)];
    const auto n = rng.between(2, 3);
    const auto m = rng.between(0, 1);
    const auto k = rng.between(1, std::min<std::int64_t>(p, 6));
    const auto inst = random_instance(rng.next(), p, n, k, m);
    if ((k - 1) * n < m * n * (n - 1)) continue;
    const auto power = certificate_check(inst);
    const auto literal = literal_certificate(inst);
    EXPECT_EQ(power.coefficient_integer, literal.coefficient_integer);
    EXPECT_EQ(power.claimed_bound, literal.claimed_bound);
    ++compared;
  }
  EXPECT_GT(compared, 50);
}

TEST(Certificate, LiteralBudget) {
  const Residues a{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  const auto inst = SumsetInstance::uniform(make_field(13), {a, a, a}, {0, 1, 2, 3, 4});
  EXPECT_EQ(code_of([&] { literal_certificate(inst, 24); }), Errc::budget_exceeded);
}

TEST(Soundness, RandomInstancesRespectEveryApplicableBound) {
  for (const auto enforce : {Enforce::thm1, Enforce::thm2, Enforce::thm3}) {
    Rng rng(1000 + static_cast<int>(enforce));
    for (int trial = 0; trial < 80; ++trial) {
      const auto inst = draw_trial(rng, TrialRanges{}, enforce);
      const auto r = compute_bounds(inst);
      EXPECT_TRUE(r.violations().empty());
      if (enforce == Enforce::thm2) {
        EXPECT_TRUE(r.thm2.hypothesis);
        EXPECT_GE(*r.brute_cardinality, *r.thm2.bound);
      }
      if (enforce == Enforce::thm3) {
        EXPECT_TRUE(r.thm3.hypothesis);
        EXPECT_GE(*r.brute_cardinality, *r.thm3.bound);
      }
      const auto n = static_cast<std::int64_t>(inst.n());
      const auto sizes = inst.sizes();
      const auto excess = std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0}) - n;
      if (excess >= *inst.uniform_m() * n * (n - 1)) {
        const auto c = certificate_check(inst);
        if (c.certificate_valid) EXPECT_GE(*r.brute_cardinality, c.claimed_bound);
      }
    }
  }
}

TEST(Improvement, ExactPBeatsFallbackBound) {
  for (std::uint64_t p : {5, 7, 11, 13}) {
    for (std::int64_t n = 2; n <= 3; ++n) {
      for (std::int64_t m = 0; m <= 1; ++m) {
        for (std::int64_t k = 1; k <= 6; ++k) {
          const auto pp = static_cast<std::int64_t>(p);
          if (pp > n * (k - 1) - m * n * (n - 1)) continue;
          const auto core = n * (k - 1) - m * n * (n - 1);
          const auto thm3 = std::min(pp, core + 1);
          const auto old = hou_sun_fallback_bound(p, n);
          EXPECT_EQ(thm3, pp);
          EXPECT_GE(thm3, old);
          EXPECT_EQ(thm3 == old, (pp - 1) % n == 0);
        }
      }
    }
  }
}

TEST(Shrink, Examples) {
  EXPECT_EQ(shrink_for_thm3(7, 3, 0, 4), (Vec{3, 3, 3}));
  EXPECT_EQ(shrink_for_thm3(11, 3, 0, 6), (Vec{5, 4, 4}));
  EXPECT_EQ(shrink_for_thm3(7, 2, 1, 6), (Vec{5, 5}));
  EXPECT_EQ(code_of([] { shrink_for_thm3(13, 2, 1, 6); }), Errc::not_in_shrink_regime);
  EXPECT_EQ(code_of([] { shrink_for_thm3(3, 3, 1, 6); }), Errc::not_in_shrink_regime);
}

TEST(Shrink, SizesLandExactlyOnP) {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17}) {
    for (std::int64_t n = 1; n <= 4; ++n) {
      for (std::int64_t m = 0; m <= 2; ++m) {
        for (std::int64_t k = 1; k <= 12; ++k) {
          const auto pp = static_cast<std::int64_t>(p);
          if (pp <= m * n || pp > n * (k - 1) - m * n * (n - 1)) continue;
          const auto sizes = shrink_for_thm3(p, n, m, k);
          const auto kp = (pp - 1) / n + m * (n - 1) + 1;
          std::int64_t excess = 0;
          for (auto s : sizes) {
            EXPECT_TRUE(s == kp || s == kp + 1);
            EXPECT_LE(s, k);
            excess += s - 1;
          }
          EXPECT_EQ(excess - m * n * (n - 1), pp - 1);
          EXPECT_EQ(std::count(sizes.begin(), sizes.end(), kp + 1), (pp - 1) % n);
        }
      }
    }
  }
}

TEST(Shrink, ShrunkInstanceCoversField) {
  Rng rng(5);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint64_t p = std::vector<std::uint64_t>{5, 7}[rng.below(2)];
    const auto n = rng.between(2, 3);
    const auto m = rng.between(0, 1);
    const auto k = rng.between(1, static_cast<std::int64_t>(p));
    const auto pp = static_cast<std::int64_t>(p);
    if (pp <= m * n || pp > n * (k - 1) - m * n * (n - 1)) continue;
    const auto inst = random_instance(rng.next(), p, n, k, m);
    const auto shrunk = shrink_instance(inst);
    const auto c = certificate_check(shrunk);
    EXPECT_TRUE(c.certificate_valid);
    EXPECT_EQ(c.claimed_bound, pp);
    EXPECT_EQ(enumerate_restricted_sumset(shrunk).size(), p);
    ++checked;
  }
  EXPECT_GT(checked, 5);
}

TEST(Thm4Threshold, Examples) {
  EXPECT_EQ(thm4_threshold(7, 1), 5);
  EXPECT_EQ(thm4_threshold(13, 1), 7);
  EXPECT_EQ(thm4_threshold(7, 3), 8);
  EXPECT_EQ(code_of([] { thm4_threshold(7, 0); }), Errc::parameter_out_of_range);
  EXPECT_EQ(code_of([] { thm4_threshold(9, 1); }), Errc::not_prime);
}

TEST(Thm4Threshold, MatchesFloatingPointOracle) {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 101, 997}) {
    for (std::int64_t m = 1; m <= 6; ++m) {
      const double q = 4.0 * m * p + 4.0 * m * (m - 3) + 2;
      const auto t = thm4_threshold(p, m);
      EXPECT_GE(static_cast<double>(t), std::sqrt(q) - m + 1 - 1e-9);
      EXPECT_LT(static_cast<double>(t - 1), std::sqrt(q) - m + 1 - 1e-9);
    }
  }
}

TEST(Thm4Check, Examples) {
  const auto f7 = make_field(7);
  const auto full = thm4_check(f7, {0}, {0, 1, 2, 3, 4});
  EXPECT_EQ(full.n, 2);
  EXPECT_TRUE(full.hypothesis_met);
  EXPECT_TRUE(full.covered);
  EXPECT_TRUE(full.proof_arithmetic_ok());

  const auto small = thm4_check(f7, {0}, {0, 1, 2});
  EXPECT_EQ(small.n, 1);
  EXPECT_FALSE(small.hypothesis_met);
  EXPECT_FALSE(small.covered);
  EXPECT_EQ(small.missing, (Residues{3, 4, 5, 6}));
  EXPECT_TRUE(small.proof_arithmetic_ok());

  const auto none = thm4_check(f7, {0, 1, 2}, {0, 1});
  EXPECT_EQ(none.n, 0);
  EXPECT_FALSE(none.covered);
  EXPECT_TRUE(none.proof_arithmetic_ok());
}

TEST(Thm4Check, EveryFiveSubsetOfZ7) {
  int count = 0;
  for (unsigned mask = 0; mask < 128; ++mask) {
    if (__builtin_popcount(mask) != 5) continue;
    Residues a;
    for (unsigned v = 0; v < 7; ++v) {
      if (mask >> v & 1) a.push_back(v);
    }
    const auto r = thm4_check(make_field(7), {0}, a);
    EXPECT_TRUE(r.hypothesis_met);
    EXPECT_TRUE(r.covered);
    EXPECT_TRUE(r.proof_arithmetic_ok());
    ++count;
  }
  EXPECT_EQ(count, 21);
}

TEST(Thm4Check, ProofArithmeticOnAllSizes) {
  Rng rng(9);
  for (std::uint64_t p : {5, 7, 11, 13}) {
    for (std::int64_t m = 1; m <= 3; ++m) {
      for (std::int64_t size = 1; size <= static_cast<std::int64_t>(p); ++size) {
        const auto r = thm4_check(make_field(p), rng.subset(p, m),
                                  rng.subset(p, static_cast<std::uint64_t>(size)));
        EXPECT_TRUE(r.proof_arithmetic_ok()) << p << " " << m << " " << size;
        if (r.hypothesis_met) EXPECT_TRUE(r.covered) << p << " " << m << " " << size;
      }
    }
  }
}

}  // namespace
}  // namespace sumsetlab
