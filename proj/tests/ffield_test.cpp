#include "sumsetlab/ffield.hpp"

#include <random>

#include "gtest/gtest.h"
#include "sumsetlab/error.hpp"

namespace sumsetlab {
namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return Errc::invalid_instance;
}

TEST(PrimeField, AcceptsPrimes) {
  EXPECT_EQ(make_field(7).modulus(), 7u);
  EXPECT_EQ(make_field(2).modulus(), 2u);
  EXPECT_EQ(make_field(999983).modulus(), 999983u);
}

TEST(PrimeField, RejectsCompositeAndSmall) {
  EXPECT_EQ(code_of([] { make_field(6); }), Errc::not_prime);
  EXPECT_EQ(code_of([] { make_field(1); }), Errc::out_of_range);
  EXPECT_EQ(code_of([] { make_field(0); }), Errc::out_of_range);
  EXPECT_EQ(code_of([] { make_field(999983ull * 3); }), Errc::not_prime);
}

TEST(PrimeField, TrialDivisionMatchesSieve) {
  constexpr std::uint64_t kLimit = 5000;
  std::vector<bool> composite(kLimit, false);
  for (std::uint64_t i = 2; i < kLimit; ++i) {
    if (!composite[i]) {
      for (auto j = i * i; j < kLimit; j += i) composite[j] = true;
    }
    EXPECT_EQ(is_prime(i), !composite[i]) << i;
  }
}

TEST(FieldElem, Examples) {
  const auto f = make_field(7);
  const FieldElem three(f, 3);
  const auto inv = three.inv();
  // oracle: 3 * 5 = 15 = 2*7 + 1
  EXPECT_EQ((3 * 5) % 7, 1);
  EXPECT_EQ(inv.value(), 5u);
  EXPECT_EQ((FieldElem(f, 4) + FieldElem(f, 5)).value(), 2u);
  for (int x = 0; x < 7; ++x) {
    EXPECT_TRUE((FieldElem(f, 0) * FieldElem(f, x)).is_zero());
  }
}

TEST(FieldElem, CanonicalConstruction) {
  const auto f = make_field(7);
  EXPECT_EQ(FieldElem(f, -1).value(), 6u);
  EXPECT_EQ(FieldElem(f, 14).value(), 0u);
  EXPECT_EQ(FieldElem(f, -15).value(), 6u);
  EXPECT_EQ((-FieldElem(f, 0)).value(), 0u);
  EXPECT_EQ((FieldElem(f, 2) - FieldElem(f, 5)).value(), 4u);
}

TEST(FieldElem, Errors) {
  const auto f7 = make_field(7);
  const auto f5 = make_field(5);
  EXPECT_EQ(code_of([&] { FieldElem(f7, 0).inv(); }), Errc::division_by_zero);
  EXPECT_EQ(code_of([&] { (void)(FieldElem(f7, 1) + FieldElem(f5, 1)); }),
            Errc::field_mismatch);
  EXPECT_EQ(code_of([&] { (void)(FieldElem(f7, 1) * FieldElem(f5, 1)); }),
            Errc::field_mismatch);
}

TEST(FieldElem, FieldAxiomsOnRandomElements) {
  std::mt19937_64 rng(20240611);
  const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 101, 65521, 999983};
  for (int trial = 0; trial < 2000; ++trial) {
    const auto f = make_field(primes[rng() % std::size(primes)]);
    auto draw = [&] { return FieldElem(f, static_cast<std::int64_t>(rng() % 2000000) - 1000000); };
    const auto x = draw(), y = draw(), z = draw();
    for (const auto& v : {x, y, z}) ASSERT_LT(v.value(), f.modulus());
    EXPECT_EQ(x + y, y + x);
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ((x - y) + y, x);
    const auto sum = x * y + z;
    EXPECT_LT(sum.value(), f.modulus());
    if (!x.is_zero()) {
      EXPECT_EQ((x * x.inv()).value(), 1u);
      EXPECT_EQ(x.pow(f.modulus() - 1).value(), 1u);
    }
  }
}

}  // namespace
}  // namespace sumsetlab
