#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rinfty/abelian.hpp"
#include "rinfty/constants.hpp"
#include "rinfty/errors.hpp"

using namespace rinfty;

namespace {

BlockAutomorphism scalar_action(std::uint64_t p, unsigned r, unsigned d, long m) {
  return BlockAutomorphism{{ComponentAction::scalar(p, r, d, m)}};
}

}  // namespace

// ---------------------------------------------------------------------------
// Primality and parsing

TEST(IsPrime, SmallAndLarge) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(7));
  EXPECT_FALSE(is_prime(9));
  EXPECT_FALSE(is_prime(561));
  EXPECT_TRUE(is_prime(2305843009213693951ull));  // 2^61 - 1
  EXPECT_FALSE(is_prime(3215031751ull));          // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(ParseGroup, KnownExamples) {
  const auto g = parse_group("2^1:3,5^1:1");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], (PrimePowerComponent{2, 1, 3}));
  EXPECT_EQ(g[1], (PrimePowerComponent{5, 1, 1}));
  EXPECT_EQ(g.order(), 40);
  EXPECT_EQ(g.rank(), 4u);

  const auto h = parse_group(" 2^2 : 1 , 2^1:2 ");
  EXPECT_EQ(h.order(), 16);
  EXPECT_EQ(h.to_string(), "2^2:1,2^1:2");
  EXPECT_EQ(parse_group(h.to_string()), h);
}

TEST(ParseGroup, Rejections) {
  for (const char* bad : {"4^1:1", "2^0:1", "2^1:0", "", "2^1", "2:1^1", "2^1:1,", "2^1:1,2^1:2", "x^1:1", "2^1:1:1",
                          "2^^1:1", "-2^1:1", "2^70:1", "3^40:1"}) {
    EXPECT_THROW(parse_group(bad), ParseError) << '"' << bad << '"';
  }
}

TEST(Decomposition, EncodeDecodeRoundTrip) {
  const auto g = parse_group("2^2:2,3^1:1");
  for (std::uint64_t i = 0; i < 48; ++i) {
    const auto x = g.decode(i);
    EXPECT_TRUE(g.contains(x));
    EXPECT_EQ(g.encode(x), i);
  }
  const auto one = g.decode(1);
  EXPECT_EQ(one.coords[0][0], 1u);  // first coordinate least significant
  EXPECT_TRUE(g.is_zero(g.add(one, g.negate(one))));
}

// ---------------------------------------------------------------------------
// Component actions

TEST(ComponentAction, Validation) {
  EXPECT_THROW(ComponentAction::scalar(5, 1, 1, 10), InvertibilityError);
  EXPECT_THROW(ComponentAction::scalar(4, 1, 1, 1), ParameterError);
  EXPECT_THROW(ComponentAction::matrix(2, 1, IntMatrix{{1, 1}, {1, 1}}), InvertibilityError);
  EXPECT_THROW(ComponentAction::matrix(2, 1, IntMatrix(2, 3)), DimensionError);
  const auto a = ComponentAction::scalar(5, 2, 2, -1);
  EXPECT_EQ(a.multiplier(), 24u);
  EXPECT_EQ(a.block().lift(), (IntMatrix{{24, 0}, {0, 24}}));
}

TEST(BlockAutomorphism, Tiling) {
  BlockAutomorphism phi{{ComponentAction::matrix(2, 1, constants::f3()), ComponentAction::matrix(2, 1, constants::f4()),
                         ComponentAction::scalar(7, 1, 1, 3)}};
  EXPECT_EQ(phi.tiled_group(), parse_group("2^1:7,7^1:1"));
  EXPECT_THROW(phi.check_compatible(parse_group("2^1:6,7^1:1")), DimensionError);

  BlockAutomorphism revisit{{ComponentAction::scalar(3, 1, 1, 2), ComponentAction::scalar(5, 1, 1, 2),
                             ComponentAction::scalar(3, 1, 1, 2)}};
  EXPECT_THROW(revisit.tiled_group(), DimensionError);
}

// ---------------------------------------------------------------------------
// Fixed points and Reidemeister numbers

TEST(FixedCount, KnownExamples) {
  EXPECT_EQ(fixed_count(parse_group("5^1:1"), scalar_action(5, 1, 1, 2)), 1);
  EXPECT_EQ(fixed_count(parse_group("5^1:1"), scalar_action(5, 1, 1, 1)), 5);
  EXPECT_EQ(fixed_count(parse_group("2^1:2"), {{ComponentAction::matrix(2, 1, constants::f2())}}), 1);
  EXPECT_EQ(fixed_count(parse_group("2^3:3"), {{ComponentAction::matrix(2, 3, constants::f3())}}), 1);
  // -1 on Z_9 fixes 0 only; -1 on Z_8 fixes 0 and 4.
  EXPECT_EQ(fixed_count(parse_group("3^2:1"), scalar_action(3, 2, 1, -1)), 1);
  EXPECT_EQ(fixed_count(parse_group("2^3:1"), scalar_action(2, 3, 1, -1)), 2);
  EXPECT_EQ(reidemeister_abelian(parse_group("3^1:2"), BlockAutomorphism::identity(parse_group("3^1:2"))), 9);
}

TEST(TwistedClasses, KnownExamples) {
  const auto z5 = parse_group("5^1:1");
  const auto t = twisted_classes_bruteforce(z5, scalar_action(5, 1, 1, 2));
  EXPECT_EQ(t.count, 1u);
  EXPECT_EQ(t.image_size, 5u);

  const auto z4 = parse_group("2^2:1");
  const auto neg = twisted_classes_bruteforce(z4, scalar_action(2, 2, 1, -1));
  EXPECT_EQ(neg.count, 2u);
  ASSERT_EQ(neg.representatives.size(), 2u);
  EXPECT_EQ(z4.encode(neg.representatives[0]), 0u);
  EXPECT_EQ(z4.encode(neg.representatives[1]), 1u);

  EXPECT_THROW(twisted_classes_bruteforce(parse_group("2^1:17"), BlockAutomorphism::identity(parse_group("2^1:17"))),
               SizeBoundError);
}

TEST(TwistedClasses, RawMapMixingSummands) {
  // (a, b) -> (a + 2b, a + b) on Z_4 + Z_2 is not block diagonal.
  const auto g = parse_group("2^2:1,2^1:1");
  const ElementMap phi = [](const AbelianElement& x) {
    const auto a = x.coords[0][0], b = x.coords[1][0];
    return AbelianElement{{{(a + 2 * b) % 4}, {(a + b) % 2}}};
  };
  std::vector<char> hit(8, 0);
  for (std::uint64_t i = 0; i < 8; ++i) hit[g.encode(phi(g.decode(i)))] = 1;
  ASSERT_EQ(std::count(hit.begin(), hit.end(), 1), 8);

  const auto t = twisted_classes_bruteforce(g, phi);
  EXPECT_EQ(t.count, oracle::brute_fixed_count(g, phi));
  EXPECT_EQ(t.count, 2u);
}

TEST(TwistedClasses, MatchesFixedCountOnRandomAutomorphisms) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 250; ++t) {
    const auto g = oracle::random_group(rng, 512);
    const auto phi = oracle::random_block_automorphism(rng, g);
    const auto classes = twisted_classes_bruteforce(g, phi);
    const Integer r = reidemeister_abelian(g, phi);
    EXPECT_EQ(Integer(static_cast<unsigned long>(classes.count)), r) << g.to_string();
    EXPECT_EQ(classes.count, oracle::brute_fixed_count(g, [&](const AbelianElement& x) { return phi.apply(g, x); }));
    EXPECT_EQ(Integer(static_cast<unsigned long>(classes.count * classes.image_size)), g.order());
  }
}

TEST(Reidemeister, MultiplicativeOverDirectSums) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t p1 = 3, p2 = 5;
    const auto a = ComponentAction::matrix(p1, 1 + rng() % 2, oracle::random_unit_block(rng, p1, 1, 1 + rng() % 3));
    const auto b = ComponentAction::matrix(p2, 1, oracle::random_unit_block(rng, p2, 1, 1 + rng() % 2));
    const BlockAutomorphism pa{{a}}, pb{{b}}, both{{a, b}};
    EXPECT_EQ(reidemeister_abelian(both.tiled_group(), both),
              reidemeister_abelian(pa.tiled_group(), pa) * reidemeister_abelian(pb.tiled_group(), pb));
  }
}

// ---------------------------------------------------------------------------
// select_m

TEST(SelectM, FixedRule) {
  EXPECT_EQ(select_m(3, 1), 2u);
  EXPECT_EQ(select_m(5, 2), 2u);
  EXPECT_EQ(select_m(7, 1), 3u);
  EXPECT_EQ(select_m(11, 1), 2u);
  EXPECT_THROW(select_m(2, 1), ParameterError);
  EXPECT_THROW(select_m(6, 1), ParameterError);
}

TEST(SelectM, UnitConditionsAndFactorization) {
  for (std::uint64_t p : {3, 5, 7, 11, 13, 31, 43}) {
    for (unsigned r = 1; r <= 3; ++r) {
      for (auto rule : {MultiplierRule::Fixed, MultiplierRule::SmallestValid}) {
        const std::uint64_t m = select_m(p, r, rule);
        const std::uint64_t q = PrimePowerComponent{p, r, 1}.modulus();
        const std::uint64_t m3 = pow_mod(m, 3, q);
        EXPECT_NE(m3 % p, 0u);
        EXPECT_NE((1 + q - m3) % p, 0u);
        // 1 - m^3 = (1 - m)(1 + m + m^2), so m and 1 + m + m^2 act invertibly.
        EXPECT_NE((1 + q - m % q) % p, 0u);
        EXPECT_NE((1 + m + m * m) % p, 0u);
        for (unsigned d = 1; d <= 2; ++d) {
          const BlockAutomorphism phi{{ComponentAction::scalar(p, r, d, static_cast<long>(m))}};
          EXPECT_EQ(fixed_count(phi.tiled_group(), phi), 1) << p << "^" << r;
        }
      }
    }
  }
}

TEST(SelectM, SmallestValidMatchesFixedOnWitnessPrimes) {
  for (std::uint64_t p : {3, 5, 7})
    EXPECT_EQ(select_m(p, 1, MultiplierRule::SmallestValid), select_m(p, 1, MultiplierRule::Fixed));
}
