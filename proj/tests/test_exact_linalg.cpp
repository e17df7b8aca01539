#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rinfty/constants.hpp"
#include "rinfty/errors.hpp"
#include "rinfty/matrix.hpp"
#include "rinfty/smith.hpp"

using namespace rinfty;
namespace c = rinfty::constants;

namespace {

bool is_diagonal(const IntMatrix& s) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && sgn(s(i, j)) != 0) return false;
  return true;
}

void expect_valid_smith(const IntMatrix& m, const SmithForm& f) {
  EXPECT_EQ(f.U * m * f.V, f.S) << m.to_string();
  EXPECT_EQ(Integer(abs(det(f.U))), 1);
  EXPECT_EQ(Integer(abs(det(f.V))), 1);
  EXPECT_TRUE(is_diagonal(f.S));
  const auto diag = f.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    EXPECT_GE(sgn(diag[i]), 0);
    if (i + 1 < diag.size()) {
      // s_i | s_{i+1}, with 0 | 0 only
      if (sgn(diag[i]) == 0) {
        EXPECT_EQ(sgn(diag[i + 1]), 0);
      } else {
        EXPECT_TRUE(mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t()));
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

TEST(IntMatrix, RejectsEmptyShapes) {
  EXPECT_THROW(IntMatrix(0, 3), DimensionError);
  EXPECT_THROW(IntMatrix(2, 0), DimensionError);
  EXPECT_THROW(IntMatrix(2, 2, std::vector<Integer>(3)), DimensionError);
  EXPECT_THROW(IntMatrix::from_rows({}), DimensionError);
  EXPECT_THROW(IntMatrix::from_rows({{1, 2}, {3}}), DimensionError);
}

TEST(ModMatrix, EntriesAreReduced) {
  const ModMatrix m(5, 2, 2, {-1, 7, 10, -12});
  EXPECT_EQ(m(0, 0), 4u);
  EXPECT_EQ(m(0, 1), 2u);
  EXPECT_EQ(m(1, 0), 0u);
  EXPECT_EQ(m(1, 1), 3u);
  EXPECT_THROW(ModMatrix(1, 2, 2), ParameterError);
}

// ---------------------------------------------------------------------------
// det

TEST(Det, KnownValues) {
  const IntMatrix e2 = IntMatrix::identity(2);
  EXPECT_EQ(det(e2 - c::m2()), 3);
  EXPECT_EQ(det(IntMatrix{{1, -1}, {1, 2}}), 3);
  EXPECT_EQ(det(IntMatrix::identity(5)), 1);
  EXPECT_EQ(Integer(abs(det(c::m4() - IntMatrix::identity(4)))), 5);
  EXPECT_EQ(Integer(abs(det(c::m6() - IntMatrix::identity(6)))), 7);
}

TEST(Det, NonSquareIsDimensionError) {
  EXPECT_THROW(det(IntMatrix(2, 3)), DimensionError);
}

TEST(Det, NeedsRowSwapsAndHandlesSingular) {
  EXPECT_EQ(det(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(det(IntMatrix{{0, 0, 1}, {0, 2, 0}, {3, 0, 0}}), -6);
  EXPECT_EQ(det(IntMatrix{{1, 2}, {2, 4}}), 0);
  EXPECT_EQ(det(IntMatrix{{0, 5}, {0, 7}}), 0);
}

TEST(Det, MatchesCofactorExpansionOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const IntMatrix m = oracle::random_matrix(rng, n, n, -9, 9);
    EXPECT_EQ(det(m), oracle::cofactor_det(m)) << m.to_string();
  }
}

// ---------------------------------------------------------------------------
// pow, inverse, reduce_mod

TEST(Pow, M2HasOrderThree) {
  EXPECT_TRUE(pow(c::m2(), 3).is_identity());
  EXPECT_FALSE(pow(c::m2(), 2).is_identity());
  EXPECT_TRUE(pow(IntMatrix{{4, 1}, {7, 2}}, 0).is_identity());
  EXPECT_EQ(pow(c::m2(), -1) * c::m2(), IntMatrix::identity(2));
}

TEST(Pow, NegativeExponentNeedsInvertibility) {
  EXPECT_THROW(pow(IntMatrix{{2, 0}, {0, 1}}, -1), ParameterError);
  EXPECT_THROW(pow(reduce_mod(IntMatrix{{2, 0}, {0, 1}}, 4), -1), ParameterError);
  const ModMatrix f = reduce_mod(c::f5(), 2);
  EXPECT_TRUE((pow(f, -3) * pow(f, 3)).is_identity());
}

TEST(ReduceMod, Entrywise) {
  EXPECT_EQ(reduce_mod(c::m2(), 2).lift(), (IntMatrix{{0, 1}, {1, 1}}));
  EXPECT_EQ(reduce_mod(c::m2(), 2), reduce_mod(c::f2(), 2));
}

TEST(Inverse, UnimodularOnly) {
  const IntMatrix m{{2, 1}, {1, 1}};
  EXPECT_EQ(inverse(m) * m, IntMatrix::identity(2));
  EXPECT_THROW(inverse(IntMatrix{{2, 0}, {0, 1}}), InvertibilityError);
  const ModMatrix a = reduce_mod(IntMatrix{{3, 1}, {1, 2}}, 9);  // det 5, a unit mod 9
  EXPECT_TRUE((inverse(a) * a).is_identity());
}

// ---------------------------------------------------------------------------
// matrix_order

TEST(MatrixOrder, NamedConstants) {
  EXPECT_EQ(matrix_order(c::m2()), 3u);
  EXPECT_EQ(matrix_order(c::m4()), 5u);
  EXPECT_EQ(matrix_order(c::m6()), 7u);
  EXPECT_EQ(matrix_order(reduce_mod(c::f5(), 2)), 31u);
  EXPECT_EQ(matrix_order(reduce_mod(c::f3(), 2)), 7u);
  // x^4 + x^3 + x^2 + x + 1 over F_2 divides x^5 - 1.
  EXPECT_EQ(matrix_order(reduce_mod(c::f4(), 2)), 5u);
  for (const IntMatrix& f : {c::f2(), c::f3(), c::f4(), c::f5()})
    EXPECT_EQ(matrix_order(reduce_mod(f, 2)), oracle::naive_order(reduce_mod(f, 2), 100));
  EXPECT_EQ(matrix_order(reduce_mod(c::f2(), 2)), 3u);
}

TEST(MatrixOrder, DirectSumsAndInfiniteOrder) {
  EXPECT_EQ(matrix_order(direct_sum(c::m4(), c::m6())), 35u);
  EXPECT_EQ(matrix_order(direct_sum(c::m2(), c::m2())), 3u);
  EXPECT_EQ(matrix_order(IntMatrix{{2, 1}, {1, 1}}), std::nullopt);
  EXPECT_EQ(matrix_order(IntMatrix{{1, 1}, {0, 1}}), std::nullopt);
  EXPECT_EQ(matrix_order(IntMatrix{{-1}}), 2u);
  EXPECT_EQ(matrix_order(c::m6(), 6), std::nullopt);
}

TEST(MatrixOrder, NonInvertibleIsError) {
  EXPECT_THROW(matrix_order(IntMatrix{{2, 0}, {0, 1}}), InvertibilityError);
  EXPECT_THROW(matrix_order(reduce_mod(IntMatrix{{1, 1}, {1, 1}}, 2)), InvertibilityError);
  EXPECT_THROW(matrix_order(IntMatrix(2, 3)), DimensionError);
}

TEST(MatrixOrder, AgreesWithNaiveIterationOnSignedPermutationsAndRandomUnimodular) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 5;
    // Random signed permutation matrices (finite order) conjugated by
    // an elementary shear, plus occasional shears (infinite order).
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    IntMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = (rng() & 1) ? 1 : -1;
    IntMatrix shear = IntMatrix::identity(n);
    if (n > 1) shear(0, 1) = static_cast<long>(rng() % 5) - 2;
    const IntMatrix m = (t % 4 == 3) ? shear * shear * p : shear * p * inverse(shear);
    EXPECT_EQ(matrix_order(m, 200), oracle::naive_order(m, 200)) << m.to_string();
  }
}

TEST(MatrixOrder, AnnihilationIdentityForFiniteOrderMatrices) {
  for (const IntMatrix& m : {c::m2(), c::m4(), c::m6(), direct_sum(c::m2(), c::m2()), direct_sum(c::m4(), c::m6())}) {
    const std::uint64_t n = *matrix_order(m);
    ASSERT_NE(det(IntMatrix::identity(m.rows()) - m), 0);
    IntMatrix sum(m.rows(), m.cols());
    for (std::uint64_t i = 0; i < n; ++i) sum = sum + pow(m, static_cast<long long>(i));
    EXPECT_TRUE(sum.is_zero()) << m.to_string();
  }
}

// ---------------------------------------------------------------------------
// Smith normal form

TEST(Smith, KnownExamples) {
  const auto f = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(f.S, (IntMatrix{{1, 0}, {0, 6}}));
  expect_valid_smith(IntMatrix{{2, 0}, {0, 3}}, f);

  const IntMatrix em = IntMatrix::identity(2) - c::m2();
  EXPECT_EQ(smith_normal_form(em).S, (IntMatrix{{1, 0}, {0, 3}}));

  const IntMatrix zero(2, 2);
  EXPECT_TRUE(smith_normal_form(zero).S.is_zero());
}

TEST(Smith, RectangularAndNegative) {
  const IntMatrix m{{-4, 6, 2}, {2, -2, 8}};
  const auto f = smith_normal_form(m);
  expect_valid_smith(m, f);
  EXPECT_EQ(f.diagonal(), (std::vector<Integer>{2, 2}));
}

TEST(Smith, Deterministic) {
  const IntMatrix m{{6, 4, 2}, {9, 3, 12}, {5, 10, 7}};
  const auto a = smith_normal_form(m), b = smith_normal_form(m);
  EXPECT_EQ(a.U, b.U);
  EXPECT_EQ(a.S, b.S);
  EXPECT_EQ(a.V, b.V);
}

TEST(Smith, InvariantsOnRandomMatrices) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 600; ++t) {
    const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    const IntMatrix m = oracle::random_matrix(rng, rows, cols, -9, 9);
    expect_valid_smith(m, smith_normal_form(m));
  }
}

// ---------------------------------------------------------------------------
// coker_order

TEST(Coker, KnownExamples) {
  const IntMatrix e2 = IntMatrix::identity(2);
  EXPECT_EQ(coker_order(e2 - c::m2()), Cardinal::finite(3));
  EXPECT_FALSE(coker_order(e2 - e2).is_finite());
  const IntMatrix m = direct_sum(std::vector<IntMatrix>{c::m4(), c::m4(), c::m6()});
  EXPECT_EQ(coker_order(IntMatrix::identity(14) - m), Cardinal::finite(175));
  EXPECT_THROW(coker_order(IntMatrix(2, 3)), DimensionError);
}

TEST(Coker, EqualsAbsDetForNonsingular) {
  std::mt19937_64 rng(77);
  int checked = 0;
  while (checked < 300) {
    const std::size_t n = 1 + rng() % 6;
    const IntMatrix m = oracle::random_matrix(rng, n, n, -9, 9);
    const Integer d = det(m);
    if (sgn(d) == 0) {
      EXPECT_FALSE(coker_order(m).is_finite());
      continue;
    }
    EXPECT_EQ(coker_order(m).value(), Integer(abs(d)));
    ++checked;
  }
}

// ---------------------------------------------------------------------------
// kernel_count_mod

TEST(KernelCount, KnownExamples) {
  EXPECT_EQ(kernel_count_mod(c::f2() - IntMatrix::identity(2), 2), 1);
  EXPECT_EQ(kernel_count_mod(IntMatrix(3, 3), 5), 125);
  EXPECT_EQ(kernel_count_mod(c::f3() - IntMatrix::identity(3), 8), 1);
  // Frozen from brute_kernel_count over 4 and 512 vectors.
  EXPECT_EQ(oracle::brute_kernel_count(c::f2() - IntMatrix::identity(2), 2), 1u);
  EXPECT_EQ(oracle::brute_kernel_count(c::f3() - IntMatrix::identity(3), 8), 1u);
}

TEST(KernelCount, Errors) {
  EXPECT_THROW(kernel_count_mod(IntMatrix::identity(2), 1), ParameterError);
  EXPECT_THROW(kernel_count_mod(IntMatrix(2, 3), 2), DimensionError);
}

TEST(KernelCount, AgreesWithEnumeration) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 400; ++t) {
    const std::uint64_t q = 2 + rng() % 15;
    std::size_t d = 1 + rng() % 4;
    while (d > 1 && std::pow(double(q), double(d)) > 65536) --d;
    const IntMatrix b = oracle::random_matrix(rng, d, d, -20, 20);
    EXPECT_EQ(kernel_count_mod(b, q), Integer(static_cast<unsigned long>(oracle::brute_kernel_count(b, q))))
        << b.to_string() << " mod " << q;
  }
}

TEST(KernelCount, TrivialModPLiftsToPrimePowers) {
  std::mt19937_64 rng(3);
  int lifted = 0;
  for (int t = 0; t < 400; ++t) {
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7}[rng() % 4];
    const std::size_t d = 1 + rng() % 5;
    const IntMatrix a = oracle::random_matrix(rng, d, d, 0, static_cast<long>(p) - 1);
    const IntMatrix b = a - IntMatrix::identity(d);
    if (kernel_count_mod(b, p) != 1) continue;
    ++lifted;
    std::uint64_t q = p;
    for (int r = 2; r <= 4; ++r) {
      q *= p;
      EXPECT_EQ(kernel_count_mod(b, q), 1) << a.to_string() << " mod " << p << "^" << r;
    }
  }
  EXPECT_GT(lifted, 50);
}
