#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rinfty {

using Integer = mpz_class;

/// Exact dense integer matrix, row-major. Zero-sized shapes are rejected.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  std::span<const Integer> entries() const { return entries_; }

  /// M·v for a column vector v of length cols().
  std::vector<Integer> apply(std::span<const Integer> v) const;

  bool is_identity() const;
  bool is_zero() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& c, const IntMatrix& a);

  std::string to_string() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> entries_;
};

/// Matrix over Z/qZ with entries kept in [0, q). Products go through 128-bit
/// intermediates, so any q < 2^63 is safe.
class ModMatrix {
 public:
  ModMatrix(std::uint64_t modulus, std::size_t rows, std::size_t cols);
  /// Entries are reduced into [0, modulus).
  ModMatrix(std::uint64_t modulus, std::size_t rows, std::size_t cols,
            const std::vector<std::int64_t>& entries);

  static ModMatrix identity(std::uint64_t modulus, std::size_t n);

  std::uint64_t modulus() const { return modulus_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  std::uint64_t operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const Integer& value);
  std::span<const std::uint64_t> entries() const { return entries_; }

  std::vector<std::uint64_t> apply(std::span<const std::uint64_t> v) const;

  /// Canonical integer lift with entries in [0, modulus).
  IntMatrix lift() const;
  bool is_identity() const;

  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;
  friend ModMatrix operator+(const ModMatrix& a, const ModMatrix& b);
  friend ModMatrix operator-(const ModMatrix& a, const ModMatrix& b);
  friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b);

 private:
  std::uint64_t modulus_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> entries_;
};

inline constexpr std::uint64_t kDefaultMaxOrder = 10000;

IntMatrix direct_sum(std::span<const IntMatrix> blocks);
IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);

/// Fraction-free (Bareiss) determinant.
Integer det(const IntMatrix& m);
IntMatrix adjugate(const IntMatrix& m);
/// Inverse of a unimodular matrix; throws InvertibilityError otherwise.
IntMatrix inverse(const IntMatrix& m);

/// Square-and-multiply power. Negative n requires |det m| = 1.
IntMatrix pow(const IntMatrix& m, long long n);
ModMatrix pow(const ModMatrix& m, long long n);

ModMatrix reduce_mod(const IntMatrix& m, std::uint64_t q);

/// det of the canonical lift, reduced into [0, modulus).
std::uint64_t det_mod(const ModMatrix& m);
bool is_invertible(const ModMatrix& m);
ModMatrix inverse(const ModMatrix& m);

/// Least n in [1, max_order] with m^n = E, or nullopt.
/// Throws InvertibilityError unless |det m| = 1.
std::optional<std::uint64_t> matrix_order(const IntMatrix& m,
                                          std::uint64_t max_order = kDefaultMaxOrder);
/// Same over Z/qZ; requires det coprime to the modulus.
std::optional<std::uint64_t> matrix_order(const ModMatrix& m,
                                          std::uint64_t max_order = kDefaultMaxOrder);

/// Integer helpers shared across modules.
std::uint64_t to_u64(const Integer& x);
std::int64_t to_i64(const Integer& x);
bool fits_i64(const Integer& x);
/// Least nonnegative residue of x modulo q.
std::uint64_t mod_u64(const Integer& x, std::uint64_t q);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t q);

}  // namespace rinfty
