#include "rinfty/matrix.hpp"

#include <sstream>
#include <utility>

#include "rinfty/errors.hpp"

namespace rinfty {

namespace {

void require_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix must have at least one row and column");
}

void require_square(std::size_t rows, std::size_t cols, const char* what) {
  if (rows != cols) throw DimensionError(std::string(what) + ": matrix is not square");
}

void require_same_modulus(const ModMatrix& a, const ModMatrix& b) {
  if (a.modulus() != b.modulus()) throw DimensionError("modulus mismatch");
}

}  // namespace

// ---------------------------------------------------------------------------
// Integer helpers

std::uint64_t to_u64(const Integer& x) {
  if (sgn(x) < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 64)
    throw ParameterError("integer does not fit in an unsigned 64-bit value: " + x.get_str());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, x.get_mpz_t());
  return out;
}

bool fits_i64(const Integer& x) {
  return mpz_sizeinbase(x.get_mpz_t(), 2) <= 63;
}

std::int64_t to_i64(const Integer& x) {
  if (!fits_i64(x)) throw ParameterError("integer does not fit in a signed 64-bit value: " + x.get_str());
  Integer a = abs(x);
  auto mag = static_cast<std::int64_t>(to_u64(a));
  return sgn(x) < 0 ? -mag : mag;
}

std::uint64_t mod_u64(const Integer& x, std::uint64_t q) {
  Integer r;
  Integer qq;
  mpz_import(qq.get_mpz_t(), 1, -1, sizeof(q), 0, 0, &q);
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), qq.get_mpz_t());
  return to_u64(r);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t q) {
  std::uint64_t result = 1 % q;
  base %= q;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, q);
    base = mul_mod(base, base, q);
    exp >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  require_shape(rows, cols);
  entries_.assign(rows * cols, Integer(0));
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require_shape(rows, cols);
  if (entries_.size() != rows * cols) throw DimensionError("entry count does not match rows x cols");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  require_shape(rows_, cols_);
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix rows");
    for (long v : row) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  if (rows.empty() || rows.front().empty()) throw DimensionError("matrix must have at least one row and column");
  const std::size_t cols = rows.front().size();
  std::vector<Integer> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) throw DimensionError("ragged matrix rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return IntMatrix(rows.size(), cols, std::move(entries));
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Integer> IntMatrix::apply(std::span<const Integer> v) const {
  if (v.size() != cols_) throw DimensionError("vector length does not match matrix columns");
  std::vector<Integer> out(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn((*this)(i, j)) != 0) out[i] += (*this)(i, j) * v[j];
  return out;
}

bool IntMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (sgn(e) != 0) return false;
  return true;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum shape mismatch");
  IntMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference shape mismatch");
  IntMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= b.entries_[i];
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const Integer& x = a(i, l);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(l, j);
    }
  return out;
}

IntMatrix operator*(const Integer& c, const IntMatrix& a) {
  IntMatrix out = a;
  for (auto& e : out.entries_) e *= c;
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix direct_sum(std::span<const IntMatrix> blocks) {
  if (blocks.empty()) throw DimensionError("direct sum of no blocks");
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  IntMatrix out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  const IntMatrix both[] = {a, b};
  return direct_sum(std::span<const IntMatrix>(both));
}

Integer det(const IntMatrix& m) {
  require_square(m.rows(), m.cols(), "det");
  const std::size_t n = m.rows();
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && sgn(a(pivot, k)) == 0) ++pivot;
      if (pivot == n) return 0;
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix adjugate(const IntMatrix& m) {
  require_square(m.rows(), m.cols(), "adjugate");
  const std::size_t n = m.rows();
  if (n == 1) return IntMatrix::identity(1);
  IntMatrix adj(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Integer cof = det(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : Integer(-cof);
    }
  }
  return adj;
}

IntMatrix inverse(const IntMatrix& m) {
  const Integer d = det(m);
  if (d != 1 && d != -1) throw InvertibilityError("matrix is not unimodular (det = " + d.get_str() + ")");
  return d * adjugate(m);
}

IntMatrix pow(const IntMatrix& m, long long n) {
  require_square(m.rows(), m.cols(), "pow");
  IntMatrix base = m;
  if (n < 0) {
    const Integer d = det(m);
    if (d != 1 && d != -1) throw ParameterError("negative power of a non-invertible integer matrix");
    base = inverse(m);
    n = -n;
  }
  IntMatrix result = IntMatrix::identity(m.rows());
  auto e = static_cast<unsigned long long>(n);
  while (e != 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// ModMatrix

ModMatrix::ModMatrix(std::uint64_t modulus, std::size_t rows, std::size_t cols)
    : modulus_(modulus), rows_(rows), cols_(cols), entries_(rows * cols, 0) {
  if (modulus < 2) throw ParameterError("modulus must be at least 2");
  require_shape(rows, cols);
}

ModMatrix::ModMatrix(std::uint64_t modulus, std::size_t rows, std::size_t cols,
                     const std::vector<std::int64_t>& entries)
    : ModMatrix(modulus, rows, cols) {
  if (entries.size() != rows * cols) throw DimensionError("entry count does not match rows x cols");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::int64_t v = entries[i];
    if (v >= 0) {
      entries_[i] = static_cast<std::uint64_t>(v) % modulus;
    } else {
      const std::uint64_t r = (static_cast<std::uint64_t>(-(v + 1)) + 1) % modulus;
      entries_[i] = r == 0 ? 0 : modulus - r;
    }
  }
}

ModMatrix ModMatrix::identity(std::uint64_t modulus, std::size_t n) {
  ModMatrix m(modulus, n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
  return m;
}

void ModMatrix::set(std::size_t i, std::size_t j, const Integer& value) {
  entries_[i * cols_ + j] = mod_u64(value, modulus_);
}

std::vector<std::uint64_t> ModMatrix::apply(std::span<const std::uint64_t> v) const {
  if (v.size() != cols_) throw DimensionError("vector length does not match matrix columns");
  std::vector<std::uint64_t> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    unsigned __int128 acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      acc += static_cast<unsigned __int128>((*this)(i, j)) * (v[j] % modulus_);
      acc %= modulus_;
    }
    out[i] = static_cast<std::uint64_t>(acc);
  }
  return out;
}

IntMatrix ModMatrix::lift() const {
  IntMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = Integer(static_cast<unsigned long>((*this)(i, j)));
  return out;
}

bool ModMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

ModMatrix operator+(const ModMatrix& a, const ModMatrix& b) {
  require_same_modulus(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum shape mismatch");
  ModMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) {
    std::uint64_t s = out.entries_[i] + b.entries_[i];
    out.entries_[i] = s >= a.modulus_ ? s - a.modulus_ : s;
  }
  return out;
}

ModMatrix operator-(const ModMatrix& a, const ModMatrix& b) {
  require_same_modulus(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference shape mismatch");
  ModMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) {
    const std::uint64_t x = out.entries_[i], y = b.entries_[i];
    out.entries_[i] = x >= y ? x - y : x + (a.modulus_ - y);
  }
  return out;
}

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
  require_same_modulus(a, b);
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  ModMatrix out(a.modulus_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) {
      unsigned __int128 acc = 0;
      for (std::size_t l = 0; l < a.cols_; ++l) {
        acc += static_cast<unsigned __int128>(a(i, l)) * b(l, j);
        acc %= a.modulus_;
      }
      out.entries_[i * b.cols_ + j] = static_cast<std::uint64_t>(acc);
    }
  return out;
}

ModMatrix reduce_mod(const IntMatrix& m, std::uint64_t q) {
  ModMatrix out(q, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.set(i, j, m(i, j));
  return out;
}

std::uint64_t det_mod(const ModMatrix& m) {
  require_square(m.rows(), m.cols(), "det");
  return mod_u64(det(m.lift()), m.modulus());
}

bool is_invertible(const ModMatrix& m) {
  return gcd_u64(det_mod(m), m.modulus()) == 1;
}

ModMatrix inverse(const ModMatrix& m) {
  const std::uint64_t d = det_mod(m);
  if (gcd_u64(d, m.modulus()) != 1) throw InvertibilityError("determinant is not a unit modulo " + std::to_string(m.modulus()));
  Integer inv_d;
  const Integer dd(static_cast<unsigned long>(d)), q(static_cast<unsigned long>(m.modulus()));
  mpz_invert(inv_d.get_mpz_t(), dd.get_mpz_t(), q.get_mpz_t());
  return reduce_mod(inv_d * adjugate(m.lift()), m.modulus());
}

ModMatrix pow(const ModMatrix& m, long long n) {
  require_square(m.rows(), m.cols(), "pow");
  ModMatrix base = m;
  if (n < 0) {
    if (!is_invertible(m)) throw ParameterError("negative power of a non-invertible modular matrix");
    base = inverse(m);
    n = -n;
  }
  ModMatrix result = ModMatrix::identity(m.modulus(), m.rows());
  auto e = static_cast<unsigned long long>(n);
  while (e != 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

std::optional<std::uint64_t> matrix_order(const ModMatrix& m, std::uint64_t max_order) {
  require_square(m.rows(), m.cols(), "matrix_order");
  if (!is_invertible(m)) throw InvertibilityError("matrix_order: determinant is not a unit modulo " + std::to_string(m.modulus()));
  ModMatrix power = m;
  for (std::uint64_t n = 1; n <= max_order; ++n) {
    if (power.is_identity()) return n;
    power = power * m;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> matrix_order(const IntMatrix& m, std::uint64_t max_order) {
  require_square(m.rows(), m.cols(), "matrix_order");
  const Integer d = det(m);
  if (d != 1 && d != -1) throw InvertibilityError("matrix_order: matrix is not unimodular (det = " + d.get_str() + ")");
  // The kernel of GL(n,Z) -> GL(n,Z/3) is torsion-free, so a finite order
  // over Z coincides with the order mod 3.
  const auto order3 = matrix_order(reduce_mod(m, 3), max_order);
  if (!order3) return std::nullopt;
  if (!pow(m, static_cast<long long>(*order3)).is_identity()) return std::nullopt;
  return order3;
}

}  // namespace rinfty
