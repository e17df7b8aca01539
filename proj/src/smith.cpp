#include "rinfty/smith.hpp"

#include <algorithm>
#include <utility>

#include "rinfty/errors.hpp"

namespace rinfty {

namespace {

// Working state of the elimination: A = U·M·V is maintained throughout.
class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& m)
      : a_(m), u_(IntMatrix::identity(m.rows())), v_(IntMatrix::identity(m.cols())) {}

  SmithForm run() {
    const std::size_t steps = std::min(a_.rows(), a_.cols());
    for (std::size_t t = 0; t < steps; ++t) {
      if (!reduce_step(t)) break;
      if (sgn(a_(t, t)) < 0) negate_row(t);
    }
    return SmithForm{std::move(u_), std::move(a_), std::move(v_)};
  }

 private:
  // Returns false when the trailing block is entirely zero.
  bool reduce_step(std::size_t t) {
    for (;;) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) return false;
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool remainder = false;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (sgn(a_(i, t)) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
        add_row_multiple(i, t, -q);
        if (sgn(a_(i, t)) != 0) remainder = true;
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (sgn(a_(t, j)) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
        add_col_multiple(j, t, -q);
        if (sgn(a_(t, j)) != 0) remainder = true;
      }
      if (remainder) continue;

      // Divisibility chain: fold an offending row into the pivot row and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < a_.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < a_.cols(); ++j)
          if (!mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
            add_row_multiple(t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) return true;
    }
  }

  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        if (sgn(a_(i, j)) == 0) continue;
        if (!found || cmpabs(a_(i, j), a_(pi, pj)) < 0) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    return found;
  }

  void swap_rows(std::size_t r, std::size_t s) {
    if (r == s) return;
    for (std::size_t j = 0; j < a_.cols(); ++j) std::swap(a_(r, j), a_(s, j));
    for (std::size_t j = 0; j < u_.cols(); ++j) std::swap(u_(r, j), u_(s, j));
  }

  void swap_cols(std::size_t c, std::size_t d) {
    if (c == d) return;
    for (std::size_t i = 0; i < a_.rows(); ++i) std::swap(a_(i, c), a_(i, d));
    for (std::size_t i = 0; i < v_.rows(); ++i) std::swap(v_(i, c), v_(i, d));
  }

  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t j = 0; j < a_.cols(); ++j) a_(dst, j) += k * a_(src, j);
    for (std::size_t j = 0; j < u_.cols(); ++j) u_(dst, j) += k * u_(src, j);
  }

  // col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t i = 0; i < a_.rows(); ++i) a_(i, dst) += k * a_(i, src);
    for (std::size_t i = 0; i < v_.rows(); ++i) v_(i, dst) += k * v_(i, src);
  }

  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < a_.cols(); ++j) a_(r, j) = -a_(r, j);
    for (std::size_t j = 0; j < u_.cols(); ++j) u_(r, j) = -u_(r, j);
  }

  static int cmpabs(const Integer& x, const Integer& y) { return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t()); }

  IntMatrix a_;
  IntMatrix u_;
  IntMatrix v_;
};

}  // namespace

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> out;
  const std::size_t n = std::min(S.rows(), S.cols());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(S(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  return SmithReducer(m).run();
}

Cardinal coker_order(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("coker_order: matrix is not square");
  Integer order = 1;
  for (const auto& s : smith_normal_form(m).diagonal()) {
    if (sgn(s) == 0) return Cardinal::infinite();
    order *= s;
  }
  return Cardinal::finite(order);
}

Integer kernel_count_mod(const IntMatrix& b, std::uint64_t q) {
  if (q < 2) throw ParameterError("kernel_count_mod: modulus must be at least 2");
  if (!b.is_square()) throw DimensionError("kernel_count_mod: matrix is not square");
  const Integer qq(static_cast<unsigned long>(q));
  Integer count = 1;
  for (const auto& s : smith_normal_form(b).diagonal()) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), s.get_mpz_t(), qq.get_mpz_t());
    count *= g;  // gcd(0, q) = q
  }
  return count;
}

}  // namespace rinfty
