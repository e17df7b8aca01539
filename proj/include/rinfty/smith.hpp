#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rinfty/matrix.hpp"

namespace rinfty {

/// U·M·V = S with U, V unimodular and S diagonal, s_i | s_{i+1}, s_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;

  std::vector<Integer> diagonal() const;
};

/// Deterministic: pivots on the smallest nonzero |entry| of the trailing
/// block, ties to the lowest (row, col), clearing the column before the row.
SmithForm smith_normal_form(const IntMatrix& m);

/// Order of a group that is either finite or countably infinite.
class Cardinal {
 public:
  static Cardinal finite(Integer n) { return Cardinal(std::move(n)); }
  static Cardinal infinite() { return Cardinal(); }

  bool is_finite() const { return value_.has_value(); }
  /// Throws std::bad_optional_access when infinite.
  const Integer& value() const { return value_.value(); }
  std::string to_string() const { return value_ ? value_->get_str() : "infinite"; }

  friend bool operator==(const Cardinal&, const Cardinal&) = default;

 private:
  Cardinal() = default;
  explicit Cardinal(Integer n) : value_(std::move(n)) {}
  std::optional<Integer> value_;
};

/// |Z^n / M Z^n|: product of the Smith diagonal, infinite if any entry is 0.
Cardinal coker_order(const IntMatrix& m);

/// #{x in (Z/q)^d : Bx = 0 mod q} for square B, computed as prod gcd(s_i, q)
/// over the Smith diagonal of the integer lift (s_i = 0 contributes q).
Integer kernel_count_mod(const IntMatrix& b, std::uint64_t q);

}  // namespace rinfty
