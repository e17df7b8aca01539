#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rinfty/abelian.hpp"
#include "rinfty/wreath.hpp"

namespace rinfty {

inline constexpr std::uint64_t kLamplighterOracleBound = 100000;

/// How twisted classes are merged in the finite analogue.
enum class ClassStrategy {
  AllPairs,    // union x with g x psi(g)^{-1} for every pair (g, x)
  Generators,  // same, with g restricted to a generating set
};

/// Decoded element of G wr (Z_n)^k. Positions are mixed-radix indices into
/// (Z_n)^k with coordinate 0 least significant; lamp values are
/// PrimePowerDecomposition::encode indices.
struct FiniteWreathElement {
  std::vector<std::uint32_t> lamps;
  std::uint32_t shift = 0;
};

struct LamplighterClasses {
  std::uint64_t count = 0;
  /// Least encoded index in each class, ascending.
  std::vector<std::uint64_t> representatives;
};

/// Splits R(phi) and compares it against the sum over Reidemeister
/// classes z_j of M mod n of R(tau_{z_j} o phi') on the lamp subgroup.
struct SumFormulaCheck {
  /// False when M mod n has nontrivial fixed points; the remaining fields
  /// other than `total` are then empty.
  bool applicable = false;
  std::vector<std::uint32_t> base_representatives;
  std::vector<std::uint64_t> terms;
  std::uint64_t sum = 0;
  std::uint64_t total = 0;
  bool ok = false;
};

/// Brute-force twisted conjugacy on the finite analogue G wr (Z_n)^k of an
/// automorphism phi of G wr Z^k, with lamps moved by M mod n.
class FiniteLamplighterOracle {
 public:
  /// Throws SizeBoundError when |G|^(n^k) * n^k > bound, InvertibilityError
  /// when gcd(det M, n) != 1, DimensionError on shape mismatch.
  FiniteLamplighterOracle(const PrimePowerDecomposition& g, std::uint64_t n, std::size_t k,
                          const WreathAutomorphism& phi, std::uint64_t bound = kLamplighterOracleBound);

  std::uint64_t order() const { return order_; }
  std::uint32_t positions() const { return positions_; }
  std::uint32_t lamp_order() const { return lamp_order_; }

  FiniteWreathElement decode(std::uint64_t index) const;
  std::uint64_t encode(const FiniteWreathElement& x) const;
  std::uint32_t encode_position(const std::vector<std::uint64_t>& coords) const;
  std::vector<std::uint64_t> decode_position(std::uint32_t index) const;

  FiniteWreathElement multiply(const FiniteWreathElement& a, const FiniteWreathElement& b) const;
  FiniteWreathElement inverse(const FiniteWreathElement& a) const;
  /// tau_z o phi, where tau_z is conjugation by the pure translation z.
  FiniteWreathElement apply(const FiniteWreathElement& x, std::uint32_t twister = 0) const;

  /// Classes of x ~ g x psi(g)^{-1} with psi = tau_twister o phi.
  LamplighterClasses twisted_classes(std::uint32_t twister = 0,
                                     ClassStrategy strategy = ClassStrategy::Generators) const;

  /// Reidemeister classes of M mod n on (Z_n)^k (least index per class).
  std::vector<std::uint32_t> base_class_representatives() const;
  /// #{y : My = y mod n}.
  std::uint64_t base_fixed_count() const;
  /// R(tau_z o phi') on the abelian lamp subgroup, by coset enumeration.
  std::uint64_t lamp_reidemeister(std::uint32_t twister) const;

  SumFormulaCheck sum_formula(ClassStrategy strategy = ClassStrategy::Generators) const;

 private:
  std::vector<std::uint64_t> generators() const;

  PrimePowerDecomposition group_;
  std::uint64_t n_;
  std::size_t k_;
  std::uint32_t lamp_order_ = 0;
  std::uint32_t positions_ = 0;
  std::uint64_t order_ = 0;
  std::uint64_t lamp_configs_ = 0;

  std::vector<std::uint32_t> lamp_add_;   // lamp_order^2
  std::vector<std::uint32_t> lamp_neg_;
  std::vector<std::uint32_t> lamp_act_;   // F on G
  std::vector<std::uint32_t> pos_add_;    // positions^2
  std::vector<std::uint32_t> pos_neg_;
  std::vector<std::uint32_t> pos_act_;    // M mod n
};

/// Convenience wrapper: class count and representatives of tau_z o phi on
/// G wr (Z_n)^k. `twister` is a point of Z^k, reduced mod n.
LamplighterClasses finite_lamplighter_reidemeister(const PrimePowerDecomposition& g, std::uint64_t n, std::size_t k,
                                                   const WreathAutomorphism& phi,
                                                   const std::optional<LatticePoint>& twister = std::nullopt,
                                                   std::uint64_t bound = kLamplighterOracleBound);

}  // namespace rinfty
