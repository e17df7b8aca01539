#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rinfty/matrix.hpp"

namespace rinfty {

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// One homogeneous summand (Z_{p^r})^d.
struct PrimePowerComponent {
  std::uint64_t p = 0;
  unsigned r = 0;
  unsigned d = 0;

  std::uint64_t modulus() const;
  friend bool operator==(const PrimePowerComponent&, const PrimePowerComponent&) = default;
};

/// Element of G as one coordinate vector per component, each coordinate
/// reduced into [0, p^r).
struct AbelianElement {
  std::vector<std::vector<std::uint64_t>> coords;

  friend bool operator==(const AbelianElement&, const AbelianElement&) = default;
  friend auto operator<=>(const AbelianElement&, const AbelianElement&) = default;
};

/// G = (+)_i (Z_{p_i^{r_i}})^{d_i}, components kept in the order given.
class PrimePowerDecomposition {
 public:
  /// Validates primality, r, d >= 1, distinct (p, r) and p^r < 2^62.
  explicit PrimePowerDecomposition(std::vector<PrimePowerComponent> components);

  const std::vector<PrimePowerComponent>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  const PrimePowerComponent& operator[](std::size_t i) const { return components_[i]; }

  Integer order() const;
  /// Total number of cyclic summands, sum of d_i.
  std::size_t rank() const;
  /// Canonical "p^r:d,..." text, parseable by parse_group.
  std::string to_string() const;

  AbelianElement zero() const;
  AbelianElement add(const AbelianElement& a, const AbelianElement& b) const;
  AbelianElement subtract(const AbelianElement& a, const AbelianElement& b) const;
  AbelianElement negate(const AbelianElement& a) const;
  bool is_zero(const AbelianElement& a) const;
  /// Shape and range check.
  bool contains(const AbelianElement& a) const;

  /// Mixed-radix index in [0, |G|); the first coordinate is least significant.
  /// Throws SizeBoundError when |G| does not fit in 64 bits.
  std::uint64_t encode(const AbelianElement& a) const;
  AbelianElement decode(std::uint64_t index) const;

  friend bool operator==(const PrimePowerDecomposition&, const PrimePowerDecomposition&) = default;

 private:
  std::vector<PrimePowerComponent> components_;
};

/// Grammar: term ("," term)*, term := p "^" r ":" d. Whitespace around
/// tokens is ignored.
PrimePowerDecomposition parse_group(std::string_view spec);

/// Invertible action on one block (Z_{p^r})^d: a d x d matrix over Z_{p^r},
/// or multiplication by a unit scalar.
class ComponentAction {
 public:
  static ComponentAction matrix(std::uint64_t p, unsigned r, const IntMatrix& block);
  static ComponentAction scalar(std::uint64_t p, unsigned r, unsigned d, const Integer& multiplier);

  std::uint64_t p() const { return p_; }
  unsigned r() const { return r_; }
  unsigned d() const { return d_; }
  std::uint64_t modulus() const { return block_.modulus(); }
  bool is_scalar() const { return multiplier_.has_value(); }
  /// Only meaningful for scalar actions.
  std::uint64_t multiplier() const { return multiplier_.value(); }
  /// The action as a d x d matrix over Z_{p^r} (scalars become u*E).
  const ModMatrix& block() const { return block_; }

  std::vector<std::uint64_t> apply(std::span<const std::uint64_t> x) const;

  friend bool operator==(const ComponentAction&, const ComponentAction&) = default;

 private:
  ComponentAction(std::uint64_t p, unsigned r, ModMatrix block, std::optional<std::uint64_t> multiplier);

  std::uint64_t p_;
  unsigned r_;
  unsigned d_;
  ModMatrix block_;
  std::optional<std::uint64_t> multiplier_;
};

/// Block-diagonal automorphism of G. Blocks tile the components of G in
/// order: consecutive blocks with the same (p, r) split one component.
struct BlockAutomorphism {
  std::vector<ComponentAction> blocks;

  static BlockAutomorphism identity(const PrimePowerDecomposition& g);

  /// The decomposition the blocks tile; throws DimensionError if the blocks
  /// revisit a (p, r) after leaving it.
  PrimePowerDecomposition tiled_group() const;
  /// Throws DimensionError unless tiled_group() == g.
  void check_compatible(const PrimePowerDecomposition& g) const;

  /// Assumes compatibility has been checked.
  AbelianElement apply(const PrimePowerDecomposition& g, const AbelianElement& x) const;
};

/// |C(phi)| = prod over blocks of kernel_count_mod(block - E, p^r).
Integer fixed_count(const PrimePowerDecomposition& g, const BlockAutomorphism& phi);

/// R(phi) for an automorphism of a finite abelian group, which equals |C(phi)|.
Integer reidemeister_abelian(const PrimePowerDecomposition& g, const BlockAutomorphism& phi);

inline constexpr std::uint64_t kAbelianOracleBound = std::uint64_t{1} << 16;

struct TwistedClasses {
  std::uint64_t count = 0;
  /// |Im(id - phi)|; count * image_size = |G|.
  std::uint64_t image_size = 0;
  /// Least element (by encode index) of each class, ascending.
  std::vector<AbelianElement> representatives;
};

/// Enumerates x ~ x + g - phi(g) directly: the classes are the cosets of
/// {g - phi(g)}. Throws SizeBoundError when |G| > bound.
TwistedClasses twisted_classes_bruteforce(const PrimePowerDecomposition& g, const BlockAutomorphism& phi,
                                          std::uint64_t bound = kAbelianOracleBound);

using ElementMap = std::function<AbelianElement(const AbelianElement&)>;

/// Same oracle for an arbitrary automorphism given as a raw element map
/// (e.g. maps mixing Z_4 and Z_2 summands).
TwistedClasses twisted_classes_bruteforce(const PrimePowerDecomposition& g, const ElementMap& phi,
                                          std::uint64_t bound = kAbelianOracleBound);

enum class MultiplierRule {
  Fixed,          // 3 when p = 7, else 2
  SmallestValid,  // least m >= 2 passing the unit conditions
};

/// Multiplier m with m^3 and 1 - m^3 both units in Z_{p^r}. No such m
/// exists for p = 2 (ParameterError).
std::uint64_t select_m(std::uint64_t p, unsigned r, MultiplierRule rule = MultiplierRule::Fixed);

}  // namespace rinfty
