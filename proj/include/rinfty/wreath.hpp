#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rinfty/abelian.hpp"
#include "rinfty/matrix.hpp"

namespace rinfty {

/// A point of Z^k. std::vector's lexicographic order is the total order used
/// for lamp supports.
using LatticePoint = std::vector<Integer>;

/// (f, s) in G wr Z^k: finitely supported lamps f and lamplighter position s.
/// The support never stores the zero of G.
struct WreathElement {
  std::map<LatticePoint, AbelianElement> lamps;
  LatticePoint shift;

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

std::string to_string(const LatticePoint& x);
std::string to_string(const WreathElement& x);

/// G wr Z^k = (+)_{x in Z^k} G_x  x|  Z^k with alpha(x)(g_y) = g_{x+y}.
class WreathProduct {
 public:
  WreathProduct(PrimePowerDecomposition lamp_group, std::size_t rank);

  const PrimePowerDecomposition& lamp_group() const { return lamp_group_; }
  std::size_t rank() const { return rank_; }

  WreathElement identity() const;
  WreathElement lamp(const LatticePoint& at, const AbelianElement& value) const;
  WreathElement translation(const LatticePoint& t) const;

  /// (f, s)(g, t) = (f + alpha(s)g, s + t).
  WreathElement multiply(const WreathElement& a, const WreathElement& b) const;
  WreathElement inverse(const WreathElement& a) const;
  /// alpha(t) applied to the lamps of a; the position is untouched.
  WreathElement shift_lamps(const WreathElement& a, const LatticePoint& t) const;

  /// Throws DimensionError on shape mismatch or a stored zero lamp.
  void check(const WreathElement& a) const;

  /// Random element with at most max_support lamps, coordinates in
  /// [-radius, radius].
  WreathElement random_element(std::mt19937_64& rng, std::size_t max_support, long radius,
                               bool with_shift = true) const;
  LatticePoint random_point(std::mt19937_64& rng, long radius) const;

 private:
  PrimePowerDecomposition lamp_group_;
  std::size_t rank_;
};

/// phi = (phi', phi_bar): lamps move by phi'(a_x) = (Fa)_{M x}, positions by M.
/// Z^k is phi-invariant and phi restricts to M on it.
struct WreathAutomorphism {
  IntMatrix base;
  BlockAutomorphism lamp_action;

  /// Validates |det M| = 1; blocks are invertible by construction.
  WreathAutomorphism(IntMatrix base, BlockAutomorphism lamp_action);

  std::size_t rank() const { return base.rows(); }
  PrimePowerDecomposition lamp_group() const { return lamp_action.tiled_group(); }
};

WreathElement apply_automorphism(const WreathProduct& w, const WreathAutomorphism& phi, const WreathElement& x);

/// A map on lamp configurations, fed elements with zero shift.
using LampMap = std::function<WreathElement(const WreathElement&)>;

struct EquivarianceReport {
  bool ok = true;
  std::size_t trials = 0;
  std::string counterexample;
};

/// Checks phi'(alpha(m)h) = alpha(M m)phi'(h) and the homomorphism law for
/// phi(f, s) = (phi'(f), M s) on random samples. Deterministic in seed.
EquivarianceReport verify_equivariance(const WreathProduct& w, const IntMatrix& base, const LampMap& lamp_map,
                                       std::size_t trials, std::uint64_t seed);
EquivarianceReport verify_equivariance(const WreathAutomorphism& phi, std::size_t trials, std::uint64_t seed);

/// x, Mx + z, M(Mx + z) + z, ... up to (excluding) the return to x.
/// Throws OrderError if M has no finite order within max_order.
std::vector<LatticePoint> affine_orbit(const IntMatrix& m, const LatticePoint& z, const LatticePoint& x,
                                       std::uint64_t max_order = kDefaultMaxOrder);

struct CertificateCheck {
  std::uint64_t gamma = 0;
  std::size_t component = 0;  // index into lamp_action.blocks
  bool ok = false;
};

/// Result of certify_finite_reidemeister. `reidemeister` is set only when
/// every check passed and det(E - M) != 0.
struct OrbitCertificate {
  std::optional<std::uint64_t> order;
  std::vector<std::uint64_t> divisors;
  std::vector<CertificateCheck> checks;
  Integer reidemeister_zk = 0;  // |det(E - M)|, 0 when the fixed lattice is nontrivial
  std::optional<Integer> reidemeister;
  std::string failure;

  bool certified() const { return reidemeister.has_value(); }
};

/// Certifies R(phi) = |det(E - M)| for a block-form automorphism.
///
/// Affine orbits of x -> Mx + z have length dividing ord(M), and every twisted
/// map tau_z o phi' acts on such an orbit of length gamma through F^gamma. So
/// it suffices that F^gamma - E (resp. m^gamma - 1) is invertible mod p for
/// every divisor gamma of ord(M): then each R(tau_z o phi') = 1 and R(phi)
/// equals the number of Reidemeister classes of M on Z^k.
OrbitCertificate certify_finite_reidemeister(const WreathAutomorphism& phi,
                                             std::uint64_t max_order = kDefaultMaxOrder);

std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace rinfty
