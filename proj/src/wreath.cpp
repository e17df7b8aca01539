#include "rinfty/wreath.hpp"

#include <algorithm>
#include <sstream>

#include "rinfty/errors.hpp"
#include "rinfty/smith.hpp"

namespace rinfty {

namespace {

LatticePoint add_points(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

LatticePoint negate_point(const LatticePoint& a) {
  LatticePoint out = a;
  for (auto& c : out) c = -c;
  return out;
}

std::string element_string(const AbelianElement& a) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (const auto& comp : a.coords)
    for (std::uint64_t x : comp) {
      os << (first ? "" : ",") << x;
      first = false;
    }
  os << ')';
  return os.str();
}

}  // namespace

std::string to_string(const LatticePoint& x) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i].get_str();
  os << ']';
  return os.str();
}

std::string to_string(const WreathElement& x) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [at, value] : x.lamps) {
    os << (first ? "" : " ") << element_string(value) << '@' << to_string(at);
    first = false;
  }
  os << " | " << to_string(x.shift) << '}';
  return os.str();
}

// ---------------------------------------------------------------------------
// WreathProduct

WreathProduct::WreathProduct(PrimePowerDecomposition lamp_group, std::size_t rank)
    : lamp_group_(std::move(lamp_group)), rank_(rank) {
  if (rank_ == 0) throw DimensionError("wreath product rank must be at least 1");
}

WreathElement WreathProduct::identity() const {
  return WreathElement{{}, LatticePoint(rank_, Integer(0))};
}

WreathElement WreathProduct::lamp(const LatticePoint& at, const AbelianElement& value) const {
  if (at.size() != rank_ || !lamp_group_.contains(value)) throw DimensionError("lamp shape mismatch");
  WreathElement e = identity();
  if (!lamp_group_.is_zero(value)) e.lamps.emplace(at, value);
  return e;
}

WreathElement WreathProduct::translation(const LatticePoint& t) const {
  if (t.size() != rank_) throw DimensionError("translation has wrong rank");
  return WreathElement{{}, t};
}

void WreathProduct::check(const WreathElement& a) const {
  if (a.shift.size() != rank_) throw DimensionError("element shift has wrong rank");
  for (const auto& [at, value] : a.lamps) {
    if (at.size() != rank_) throw DimensionError("lamp position has wrong rank");
    if (!lamp_group_.contains(value)) throw DimensionError("lamp value does not belong to the lamp group");
    if (lamp_group_.is_zero(value)) throw DimensionError("lamp support stores a zero value");
  }
}

WreathElement WreathProduct::shift_lamps(const WreathElement& a, const LatticePoint& t) const {
  WreathElement out{{}, a.shift};
  for (const auto& [at, value] : a.lamps) out.lamps.emplace(add_points(at, t), value);
  return out;
}

WreathElement WreathProduct::multiply(const WreathElement& a, const WreathElement& b) const {
  check(a);
  check(b);
  WreathElement out{a.lamps, add_points(a.shift, b.shift)};
  for (const auto& [at, value] : b.lamps) {
    LatticePoint target = add_points(at, a.shift);
    auto it = out.lamps.find(target);
    if (it == out.lamps.end()) {
      out.lamps.emplace(std::move(target), value);
    } else {
      it->second = lamp_group_.add(it->second, value);
      if (lamp_group_.is_zero(it->second)) out.lamps.erase(it);
    }
  }
  return out;
}

WreathElement WreathProduct::inverse(const WreathElement& a) const {
  check(a);
  const LatticePoint back = negate_point(a.shift);
  WreathElement out{{}, back};
  for (const auto& [at, value] : a.lamps) out.lamps.emplace(add_points(at, back), lamp_group_.negate(value));
  return out;
}

LatticePoint WreathProduct::random_point(std::mt19937_64& rng, long radius) const {
  std::uniform_int_distribution<long> coord(-radius, radius);
  LatticePoint x(rank_);
  for (auto& c : x) c = coord(rng);
  return x;
}

WreathElement WreathProduct::random_element(std::mt19937_64& rng, std::size_t max_support, long radius,
                                            bool with_shift) const {
  WreathElement e = identity();
  std::uniform_int_distribution<std::size_t> support(0, max_support);
  const std::size_t count = support(rng);
  for (std::size_t i = 0; i < count; ++i) {
    AbelianElement value = lamp_group_.zero();
    for (std::size_t c = 0; c < lamp_group_.size(); ++c) {
      std::uniform_int_distribution<std::uint64_t> coord(0, lamp_group_[c].modulus() - 1);
      for (auto& x : value.coords[c]) x = coord(rng);
    }
    if (lamp_group_.is_zero(value)) continue;
    e.lamps.insert_or_assign(random_point(rng, radius), value);
  }
  if (with_shift) e.shift = random_point(rng, radius);
  return e;
}

// ---------------------------------------------------------------------------
// Automorphisms

WreathAutomorphism::WreathAutomorphism(IntMatrix base_matrix, BlockAutomorphism action)
    : base(std::move(base_matrix)), lamp_action(std::move(action)) {
  if (!base.is_square()) throw DimensionError("base matrix is not square");
  const Integer d = det(base);
  if (d != 1 && d != -1) throw InvertibilityError("base matrix is not in GL(k,Z) (det = " + d.get_str() + ")");
  if (lamp_action.blocks.empty()) throw DimensionError("automorphism has no lamp blocks");
  (void)lamp_action.tiled_group();
}

WreathElement apply_automorphism(const WreathProduct& w, const WreathAutomorphism& phi, const WreathElement& x) {
  if (phi.rank() != w.rank()) throw DimensionError("automorphism rank does not match the wreath product");
  phi.lamp_action.check_compatible(w.lamp_group());
  w.check(x);
  WreathElement out{{}, phi.base.apply(x.shift)};
  for (const auto& [at, value] : x.lamps)
    out.lamps.emplace(phi.base.apply(at), phi.lamp_action.apply(w.lamp_group(), value));
  return out;
}

EquivarianceReport verify_equivariance(const WreathProduct& w, const IntMatrix& base, const LampMap& lamp_map,
                                       std::size_t trials, std::uint64_t seed) {
  if (base.rows() != w.rank() || !base.is_square()) throw DimensionError("base matrix has wrong size");
  std::mt19937_64 rng(seed);
  EquivarianceReport report;

  const auto full_map = [&](const WreathElement& x) {
    WreathElement lamps_only{x.lamps, LatticePoint(w.rank(), Integer(0))};
    WreathElement image = lamp_map(lamps_only);
    image.shift = base.apply(x.shift);
    return image;
  };

  for (std::size_t t = 0; t < trials; ++t) {
    ++report.trials;
    const WreathElement h = w.random_element(rng, 3, 3, false);
    const LatticePoint m = w.random_point(rng, 3);

    // phi'(alpha(m) h) against alpha(M m) phi'(h)
    const WreathElement lhs = lamp_map(w.shift_lamps(h, m));
    const WreathElement rhs = w.shift_lamps(lamp_map(h), base.apply(m));
    if (lhs != rhs) {
      report.ok = false;
      report.counterexample = "equivariance fails for h = " + to_string(h) + ", m = " + to_string(m) + ": " +
                              to_string(lhs) + " != " + to_string(rhs);
      return report;
    }

    const WreathElement a = w.random_element(rng, 3, 3);
    const WreathElement b = w.random_element(rng, 3, 3);
    const WreathElement ab = full_map(w.multiply(a, b));
    const WreathElement split = w.multiply(full_map(a), full_map(b));
    if (ab != split) {
      report.ok = false;
      report.counterexample = "homomorphism law fails for a = " + to_string(a) + ", b = " + to_string(b);
      return report;
    }
  }
  return report;
}

EquivarianceReport verify_equivariance(const WreathAutomorphism& phi, std::size_t trials, std::uint64_t seed) {
  const WreathProduct w(phi.lamp_group(), phi.rank());
  return verify_equivariance(
      w, phi.base, [&](const WreathElement& x) { return apply_automorphism(w, phi, x); }, trials, seed);
}

std::vector<LatticePoint> affine_orbit(const IntMatrix& m, const LatticePoint& z, const LatticePoint& x,
                                       std::uint64_t max_order) {
  if (!m.is_square() || z.size() != m.rows() || x.size() != m.rows())
    throw DimensionError("affine_orbit: shape mismatch");
  const auto order = matrix_order(m, max_order);
  if (!order) throw OrderError("affine_orbit: matrix has no finite order up to " + std::to_string(max_order));
  std::vector<LatticePoint> orbit{x};
  LatticePoint cur = add_points(m.apply(x), z);
  while (cur != x) {
    // (x -> Mx + z)^n is x -> x + (E + M + ... + M^{n-1}) z, so without the
    // annihilation identity the orbit need not close.
    if (orbit.size() >= *order) throw OrderError("affine_orbit: orbit does not close within the matrix order");
    orbit.push_back(cur);
    cur = add_points(m.apply(cur), z);
  }
  return orbit;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

OrbitCertificate certify_finite_reidemeister(const WreathAutomorphism& phi, std::uint64_t max_order) {
  OrbitCertificate cert;
  const std::size_t k = phi.rank();
  cert.reidemeister_zk = abs(det(IntMatrix::identity(k) - phi.base));

  cert.order = matrix_order(phi.base, max_order);
  if (!cert.order) {
    cert.failure = "base matrix has no finite order up to " + std::to_string(max_order);
    return cert;
  }
  if (sgn(cert.reidemeister_zk) == 0) {
    cert.failure = "det(E - M) = 0: M has nontrivial fixed points and R(phi_bar) is infinite";
    return cert;
  }
  cert.divisors = divisors(*cert.order);

  // Identical blocks give identical checks; evaluate each distinct one once.
  std::map<std::pair<std::vector<std::uint64_t>, std::uint64_t>, bool> memo;
  for (std::uint64_t gamma : cert.divisors) {
    for (std::size_t c = 0; c < phi.lamp_action.blocks.size(); ++c) {
      const ComponentAction& block = phi.lamp_action.blocks[c];
      const std::uint64_t p = block.p();
      bool ok = false;
      if (block.is_scalar()) {
        ok = pow_mod(block.multiplier() % p, gamma, p) != 1;
      } else {
        const ModMatrix f = reduce_mod(block.block().lift(), p);
        std::vector<std::uint64_t> key(f.entries().begin(), f.entries().end());
        key.push_back(p);
        key.push_back(f.rows());
        const auto [it, fresh] = memo.try_emplace({std::move(key), gamma}, false);
        if (fresh) {
          const IntMatrix shifted = pow(f, static_cast<long long>(gamma)).lift() - IntMatrix::identity(f.rows());
          it->second = kernel_count_mod(shifted, p) == 1;
        }
        ok = it->second;
      }
      cert.checks.push_back({gamma, c, ok});
      if (!ok && cert.failure.empty()) {
        std::ostringstream os;
        os << "component " << c << " (p=" << p << ", r=" << block.r() << ", d=" << block.d()
           << ") has nontrivial fixed points at gamma=" << gamma;
        cert.failure = os.str();
      }
    }
  }
  if (cert.failure.empty()) cert.reidemeister = cert.reidemeister_zk;
  return cert;
}

}  // namespace rinfty
