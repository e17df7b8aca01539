#include "rinfty/lamplighter.hpp"

#include <limits>

#include "rinfty/errors.hpp"
#include "rinfty/union_find.hpp"

namespace rinfty {

FiniteLamplighterOracle::FiniteLamplighterOracle(const PrimePowerDecomposition& g, std::uint64_t n, std::size_t k,
                                                 const WreathAutomorphism& phi, std::uint64_t bound)
    : group_(g), n_(n), k_(k) {
  if (n < 2) throw ParameterError("finite analogue needs n >= 2");
  if (phi.rank() != k) throw DimensionError("automorphism rank does not match k");
  phi.lamp_action.check_compatible(g);

  const Integer lamp_order = g.order();
  Integer positions;
  mpz_ui_pow_ui(positions.get_mpz_t(), n, k);
  Integer configs;
  if (positions > Integer(64)) throw SizeBoundError("finite analogue has too many lattice positions");
  mpz_pow_ui(configs.get_mpz_t(), lamp_order.get_mpz_t(), positions.get_ui());
  const Integer total = configs * positions;
  if (total > Integer(static_cast<unsigned long>(bound)))
    throw SizeBoundError("finite analogue of order " + total.get_str() + " exceeds oracle bound " +
                         std::to_string(bound));
  lamp_order_ = static_cast<std::uint32_t>(lamp_order.get_ui());
  positions_ = static_cast<std::uint32_t>(positions.get_ui());
  lamp_configs_ = configs.get_ui();
  order_ = total.get_ui();

  if (gcd_u64(mod_u64(det(phi.base), n), n) != 1)
    throw InvertibilityError("base matrix is not invertible modulo " + std::to_string(n));

  lamp_add_.resize(std::size_t{lamp_order_} * lamp_order_);
  lamp_neg_.resize(lamp_order_);
  lamp_act_.resize(lamp_order_);
  for (std::uint32_t a = 0; a < lamp_order_; ++a) {
    const AbelianElement x = g.decode(a);
    for (std::uint32_t b = 0; b < lamp_order_; ++b)
      lamp_add_[std::size_t{a} * lamp_order_ + b] = static_cast<std::uint32_t>(g.encode(g.add(x, g.decode(b))));
    lamp_neg_[a] = static_cast<std::uint32_t>(g.encode(g.negate(x)));
    lamp_act_[a] = static_cast<std::uint32_t>(g.encode(phi.lamp_action.apply(g, x)));
  }

  const ModMatrix base = reduce_mod(phi.base, n);
  pos_add_.resize(std::size_t{positions_} * positions_);
  pos_neg_.resize(positions_);
  pos_act_.resize(positions_);
  for (std::uint32_t x = 0; x < positions_; ++x) {
    const auto xc = decode_position(x);
    for (std::uint32_t y = 0; y < positions_; ++y) {
      auto yc = decode_position(y);
      for (std::size_t i = 0; i < k_; ++i) yc[i] = (yc[i] + xc[i]) % n_;
      pos_add_[std::size_t{x} * positions_ + y] = encode_position(yc);
    }
    auto neg = xc;
    for (auto& c : neg) c = (n_ - c) % n_;
    pos_neg_[x] = encode_position(neg);
    pos_act_[x] = encode_position(base.apply(xc));
  }
}

std::uint32_t FiniteLamplighterOracle::encode_position(const std::vector<std::uint64_t>& coords) const {
  std::uint64_t index = 0, radix = 1;
  for (std::size_t i = 0; i < k_; ++i) {
    index += (coords[i] % n_) * radix;
    radix *= n_;
  }
  return static_cast<std::uint32_t>(index);
}

std::vector<std::uint64_t> FiniteLamplighterOracle::decode_position(std::uint32_t index) const {
  std::vector<std::uint64_t> coords(k_);
  std::uint64_t rest = index;
  for (auto& c : coords) {
    c = rest % n_;
    rest /= n_;
  }
  return coords;
}

FiniteWreathElement FiniteLamplighterOracle::decode(std::uint64_t index) const {
  FiniteWreathElement x;
  x.shift = static_cast<std::uint32_t>(index % positions_);
  std::uint64_t rest = index / positions_;
  x.lamps.resize(positions_);
  for (auto& v : x.lamps) {
    v = static_cast<std::uint32_t>(rest % lamp_order_);
    rest /= lamp_order_;
  }
  return x;
}

std::uint64_t FiniteLamplighterOracle::encode(const FiniteWreathElement& x) const {
  std::uint64_t lamps = 0;
  for (std::size_t p = positions_; p-- > 0;) lamps = lamps * lamp_order_ + x.lamps[p];
  return lamps * positions_ + x.shift;
}

FiniteWreathElement FiniteLamplighterOracle::multiply(const FiniteWreathElement& a,
                                                      const FiniteWreathElement& b) const {
  FiniteWreathElement out = a;
  const std::uint32_t* shift_row = &pos_add_[std::size_t{a.shift} * positions_];
  for (std::uint32_t y = 0; y < positions_; ++y) {
    auto& slot = out.lamps[shift_row[y]];
    slot = lamp_add_[std::size_t{slot} * lamp_order_ + b.lamps[y]];
  }
  out.shift = shift_row[b.shift];
  return out;
}

FiniteWreathElement FiniteLamplighterOracle::inverse(const FiniteWreathElement& a) const {
  FiniteWreathElement out;
  out.lamps.resize(positions_);
  out.shift = pos_neg_[a.shift];
  const std::uint32_t* back = &pos_add_[std::size_t{out.shift} * positions_];
  for (std::uint32_t y = 0; y < positions_; ++y) out.lamps[back[y]] = lamp_neg_[a.lamps[y]];
  return out;
}

FiniteWreathElement FiniteLamplighterOracle::apply(const FiniteWreathElement& x, std::uint32_t twister) const {
  FiniteWreathElement out;
  out.lamps.assign(positions_, 0);
  const std::uint32_t* twist = &pos_add_[std::size_t{twister} * positions_];
  for (std::uint32_t y = 0; y < positions_; ++y) out.lamps[twist[pos_act_[y]]] = lamp_act_[x.lamps[y]];
  out.shift = pos_act_[x.shift];
  return out;
}

std::vector<std::uint64_t> FiniteLamplighterOracle::generators() const {
  std::vector<std::uint64_t> gens;
  FiniteWreathElement e;
  e.lamps.assign(positions_, 0);
  // Unit vectors of G at position 0.
  AbelianElement unit = group_.zero();
  for (std::size_t c = 0; c < group_.size(); ++c)
    for (std::size_t j = 0; j < group_[c].d; ++j) {
      unit.coords[c][j] = 1;
      e.lamps[0] = static_cast<std::uint32_t>(group_.encode(unit));
      gens.push_back(encode(e));
      unit.coords[c][j] = 0;
    }
  e.lamps[0] = 0;
  // Unit translations of (Z_n)^k.
  for (std::size_t i = 0; i < k_; ++i) {
    std::vector<std::uint64_t> coords(k_, 0);
    coords[i] = 1;
    e.shift = encode_position(coords);
    gens.push_back(encode(e));
  }
  return gens;
}

LamplighterClasses FiniteLamplighterOracle::twisted_classes(std::uint32_t twister, ClassStrategy strategy) const {
  if (twister >= positions_) throw DimensionError("twister is not a position of the finite analogue");
  std::vector<std::uint64_t> movers;
  if (strategy == ClassStrategy::Generators) {
    movers = generators();
  } else {
    movers.resize(order_);
    for (std::uint64_t i = 0; i < order_; ++i) movers[i] = i;
  }
  std::vector<FiniteWreathElement> left, right;
  left.reserve(movers.size());
  right.reserve(movers.size());
  for (std::uint64_t g : movers) {
    const FiniteWreathElement ge = decode(g);
    left.push_back(ge);
    right.push_back(inverse(apply(ge, twister)));
  }

  UnionFind classes(order_);
  for (std::uint64_t xi = 0; xi < order_; ++xi) {
    const FiniteWreathElement x = decode(xi);
    for (std::size_t j = 0; j < movers.size(); ++j)
      classes.merge(xi, encode(multiply(multiply(left[j], x), right[j])));
  }

  LamplighterClasses out;
  std::vector<char> seen(order_, 0);
  for (std::uint64_t xi = 0; xi < order_; ++xi) {
    const std::size_t root = classes.find(xi);
    if (seen[root]) continue;
    seen[root] = 1;
    out.representatives.push_back(xi);
  }
  out.count = out.representatives.size();
  return out;
}

std::vector<std::uint32_t> FiniteLamplighterOracle::base_class_representatives() const {
  std::vector<char> in_image(positions_, 0);
  std::vector<std::uint32_t> image;
  for (std::uint32_t g = 0; g < positions_; ++g) {
    const std::uint32_t d = pos_add_[std::size_t{g} * positions_ + pos_neg_[pos_act_[g]]];
    if (!in_image[d]) {
      in_image[d] = 1;
      image.push_back(d);
    }
  }
  std::vector<char> covered(positions_, 0);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t x = 0; x < positions_; ++x) {
    if (covered[x]) continue;
    reps.push_back(x);
    for (std::uint32_t h : image) covered[pos_add_[std::size_t{x} * positions_ + h]] = 1;
  }
  return reps;
}

std::uint64_t FiniteLamplighterOracle::base_fixed_count() const {
  std::uint64_t fixed = 0;
  for (std::uint32_t y = 0; y < positions_; ++y) fixed += pos_act_[y] == y;
  return fixed;
}

std::uint64_t FiniteLamplighterOracle::lamp_reidemeister(std::uint32_t twister) const {
  if (twister >= positions_) throw DimensionError("twister is not a position of the finite analogue");
  std::vector<char> in_image(lamp_configs_, 0);
  std::uint64_t image_size = 0;
  FiniteWreathElement f;
  f.lamps.assign(positions_, 0);
  for (std::uint64_t c = 0; c < lamp_configs_; ++c) {
    std::uint64_t rest = c;
    for (auto& v : f.lamps) {
      v = static_cast<std::uint32_t>(rest % lamp_order_);
      rest /= lamp_order_;
    }
    const FiniteWreathElement image = apply(f, twister);
    std::uint64_t diff = 0;
    for (std::size_t p = positions_; p-- > 0;)
      diff = diff * lamp_order_ + lamp_add_[std::size_t{f.lamps[p]} * lamp_order_ + lamp_neg_[image.lamps[p]]];
    if (!in_image[diff]) {
      in_image[diff] = 1;
      ++image_size;
    }
  }
  return lamp_configs_ / image_size;
}

SumFormulaCheck FiniteLamplighterOracle::sum_formula(ClassStrategy strategy) const {
  SumFormulaCheck check;
  check.total = twisted_classes(0, strategy).count;
  check.applicable = base_fixed_count() == 1;
  if (!check.applicable) return check;
  check.base_representatives = base_class_representatives();
  for (std::uint32_t z : check.base_representatives) {
    check.terms.push_back(lamp_reidemeister(z));
    check.sum += check.terms.back();
  }
  check.ok = check.sum == check.total;
  return check;
}

LamplighterClasses finite_lamplighter_reidemeister(const PrimePowerDecomposition& g, std::uint64_t n, std::size_t k,
                                                   const WreathAutomorphism& phi,
                                                   const std::optional<LatticePoint>& twister, std::uint64_t bound) {
  const FiniteLamplighterOracle oracle(g, n, k, phi, bound);
  std::uint32_t z = 0;
  if (twister) {
    if (twister->size() != k) throw DimensionError("twister has wrong rank");
    std::vector<std::uint64_t> coords;
    for (const auto& c : *twister) coords.push_back(mod_u64(c, n));
    z = oracle.encode_position(coords);
  }
  return oracle.twisted_classes(z);
}

}  // namespace rinfty
