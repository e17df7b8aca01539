#include "rinfty/abelian.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "rinfty/errors.hpp"
#include "rinfty/smith.hpp"

namespace rinfty {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set below 3.3 * 10^24.
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t PrimePowerComponent::modulus() const {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < r; ++i) q *= p;
  return q;
}

// ---------------------------------------------------------------------------
// PrimePowerDecomposition

PrimePowerDecomposition::PrimePowerDecomposition(std::vector<PrimePowerComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw ParseError("group has no components");
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    if (!is_prime(c.p)) throw ParseError(std::to_string(c.p) + " is not prime");
    if (c.r == 0) throw ParseError("exponent r must be at least 1");
    if (c.d == 0) throw ParseError("multiplicity d must be at least 1");
    std::uint64_t q = 1;
    for (unsigned e = 0; e < c.r; ++e) {
      if (q > (std::uint64_t{1} << 62) / c.p) throw ParseError("prime power too large: " + std::to_string(c.p) + "^" + std::to_string(c.r));
      q *= c.p;
    }
    for (std::size_t j = 0; j < i; ++j)
      if (components_[j].p == c.p && components_[j].r == c.r)
        throw ParseError("duplicate component " + std::to_string(c.p) + "^" + std::to_string(c.r));
  }
}

Integer PrimePowerDecomposition::order() const {
  Integer n = 1;
  for (const auto& c : components_) {
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), c.p, static_cast<unsigned long>(c.r) * c.d);
    n *= q;
  }
  return n;
}

std::size_t PrimePowerDecomposition::rank() const {
  std::size_t n = 0;
  for (const auto& c : components_) n += c.d;
  return n;
}

std::string PrimePowerDecomposition::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < components_.size(); ++i)
    os << (i ? "," : "") << components_[i].p << '^' << components_[i].r << ':' << components_[i].d;
  return os.str();
}

AbelianElement PrimePowerDecomposition::zero() const {
  AbelianElement e;
  e.coords.reserve(components_.size());
  for (const auto& c : components_) e.coords.emplace_back(c.d, 0);
  return e;
}

AbelianElement PrimePowerDecomposition::add(const AbelianElement& a, const AbelianElement& b) const {
  AbelianElement out = a;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const std::uint64_t q = components_[i].modulus();
    for (std::size_t j = 0; j < out.coords[i].size(); ++j) {
      const std::uint64_t s = out.coords[i][j] + b.coords[i][j];
      out.coords[i][j] = s >= q ? s - q : s;
    }
  }
  return out;
}

AbelianElement PrimePowerDecomposition::negate(const AbelianElement& a) const {
  AbelianElement out = a;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const std::uint64_t q = components_[i].modulus();
    for (auto& x : out.coords[i]) x = x == 0 ? 0 : q - x;
  }
  return out;
}

AbelianElement PrimePowerDecomposition::subtract(const AbelianElement& a, const AbelianElement& b) const {
  return add(a, negate(b));
}

bool PrimePowerDecomposition::is_zero(const AbelianElement& a) const {
  return std::all_of(a.coords.begin(), a.coords.end(), [](const auto& v) {
    return std::all_of(v.begin(), v.end(), [](std::uint64_t x) { return x == 0; });
  });
}

bool PrimePowerDecomposition::contains(const AbelianElement& a) const {
  if (a.coords.size() != components_.size()) return false;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (a.coords[i].size() != components_[i].d) return false;
    const std::uint64_t q = components_[i].modulus();
    for (std::uint64_t x : a.coords[i])
      if (x >= q) return false;
  }
  return true;
}

std::uint64_t PrimePowerDecomposition::encode(const AbelianElement& a) const {
  const Integer n = order();
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 63) throw SizeBoundError("group too large to index");
  std::uint64_t index = 0, radix = 1;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const std::uint64_t q = components_[i].modulus();
    for (std::uint64_t x : a.coords[i]) {
      index += x * radix;
      radix *= q;
    }
  }
  return index;
}

AbelianElement PrimePowerDecomposition::decode(std::uint64_t index) const {
  AbelianElement e = zero();
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const std::uint64_t q = components_[i].modulus();
    for (auto& x : e.coords[i]) {
      x = index % q;
      index /= q;
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// parse_group

namespace {

std::string_view trim(std::string_view s) {
  const auto space = [](char c) { return c == ' ' || c == '\t'; };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_decimal(std::string_view token, std::string_view term) {
  token = trim(token);
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end)
    throw ParseError("malformed group term '" + std::string(term) + "'");
  return value;
}

}  // namespace

PrimePowerDecomposition parse_group(std::string_view spec) {
  std::vector<PrimePowerComponent> components;
  if (trim(spec).empty()) throw ParseError("empty group spec");
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    if (comma == std::string_view::npos) comma = spec.size();
    const std::string_view term = spec.substr(start, comma - start);
    const std::size_t caret = term.find('^');
    const std::size_t colon = term.find(':');
    if (caret == std::string_view::npos || colon == std::string_view::npos || colon < caret)
      throw ParseError("malformed group term '" + std::string(term) + "', expected p^r:d");
    const std::uint64_t p = parse_decimal(term.substr(0, caret), term);
    const std::uint64_t r = parse_decimal(term.substr(caret + 1, colon - caret - 1), term);
    const std::uint64_t d = parse_decimal(term.substr(colon + 1), term);
    if (r > 64 || d > std::numeric_limits<unsigned>::max())
      throw ParseError("group term out of range '" + std::string(term) + "'");
    components.push_back({p, static_cast<unsigned>(r), static_cast<unsigned>(d)});
    start = comma + 1;
  }
  return PrimePowerDecomposition(std::move(components));
}

// ---------------------------------------------------------------------------
// ComponentAction / BlockAutomorphism

namespace {

std::uint64_t checked_modulus(std::uint64_t p, unsigned r) {
  if (!is_prime(p)) throw ParameterError(std::to_string(p) + " is not prime");
  if (r == 0) throw ParameterError("exponent r must be at least 1");
  return PrimePowerComponent{p, r, 1}.modulus();
}

}  // namespace

ComponentAction::ComponentAction(std::uint64_t p, unsigned r, ModMatrix block,
                                 std::optional<std::uint64_t> multiplier)
    : p_(p), r_(r), d_(static_cast<unsigned>(block.rows())), block_(std::move(block)), multiplier_(multiplier) {}

ComponentAction ComponentAction::matrix(std::uint64_t p, unsigned r, const IntMatrix& block) {
  const std::uint64_t q = checked_modulus(p, r);
  if (!block.is_square()) throw DimensionError("component block is not square");
  ModMatrix reduced = reduce_mod(block, q);
  if (det_mod(reduced) % p == 0) throw InvertibilityError("component block is not invertible modulo " + std::to_string(p));
  return ComponentAction(p, r, std::move(reduced), std::nullopt);
}

ComponentAction ComponentAction::scalar(std::uint64_t p, unsigned r, unsigned d, const Integer& multiplier) {
  const std::uint64_t q = checked_modulus(p, r);
  if (d == 0) throw DimensionError("scalar block needs d >= 1");
  const std::uint64_t u = mod_u64(multiplier, q);
  if (u % p == 0) throw InvertibilityError("multiplier " + multiplier.get_str() + " is not a unit modulo " + std::to_string(p));
  ModMatrix block(q, d, d);
  for (unsigned i = 0; i < d; ++i) block.set(i, i, Integer(static_cast<unsigned long>(u)));
  return ComponentAction(p, r, std::move(block), u);
}

std::vector<std::uint64_t> ComponentAction::apply(std::span<const std::uint64_t> x) const {
  if (x.size() != d_) throw DimensionError("block input has wrong length");
  if (multiplier_) {
    std::vector<std::uint64_t> out(x.begin(), x.end());
    for (auto& v : out) v = mul_mod(v, *multiplier_, block_.modulus());
    return out;
  }
  return block_.apply(x);
}

BlockAutomorphism BlockAutomorphism::identity(const PrimePowerDecomposition& g) {
  BlockAutomorphism id;
  for (const auto& c : g.components()) id.blocks.push_back(ComponentAction::scalar(c.p, c.r, c.d, 1));
  return id;
}

PrimePowerDecomposition BlockAutomorphism::tiled_group() const {
  std::vector<PrimePowerComponent> comps;
  for (const auto& b : blocks) {
    if (!comps.empty() && comps.back().p == b.p() && comps.back().r == b.r()) {
      comps.back().d += b.d();
    } else {
      comps.push_back({b.p(), b.r(), b.d()});
    }
  }
  try {
    return PrimePowerDecomposition(std::move(comps));
  } catch (const ParseError& e) {
    throw DimensionError(std::string("blocks do not tile a decomposition: ") + e.what());
  }
}

void BlockAutomorphism::check_compatible(const PrimePowerDecomposition& g) const {
  if (tiled_group() != g)
    throw DimensionError("block/decomposition shape mismatch: blocks tile " + tiled_group().to_string() +
                         ", group is " + g.to_string());
}

AbelianElement BlockAutomorphism::apply(const PrimePowerDecomposition& g, const AbelianElement& x) const {
  AbelianElement out = g.zero();
  std::size_t comp = 0, offset = 0;
  for (const auto& b : blocks) {
    if (offset == g[comp].d) {
      ++comp;
      offset = 0;
    }
    const auto& src = x.coords[comp];
    const auto image = b.apply(std::span<const std::uint64_t>(src).subspan(offset, b.d()));
    std::copy(image.begin(), image.end(), out.coords[comp].begin() + static_cast<std::ptrdiff_t>(offset));
    offset += b.d();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reidemeister calculus

Integer fixed_count(const PrimePowerDecomposition& g, const BlockAutomorphism& phi) {
  phi.check_compatible(g);
  Integer count = 1;
  for (const auto& b : phi.blocks) {
    const IntMatrix shifted = b.block().lift() - IntMatrix::identity(b.d());
    count *= kernel_count_mod(shifted, b.modulus());
  }
  return count;
}

Integer reidemeister_abelian(const PrimePowerDecomposition& g, const BlockAutomorphism& phi) {
  return fixed_count(g, phi);
}

TwistedClasses twisted_classes_bruteforce(const PrimePowerDecomposition& g, const BlockAutomorphism& phi,
                                          std::uint64_t bound) {
  phi.check_compatible(g);
  return twisted_classes_bruteforce(g, [&](const AbelianElement& x) { return phi.apply(g, x); }, bound);
}

TwistedClasses twisted_classes_bruteforce(const PrimePowerDecomposition& g, const ElementMap& phi,
                                          std::uint64_t bound) {
  const Integer order = g.order();
  if (order > Integer(static_cast<unsigned long>(bound)))
    throw SizeBoundError("group of order " + order.get_str() + " exceeds oracle bound " + std::to_string(bound));
  const std::uint64_t n = to_u64(order);

  std::vector<char> in_image(n, 0);
  std::vector<std::uint64_t> image;
  for (std::uint64_t i = 0; i < n; ++i) {
    const AbelianElement x = g.decode(i);
    const std::uint64_t y = g.encode(g.subtract(x, phi(x)));
    if (!in_image[y]) {
      in_image[y] = 1;
      image.push_back(y);
    }
  }
  std::vector<AbelianElement> image_elems;
  image_elems.reserve(image.size());
  for (std::uint64_t y : image) image_elems.push_back(g.decode(y));

  TwistedClasses out;
  out.image_size = image.size();
  std::vector<char> covered(n, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (covered[i]) continue;
    const AbelianElement rep = g.decode(i);
    for (const auto& h : image_elems) covered[g.encode(g.add(rep, h))] = 1;
    out.representatives.push_back(rep);
  }
  out.count = out.representatives.size();
  return out;
}

// ---------------------------------------------------------------------------
// select_m

namespace {

bool multiplier_valid(std::uint64_t m, std::uint64_t p, std::uint64_t q) {
  const std::uint64_t cube = pow_mod(m, 3, q);
  const std::uint64_t one_minus = (1 + q - cube) % q;
  return gcd_u64(cube, q) == 1 && one_minus % p != 0;
}

}  // namespace

std::uint64_t select_m(std::uint64_t p, unsigned r, MultiplierRule rule) {
  const std::uint64_t q = checked_modulus(p, r);
  if (p == 2) throw ParameterError("no multiplier with m^3 and 1 - m^3 both units exists modulo a power of 2");
  std::uint64_t m = 0;
  if (rule == MultiplierRule::Fixed) {
    m = p == 7 ? 3 : 2;
  } else {
    for (std::uint64_t c = 2; c < q; ++c)
      if (multiplier_valid(c, p, q)) {
        m = c;
        break;
      }
  }
  if (m == 0 || !multiplier_valid(m, p, q))
    throw std::logic_error("select_m: multiplier fails the unit conditions for p = " + std::to_string(p));
  return m;
}

}  // namespace rinfty
