#include "rinfty/classifier.hpp"

#include <algorithm>
#include <sstream>

#include "rinfty/constants.hpp"
#include "rinfty/errors.hpp"

namespace rinfty {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NotRInfinity: return "not_r_infinity";
    case Verdict::RInfinity: return "r_infinity";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(CaseTag c) {
  switch (c) {
    case CaseTag::None: return "none";
    case CaseTag::Case1: return "case1";
    case CaseTag::Case2: return "case2";
    case CaseTag::Case3: return "case3";
    case CaseTag::Case4: return "case4";
    case CaseTag::Case5: return "case5";
    case CaseTag::Theorem2: return "theorem2";
  }
  return "none";
}

namespace {

template <class Pred>
bool all_with_prime(const PrimePowerDecomposition& g, std::uint64_t p, Pred pred) {
  return std::all_of(g.components().begin(), g.components().end(),
                     [&](const PrimePowerComponent& c) { return c.p != p || pred(c.d); });
}

bool has_prime(const PrimePowerDecomposition& g, std::uint64_t p) {
  return std::any_of(g.components().begin(), g.components().end(),
                     [&](const PrimePowerComponent& c) { return c.p == p; });
}

std::string component_text(const PrimePowerComponent& c) {
  std::ostringstream os;
  os << "Z_" << c.p;
  if (c.r > 1) os << '^' << c.r;
  return os.str();
}

}  // namespace

Theorem2Result theorem2_applies(const PrimePowerDecomposition& g, std::size_t k) {
  for (const auto& c : g.components()) {
    if (c.d != 1) continue;
    if (c.p == 2) {
      return {true, "summand " + component_text(c) + " (p=2, r=" + std::to_string(c.r) + ", d=1) has multiplicity one"};
    }
    if (c.p == 3 && k % 2 == 1) {
      return {true, "summand " + component_text(c) + " (p=3, r=" + std::to_string(c.r) +
                        ", d=1) has multiplicity one and k=" + std::to_string(k) + " is odd"};
    }
  }
  return {false, "no multiplicity-one summand with p=2, or with p=3 and k odd"};
}

bool case_condition(CaseTag tag, const PrimePowerDecomposition& g, std::size_t k) {
  const bool k_even = k % 2 == 0;
  switch (tag) {
    case CaseTag::Case1:
      return all_with_prime(g, 2, [](unsigned d) { return d >= 2; }) &&
             all_with_prime(g, 3, [](unsigned d) { return d >= 2; });
    case CaseTag::Case2:
      return !has_prime(g, 2) && k_even;
    case CaseTag::Case3:
      return all_with_prime(g, 2, [](unsigned d) { return d >= 2; }) && k % 4 == 0;
    case CaseTag::Case4:
      return all_with_prime(g, 2, [](unsigned d) { return d >= 3; }) && k_even;
    case CaseTag::Case5:
      return all_with_prime(g, 2, [](unsigned d) { return d >= 2 && d != 3; }) && k_even && k >= 4;
    default:
      return false;
  }
}

const std::vector<CaseTag>& case_precedence() {
  // Constructive cases ahead of Cases 1 and 3. Case 2 stays first: it only
  // fires without a 2-part, where Cases 4/5 would hold vacuously.
  static const std::vector<CaseTag> order{CaseTag::Case2, CaseTag::Case4, CaseTag::Case5, CaseTag::Case1,
                                          CaseTag::Case3};
  return order;
}

Classification classify(const PrimePowerDecomposition& g, std::size_t k) {
  if (k == 0) throw ParameterError("k must be at least 1");
  Classification out;
  if (auto t2 = theorem2_applies(g, k); t2.applies) {
    out.verdict = Verdict::RInfinity;
    out.case_tag = CaseTag::Theorem2;
    out.reason = t2.reason;
    return out;
  }
  for (CaseTag tag : case_precedence()) {
    if (!case_condition(tag, g, k)) continue;
    out.verdict = Verdict::NotRInfinity;
    out.case_tag = tag;
    if (tag == CaseTag::Case4 || tag == CaseTag::Case5) {
      out.witness = build_witness(g, k, tag);
      out.witness_available = true;
      out.reason = to_string(tag) + " conditions hold; witness automorphism attached";
    } else {
      out.reason = to_string(tag) +
                   " conditions hold; the witness construction for this case is in prior literature and is not "
                   "built here";
    }
    return out;
  }
  out.reason = "no multiplicity-one obstruction and no case condition holds";
  return out;
}

std::vector<unsigned> partition_345(unsigned d) {
  if (d < 3) throw ParameterError("partition_345 needs d >= 3, got " + std::to_string(d));
  std::vector<unsigned> parts;
  unsigned rest = d;
  unsigned tail = 0;
  if (d % 3 == 1) tail = 4;
  if (d % 3 == 2) tail = 5;
  rest -= tail;
  parts.assign(rest / 3, 3);
  if (tail) parts.push_back(tail);
  return parts;
}

std::vector<unsigned> partition_25(unsigned d) {
  if (d < 2 || d == 3) throw ParameterError("partition_25 needs d >= 2 and d != 3, got " + std::to_string(d));
  std::vector<unsigned> parts;
  unsigned rest = d;
  if (d % 2 == 1) {
    parts.push_back(5);
    rest -= 5;
  }
  parts.insert(parts.end(), rest / 2, 2);
  return parts;
}

WreathAutomorphism build_witness(const PrimePowerDecomposition& g, std::size_t k, CaseTag tag) {
  if (tag != CaseTag::Case4 && tag != CaseTag::Case5)
    throw ParameterError("no in-repo witness construction for " + to_string(tag));
  if (!case_condition(tag, g, k))
    throw ParameterError(to_string(tag) + " conditions do not hold for " + g.to_string() + ", k=" + std::to_string(k));

  std::vector<IntMatrix> base_blocks;
  if (tag == CaseTag::Case4) {
    base_blocks.assign(k / 2, constants::m2());
  } else {
    // k = 4s or 4s + 6
    const std::size_t s = (k % 4 == 0) ? k / 4 : (k - 6) / 4;
    base_blocks.assign(s, constants::m4());
    if (k % 4 == 2) base_blocks.push_back(constants::m6());
  }

  BlockAutomorphism action;
  for (const auto& c : g.components()) {
    if (c.p == 2) {
      const auto parts = tag == CaseTag::Case4 ? partition_345(c.d) : partition_25(c.d);
      for (unsigned size : parts) action.blocks.push_back(ComponentAction::matrix(2, c.r, constants::f_block(size)));
    } else {
      const std::uint64_t m = tag == CaseTag::Case4 ? select_m(c.p, c.r) : c.p - 1;
      for (unsigned i = 0; i < c.d; ++i) action.blocks.push_back(ComponentAction::scalar(c.p, c.r, 1, Integer(static_cast<unsigned long>(m))));
    }
  }
  return WreathAutomorphism(direct_sum(base_blocks), std::move(action));
}

}  // namespace rinfty
