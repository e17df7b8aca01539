#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rinfty/abelian.hpp"
#include "rinfty/wreath.hpp"

namespace rinfty {

enum class Verdict { NotRInfinity, RInfinity, Unknown };

enum class CaseTag { None, Case1, Case2, Case3, Case4, Case5, Theorem2 };

std::string to_string(Verdict v);   // "not_r_infinity" | "r_infinity" | "unknown"
std::string to_string(CaseTag c);   // "case1".."case5" | "theorem2" | "none"

struct Classification {
  Verdict verdict = Verdict::Unknown;
  CaseTag case_tag = CaseTag::None;
  std::optional<WreathAutomorphism> witness;
  bool witness_available = false;
  std::string reason;
};

struct Theorem2Result {
  bool applies = false;
  std::string reason;
};

/// Some summand Z_{p^r} has multiplicity one with p = 2, or with p = 3 and k odd.
Theorem2Result theorem2_applies(const PrimePowerDecomposition& g, std::size_t k);

/// The condition for one of Case1..Case5. Conditions quantified
/// over the 2- or 3-components hold vacuously when those are absent.
bool case_condition(CaseTag tag, const PrimePowerDecomposition& g, std::size_t k);

/// Order in which classify() tries Case1..Case5.
const std::vector<CaseTag>& case_precedence();

/// The multiplicity-one test first, then the first case (in case_precedence()
/// order) whose condition holds, else Unknown. Case4 and Case5 carry a
/// certified witness.
Classification classify(const PrimePowerDecomposition& g, std::size_t k);

/// Throws ParameterError unless tag is Case4 or Case5 and its condition holds.
WreathAutomorphism build_witness(const PrimePowerDecomposition& g, std::size_t k, CaseTag tag);

/// d >= 3 as a sum of 3s plus at most one 4 or 5 (chosen by d mod 3).
std::vector<unsigned> partition_345(unsigned d);
/// d >= 2, d != 3 as a sum of 2s plus at most one 5 (when d is odd).
std::vector<unsigned> partition_25(unsigned d);

}  // namespace rinfty
