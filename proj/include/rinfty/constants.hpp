#pragma once

#include <cstdint>

#include "rinfty/matrix.hpp"

// Fixed matrices used by the witness constructions.
namespace rinfty::constants {

/// [[0,1],[-1,-1]], order 3 in GL(2,Z), det(E - M2) = 3.
IntMatrix m2();
/// Companion matrix of the 5th cyclotomic polynomial, order 5 in GL(4,Z).
IntMatrix m4();
/// Companion matrix of the 7th cyclotomic polynomial, order 7 in GL(6,Z).
IntMatrix m6();

/// Companion matrix of Phi_p for an odd prime p: ones on the subdiagonal and
/// -1 down the last column. Size (p-1) x (p-1).
IntMatrix cyclotomic_companion(std::uint64_t p);

/// Lamp blocks acting on (Z_{2^r})^j. Their reductions mod 2 have orders
/// 3, 7, 7 and 31 and are fixed-point free in the powers the witnesses use.
IntMatrix f2();
IntMatrix f3();
IntMatrix f4();
IntMatrix f5();
/// f2()..f5() by size; throws ParameterError outside 2..5.
IntMatrix f_block(std::size_t size);

}  // namespace rinfty::constants
