#include "rinfty/constants.hpp"

#include "rinfty/errors.hpp"

namespace rinfty::constants {

IntMatrix m2() { return IntMatrix{{0, 1}, {-1, -1}}; }

IntMatrix m4() { return cyclotomic_companion(5); }

IntMatrix m6() { return cyclotomic_companion(7); }

IntMatrix cyclotomic_companion(std::uint64_t p) {
  if (p < 3) throw ParameterError("cyclotomic_companion: p must be an odd prime");
  const std::size_t n = p - 1;
  IntMatrix m(n, n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -1;
  return m;
}

IntMatrix f2() { return IntMatrix{{0, 1}, {1, 1}}; }

IntMatrix f3() {
  return IntMatrix{{0, 0, 1},
                   {0, 1, 1},
                   {1, 1, 1}};
}

IntMatrix f4() {
  return IntMatrix{{0, 0, 0, 1},
                   {1, 0, 0, 1},
                   {0, 1, 0, 1},
                   {0, 0, 1, 1}};
}

IntMatrix f5() {
  return IntMatrix{{0, 0, 0, 0, 1},
                   {0, 0, 0, 1, 1},
                   {0, 0, 1, 1, 1},
                   {0, 1, 1, 1, 1},
                   {1, 1, 1, 1, 1}};
}

IntMatrix f_block(std::size_t size) {
  switch (size) {
    case 2: return f2();
    case 3: return f3();
    case 4: return f4();
    case 5: return f5();
    default: throw ParameterError("no lamp block of size " + std::to_string(size));
  }
}

}  // namespace rinfty::constants
