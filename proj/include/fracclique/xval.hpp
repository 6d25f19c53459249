#pragma once

#include "fracclique/oracle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fracclique::oracle {

struct XvalCheck {
  std::string name;
  bool passed = false;
  double deviation = 0;  ///< measured error (or mismatch count)
  double tolerance = 0;
  std::string detail;
};

/// Runs every closed-form-versus-brute-force comparison that applies at
/// (r, s, n): census, eigenmatrices, idempotents, spectrum, inverse norm,
/// matrix-free operators and an end-to-end solve on a seeded instance.
std::vector<XvalCheck> cross_validate(int r, int s, int n, long long cap = kDefaultCap,
                                      std::uint64_t seed = 1);

}  // namespace fracclique::oracle
