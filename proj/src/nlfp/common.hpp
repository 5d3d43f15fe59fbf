#pragma once

#include <limits>
#include <numeric>
#include <vector>

namespace nlfp {

// Multi-index over coordinate axes; order() is |alpha|.
using MultiIndex = std::vector<int>;

inline int order(const MultiIndex& alpha) {
  return std::accumulate(alpha.begin(), alpha.end(), 0);
}

// Distinguished value for "evaluate at the equilibrium" in time arguments.
inline constexpr double kTimeInfinity = std::numeric_limits<double>::infinity();

}  // namespace nlfp
