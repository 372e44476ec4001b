#pragma once

#include <vector>

#include "orthopool/linalg.hpp"

namespace orthopool {

// Minimum-cost perfect assignment on a square cost matrix.
// Returns perm with perm[i] = column assigned to row i.
std::vector<int> hungarian_assignment(const Mat& cost);

}  // namespace orthopool
