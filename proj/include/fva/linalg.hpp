#pragma once

#include "fva/rational.hpp"

#include <vector>

namespace fva {

using RatMatrix = std::vector<std::vector<Rat>>;  // row-major, rows may be empty

/// Rank over Q by Gaussian elimination on a copy.
long rank(RatMatrix rows, std::size_t cols);

}  // namespace fva
