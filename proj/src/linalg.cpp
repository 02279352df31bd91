#include "fva/linalg.hpp"

#include <utility>

namespace fva {

long rank(RatMatrix rows, std::size_t cols) {
  long r = 0;
  const std::size_t n = rows.size();
  for (auto& row : rows) row.resize(cols, Rat(0));
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < n; ++c) {
    std::size_t pivot = static_cast<std::size_t>(r);
    while (pivot < n && rows[pivot][c] == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(rows[pivot], rows[r]);
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < n; ++i) {
      if (rows[i][c] == 0) continue;
      Rat f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace fva
