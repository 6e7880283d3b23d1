#pragma once
#include <cstdint>
#include <utility>
#include <vector>

namespace aztec {

enum class Step : std::uint8_t { Up, Left, Diag };

// Schroder path starting at (start_col, 0) with steps Up (0,1), Left (-1,0),
// Diag (-1,1). The column coordinate never increases and never goes negative.
struct LatticePath {
  int start_col = 0;
  std::vector<Step> steps;
};

struct AreaDiag {
  long long area = 0;  // A(p) = sum_s (x_s + x_{s+1})(y_{s+1} - y_s), in triangles
  long long diag = 0;  // k(p), number of Diag steps
};

// Per-step area contributions: an Up step at column x adds 2x, a Diag step
// leaving column x adds 2x - 1, a Left step adds 0.
AreaDiag path_area_and_diag(const LatticePath& p);

// End vertex after replaying the steps; throws if the path leaves the quadrant.
std::pair<int, int> path_end(const LatticePath& p);

}  // namespace aztec
