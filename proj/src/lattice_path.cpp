#include "aztec/lattice_path.hpp"

#include <stdexcept>

namespace aztec {

AreaDiag path_area_and_diag(const LatticePath& p) {
  if (p.start_col < 0) throw std::invalid_argument("path starts at negative column");
  AreaDiag out;
  long long x = p.start_col;
  for (Step s : p.steps) {
    switch (s) {
      case Step::Up:
        out.area += 2 * x;
        break;
      case Step::Left:
        --x;
        break;
      case Step::Diag:
        out.area += 2 * x - 1;
        --x;
        ++out.diag;
        break;
    }
    if (x < 0) throw std::invalid_argument("path leaves the quadrant");
  }
  return out;
}

std::pair<int, int> path_end(const LatticePath& p) {
  if (p.start_col < 0) throw std::invalid_argument("path starts at negative column");
  int x = p.start_col, y = 0;
  for (Step s : p.steps) {
    if (s != Step::Up) --x;
    if (s != Step::Left) ++y;
    if (x < 0) throw std::invalid_argument("path leaves the quadrant");
  }
  return {x, y};
}

}  // namespace aztec
