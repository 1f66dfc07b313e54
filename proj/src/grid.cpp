#include "oamq/grid.hpp"

#include <cmath>
#include <sstream>

#include "oamq/errors.hpp"

namespace oamq {

void validate(const GridSpec& grid) {
  if (!(grid.half_width > 0.0) || !std::isfinite(grid.half_width)) {
    throw InputError("grid half-width must be positive");
  }
  if (grid.n < 64 || (grid.n & (grid.n - 1)) != 0) {
    std::ostringstream os;
    os << "grid n must be a power of two >= 64 (got " << grid.n << ")";
    throw InputError(os.str());
  }
}

}  // namespace oamq
