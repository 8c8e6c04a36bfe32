#include "hanstream/scales.hpp"

#include <cmath>

#include "hanstream/error.hpp"

namespace hanstream {

LinearScale::LinearScale(double d0, double d1, double r0, double r1) : d0_(d0), d1_(d1), r0_(r0), r1_(r1) {
  if (d0 == d1 || !std::isfinite(d0) || !std::isfinite(d1)) {
    throw Error(Errc::DegenerateDomain, "linear scale domain must have distinct finite endpoints");
  }
}

std::vector<Band> band_scale(std::size_t categories, double range_width, double padding) {
  if (categories == 0) throw Error(Errc::DegenerateDomain, "band scale needs at least one category");
  if (!(padding >= 0.0 && padding < 1.0)) throw Error(Errc::SpecError, "band padding must be in [0,1)");
  const double step = range_width / static_cast<double>(categories);
  std::vector<Band> bands(categories);
  for (std::size_t i = 0; i < categories; ++i) {
    bands[i] = {static_cast<double>(i) * step + step * padding / 2.0, step * (1.0 - padding)};
  }
  return bands;
}

}  // namespace hanstream
