#pragma once

#include <cstddef>
#include <vector>

namespace hanstream {

/// Affine map from [d0,d1] onto [r0,r1]. Unclamped.
class LinearScale {
 public:
  /// Throws Error{DegenerateDomain} when d0 == d1.
  LinearScale(double d0, double d1, double r0, double r1);

  double operator()(double x) const noexcept { return r0_ + (x - d0_) * (r1_ - r0_) / (d1_ - d0_); }
  double invert(double y) const noexcept { return d0_ + (y - r0_) * (d1_ - d0_) / (r1_ - r0_); }

  double domain_min() const noexcept { return d0_; }
  double domain_max() const noexcept { return d1_; }

 private:
  double d0_, d1_, r0_, r1_;
};

struct Band {
  double offset = 0.0;
  double width = 0.0;
};

/// Equal-width padded bands: step = W/n, width = step(1-p),
/// offset_i = i*step + step*p/2. Throws DegenerateDomain for n == 0 and
/// SpecError for padding outside [0,1).
std::vector<Band> band_scale(std::size_t categories, double range_width, double padding);

}  // namespace hanstream
