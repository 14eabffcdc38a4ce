#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "vmt/core.hpp"
#include "vmt/numerics.hpp"

namespace vmt::revolve {

// One latitude slice of a surface of revolution about the z axis, after any
// per-slice radial map has been applied: the image circle has radius s at
// height z, and the surface measure of the slice is jac * d(parameter) * d(phi)
// on the original surface.
struct Slice {
  double s = 0.0;
  double z = 0.0;
  double jac = 0.0;
};

using SliceFn = std::function<Slice(double)>;

// Measure of the part of the surface whose image circle point lies in the
// open ball B_rho(a).  Piecewise-smooth 1D integral: the phi-window per slice
// is 2*acos(t) with t the normalized slice-to-ball offset; integration is
// split at the saturation points t = +-1.
inline double sliced_ball_measure(const SliceFn& slice, double p_lo, double p_hi, const Vec& a,
                                  double rho, double tol = 1e-12) {
  if (!(p_hi > p_lo) || !(rho > 0.0)) return 0.0;
  const double axy = std::hypot(a(0), a(1));
  const double az = a(2);

  const auto offset = [&](double p) {
    const Slice sl = slice(p);
    const double c = sl.s * sl.s + axy * axy + (sl.z - az) * (sl.z - az) - rho * rho;
    const double denom = 2.0 * sl.s * axy;
    if (denom < 1e-300) return c < 0.0 ? -2.0 : 2.0;
    return c / denom;
  };
  const auto integrand = [&](double p) {
    const Slice sl = slice(p);
    const double t = offset(p);
    double window;
    if (t <= -1.0)
      window = 2.0 * M_PI;
    else if (t >= 1.0)
      window = 0.0;
    else
      window = 2.0 * std::acos(t);
    return sl.jac * window;
  };

  // Saturation breakpoints of the offset function.
  std::vector<double> cuts{p_lo};
  const int scan = 2048;
  double prev_p = p_lo;
  double prev_t = offset(p_lo);
  for (int i = 1; i <= scan; ++i) {
    const double p = p_lo + (p_hi - p_lo) * i / scan;
    const double t = offset(p);
    for (const double level : {-1.0, 1.0}) {
      if ((prev_t - level) * (t - level) < 0.0) {
        double lo = prev_p, hi = p, flo = prev_t - level;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = offset(mid) - level;
          if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        cuts.push_back(0.5 * (lo + hi));
      }
    }
    prev_p = p;
    prev_t = t;
  }
  cuts.push_back(p_hi);
  std::sort(cuts.begin(), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-15) continue;
    total += integrate_adaptive(integrand, cuts[i], cuts[i + 1], tol, 48);
  }
  return total;
}

}  // namespace vmt::revolve
