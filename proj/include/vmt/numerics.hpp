#pragma once

#include <functional>
#include <vector>

#include "vmt/core.hpp"

namespace vmt {

// C^2 quintic step: 0 at u<=0, 1 at u>=1, zero first and second derivative
// at both ends.
inline double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

inline double smoothstep_deriv(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 30.0 * u * u * (1.0 - u) * (1.0 - u);
}

// Radial cutoff: 1 on [0, lo], 0 on [hi, inf), C^2 quintic decay between.
class CutoffProfile {
 public:
  CutoffProfile(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(hi > lo) || lo < 0.0) throw std::invalid_argument("CutoffProfile: need 0 <= lo < hi");
  }

  double value(double t) const {
    if (t <= lo_) return 1.0;
    if (t >= hi_) return 0.0;
    return 1.0 - smoothstep((t - lo_) / (hi_ - lo_));
  }

  double deriv(double t) const {
    if (t <= lo_ || t >= hi_) return 0.0;
    return -smoothstep_deriv((t - lo_) / (hi_ - lo_)) / (hi_ - lo_);
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_, hi_;
};

// Sharp indicator of [0, 1): used where the profile integrand must count
// exact measures rather than mollified ones.
inline double sharp_cut(double t) { return t < 1.0 ? 1.0 : 0.0; }

namespace detail {
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

inline double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                 double tol = 1e-12, int depth = 48) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Central-difference Jacobian with the convention J(i, j) = d f_j / d x_i.
inline Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double h) {
  const int dim = static_cast<int>(x.size());
  Vec xp = x, xm = x;
  Mat j;
  for (int i = 0; i < dim; ++i) {
    xp(i) = x(i) + h;
    xm(i) = x(i) - h;
    const Vec fp = f(xp), fm = f(xm);
    if (j.size() == 0) j.resize(dim, fp.size());
    j.row(i) = ((fp - fm) / (2.0 * h)).transpose();
    xp(i) = x(i);
    xm(i) = x(i);
  }
  return j;
}

inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h) {
  const int dim = static_cast<int>(x.size());
  Vec xp = x, xm = x, g(dim);
  for (int i = 0; i < dim; ++i) {
    xp(i) = x(i) + h;
    xm(i) = x(i) - h;
    g(i) = (f(xp) - f(xm)) / (2.0 * h);
    xp(i) = x(i);
    xm(i) = x(i);
  }
  return g;
}

// Gauss-Legendre nodes/weights on [-1, 1].
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

// Length of {phi in [lo, hi] : cos(phi - center) > t}, for an interval with
// hi - lo <= 2*pi.  Handles the saturated cases t <= -1 (all) and t >= 1
// (none).
inline double angular_window_measure(double lo, double hi, double center, double t) {
  if (!(hi > lo)) return 0.0;
  const double span = hi - lo;
  if (t <= -1.0) return span;
  if (t >= 1.0) return 0.0;
  const double half = std::acos(t);
  // Shift the window center into [lo - 2*pi, lo) and accumulate the three
  // translates that can intersect [lo, hi].
  double c = center;
  const double two_pi = 2.0 * M_PI;
  c -= two_pi * std::floor((c - (lo - two_pi)) / two_pi);
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double wlo = c - half + k * two_pi;
    const double whi = c + half + k * two_pi;
    const double olo = std::max(wlo, lo);
    const double ohi = std::min(whi, hi);
    if (ohi > olo) total += ohi - olo;
  }
  return std::min(total, span);
}

// log-spaced grid of `count` values in [lo, hi].
inline std::vector<double> log_grid(double lo, double hi, int count) {
  if (count < 1 || !(hi > lo) || !(lo > 0.0)) throw std::invalid_argument("log_grid: bad range");
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i) g[i] = std::exp(llo + (lhi - llo) * i / (count - 1.0));
  return g;
}

}  // namespace vmt
