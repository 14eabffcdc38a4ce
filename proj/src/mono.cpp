#include "vmt/mono.hpp"

#include <algorithm>
#include <cmath>

#include "vmt/numerics.hpp"

namespace vmt::mono {

void MonotoneParams::validate() const {
  if (surface_dim < 1) throw std::invalid_argument("MonotoneParams: surface_dim must be >= 1");
  if (!(p > surface_dim)) throw std::invalid_argument("MonotoneParams: p must exceed the surface dimension");
  if (Gamma < 0.0) throw std::invalid_argument("MonotoneParams: Gamma must be >= 0");
  if (C < 0.0) throw std::invalid_argument("MonotoneParams: C must be >= 0");
  if (!(kappa > 0.0)) throw std::invalid_argument("MonotoneParams: kappa must be positive");
  if (!(s0 > 0.0) || s0 * kappa > 1.0 + 1e-12)
    throw std::invalid_argument("MonotoneParams: s0 must lie in (0, 1/kappa]");
  if (sigma < -1e-12) throw std::invalid_argument("MonotoneParams: effective sigma must be >= 0");
}

MassSources quadrature_sources(const varifold::DiscreteVarifold& v, const geom::Domain& dom,
                               const varifold::BoundaryPatch& patch) {
  MassSources s;
  s.surface_ball = [&v](const Vec& a, double rho) { return varifold::mass_in_ball(v, a, rho); };
  s.surface_reflected = [&v, &dom](const Vec& a, double rho) {
    return varifold::mass_in_reflected_ball(v, dom, a, rho);
  };
  s.patch_ball = [&patch](const Vec& a, double rho) {
    double m = 0.0;
    for (const varifold::PatchNode& n : patch.nodes)
      if ((n.b - a).norm() < rho) m += n.w;
    return m;
  };
  return s;
}

std::vector<double> default_rho_grid(double s0, int count) {
  if (!(s0 > 0.0)) throw std::invalid_argument("default_rho_grid: s0 must be positive");
  return log_grid(s0 / 600.0, s0 / 6.0 * (1.0 - 1e-9), count);
}

double compute_gamma(const varifold::DiscreteVarifold& v, const geom::Domain& dom, double p) {
  if (!v.has_curvature) throw std::invalid_argument("compute_gamma: varifold carries no curvature field");
  if (!(p > v.surface_dim())) throw std::invalid_argument("compute_gamma: p must exceed the surface dimension");
  double sum = 0.0;
  for (const varifold::Atom& at : v.atoms) {
    if (!dom.inside(at.x)) continue;
    if (dom.boundary_distance(at.x) >= dom.s0()) continue;
    sum += 2.0 * at.w * std::pow(at.h.norm(), p);
  }
  return std::pow(sum / unit_ball_volume(v.surface_dim()), 1.0 / p);
}

DensityProfile profile_I(const MassSources& src, const geom::Domain& dom, int surface_dim,
                         double sigma, const Vec& a, const std::vector<double>& grid) {
  if (sigma < -1e-12) throw std::invalid_argument("profile_I: effective sigma must be >= 0");
  const double limit = dom.s0() / 6.0;
  if (dom.boundary_distance(a) >= limit)
    throw std::invalid_argument("profile_I: centre must lie within the inner sixth of the collar");
  if (dom.phi(a) > 1e-9) throw std::invalid_argument("profile_I: centre must lie in the closed domain");
  DensityProfile prof;
  prof.center = a;
  const double omega = unit_ball_volume(surface_dim);
  for (double rho : grid) {
    if (!(rho > 0.0) || rho > limit * (1.0 + 1e-12))
      throw std::invalid_argument("profile_I: grid values must lie in (0, s0/6)");
    const double i_val =
        src.surface_ball(a, rho) + src.surface_reflected(a, rho) + 2.0 * sigma * src.patch_ball(a, rho);
    prof.rho.push_back(rho);
    prof.I.push_back(i_val);
    prof.raw_ratio.push_back(i_val / (omega * std::pow(rho, surface_dim)));
  }
  return prof;
}

double corrected_value(double raw_ratio, double rho, const MonotoneParams& mp) {
  const double n = mp.surface_dim;
  const double base = std::pow(std::max(raw_ratio, 0.0), 1.0 / mp.p);
  const double factor = 1.0 + mp.C * mp.kappa * rho * (1.0 + 1.0 / (mp.p - n));
  return base * factor + mp.Gamma * std::pow(rho, 1.0 - n / mp.p) / (mp.p - n);
}

void apply_correction(DensityProfile& profile, const MonotoneParams& mp) {
  mp.validate();
  profile.corrected.resize(profile.rho.size());
  for (std::size_t i = 0; i < profile.rho.size(); ++i)
    profile.corrected[i] = corrected_value(profile.raw_ratio[i], profile.rho[i], mp);
}

std::vector<int> check_monotone(const std::vector<double>& values, double tol) {
  std::vector<int> bad;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i + 1] < values[i] - tol) bad.push_back(static_cast<int>(i));
  return bad;
}

namespace {
std::string first_violation(std::vector<ProfileCase>& cases, double c, double tol) {
  for (ProfileCase& pc : cases) {
    pc.params.C = c;
    apply_correction(pc.profile, pc.params);
    if (!check_monotone(pc.profile.corrected, tol).empty()) return pc.label;
  }
  return {};
}
}  // namespace

ConstantSearch find_constant(std::vector<ProfileCase>& cases, double tol, double c_max) {
  ConstantSearch out;
  if (cases.empty()) {
    out.ok = true;
    return out;
  }
  if (first_violation(cases, 0.0, tol).empty()) {
    out.c_hat = 0.0;
    out.ok = true;
    return out;
  }
  const std::string at_max = first_violation(cases, c_max, tol);
  if (!at_max.empty()) {
    out.c_hat = c_max;
    out.binding_label = at_max;
    out.ok = false;
    return out;
  }
  double lo = 0.0, hi = c_max;
  std::string binding = first_violation(cases, lo, tol);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const std::string v = first_violation(cases, mid, tol);
    if (v.empty()) {
      hi = mid;
    } else {
      lo = mid;
      binding = v;
    }
  }
  out.c_hat = hi;
  out.binding_label = binding;
  out.ok = true;
  // Leave every profile evaluated at the reported constant.
  first_violation(cases, out.c_hat, tol);
  return out;
}

DensityLimit density_limit(const DensityProfile& profile) {
  const std::size_t n = profile.rho.size();
  if (n < 4) throw std::invalid_argument("density_limit: need at least four grid points");
  const std::size_t m = std::min<std::size_t>(12, std::max<std::size_t>(4, n / 4));
  // Least squares fit raw_ratio ~ A + B*rho on the m smallest radii.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = profile.rho[i], y = profile.raw_ratio[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = m * sxx - sx * sx;
  if (std::abs(det) < 1e-300) throw std::runtime_error("density_limit: degenerate grid");
  const double b = (m * sxy - sx * sy) / det;
  const double a = (sy - b * sx) / m;
  double rss = 0.0, rmax = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = profile.raw_ratio[i] - (a + b * profile.rho[i]);
    rss += r * r;
    rmax = std::max(rmax, std::abs(r));
  }
  DensityLimit out;
  out.estimate = a;
  out.uncertainty = 2.0 * std::sqrt(rss / m) + rmax;
  out.converged = out.uncertainty < 0.05 * std::max(1.0, std::abs(a));
  return out;
}

CurvatureRemainders curvature_remainders(const geom::Domain& dom, const Vec& a, const Vec& x,
                                         const Mat& S) {
  const geom::CollarPoint cp = dom.project(x);
  const Vec y = cp.xtilde - a;
  const double rr = y.norm();
  if (rr < 1e-14)
    throw std::domain_error("curvature_remainders: reflected point coincides with the centre");
  const Mat q = dom.projection_derivative_defect(x);
  const Mat p1 = dom.reflection_matrix_derivative(x, y);
  CurvatureRemainders out;
  out.r1 = 2.0 * frob(S, q) + frob(S, p1);
  const Vec u = y / rr;
  const Vec lu = geom::reflect_op(cp, u);
  out.r2 = -2.0 * (q * u).dot(S * lu);
  return out;
}

double boundary_remainder(const geom::Domain& dom, const Vec& a, const Vec& b) {
  const geom::CollarPoint cp = dom.project(b);
  if (cp.dist > 1e-9) throw std::invalid_argument("boundary_remainder: point must lie on the boundary");
  const Mat p1 = dom.reflection_matrix_derivative(b, b - a);
  return frob(cp.tau, p1);
}

ProofDiagnostics proof_E_terms(const varifold::DiscreteVarifold& v, const geom::Domain& dom,
                               const varifold::BoundaryPatch& patch, double sigma, const Vec& a,
                               const std::vector<double>& grid) {
  if (!v.has_curvature && !v.atoms.empty())
    throw std::invalid_argument("proof_E_terms: varifold carries no curvature field");
  struct AtomData {
    double r = 0.0;
    double rr = -1.0;  // reflected radius; negative when outside the collar
    double w = 0.0;
    double e1 = 0.0, e2 = 0.0;
    double hr = 0.0;   // h . (x - a)
    double hry = 0.0;  // h . i_x(xtilde - a)
  };
  std::vector<AtomData> atoms;
  atoms.reserve(v.atoms.size());
  const double reach = grid.empty() ? 0.0 : *std::max_element(grid.begin(), grid.end());
  for (const varifold::Atom& at : v.atoms) {
    AtomData d;
    d.w = at.w;
    d.r = (at.x - a).norm();
    if (v.has_curvature) d.hr = at.h.dot(at.x - a);
    const auto cp = dom.try_project(at.x);
    if (cp) {
      const Vec y = cp->xtilde - a;
      d.rr = y.norm();
      if (d.rr > 1e-14 && d.rr < reach) {
        const CurvatureRemainders rem = curvature_remainders(dom, a, at.x, at.S);
        d.e1 = rem.r1;
        d.e2 = rem.r2;
      }
      if (v.has_curvature) d.hry = at.h.dot(geom::reflect_op(*cp, y));
    }
    atoms.push_back(d);
  }
  struct NodeData {
    double r = 0.0;
    double w = 0.0;
    double e3 = 0.0;
  };
  std::vector<NodeData> nodes;
  nodes.reserve(patch.nodes.size());
  for (const varifold::PatchNode& n : patch.nodes) {
    NodeData d;
    d.w = n.w;
    d.r = (n.b - a).norm();
    if (d.r < reach) d.e3 = boundary_remainder(dom, a, n.b);
    nodes.push_back(d);
  }

  const CutoffProfile phi(0.5, 1.0);
  const auto eval = [&](double rho, double* e1, double* e2, double* e3, double* h, double* i_s) {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0, ah = 0.0, ai = 0.0;
    for (const AtomData& d : atoms) {
      const double pr = phi.value(d.r / rho);
      double pry = 0.0;
      if (d.rr >= 0.0) pry = phi.value(d.rr / rho);
      a1 += d.w * pry * d.e1;
      a2 += d.w * pry * d.e2;
      ah += d.w * (pr * d.hr + pry * d.hry);
      ai += d.w * (pr + pry);
    }
    for (const NodeData& d : nodes) {
      const double pr = phi.value(d.r / rho);
      a3 += d.w * pr * d.e3;
      ai += 2.0 * sigma * d.w * pr;
    }
    a3 *= sigma;
    if (e1) *e1 = a1;
    if (e2) *e2 = a2;
    if (e3) *e3 = a3;
    if (h) *h = ah;
    if (i_s) *i_s = ai;
  };

  ProofDiagnostics diag;
  for (double rho : grid) {
    double e1, e2, e3, h, i_s;
    eval(rho, &e1, &e2, &e3, &h, &i_s);
    diag.rho.push_back(rho);
    diag.E1.push_back(e1);
    diag.E2.push_back(e2);
    diag.E3.push_back(e3);
    diag.H.push_back(h);
    diag.I_smooth.push_back(i_s);
    const double dr = 1e-3 * rho;
    double ep, em;
    eval(rho + dr, nullptr, &ep, nullptr, nullptr, nullptr);
    eval(rho - dr, nullptr, &em, nullptr, nullptr, nullptr);
    diag.E2_prime.push_back((ep - em) / (2.0 * dr));
  }
  return diag;
}

}  // namespace vmt::mono
