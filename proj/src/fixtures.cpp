#include "vmt/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vmt/revolve.hpp"

namespace vmt::fixtures {

namespace {

varifold::CurvatureField zero_field(int dim) {
  return [dim](const Vec&) { return Vec::Zero(dim); };
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double flo) {
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_extremum(const std::function<double(double)>& f, double lo, double hi) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 120; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = f(d);
    }
  }
  return f(c) < f(d) ? c : d;
}

}  // namespace

SegmentOracle::SegmentOracle(geom::Domain dom, Vec q0, Vec q1)
    : dom_(std::move(dom)), q0_(std::move(q0)), q1_(std::move(q1)) {
  if (!dom_.is_ball()) throw std::invalid_argument("SegmentOracle: ball domains only");
  if ((q1_ - q0_).norm() < 1e-14) throw std::invalid_argument("SegmentOracle: degenerate segment");
}

double SegmentOracle::mass_in_ball(const Vec& a, double rho) const {
  // Clip via the perpendicular foot instead of the raw quadratic formula:
  // the discriminant form cancels catastrophically when a sits on the
  // carrier line, which is exactly the configuration the flat-density
  // identities exercise.
  const Vec e = q1_ - q0_;
  const Vec w = q0_ - a;
  const double qa = e.squaredNorm();
  const double t_foot = -e.dot(w) / qa;
  const Vec perp = w + t_foot * e;
  const double gap2 = rho * rho - perp.squaredNorm();
  if (gap2 <= 0.0) return 0.0;
  const double half = std::sqrt(gap2 / qa);
  const double lo = std::max(t_foot - half, 0.0);
  const double hi = std::min(t_foot + half, 1.0);
  return hi > lo ? (hi - lo) * std::sqrt(qa) : 0.0;
}

double SegmentOracle::mass_in_reflected_ball(const Vec& a, double rho) const {
  const Vec e = q1_ - q0_;
  const double len = e.norm();
  const double radius = dom_.radius();
  const Vec center = dom_.center();
  // Clearance of the reflected point from the sphere of radius rho around a;
  // jumps across the domain centre, where membership is false anyway.
  const auto clearance = [&](double t) {
    const Vec u = q0_ + t * e - center;
    const double m = std::max(u.norm(), 1e-300);
    return (((2.0 * radius - m) / m) * u - (a - center)).norm() - rho;
  };
  const auto member = [&](double t) {
    return geom::in_reflected_ball(dom_, a, rho, q0_ + t * e).inside;
  };

  const int scan = 8192;
  std::vector<double> fv(scan + 1);
  for (int i = 0; i <= scan; ++i) fv[i] = clearance(static_cast<double>(i) / scan);

  std::vector<double> cuts{0.0, 1.0};
  for (int i = 0; i < scan; ++i) {
    if ((fv[i] < 0.0) != (fv[i + 1] < 0.0))
      cuts.push_back(
          bisect_root(clearance, static_cast<double>(i) / scan, (i + 1.0) / scan, fv[i]));
  }
  // Dips (or bumps) that cross zero twice inside a single scan cell pair.
  for (int i = 1; i < scan; ++i) {
    const double ta = (i - 1.0) / scan, tb = (i + 1.0) / scan;
    if (fv[i] <= fv[i - 1] && fv[i] <= fv[i + 1] && fv[i - 1] > 0.0 && fv[i + 1] > 0.0 &&
        fv[i] >= 0.0) {
      const double tm = golden_extremum(clearance, ta, tb);
      if (clearance(tm) < 0.0) {
        cuts.push_back(bisect_root(clearance, ta, tm, fv[i - 1]));
        cuts.push_back(bisect_root(clearance, tm, tb, clearance(tm)));
      }
    }
    if (fv[i] >= fv[i - 1] && fv[i] >= fv[i + 1] && fv[i - 1] < 0.0 && fv[i + 1] < 0.0 &&
        fv[i] <= 0.0) {
      const double tm =
          golden_extremum([&](double t) { return -clearance(t); }, ta, tb);
      if (clearance(tm) > 0.0) {
        cuts.push_back(bisect_root(clearance, ta, tm, fv[i - 1]));
        cuts.push_back(bisect_root(clearance, tm, tb, clearance(tm)));
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());

  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double ta = cuts[i], tb = cuts[i + 1];
    if (tb - ta < 1e-13) continue;
    if (member(0.5 * (ta + tb))) mass += (tb - ta) * len;
  }
  return mass;
}

DomeOracle::DomeOracle(double theta0, bool flipped) {
  if (!(theta0 > 0.0) || !(theta0 < M_PI / 2.0))
    throw std::invalid_argument("DomeOracle: base angle must lie in (0, pi/2)");
  r_ = 1.0 / std::cos(theta0);
  cz_ = -std::tan(theta0);
  psi_max_ = M_PI / 2.0 - theta0;
  zsign_ = flipped ? -1.0 : 1.0;
}

double DomeOracle::total_mass() const { return 2.0 * M_PI * r_ * r_ * (1.0 - std::cos(psi_max_)); }

double DomeOracle::mass_in_ball(const Vec& a, double rho) const {
  return revolve::sliced_ball_measure(
      [this](double psi) {
        revolve::Slice sl;
        sl.s = r_ * std::sin(psi);
        sl.z = zsign_ * (cz_ + r_ * std::cos(psi));
        sl.jac = r_ * r_ * std::sin(psi);
        return sl;
      },
      0.0, psi_max_, a, rho);
}

double DomeOracle::mass_in_reflected_ball(const Vec& a, double rho) const {
  // Per slice the reflection through the unit sphere is the radial scale
  // 2/|x| - 1, constant along the slice circle.
  return revolve::sliced_ball_measure(
      [this](double psi) {
        revolve::Slice sl;
        sl.s = r_ * std::sin(psi);
        sl.z = zsign_ * (cz_ + r_ * std::cos(psi));
        sl.jac = r_ * r_ * std::sin(psi);
        const double m = std::max(std::hypot(sl.s, sl.z), 1e-300);
        const double lam = 2.0 / m - 1.0;
        sl.s *= lam;
        sl.z *= lam;
        return sl;
      },
      0.0, psi_max_, a, rho);
}

double DiskOracle::mass_in_ball(const Vec& a, double rho) const {
  return revolve::sliced_ball_measure(
      [](double s) {
        return revolve::Slice{s, 0.0, s};
      },
      0.0, 1.0, a, rho);
}

double DiskOracle::mass_in_reflected_ball(const Vec& a, double rho) const {
  return revolve::sliced_ball_measure(
      [](double s) {
        return revolve::Slice{2.0 - s, 0.0, s};
      },
      0.0, 1.0, a, rho);
}

mono::MassSources Fixture::exact_sources() const {
  if (!oracle) throw std::runtime_error("Fixture::exact_sources: no oracle attached");
  mono::MassSources s;
  auto orc = oracle;
  s.surface_ball = [orc](const Vec& a, double rho) { return orc->mass_in_ball(a, rho); };
  s.surface_reflected = [orc](const Vec& a, double rho) {
    return orc->mass_in_reflected_ball(a, rho);
  };
  const varifold::BoundaryPatch p = patch_eff;
  s.patch_ball = [p](const Vec& a, double rho) { return varifold::patch_measure_in_ball(p, a, rho); };
  return s;
}

mono::MassSources Fixture::quadrature_sources() const {
  return mono::quadrature_sources(V, dom, patch_eff);
}

Fixture chord_fixture(double d, int resolution, bool mirrored) {
  if (!(d >= 0.0) || !(d < 1.0))
    throw std::invalid_argument("chord_fixture: offset must lie in [0, 1)");
  if (resolution < 1) throw std::invalid_argument("chord_fixture: resolution must be >= 1");
  Fixture f(geom::Domain::ball(vec2(0.0, 0.0), 1.0));
  f.name = "chord";
  f.param = d;
  f.resolution = resolution;

  const double alpha = std::asin(d);
  const double ell = std::sqrt(1.0 - d * d);
  const double y = mirrored ? -d : d;
  const Vec pm = vec2(-ell, y), pp = vec2(ell, y);
  f.V = varifold::from_segments({pm, pp}, resolution, zero_field(2));
  f.cfg = contact::ContactConfig::from_theta(mirrored ? M_PI - std::acos(d) : std::acos(d),
                                             mirrored);

  const double lo = mirrored ? M_PI + alpha : M_PI - alpha;
  const double hi = mirrored ? 2.0 * M_PI - alpha : 2.0 * M_PI + alpha;
  const int nodes = std::max(8, static_cast<int>(std::lround(4.0 * resolution * (hi - lo) / M_PI)));
  f.patch = varifold::arc_patch(f.dom.center(), 1.0, lo, hi, nodes);

  varifold::ContactLineNode clp, clm;
  clp.q = pp;
  clm.q = pm;
  clp.conormal = mirrored ? vec2(d, ell) : vec2(-d, ell);
  clm.conormal = mirrored ? vec2(-d, ell) : vec2(d, ell);
  f.patch.contact_line = {clp, clm};
  f.patch_eff = mirrored ? varifold::complement_patch(f.patch) : f.patch;

  f.contact_points = {pp, pm};
  f.expected_density_limit = 1.0 + f.cfg.effective_sigma();

  contact::ConormalSample sp, sm;
  sp.point = pp;
  sp.surface_conormal = vec2(1.0, 0.0);
  sp.patch_conormal = clp.conormal;
  sm.point = pm;
  sm.surface_conormal = vec2(-1.0, 0.0);
  sm.patch_conormal = clm.conormal;
  f.conormal_samples = {sp, sm};

  f.oracle = std::make_shared<SegmentOracle>(f.dom, pm, pp);
  return f;
}

Fixture cap_fixture(double theta, int resolution) {
  if (!(theta > 0.0) || !(theta < M_PI))
    throw std::invalid_argument("cap_fixture: angle must lie in (0, pi)");
  if (resolution < 2) throw std::invalid_argument("cap_fixture: resolution must be >= 2");
  const bool mirrored = theta > M_PI / 2.0 + 1e-12;
  const double theta0 = mirrored ? M_PI - theta : theta;
  const double zsign = mirrored ? -1.0 : 1.0;
  const bool flat = std::abs(theta0 - M_PI / 2.0) <= 1e-12;

  Fixture f(geom::Domain::ball(vec3(0.0, 0.0, 0.0), 1.0));
  f.name = "cap";
  f.param = theta;
  f.resolution = resolution;
  f.cfg = contact::ContactConfig::from_theta(theta, mirrored);

  varifold::DiscreteVarifold v;
  v.ambient_dim = 3;
  v.has_curvature = true;
  const int nphi = 4 * resolution;
  const double dphi = 2.0 * M_PI / nphi;
  if (flat) {
    for (int i = 0; i < resolution; ++i) {
      const double sa = static_cast<double>(i) / resolution;
      const double sb = static_cast<double>(i + 1) / resolution;
      const double w = 0.5 * (sb * sb - sa * sa) * dphi;
      const double smid = 0.5 * (sa + sb);
      for (int j = 0; j < nphi; ++j) {
        const double phi = (j + 0.5) * dphi;
        varifold::Atom at;
        at.x = vec3(smid * std::cos(phi), smid * std::sin(phi), 0.0);
        at.S = Mat::Zero(3, 3);
        at.S(0, 0) = at.S(1, 1) = 1.0;
        at.w = w;
        at.h = Vec::Zero(3);
        v.atoms.push_back(std::move(at));
      }
    }
  } else {
    const double r = 1.0 / std::cos(theta0);
    const double cz = -std::tan(theta0);
    const double psi_max = M_PI / 2.0 - theta0;
    for (int i = 0; i < resolution; ++i) {
      const double pa = psi_max * i / resolution;
      const double pb = psi_max * (i + 1) / resolution;
      const double w = r * r * (std::cos(pa) - std::cos(pb)) * dphi;
      const double psi = 0.5 * (pa + pb);
      for (int j = 0; j < nphi; ++j) {
        const double phi = (j + 0.5) * dphi;
        const Vec omega = vec3(std::sin(psi) * std::cos(phi), std::sin(psi) * std::sin(phi),
                               zsign * std::cos(psi));
        varifold::Atom at;
        at.x = vec3(r * omega(0), r * omega(1), zsign * (cz + r * std::cos(psi)));
        at.S = identity_like(3) - omega * omega.transpose();
        at.w = w;
        at.h = (-2.0 / r) * omega;
        v.atoms.push_back(std::move(at));
      }
    }
  }
  f.V = std::move(v);

  f.patch = varifold::band_patch(1.0, -1.0, 0.0, 2 * resolution, nphi);
  for (int j = 0; j < nphi; ++j) {
    const double phi = (j + 0.5) * dphi;
    varifold::ContactLineNode n;
    n.q = vec3(std::cos(phi), std::sin(phi), 0.0);
    n.conormal = vec3(0.0, 0.0, 1.0);
    n.w = dphi;
    f.patch.contact_line.push_back(std::move(n));
  }
  f.patch_eff = mirrored ? varifold::complement_patch(f.patch) : f.patch;

  f.contact_points = {vec3(1, 0, 0), vec3(-1, 0, 0), vec3(0, 1, 0), vec3(0, -1, 0)};
  f.expected_density_limit = 1.0 + f.cfg.effective_sigma();
  for (const Vec& q : f.contact_points) {
    contact::ConormalSample s;
    s.point = q;
    s.surface_conormal =
        vec3(std::sin(theta0) * q(0), std::sin(theta0) * q(1), -zsign * std::cos(theta0));
    s.patch_conormal = vec3(0.0, 0.0, 1.0);
    f.conormal_samples.push_back(std::move(s));
  }

  if (flat)
    f.oracle = std::make_shared<DiskOracle>();
  else
    f.oracle = std::make_shared<DomeOracle>(theta0, mirrored);
  return f;
}

Fixture make_fixture(const std::string& name, double param, int resolution, bool mirrored) {
  if (name == "chord") return chord_fixture(param, resolution, mirrored);
  if (name == "cap") return cap_fixture(mirrored ? M_PI - param : param, resolution);
  throw std::invalid_argument("make_fixture: unknown family " + name);
}

Fixture mirror_fixture(const Fixture& f) {
  if (f.name == "chord") return chord_fixture(f.param, f.resolution, !f.cfg.mirror);
  if (f.name == "cap") return cap_fixture(M_PI - f.param, f.resolution);
  throw std::invalid_argument("mirror_fixture: unknown family " + f.name);
}

void cap_mesh(double theta, int resolution, std::vector<Vec>& vertices,
              std::vector<std::array<int, 3>>& triangles) {
  if (!(theta > 0.0) || !(theta < M_PI))
    throw std::invalid_argument("cap_mesh: angle must lie in (0, pi)");
  if (resolution < 2) throw std::invalid_argument("cap_mesh: resolution must be >= 2");
  const bool mirrored = theta > M_PI / 2.0 + 1e-12;
  const double theta0 = mirrored ? M_PI - theta : theta;
  const double zsign = mirrored ? -1.0 : 1.0;
  const bool flat = std::abs(theta0 - M_PI / 2.0) <= 1e-12;
  const int m = 4 * resolution;

  // Row profile: apex row collapses to one vertex.
  const auto row_point = [&](int i, double phi) -> Vec {
    if (flat) {
      const double s = static_cast<double>(i) / resolution;
      return vec3(s * std::cos(phi), s * std::sin(phi), 0.0);
    }
    const double r = 1.0 / std::cos(theta0);
    const double cz = -std::tan(theta0);
    const double psi = (M_PI / 2.0 - theta0) * i / resolution;
    return vec3(r * std::sin(psi) * std::cos(phi), r * std::sin(psi) * std::sin(phi),
                zsign * (cz + r * std::cos(psi)));
  };

  vertices.clear();
  triangles.clear();
  vertices.push_back(row_point(0, 0.0));  // apex
  for (int i = 1; i <= resolution; ++i)
    for (int j = 0; j < m; ++j) vertices.push_back(row_point(i, 2.0 * M_PI * j / m));
  const auto vid = [&](int i, int j) { return 1 + (i - 1) * m + (j % m); };
  for (int j = 0; j < m; ++j) triangles.push_back({0, vid(1, j), vid(1, j + 1)});
  for (int i = 1; i < resolution; ++i)
    for (int j = 0; j < m; ++j) {
      triangles.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      triangles.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
}

}  // namespace vmt::fixtures
