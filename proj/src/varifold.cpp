#include "vmt/varifold.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "vmt/numerics.hpp"
#include "vmt/revolve.hpp"

namespace vmt::varifold {

double DiscreteVarifold::mass() const {
  double m = 0.0;
  for (const Atom& at : atoms) m += at.w;
  return m;
}

DiscreteVarifold from_triangulation(const std::vector<Vec>& vertices,
                                    const std::vector<std::array<int, 3>>& triangles,
                                    const CurvatureField& h) {
  DiscreteVarifold v;
  v.ambient_dim = 3;
  v.has_curvature = static_cast<bool>(h);
  double scale = 0.0;
  for (const Vec& p : vertices) {
    if (p.size() != 3) throw std::invalid_argument("from_triangulation: vertices must be 3D");
    scale = std::max(scale, p.norm());
  }
  for (const auto& t : triangles) {
    for (int idx : t)
      if (idx < 0 || idx >= static_cast<int>(vertices.size()))
        throw std::invalid_argument("from_triangulation: face index out of range");
    const Vec& p0 = vertices[t[0]];
    const Vec& p1 = vertices[t[1]];
    const Vec& p2 = vertices[t[2]];
    const Eigen::Vector3d e1 = (p1 - p0).head<3>();
    const Eigen::Vector3d e2 = (p2 - p0).head<3>();
    const Eigen::Vector3d n = e1.cross(e2);
    const double doubled = n.norm();
    if (doubled < 1e-14 * std::max(1.0, scale * scale))
      throw std::invalid_argument("from_triangulation: degenerate (zero-area) triangle");
    const Vec nh = n / doubled;
    const Mat s = identity_like(3) - nh * nh.transpose();
    const double w = doubled / 6.0;  // area / 3 per mid-edge node
    const Vec mids[3] = {0.5 * (p0 + p1), 0.5 * (p1 + p2), 0.5 * (p2 + p0)};
    for (const Vec& m : mids) {
      Atom at;
      at.x = m;
      at.S = s;
      at.w = w;
      if (h) at.h = h(m);
      v.atoms.push_back(std::move(at));
    }
  }
  return v;
}

DiscreteVarifold from_segments(const std::vector<Vec>& polyline, int subdivisions,
                               const CurvatureField& h) {
  if (polyline.size() < 2) throw std::invalid_argument("from_segments: need at least two points");
  if (subdivisions < 1) throw std::invalid_argument("from_segments: subdivisions must be >= 1");
  DiscreteVarifold v;
  v.ambient_dim = 2;
  v.has_curvature = static_cast<bool>(h);
  for (const Vec& p : polyline)
    if (p.size() != 2) throw std::invalid_argument("from_segments: points must be 2D");
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    const Vec& p = polyline[i];
    const Vec& q = polyline[i + 1];
    const double len = (q - p).norm();
    if (len < 1e-14) throw std::invalid_argument("from_segments: repeated consecutive points");
    const Vec t = (q - p) / len;
    const Mat s = t * t.transpose();
    const double w = len / subdivisions;
    for (int k = 0; k < subdivisions; ++k) {
      Atom at;
      at.x = p + (k + 0.5) * w * t;
      at.S = s;
      at.w = w;
      if (h) at.h = h(at.x);
      v.atoms.push_back(std::move(at));
    }
  }
  return v;
}

double mass_in_ball(const DiscreteVarifold& v, const Vec& a, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("mass_in_ball: rho must be positive");
  double m = 0.0;
  for (const Atom& at : v.atoms)
    if ((at.x - a).norm() < rho) m += at.w;
  return m;
}

double mass_in_reflected_ball(const DiscreteVarifold& v, const geom::Domain& dom, const Vec& a,
                              double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("mass_in_reflected_ball: rho must be positive");
  double m = 0.0;
  for (const Atom& at : v.atoms)
    if (geom::in_reflected_ball(dom, a, rho, at.x).inside) m += at.w;
  return m;
}

double first_variation(const DiscreteVarifold& v, const MatrixField& grad_g) {
  double out = 0.0;
  for (const Atom& at : v.atoms) out += at.w * frob(grad_g(at.x), at.S);
  return out;
}

double curvature_pairing(const DiscreteVarifold& v, const VectorField& g) {
  if (!v.has_curvature && !v.atoms.empty())
    throw std::invalid_argument("curvature_pairing: varifold carries no curvature field");
  double out = 0.0;
  for (const Atom& at : v.atoms) out += at.w * at.h.dot(g(at.x));
  return out;
}

double density_ratio(const DiscreteVarifold& v, const Vec& a, double rho) {
  const int n = v.surface_dim();
  return mass_in_ball(v, a, rho) / (unit_ball_volume(n) * std::pow(rho, n));
}

// ---------------------------------------------------------------------------

double BoundaryPatch::total_measure() const {
  if (arc) return arc->radius * (arc->angle_hi - arc->angle_lo);
  if (band) return 2.0 * M_PI * band->radius * (band->z_hi - band->z_lo);
  double m = 0.0;
  for (const PatchNode& n : nodes) m += n.w;
  return m;
}

BoundaryPatch arc_patch(const Vec& center, double radius, double angle_lo, double angle_hi,
                        int node_count) {
  if (!(radius > 0.0)) throw std::invalid_argument("arc_patch: radius must be positive");
  if (!(angle_hi > angle_lo) || angle_hi - angle_lo > 2.0 * M_PI + 1e-12)
    throw std::invalid_argument("arc_patch: need angle_lo < angle_hi <= angle_lo + 2*pi");
  if (node_count < 1) throw std::invalid_argument("arc_patch: need at least one node");
  BoundaryPatch p;
  p.ambient_dim = 2;
  ArcDescriptor d;
  d.center = center;
  d.radius = radius;
  d.angle_lo = angle_lo;
  d.angle_hi = angle_hi;
  p.arc = d;
  const double step = (angle_hi - angle_lo) / node_count;
  p.nodes.reserve(node_count);
  for (int i = 0; i < node_count; ++i) {
    const double ang = angle_lo + (i + 0.5) * step;
    PatchNode n;
    n.b = center + radius * vec2(std::cos(ang), std::sin(ang));
    n.w = radius * step;
    p.nodes.push_back(std::move(n));
  }
  return p;
}

BoundaryPatch band_patch(double radius, double z_lo, double z_hi, int z_count, int phi_count) {
  if (!(radius > 0.0)) throw std::invalid_argument("band_patch: radius must be positive");
  if (!(z_hi > z_lo) || z_lo < -radius - 1e-12 || z_hi > radius + 1e-12)
    throw std::invalid_argument("band_patch: need -radius <= z_lo < z_hi <= radius");
  if (z_count < 1 || phi_count < 1) throw std::invalid_argument("band_patch: node counts must be >= 1");
  BoundaryPatch p;
  p.ambient_dim = 3;
  BandDescriptor d;
  d.radius = radius;
  d.z_lo = z_lo;
  d.z_hi = z_hi;
  d.z_count = z_count;
  d.phi_count = phi_count;
  p.band = d;
  const double dz = (z_hi - z_lo) / z_count;
  const double dphi = 2.0 * M_PI / phi_count;
  p.nodes.reserve(static_cast<std::size_t>(z_count) * phi_count);
  for (int i = 0; i < z_count; ++i) {
    const double z = z_lo + (i + 0.5) * dz;
    const double s = std::sqrt(std::max(0.0, radius * radius - z * z));
    for (int j = 0; j < phi_count; ++j) {
      const double phi = (j + 0.5) * dphi;
      PatchNode n;
      n.b = vec3(s * std::cos(phi), s * std::sin(phi), z);
      n.w = radius * dz * dphi;  // Archimedes: exact cell area
      p.nodes.push_back(std::move(n));
    }
  }
  return p;
}

BoundaryPatch full_circle_patch(const Vec& center, double radius, int node_count) {
  return arc_patch(center, radius, 0.0, 2.0 * M_PI, node_count);
}

BoundaryPatch full_sphere_patch(double radius, int z_count, int phi_count) {
  if (!(radius > 0.0)) throw std::invalid_argument("full_sphere_patch: radius must be positive");
  BoundaryPatch p;
  p.ambient_dim = 3;
  BandDescriptor d;
  d.radius = radius;
  d.z_lo = -radius;
  d.z_hi = radius;
  d.z_count = z_count;
  d.phi_count = phi_count;
  p.band = d;
  std::vector<double> gz, gw;
  gauss_legendre(z_count, gz, gw);
  const double dphi = 2.0 * M_PI / phi_count;
  for (int i = 0; i < z_count; ++i) {
    const double z = radius * gz[i];
    const double s = std::sqrt(std::max(0.0, radius * radius - z * z));
    for (int j = 0; j < phi_count; ++j) {
      const double phi = (j + 0.5) * dphi;
      PatchNode n;
      n.b = vec3(s * std::cos(phi), s * std::sin(phi), z);
      n.w = radius * radius * gw[i] * dphi;
      p.nodes.push_back(std::move(n));
    }
  }
  return p;
}

BoundaryPatch complement_patch(const BoundaryPatch& patch) {
  BoundaryPatch out;
  if (patch.arc) {
    const ArcDescriptor& d = *patch.arc;
    const double span = d.angle_hi - d.angle_lo;
    const double cspan = 2.0 * M_PI - span;
    if (cspan < 1e-12) throw std::invalid_argument("complement_patch: arc already covers the circle");
    const int count =
        std::max<int>(16, static_cast<int>(std::lround(patch.nodes.size() * cspan / span)));
    out = arc_patch(d.center, d.radius, d.angle_hi, d.angle_hi + cspan, count);
  } else if (patch.band) {
    const BandDescriptor& d = *patch.band;
    const bool touches_south = d.z_lo <= -d.radius + 1e-12;
    const bool touches_north = d.z_hi >= d.radius - 1e-12;
    if (touches_south == touches_north)
      throw std::invalid_argument("complement_patch: band complement must be a single band");
    const double lo = touches_south ? d.z_hi : -d.radius;
    const double hi = touches_south ? d.radius : d.z_lo;
    const int zc = std::max<int>(
        8, static_cast<int>(std::lround(d.z_count * (hi - lo) / (d.z_hi - d.z_lo))));
    out = band_patch(d.radius, lo, hi, zc, std::max(8, d.phi_count));
  } else {
    throw std::invalid_argument("complement_patch: patch has no analytic descriptor");
  }
  out.contact_line = patch.contact_line;
  for (ContactLineNode& n : out.contact_line) n.conormal = -n.conormal;
  return out;
}

double patch_measure_in_ball(const BoundaryPatch& patch, const Vec& a, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("patch_measure_in_ball: rho must be positive");
  if (patch.arc) {
    const ArcDescriptor& d = *patch.arc;
    const Vec v = a - d.center;
    const double m = v.norm();
    if (m < 1e-15) return d.radius < rho ? d.radius * (d.angle_hi - d.angle_lo) : 0.0;
    const double t = (d.radius * d.radius + m * m - rho * rho) / (2.0 * d.radius * m);
    return d.radius *
           angular_window_measure(d.angle_lo, d.angle_hi, std::atan2(v(1), v(0)), t);
  }
  if (patch.band) {
    const BandDescriptor& d = *patch.band;
    const double r = d.radius;
    const auto slice = [r](double z) {
      revolve::Slice sl;
      sl.s = std::sqrt(std::max(0.0, r * r - z * z));
      sl.z = z;
      sl.jac = r;
      return sl;
    };
    return revolve::sliced_ball_measure(slice, d.z_lo, d.z_hi, a, rho);
  }
  double m = 0.0;
  for (const PatchNode& n : patch.nodes)
    if ((n.b - a).norm() < rho) m += n.w;
  return m;
}

double surface_divergence_integral(const geom::Domain& dom, const BoundaryPatch& patch,
                                   const VectorField& g, const MatrixField& grad_g,
                                   double tangency_tol) {
  double out = 0.0;
  for (const PatchNode& n : patch.nodes) {
    const geom::CollarPoint cp = dom.project(n.b);
    const Vec gb = g(n.b);
    if (std::abs(gb.dot(cp.normal)) > tangency_tol * std::max(1.0, gb.norm()))
      throw std::invalid_argument("surface_divergence_integral: field is not tangential on the patch");
    out += n.w * frob(grad_g(n.b), cp.tau);
  }
  return out;
}

double contact_line_flux(const BoundaryPatch& patch, const VectorField& g) {
  double out = 0.0;
  for (const ContactLineNode& n : patch.contact_line) out += n.w * g(n.q).dot(n.conormal);
  return out;
}

// ---------------------------------------------------------------------------

DiscreteVarifold read_obj(const std::string& path, const CurvatureField& h) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_obj: cannot open " + path);
  std::vector<Vec> vertices;
  std::vector<std::array<int, 3>> faces;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ss >> x >> y >> z)) throw std::runtime_error("read_obj: malformed vertex line");
      vertices.push_back(vec3(x, y, z));
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ss >> tok) {
        const auto slash = tok.find('/');
        if (slash != std::string::npos) tok = tok.substr(0, slash);
        idx.push_back(std::stoi(tok));
      }
      if (idx.size() != 3) throw std::runtime_error("read_obj: only triangular faces are supported");
      faces.push_back({idx[0] - 1, idx[1] - 1, idx[2] - 1});
    }
  }
  return from_triangulation(vertices, faces, h);
}

std::vector<Vec> read_polyline_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_polyline_csv: cannot open " + path);
  std::vector<Vec> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    double x, y;
    char comma;
    if (!(ss >> x >> comma >> y)) throw std::runtime_error("read_polyline_csv: malformed line: " + line);
    pts.push_back(vec2(x, y));
  }
  return pts;
}

std::string dump_csv(const DiscreteVarifold& v) {
  std::ostringstream out;
  const int m = v.ambient_dim;
  for (int i = 0; i < m; ++i) out << "x" << i << ",";
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out << "S" << i << j << ",";
  out << "w";
  if (v.has_curvature)
    for (int i = 0; i < m; ++i) out << ",h" << i;
  out << "\n";
  char buf[32];
  const auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out << buf;
  };
  for (const Atom& at : v.atoms) {
    for (int i = 0; i < m; ++i) {
      put(at.x(i));
      out << ",";
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        put(at.S(i, j));
        out << ",";
      }
    put(at.w);
    if (v.has_curvature)
      for (int i = 0; i < m; ++i) {
        out << ",";
        put(at.h(i));
      }
    out << "\n";
  }
  return out.str();
}

}  // namespace vmt::varifold
