#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vmt/core.hpp"
#include "vmt/geom.hpp"

namespace vmt::varifold {

// Quadrature atom of a rectifiable n-varifold in R^{n+1}: location, tangent
// n-plane (orthogonal projection matrix, rank n), weight, and optionally the
// generalized mean curvature vector at the location.
struct Atom {
  Vec x;
  Mat S;
  double w = 0.0;
  Vec h;  // empty when the varifold carries no curvature field
};

using CurvatureField = std::function<Vec(const Vec&)>;
using VectorField = std::function<Vec(const Vec&)>;
using MatrixField = std::function<Mat(const Vec&)>;

struct DiscreteVarifold {
  int ambient_dim = 0;
  bool has_curvature = false;
  std::vector<Atom> atoms;

  int surface_dim() const { return ambient_dim - 1; }
  double mass() const;
};

// Triangulated surface input (n = 2).
DiscreteVarifold from_triangulation(const std::vector<Vec>& vertices,
                                    const std::vector<std::array<int, 3>>& triangles,
                                    const CurvatureField& h = nullptr);

// Polyline input (n = 1); each consecutive pair becomes `subdivisions`
// midpoint atoms with exact length weights.
DiscreteVarifold from_segments(const std::vector<Vec>& polyline, int subdivisions = 1,
                               const CurvatureField& h = nullptr);

double mass_in_ball(const DiscreteVarifold& v, const Vec& a, double rho);
double mass_in_reflected_ball(const DiscreteVarifold& v, const geom::Domain& dom, const Vec& a,
                              double rho);

// First variation: sum of w * <grad g(x), S> over atoms.
double first_variation(const DiscreteVarifold& v, const MatrixField& grad_g);
// Curvature pairing: sum of w * h(x) . g(x).
double curvature_pairing(const DiscreteVarifold& v, const VectorField& g);

double density_ratio(const DiscreteVarifold& v, const Vec& a, double rho);

// ---------------------------------------------------------------------------

struct PatchNode {
  Vec b;
  double w = 0.0;
};

// Sample of the relative boundary of the patch, carrying the outward unit
// co-normal (tangent to the domain boundary) and a measure weight.
struct ContactLineNode {
  Vec q;
  Vec conormal;
  double w = 1.0;
};

// Exact-measure descriptors for the analytic patch shapes used by the
// fixtures: a circular arc (n = 1) and a latitude band of an origin-centred
// sphere with axis +z (n = 2).
struct ArcDescriptor {
  Vec center;
  double radius = 0.0;
  double angle_lo = 0.0;
  double angle_hi = 0.0;  // angle_hi - angle_lo <= 2*pi
};

struct BandDescriptor {
  double radius = 0.0;
  double z_lo = 0.0;
  double z_hi = 0.0;
  int z_count = 0;  // node layout, kept so complements can match density
  int phi_count = 0;
};

// Measurable region of the domain boundary with quadrature nodes, optional
// exact descriptor, and samples of its relative boundary.
struct BoundaryPatch {
  int ambient_dim = 0;
  std::vector<PatchNode> nodes;
  std::vector<ContactLineNode> contact_line;
  std::optional<ArcDescriptor> arc;
  std::optional<BandDescriptor> band;

  double total_measure() const;
};

BoundaryPatch arc_patch(const Vec& center, double radius, double angle_lo, double angle_hi,
                        int node_count);
BoundaryPatch band_patch(double radius, double z_lo, double z_hi, int z_count, int phi_count);
// Full boundary of a ball: spectrally accurate nodes (periodic midpoint on
// the circle, Gauss-Legendre x periodic on the sphere).
BoundaryPatch full_circle_patch(const Vec& center, double radius, int node_count);
BoundaryPatch full_sphere_patch(double radius, int z_count, int phi_count);

BoundaryPatch complement_patch(const BoundaryPatch& patch);

double patch_measure_in_ball(const BoundaryPatch& patch, const Vec& a, double rho);

// Integral of the tangential divergence of g over the patch.  g must be
// tangent to the boundary at the patch nodes.
double surface_divergence_integral(const geom::Domain& dom, const BoundaryPatch& patch,
                                   const VectorField& g, const MatrixField& grad_g,
                                   double tangency_tol = 1e-8);
// Line integral of g . conormal over the contact-line samples.
double contact_line_flux(const BoundaryPatch& patch, const VectorField& g);

// ---------------------------------------------------------------------------
// Plain-text interchange.

DiscreteVarifold read_obj(const std::string& path, const CurvatureField& h = nullptr);
std::vector<Vec> read_polyline_csv(const std::string& path);
std::string dump_csv(const DiscreteVarifold& v);

}  // namespace vmt::varifold
