#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vmt/contact.hpp"
#include "vmt/core.hpp"
#include "vmt/geom.hpp"
#include "vmt/mono.hpp"
#include "vmt/varifold.hpp"

namespace vmt::fixtures {

// Exact continuum mass evaluators for a reference surface: measure of the
// surface inside a ball and inside the preimage of a ball under the
// boundary reflection.  These are the source of record that the discrete
// quadrature paths are checked against.
class SurfaceOracle {
 public:
  virtual ~SurfaceOracle() = default;
  virtual double mass_in_ball(const Vec& a, double rho) const = 0;
  virtual double mass_in_reflected_ball(const Vec& a, double rho) const = 0;
  virtual double total_mass() const = 0;
};

// Straight segment inside a ball domain (n = 1).  The ball clip is a
// quadratic solve; the reflected clip brackets sign changes of the
// pulled-back clearance along the segment, with a dip refinement for
// near-tangent crossings inside one scan cell.
class SegmentOracle : public SurfaceOracle {
 public:
  SegmentOracle(geom::Domain dom, Vec q0, Vec q1);

  double mass_in_ball(const Vec& a, double rho) const override;
  double mass_in_reflected_ball(const Vec& a, double rho) const override;
  double total_mass() const override { return (q1_ - q0_).norm(); }

 private:
  geom::Domain dom_;
  Vec q0_, q1_;
};

// Spherical cap inside the unit ball (n = 2), meeting the unit sphere along
// the equator at base angle theta0 in (0, pi/2); axisymmetric about z, with
// an optional z-flip.  Clips are piecewise-smooth latitude-slice integrals.
class DomeOracle : public SurfaceOracle {
 public:
  DomeOracle(double theta0, bool flipped);

  double mass_in_ball(const Vec& a, double rho) const override;
  double mass_in_reflected_ball(const Vec& a, double rho) const override;
  double total_mass() const override;

  double sphere_radius() const { return r_; }

 private:
  double r_ = 0.0;        // radius of the carrying sphere
  double cz_ = 0.0;       // its centre height before the flip
  double psi_max_ = 0.0;  // half-opening angle of the cap
  double zsign_ = 1.0;
};

// Flat equatorial unit disk inside the unit ball (n = 2); the degenerate
// right-angle member of the cap family.
class DiskOracle : public SurfaceOracle {
 public:
  double mass_in_ball(const Vec& a, double rho) const override;
  double mass_in_reflected_ball(const Vec& a, double rho) const override;
  double total_mass() const override { return M_PI; }
};

// Analytic ground-truth configuration: domain + discrete varifold + wetted
// patch + angle data, with exact oracles, contact points, co-normal samples
// and the known density limit at the contact points.
struct Fixture {
  std::string name;    // "chord" | "cap"
  double param = 0.0;  // chord offset d, or declared contact angle theta
  int resolution = 0;
  geom::Domain dom;
  varifold::DiscreteVarifold V;
  varifold::BoundaryPatch patch;      // declared wetted region
  varifold::BoundaryPatch patch_eff;  // after any obtuse-angle rewrite
  contact::ContactConfig cfg;
  std::vector<Vec> contact_points;
  double expected_density_limit = 0.0;
  std::vector<contact::ConormalSample> conormal_samples;
  std::shared_ptr<const SurfaceOracle> oracle;

  explicit Fixture(geom::Domain d) : dom(std::move(d)) {}

  double effective_sigma() const { return cfg.effective_sigma(); }

  // Continuum-exact profile evaluators (oracle surface + analytic patch).
  mono::MassSources exact_sources() const;
  // Discrete evaluators over the stored atoms/nodes; views into this
  // fixture, which must outlive them.
  mono::MassSources quadrature_sources() const;
};

// Chord of the unit disk at height d in [0, 1): sigma = d, theta = acos(d).
// The mirrored variant carries the chord at height -d with the declared
// angle pi - acos(d) and the small wetted arc; its effective configuration
// is the complemented arc with sigma back at +d.
Fixture chord_fixture(double d, int resolution, bool mirrored = false);

// Spherical cap in the unit ball meeting the equator at the declared angle
// theta in (0, pi): sigma = cos(theta).  Obtuse angles are built in the
// mirrored representation automatically (flipped dome, complemented band).
// theta = pi/2 degenerates to the flat equatorial disk.
Fixture cap_fixture(double theta, int resolution);

Fixture make_fixture(const std::string& name, double param, int resolution, bool mirrored = false);

// theta -> pi - theta counterpart of the same geometry family.
Fixture mirror_fixture(const Fixture& f);

// Lat-long triangulation of the cap surface, for mesh export and ingestion
// round-trip tests.
void cap_mesh(double theta, int resolution, std::vector<Vec>& vertices,
              std::vector<std::array<int, 3>>& triangles);

}  // namespace vmt::fixtures
