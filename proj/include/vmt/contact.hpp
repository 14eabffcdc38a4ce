#pragma once

#include <string>
#include <vector>

#include "vmt/core.hpp"
#include "vmt/geom.hpp"
#include "vmt/rng.hpp"
#include "vmt/varifold.hpp"

namespace vmt::contact {

// Contact-angle data: sigma is cos(theta), kept signed.  The mirror flag
// marks configurations in the obtuse range that are evaluated through the
// (-sigma, complemented patch) rewrite, whose effective sigma is >= 0.
struct ContactConfig {
  double theta = 0.0;
  double sigma = 1.0;
  bool mirror = false;

  static ContactConfig from_theta(double theta, bool mirror = false);
  double effective_sigma() const { return mirror ? -sigma : sigma; }
};

struct TestField {
  std::string id;
  varifold::VectorField value;
  varifold::MatrixField gradient;  // (i, j) = d g_j / d x_i
};

// Peel the normal component of an ambient field inside the collar so the
// result is tangent on the boundary; the blend profile vanishes to second
// order at the boundary and is supported in the inner half of the collar.
TestField tangentialize(const geom::Domain& dom, const std::string& id,
                        const varifold::VectorField& G, const varifold::MatrixField& grad_G);

// Radial field around a paired with its reflected image; support in
// B_rho(a) union the reflected ball, tangent on the boundary by construction.
TestField proof_test_field(const geom::Domain& dom, const Vec& a, double rho);

double boundary_normal_defect(const geom::Domain& dom, const TestField& g,
                              const std::vector<Vec>& boundary_samples);

// First variation + sigma * tangential-divergence + curvature pairing; zero
// (up to quadrature) exactly when the pair satisfies the fixed-angle
// stationarity identity.
double angle_residual(const varifold::DiscreteVarifold& v, const geom::Domain& dom,
                      const varifold::BoundaryPatch& patch, double sigma, const TestField& g);

struct ResidualEntry {
  std::string field_id;
  double raw_residual = 0.0;
  double normalized_residual = 0.0;
  int refinement_level = 0;
};

struct ResidualReport {
  std::vector<ResidualEntry> entries;
  double max_normalized = 0.0;
};

double c1_norm(const TestField& g, const std::vector<Vec>& sample_points);

ResidualReport residual_sweep(const varifold::DiscreteVarifold& v, const geom::Domain& dom,
                              const varifold::BoundaryPatch& patch, double sigma,
                              const std::vector<TestField>& fields,
                              const std::vector<Vec>& norm_samples, int refinement_level);

// 2*(n+1) tangentialized coordinate/quadratic fields plus five reflected-pair
// fields at seeded collar centres.
std::vector<TestField> default_test_family(const geom::Domain& dom, Rng& rng);

// Pointwise check of the smooth contact condition along the surface boundary:
// on the patch edge the tangential part of the surface co-normal must equal
// -sigma times the patch co-normal; elsewhere the co-normal must match the
// domain normal.
struct ConormalSample {
  Vec point;
  Vec surface_conormal;
  Vec patch_conormal;  // meaningful when on_patch_boundary
  bool on_patch_boundary = true;
};

struct ConormalReport {
  double max_defect = 0.0;
  std::vector<double> defects;
};

ConormalReport conormal_check(const geom::Domain& dom, double sigma,
                              const std::vector<ConormalSample>& samples);

}  // namespace vmt::contact
