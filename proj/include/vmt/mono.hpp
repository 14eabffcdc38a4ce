#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vmt/core.hpp"
#include "vmt/geom.hpp"
#include "vmt/varifold.hpp"

namespace vmt::mono {

struct MonotoneParams {
  double p = 2.0;
  double Gamma = 0.0;
  double C = 0.0;
  double kappa = 1.0;
  double s0 = 1.0;
  double sigma = 0.0;   // effective (>= 0 after any mirror rewrite)
  int surface_dim = 1;  // n

  void validate() const;
};

// Ball / reflected-ball / patch mass evaluators; either quadrature sums over
// a discrete varifold or exact fixture oracles.
struct MassSources {
  std::function<double(const Vec&, double)> surface_ball;
  std::function<double(const Vec&, double)> surface_reflected;
  std::function<double(const Vec&, double)> patch_ball;
};

MassSources quadrature_sources(const varifold::DiscreteVarifold& v, const geom::Domain& dom,
                               const varifold::BoundaryPatch& patch);

// Default profile grid: log-spaced radii spanning [s0/600, s0/6).
std::vector<double> default_rho_grid(double s0, int count = 64);

struct DensityProfile {
  Vec center;
  std::vector<double> rho;
  std::vector<double> I;
  std::vector<double> raw_ratio;
  std::vector<double> corrected;
};

// L^p curvature budget over the collar interior:
// ((1/omega_n) * sum of 2*w*|h|^p over atoms inside the domain within the
// collar)^(1/p).
double compute_gamma(const varifold::DiscreteVarifold& v, const geom::Domain& dom, double p);

// I(rho) = ball mass + reflected-ball mass + 2*sigma*patch mass, with the
// raw ratio I / (omega_n rho^n).  The centre must lie in the closed domain
// within the inner sixth of the collar, and the grid inside (0, s0/6).
DensityProfile profile_I(const MassSources& src, const geom::Domain& dom, int surface_dim,
                         double sigma, const Vec& a, const std::vector<double>& grid);

double corrected_value(double raw_ratio, double rho, const MonotoneParams& mp);
void apply_correction(DensityProfile& profile, const MonotoneParams& mp);

// Indices i with values[i+1] < values[i] - tol.
std::vector<int> check_monotone(const std::vector<double>& values, double tol);

struct ProfileCase {
  DensityProfile profile;
  MonotoneParams params;  // C is overwritten during the search
  std::string label;
};

struct ConstantSearch {
  double c_hat = 0.0;
  std::string binding_label;
  bool ok = false;
};

// Smallest C in [0, c_max] (bisection) making every corrected profile
// monotone at the given tolerance.
ConstantSearch find_constant(std::vector<ProfileCase>& cases, double tol, double c_max = 1000.0);

struct DensityLimit {
  double estimate = 0.0;
  double uncertainty = 0.0;
  bool converged = false;
};

// Affine-in-rho extrapolation of the raw ratio from the smallest grid
// points; the uncertainty is the fit residual scale.
DensityLimit density_limit(const DensityProfile& profile);

// Curvature remainder scalars of the reflected-gradient expansion at a
// collar point x with tangent plane S, relative to the centre a.
struct CurvatureRemainders {
  double r1 = 0.0;
  double r2 = 0.0;
};

CurvatureRemainders curvature_remainders(const geom::Domain& dom, const Vec& a, const Vec& x,
                                         const Mat& S);
// Remainder of the tangential divergence on the boundary itself.
double boundary_remainder(const geom::Domain& dom, const Vec& a, const Vec& b);

// Mollified error integrals along the proof decomposition, on a rho grid:
// E1/E2 weight the curvature remainders by the reflected cutoff, E3 the
// boundary remainder over the patch, H the curvature pairing of the paired
// cutoff field.  E2' is a central difference in rho.
struct ProofDiagnostics {
  std::vector<double> rho;
  std::vector<double> I_smooth;
  std::vector<double> E1, E2, E3, H;
  std::vector<double> E2_prime;
};

ProofDiagnostics proof_E_terms(const varifold::DiscreteVarifold& v, const geom::Domain& dom,
                               const varifold::BoundaryPatch& patch, double sigma, const Vec& a,
                               const std::vector<double>& grid);

}  // namespace vmt::mono
