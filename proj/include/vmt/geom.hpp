#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vmt/core.hpp"
#include "vmt/rng.hpp"

namespace vmt::geom {

// Snapshot of the collar data at a point x with dist(x, boundary) < s0:
// foot point xi (nearest boundary point), the reflection xtilde = 2*xi - x,
// and the tangent/normal projectors of the boundary at xi.
struct CollarPoint {
  Vec x;
  Vec xi;
  double dist = 0.0;
  Vec xtilde;
  Mat tau;     // projection onto the tangent space at xi
  Mat nu;      // projection onto the normal line at xi; tau + nu = I
  Vec normal;  // outward unit normal at xi
};

struct ImplicitSpec {
  // Level-set description of the domain: phi < 0 inside, phi > 0 outside.
  std::function<double(const Vec&)> phi;
  std::function<Vec(const Vec&)> grad;
  std::function<Mat(const Vec&)> hess;
  int ambient_dim = 0;
  double kappa_hint = 0.0;  // max principal curvature magnitude of the boundary
  double s0_hint = 0.0;     // collar half-width, must satisfy s0 <= 1/kappa
  // Sampling box for the construction-time validation sweep.
  Vec box_lo, box_hi;
  // Optional exact boundary sampler (parameter in [0,1)^{dim-1} -> boundary
  // point); used to seed curvature validation when available.
  std::function<Vec(const Vec&)> boundary_sampler;
  int validation_samples = 1000;
};

struct ReflectedMembership {
  bool inside = false;
  bool in_collar = false;
};

class Domain {
 public:
  static Domain ball(const Vec& center, double radius);
  static Domain implicit(const ImplicitSpec& spec);
  // Axis-aligned ellipse/ellipsoid centred at the origin with the given
  // semi-axes; kappa and s0 fall out of the semi-axes unless overridden.
  static Domain ellipsoid(const Vec& semi_axes, double s0_hint = 0.0);

  int ambient_dim() const { return dim_; }
  double kappa() const { return kappa_; }
  double s0() const { return s0_; }
  bool is_ball() const { return is_ball_; }
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }

  double phi(const Vec& x) const;
  Vec grad_phi(const Vec& x) const;
  Mat hess_phi(const Vec& x) const;
  bool inside(const Vec& x) const { return phi(x) < 0.0; }

  // Nearest-point projection onto the boundary.  Returns nullopt when x is
  // outside the collar or the iteration does not converge.
  std::optional<CollarPoint> try_project(const Vec& x) const;

  // Throwing variant; rejects points outside the collar (and the ball
  // centre, where the foot point is undefined).
  CollarPoint project(const Vec& x) const;

  // Unsigned distance to the boundary (valid on both sides, anywhere).
  double boundary_distance(const Vec& x) const;

  bool in_collar(const Vec& x) const;

  // Derivative defect of the projection: Q(x) = grad(xi)(x) - tau(xi(x)).
  // Closed form for balls, central differences otherwise.
  Mat projection_derivative_defect(const Vec& x) const;
  Mat projection_jacobian(const Vec& x) const;  // grad(xi), (i,j) = d xi_j / d x_i

  // Row-contraction of the derivative of the boundary reflection matrix
  // field:  out(i,j) = sum_k d/dx_i [ (tau - nu)(xi(x)) ]_{jk} * v_k.
  Mat reflection_matrix_derivative(const Vec& x, const Vec& v) const;

  // Largest directional operator norm of the tangential derivative of the
  // normal projector at a boundary point b (equals kappa on spheres).
  double boundary_projector_derivative_norm(const Vec& b, int direction_samples = 64) const;

  double fd_step() const { return fd_step_; }

  // Uniform random interior point with boundary distance < depth.
  Vec sample_collar_interior(Rng& rng, double depth) const;
  // Random boundary point.
  Vec sample_boundary(Rng& rng) const;

 private:
  Domain() = default;
  void validate_implicit();
  std::optional<Vec> newton_foot(const Vec& x, const Vec& start) const;

  int dim_ = 0;
  double kappa_ = 0.0;
  double s0_ = 0.0;
  double fd_step_ = 0.0;
  bool is_ball_ = false;
  Vec center_;
  double radius_ = 0.0;
  ImplicitSpec spec_;
};

// Linear involutive isometry i_x of the collar point: v -> tau(xi(x)) v - nu(xi(x)) v.
Mat reflection_matrix(const CollarPoint& cp);
Vec reflect_op(const CollarPoint& cp, const Vec& v);

ReflectedMembership in_reflected_ball(const Domain& dom, const Vec& a, double rho, const Vec& x);

}  // namespace vmt::geom
