#include "vmt/geom.hpp"

#include <cmath>
#include <limits>

#include "vmt/numerics.hpp"

namespace vmt::geom {

namespace {

constexpr double kPhiAccept = 1e-12;
constexpr double kTanAccept = 1e-10;
constexpr double kPhiTarget = 1e-15;
constexpr double kTanTarget = 1e-13;
constexpr int kMaxIter = 50;

Mat normal_projector(const Vec& n) { return n * n.transpose(); }

}  // namespace

Domain Domain::ball(const Vec& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("Domain::ball: radius must be positive");
  if (center.size() < 2) throw std::invalid_argument("Domain::ball: ambient dimension must be >= 2");
  Domain d;
  d.dim_ = static_cast<int>(center.size());
  d.is_ball_ = true;
  d.center_ = center;
  d.radius_ = radius;
  d.kappa_ = 1.0 / radius;
  d.s0_ = radius;
  d.fd_step_ = 1e-5 * d.s0_;
  return d;
}

Domain Domain::implicit(const ImplicitSpec& spec) {
  if (!spec.phi || !spec.grad || !spec.hess)
    throw std::invalid_argument("Domain::implicit: phi, grad and hess are all required");
  if (spec.ambient_dim < 2) throw std::invalid_argument("Domain::implicit: ambient dimension must be >= 2");
  if (!(spec.kappa_hint > 0.0)) throw std::invalid_argument("Domain::implicit: kappa_hint must be positive");
  if (!(spec.s0_hint > 0.0)) throw std::invalid_argument("Domain::implicit: s0_hint must be positive");
  if (spec.s0_hint * spec.kappa_hint > 1.0 + 1e-12)
    throw std::invalid_argument("Domain::implicit: s0_hint must not exceed 1/kappa_hint");
  if (!spec.boundary_sampler && (spec.box_lo.size() != spec.ambient_dim || spec.box_hi.size() != spec.ambient_dim))
    throw std::invalid_argument("Domain::implicit: need a sampling box or a boundary sampler");
  Domain d;
  d.dim_ = spec.ambient_dim;
  d.kappa_ = spec.kappa_hint;
  d.s0_ = spec.s0_hint;
  d.fd_step_ = 1e-5 * d.s0_;
  d.spec_ = spec;
  d.validate_implicit();
  return d;
}

Domain Domain::ellipsoid(const Vec& semi_axes, double s0_hint) {
  const int dim = static_cast<int>(semi_axes.size());
  if (dim < 2) throw std::invalid_argument("Domain::ellipsoid: need at least two semi-axes");
  for (int i = 0; i < dim; ++i)
    if (!(semi_axes(i) > 0.0)) throw std::invalid_argument("Domain::ellipsoid: semi-axes must be positive");
  const double amax = semi_axes.maxCoeff();
  const double amin = semi_axes.minCoeff();
  const double kappa = amax / (amin * amin);
  ImplicitSpec spec;
  spec.ambient_dim = dim;
  spec.kappa_hint = kappa;
  spec.s0_hint = s0_hint > 0.0 ? s0_hint : 0.5 / kappa;
  Vec axes = semi_axes;
  spec.phi = [axes](const Vec& x) {
    double s = -1.0;
    for (int i = 0; i < x.size(); ++i) s += (x(i) / axes(i)) * (x(i) / axes(i));
    return s;
  };
  spec.grad = [axes](const Vec& x) {
    Vec g(x.size());
    for (int i = 0; i < x.size(); ++i) g(i) = 2.0 * x(i) / (axes(i) * axes(i));
    return g;
  };
  spec.hess = [axes](const Vec& x) {
    Mat h = Mat::Zero(x.size(), x.size());
    for (int i = 0; i < x.size(); ++i) h(i, i) = 2.0 / (axes(i) * axes(i));
    return h;
  };
  spec.box_lo = -1.1 * semi_axes;
  spec.box_hi = 1.1 * semi_axes;
  if (dim == 2) {
    spec.boundary_sampler = [axes](const Vec& u) {
      const double t = 2.0 * M_PI * u(0);
      return vec2(axes(0) * std::cos(t), axes(1) * std::sin(t));
    };
  } else if (dim == 3) {
    spec.boundary_sampler = [axes](const Vec& u) {
      const double ct = 1.0 - 2.0 * u(0);
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      const double p = 2.0 * M_PI * u(1);
      return vec3(axes(0) * st * std::cos(p), axes(1) * st * std::sin(p), axes(2) * ct);
    };
  }
  return implicit(spec);
}

double Domain::phi(const Vec& x) const {
  if (is_ball_) return (x - center_).norm() - radius_;
  return spec_.phi(x);
}

Vec Domain::grad_phi(const Vec& x) const {
  if (is_ball_) {
    const Vec r = x - center_;
    const double m = r.norm();
    if (m < 1e-14) throw std::domain_error("Domain::grad_phi: undefined at the ball centre");
    return r / m;
  }
  return spec_.grad(x);
}

Mat Domain::hess_phi(const Vec& x) const {
  if (is_ball_) {
    const Vec r = x - center_;
    const double m = r.norm();
    if (m < 1e-14) throw std::domain_error("Domain::hess_phi: undefined at the ball centre");
    const Vec u = r / m;
    return (identity_like(dim_) - u * u.transpose()) / m;
  }
  return spec_.hess(x);
}

std::optional<Vec> Domain::newton_foot(const Vec& x, const Vec& start) const {
  Vec y = start;
  double best = std::numeric_limits<double>::infinity();
  int stall = 0;
  for (int it = 0; it < kMaxIter; ++it) {
    Vec g = spec_.grad(y);
    const double g2 = g.squaredNorm();
    if (g2 < 1e-24) return std::nullopt;
    y -= spec_.phi(y) / g2 * g;
    g = spec_.grad(y);
    const double gn = g.norm();
    if (gn < 1e-12) return std::nullopt;
    const Vec n = g / gn;
    const Vec d = x - y;
    const Vec t = d - n.dot(d) * n;
    y += t;
    const double r_phi = std::abs(spec_.phi(y));
    const double r_tan = t.norm();
    if (r_phi < kPhiTarget && r_tan < kTanTarget) break;
    const double sum = r_phi + r_tan;
    if (sum >= best) {
      if (++stall >= 3) break;
    } else {
      best = sum;
      stall = 0;
    }
  }
  // Contract check on the final iterate.
  const Vec g = spec_.grad(y);
  const double gn = g.norm();
  if (gn < 1e-12) return std::nullopt;
  const Vec n = g / gn;
  const Vec d = x - y;
  if (std::abs(spec_.phi(y)) > kPhiAccept) return std::nullopt;
  if ((d - n.dot(d) * n).norm() > kTanAccept) return std::nullopt;
  return y;
}

std::optional<CollarPoint> Domain::try_project(const Vec& x) const {
  CollarPoint cp;
  cp.x = x;
  if (is_ball_) {
    const Vec r = x - center_;
    const double m = r.norm();
    if (m < 1e-14) return std::nullopt;
    const double d = std::abs(m - radius_);
    if (d >= s0_) return std::nullopt;
    const Vec u = r / m;
    cp.xi = center_ + radius_ * u;
    cp.dist = d;
    cp.xtilde = 2.0 * cp.xi - x;
    cp.normal = u;
    cp.nu = normal_projector(u);
    cp.tau = identity_like(dim_) - cp.nu;
    return cp;
  }
  const auto foot = newton_foot(x, x);
  if (!foot) return std::nullopt;
  const double d = (x - *foot).norm();
  if (d >= s0_) return std::nullopt;
  const Vec g = spec_.grad(*foot);
  const Vec n = g / g.norm();
  cp.xi = *foot;
  cp.dist = d;
  cp.xtilde = 2.0 * cp.xi - x;
  cp.normal = n;
  cp.nu = normal_projector(n);
  cp.tau = identity_like(dim_) - cp.nu;
  return cp;
}

CollarPoint Domain::project(const Vec& x) const {
  auto cp = try_project(x);
  if (!cp) throw std::domain_error("Domain::project: point outside the collar (or projection undefined)");
  return *cp;
}

double Domain::boundary_distance(const Vec& x) const {
  if (is_ball_) return std::abs((x - center_).norm() - radius_);
  const auto foot = newton_foot(x, x);
  if (!foot) return std::numeric_limits<double>::infinity();
  return (x - *foot).norm();
}

bool Domain::in_collar(const Vec& x) const { return try_project(x).has_value(); }

Mat Domain::projection_jacobian(const Vec& x) const {
  if (is_ball_) {
    const Vec r = x - center_;
    const double m = r.norm();
    if (m < 1e-14) throw std::domain_error("projection_jacobian: undefined at the ball centre");
    const Vec u = r / m;
    return (radius_ / m) * (identity_like(dim_) - u * u.transpose());
  }
  const auto f = [this](const Vec& y) {
    auto cp = try_project(y);
    if (!cp) throw std::runtime_error("projection_jacobian: stencil point left the collar");
    return cp->xi;
  };
  return fd_jacobian(f, x, fd_step_);
}

Mat Domain::projection_derivative_defect(const Vec& x) const {
  const CollarPoint cp = project(x);
  return projection_jacobian(x) - cp.tau;
}

Mat Domain::reflection_matrix_derivative(const Vec& x, const Vec& v) const {
  if (is_ball_) {
    const Vec r = x - center_;
    const double m = r.norm();
    if (m < 1e-14) throw std::domain_error("reflection_matrix_derivative: undefined at the ball centre");
    const Vec u = r / m;
    const Vec w = v - u.dot(v) * u;
    return (-2.0 / m) * (u.dot(v) * (identity_like(dim_) - u * u.transpose()) + w * u.transpose());
  }
  const double h = fd_step_;
  Mat out(dim_, dim_);
  Vec xp = x, xm = x;
  for (int i = 0; i < dim_; ++i) {
    xp(i) = x(i) + h;
    xm(i) = x(i) - h;
    auto cpp = try_project(xp);
    auto cpm = try_project(xm);
    if (!cpp || !cpm) throw std::runtime_error("reflection_matrix_derivative: stencil point left the collar");
    const Mat d = ((cpp->tau - cpp->nu) - (cpm->tau - cpm->nu)) / (2.0 * h);
    out.row(i) = (d * v).transpose();
    xp(i) = x(i);
    xm(i) = x(i);
  }
  return out;
}

double Domain::boundary_projector_derivative_norm(const Vec& b, int direction_samples) const {
  const CollarPoint cb = project(b);
  if (cb.dist > 1e-9) throw std::invalid_argument("boundary_projector_derivative_norm: point not on the boundary");
  // Orthonormal tangent basis at b.
  std::vector<Vec> basis;
  for (int i = 0; i < dim_ && static_cast<int>(basis.size()) < dim_ - 1; ++i) {
    Vec t = cb.tau * Vec::Unit(dim_, i);
    for (const Vec& e : basis) t -= e.dot(t) * e;
    const double n = t.norm();
    if (n > 1e-8) basis.push_back(t / n);
  }
  const double h = fd_step_;
  const auto dir_norm = [&](const Vec& t) {
    const CollarPoint p = project(b + h * t);
    const CollarPoint m = project(b - h * t);
    return operator_norm((p.nu - m.nu) / (2.0 * h));
  };
  double out = 0.0;
  if (basis.size() == 1) return dir_norm(basis[0]);
  const int k = std::max(direction_samples, 4);
  for (int i = 0; i < k; ++i) {
    const double ang = M_PI * i / k;
    Vec t = std::cos(ang) * basis[0];
    for (std::size_t j = 1; j < basis.size(); ++j) t += std::sin(ang) * basis[j];
    t.normalize();
    out = std::max(out, dir_norm(t));
  }
  return out;
}

Vec Domain::sample_boundary(Rng& rng) const {
  if (is_ball_) return center_ + radius_ * rng.unit_vector(dim_);
  if (spec_.boundary_sampler) {
    Vec u(dim_ - 1);
    for (int i = 0; i < dim_ - 1; ++i) u(i) = rng.uniform();
    return spec_.boundary_sampler(u);
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vec x(dim_);
    for (int i = 0; i < dim_; ++i) x(i) = rng.uniform(spec_.box_lo(i), spec_.box_hi(i));
    const auto foot = newton_foot(x, x);
    if (foot) return *foot;
  }
  throw std::runtime_error("Domain::sample_boundary: could not find boundary points");
}

Vec Domain::sample_collar_interior(Rng& rng, double depth) const {
  if (!(depth > 0.0) || depth > s0_)
    throw std::invalid_argument("sample_collar_interior: depth must lie in (0, s0]");
  const Vec b = sample_boundary(rng);
  const Vec n = is_ball_ ? Vec((b - center_).normalized()) : Vec(spec_.grad(b).normalized());
  const double u = rng.uniform(1e-6 * depth, depth * (1.0 - 1e-9));
  return b - u * n;
}

void Domain::validate_implicit() {
  const int n_samples = std::max(spec_.validation_samples, 100);
  Rng rng(0x9e3779b97f4a7c15ULL);
  std::vector<Vec> boundary_points;
  int attempts = 0, converged = 0;

  const auto draw_probe = [&]() -> Vec {
    if (spec_.boundary_sampler) {
      Vec u(dim_ - 1);
      for (int i = 0; i < dim_ - 1; ++i) u(i) = rng.uniform();
      const Vec b = spec_.boundary_sampler(u);
      const Vec g = spec_.grad(b);
      const double gn = g.norm();
      if (gn < 1e-12) return b;
      const double side = rng.uniform() < 0.5 ? -1.0 : 1.0;
      return b + side * rng.uniform(0.0, 0.9 * s0_) * (g / gn);
    }
    Vec x(dim_);
    for (int i = 0; i < dim_; ++i) x(i) = rng.uniform(spec_.box_lo(i), spec_.box_hi(i));
    return x;
  };

  for (int i = 0; i < n_samples; ++i) {
    const Vec x = draw_probe();
    ++attempts;
    const auto foot = newton_foot(x, x);
    if (foot) {
      ++converged;
      if (boundary_points.size() < static_cast<std::size_t>(n_samples)) boundary_points.push_back(*foot);
    }
  }
  const double rate = static_cast<double>(converged) / attempts;
  const double required = spec_.boundary_sampler ? 0.999 : 0.5;
  if (rate < required || boundary_points.size() < 100)
    throw std::invalid_argument("Domain::implicit: projection validation sweep failed to converge");

  // Foot-point uniqueness probe: restarting the projection from a jittered
  // initial iterate must land on the same foot.
  const int uniq = std::min<int>(1000, static_cast<int>(boundary_points.size()));
  double scale = 0.0;
  for (const Vec& b : boundary_points) scale = std::max(scale, b.norm());
  for (int i = 0; i < uniq; ++i) {
    const Vec& b = boundary_points[i];
    const Vec g = spec_.grad(b);
    const double gn = g.norm();
    if (gn < 1e-12) throw std::invalid_argument("Domain::implicit: degenerate gradient on the boundary");
    const Vec n = g / gn;
    const double side = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const Vec x = b + side * rng.uniform(0.0, 0.9 * s0_) * n;
    const auto f1 = newton_foot(x, x);
    const auto f2 = newton_foot(x, x + 0.05 * s0_ * rng.unit_vector(dim_));
    if (!f1 || !f2) throw std::invalid_argument("Domain::implicit: collar projection failed to converge");
    if ((*f1 - *f2).norm() > 1e-8 * std::max(1.0, scale))
      throw std::invalid_argument("Domain::implicit: nearest boundary point is not unique in the collar");
  }

  // Principal curvatures estimated from the level-set Hessian must respect
  // the declared bound.
  const double limit = spec_.kappa_hint * (1.0 + 1e-6);
  for (const Vec& b : boundary_points) {
    const Vec g = spec_.grad(b);
    const double gn = g.norm();
    const Vec n = g / gn;
    const Mat p = identity_like(dim_) - n * n.transpose();
    const Mat w = p * spec_.hess(b) * p / gn;
    Eigen::SelfAdjointEigenSolver<Mat> es(w);
    const double kmax = es.eigenvalues().cwiseAbs().maxCoeff();
    if (kmax > limit)
      throw std::invalid_argument("Domain::implicit: boundary curvature exceeds kappa_hint");
  }
}

Mat reflection_matrix(const CollarPoint& cp) { return cp.tau - cp.nu; }

Vec reflect_op(const CollarPoint& cp, const Vec& v) { return cp.tau * v - cp.nu * v; }

ReflectedMembership in_reflected_ball(const Domain& dom, const Vec& a, double rho, const Vec& x) {
  if (!(rho > 0.0)) throw std::invalid_argument("in_reflected_ball: rho must be positive");
  ReflectedMembership out;
  const auto cp = dom.try_project(x);
  if (!cp) return out;  // outside the collar: never a member
  out.in_collar = true;
  out.inside = (cp->xtilde - a).norm() < rho;
  return out;
}

}  // namespace vmt::geom
