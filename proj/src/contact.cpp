#include "vmt/contact.hpp"

#include <cmath>

#include "vmt/numerics.hpp"

namespace vmt::contact {

ContactConfig ContactConfig::from_theta(double theta, bool mirror) {
  if (theta < 0.0 || theta > M_PI) throw std::invalid_argument("ContactConfig: theta must lie in [0, pi]");
  ContactConfig c;
  c.theta = theta;
  c.sigma = std::cos(theta);
  c.mirror = mirror;
  if (mirror && c.effective_sigma() < -1e-12)
    throw std::invalid_argument("ContactConfig: mirrored configuration must have effective sigma >= 0");
  return c;
}

TestField tangentialize(const geom::Domain& dom, const std::string& id,
                        const varifold::VectorField& G, const varifold::MatrixField& grad_G) {
  const CutoffProfile blend(0.0, 0.5 * dom.s0());
  const double step = dom.fd_step();

  const auto foot_normal = [&dom](const Vec& x) { return dom.project(x).normal; };

  TestField f;
  f.id = id;
  f.value = [=, &dom](const Vec& x) -> Vec {
    const auto cp = dom.try_project(x);
    if (!cp) return G(x);
    const double w = blend.value(cp->dist);
    if (w == 0.0) return G(x);
    const Vec m = cp->normal;
    return G(x) - w * G(x).dot(m) * m;
  };
  f.gradient = [=, &dom](const Vec& x) -> Mat {
    const auto cp = dom.try_project(x);
    const Mat dG = grad_G(x);
    if (!cp) return dG;
    const double w = blend.value(cp->dist);
    const double wp = blend.deriv(cp->dist);
    if (w == 0.0 && wp == 0.0) return dG;
    const int dim = dom.ambient_dim();
    const Vec m = cp->normal;
    const Vec gx = G(x);
    const double c = gx.dot(m);
    Mat dm(dim, dim);
    if (dom.is_ball()) {
      const Vec r = x - dom.center();
      const double mm = r.norm();
      const Vec u = r / mm;
      dm = (identity_like(dim) - u * u.transpose()) / mm;
    } else {
      dm = fd_jacobian(foot_normal, x, step);
    }
    Vec dd = Vec::Zero(dim);  // gradient of the boundary distance
    if (cp->dist > 1e-14) dd = (x - cp->xi) / cp->dist;
    const Vec dc = dG * m + dm * gx;
    return dG - (wp * c) * (dd * m.transpose()) - w * (dc * m.transpose() + c * dm);
  };
  return f;
}

TestField proof_test_field(const geom::Domain& dom, const Vec& a, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("proof_test_field: rho must be positive");
  const CutoffProfile gamma(0.5 * rho, rho);
  const int dim = dom.ambient_dim();

  TestField f;
  f.id = "reflected_pair";
  f.value = [=, &dom](const Vec& x) -> Vec {
    const Vec d = x - a;
    const double r = d.norm();
    Vec out = gamma.value(r) * d;
    const auto cp = dom.try_project(x);
    if (cp) {
      const Vec y = cp->xtilde - a;
      const double rr = y.norm();
      const double gy = gamma.value(rr);
      if (gy != 0.0) out += gy * geom::reflect_op(*cp, y);
    }
    return out;
  };
  f.gradient = [=, &dom](const Vec& x) -> Mat {
    const Vec d = x - a;
    const double r = d.norm();
    Mat out = gamma.value(r) * identity_like(dim);
    if (r > 1e-14) {
      const double gp = gamma.deriv(r);
      if (gp != 0.0) out += (gp / r) * (d * d.transpose());
    }
    const auto cp = dom.try_project(x);
    if (cp) {
      const Vec y = cp->xtilde - a;
      const double rr = y.norm();
      const double gy = gamma.value(rr);
      const double gyp = rr > 1e-14 ? gamma.deriv(rr) : 0.0;
      if (gy != 0.0 || gyp != 0.0) {
        const Mat refl = geom::reflection_matrix(*cp);
        const Mat dxt = 2.0 * dom.projection_jacobian(x) - identity_like(dim);
        if (gyp != 0.0) {
          const Vec u = y / rr;
          out += gyp * ((dxt * u) * (refl * y).transpose());
        }
        if (gy != 0.0)
          out += gy * (dom.reflection_matrix_derivative(x, y) + dxt * refl);
      }
    }
    return out;
  };
  return f;
}

double boundary_normal_defect(const geom::Domain& dom, const TestField& g,
                              const std::vector<Vec>& boundary_samples) {
  double worst = 0.0;
  for (const Vec& b : boundary_samples) {
    const geom::CollarPoint cp = dom.project(b);
    worst = std::max(worst, std::abs(g.value(b).dot(cp.normal)));
  }
  return worst;
}

double angle_residual(const varifold::DiscreteVarifold& v, const geom::Domain& dom,
                      const varifold::BoundaryPatch& patch, double sigma, const TestField& g) {
  if (!v.has_curvature && !v.atoms.empty())
    throw std::invalid_argument("angle_residual: varifold carries no curvature field");
  double out = varifold::first_variation(v, g.gradient);
  out += sigma * varifold::surface_divergence_integral(dom, patch, g.value, g.gradient);
  out += varifold::curvature_pairing(v, g.value);
  return out;
}

double c1_norm(const TestField& g, const std::vector<Vec>& sample_points) {
  double v0 = 0.0, v1 = 0.0;
  for (const Vec& x : sample_points) {
    v0 = std::max(v0, g.value(x).norm());
    v1 = std::max(v1, g.gradient(x).norm());
  }
  return v0 + v1;
}

ResidualReport residual_sweep(const varifold::DiscreteVarifold& v, const geom::Domain& dom,
                              const varifold::BoundaryPatch& patch, double sigma,
                              const std::vector<TestField>& fields,
                              const std::vector<Vec>& norm_samples, int refinement_level) {
  ResidualReport report;
  for (const TestField& g : fields) {
    ResidualEntry e;
    e.field_id = g.id;
    e.refinement_level = refinement_level;
    e.raw_residual = angle_residual(v, dom, patch, sigma, g);
    const double norm = c1_norm(g, norm_samples);
    e.normalized_residual = norm > 1e-300 ? std::abs(e.raw_residual) / norm : 0.0;
    report.max_normalized = std::max(report.max_normalized, e.normalized_residual);
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::vector<TestField> default_test_family(const geom::Domain& dom, Rng& rng) {
  std::vector<TestField> fields;
  const int dim = dom.ambient_dim();
  for (int i = 0; i < dim; ++i) {
    const Vec e = Vec::Unit(dim, i);
    fields.push_back(tangentialize(
        dom, "coord_" + std::to_string(i), [e](const Vec&) { return e; },
        [dim](const Vec&) { return Mat::Zero(dim, dim); }));
  }
  for (int i = 0; i < dim; ++i) {
    fields.push_back(tangentialize(
        dom, "quad_" + std::to_string(i), [i](const Vec& x) { return Vec(x(i) * x); },
        [i, dim](const Vec& x) {
          Mat g = x(i) * identity_like(dim);
          g.row(i) += x.transpose();
          return g;
        }));
  }
  for (int k = 0; k < 5; ++k) {
    const Vec a = dom.sample_collar_interior(rng, dom.s0() / 6.0);
    const double rho = rng.uniform(dom.s0() / 12.0, dom.s0() / 6.0);
    TestField f = proof_test_field(dom, a, rho);
    f.id = "reflected_pair_" + std::to_string(k);
    fields.push_back(std::move(f));
  }
  return fields;
}

ConormalReport conormal_check(const geom::Domain& dom, double sigma,
                              const std::vector<ConormalSample>& samples) {
  ConormalReport report;
  for (const ConormalSample& s : samples) {
    const geom::CollarPoint cp = dom.project(s.point);
    double defect;
    if (s.on_patch_boundary) {
      const Vec tangential = s.surface_conormal - s.surface_conormal.dot(cp.normal) * cp.normal;
      defect = (tangential + sigma * s.patch_conormal).norm();
    } else {
      defect = (s.surface_conormal - cp.normal).norm();
    }
    report.defects.push_back(defect);
    report.max_defect = std::max(report.max_defect, defect);
  }
  return report;
}

}  // namespace vmt::contact
