#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "vmt/fixtures.hpp"
#include "vmt/io.hpp"
#include "vmt/numerics.hpp"
#include "vmt/rng.hpp"
#include "vmt/varifold.hpp"

using namespace vmt;

namespace {

varifold::DiscreteVarifold unit_circle(int segments) {
  std::vector<Vec> poly;
  for (int i = 0; i <= segments; ++i) {
    const double t = 2.0 * M_PI * i / segments;
    poly.push_back(vec2(std::cos(t), std::sin(t)));
  }
  // Curvature of the polyline's smooth limit, extended off the circle.
  return varifold::from_segments(poly, 1, [](const Vec& x) -> Vec {
    return -x / x.squaredNorm();
  });
}

}  // namespace

TEST_CASE("segment atoms carry exact lengths and tangent planes") {
  const varifold::DiscreteVarifold v =
      varifold::from_segments({vec2(-1.0, 0.0), vec2(1.0, 0.0)}, 500);
  CHECK(v.ambient_dim == 2);
  CHECK(v.surface_dim() == 1);
  CHECK(v.atoms.size() == 500);
  CHECK(v.mass() == doctest::Approx(2.0).epsilon(1e-14));
  // Tangent plane is the projector onto e0 everywhere.
  Mat s_expected = Mat::Zero(2, 2);
  s_expected(0, 0) = 1.0;
  for (const varifold::Atom& at : v.atoms) {
    CHECK(operator_norm(at.S - s_expected) < 1e-14);
    CHECK(std::abs(at.x(1)) < 1e-14);
  }
  CHECK(!v.has_curvature);
}

TEST_CASE("ball mass of a diameter segment") {
  const varifold::DiscreteVarifold v =
      varifold::from_segments({vec2(-1.0, 0.0), vec2(1.0, 0.0)}, 20000);
  const double h = 2.0 / 20000;
  CHECK(std::abs(varifold::mass_in_ball(v, vec2(0.0, 0.0), 0.1) - 0.2) < 2.0 * h);
  CHECK(std::abs(varifold::mass_in_ball(v, vec2(0.95, 0.0), 0.2) - 0.25) < 2.0 * h);
  // Ball centred off the line, reaching it with a chord of half-width 0.3.
  CHECK(std::abs(varifold::mass_in_ball(v, vec2(0.0, 0.4), 0.5) - 0.6) < 2.0 * h);
}

TEST_CASE("reflected ball mass of a diameter segment") {
  const geom::Domain disk = geom::Domain::ball(vec2(0.0, 0.0), 1.0);
  const varifold::DiscreteVarifold v =
      varifold::from_segments({vec2(-1.0, 0.0), vec2(1.0, 0.0)}, 20000);
  const double h = 2.0 / 20000;
  // x = (t, 0) reflects to (2 - t, 0); within rho of a = (1, 0) iff t > 1 - rho.
  CHECK(std::abs(varifold::mass_in_reflected_ball(v, disk, vec2(1.0, 0.0), 0.1) - 0.1) <
        3.0 * h);
  // a = (0.9, 0): |2 - t - 0.9| < 0.15 iff t > 0.95.
  CHECK(std::abs(varifold::mass_in_reflected_ball(v, disk, vec2(0.9, 0.0), 0.15) - 0.05) <
        3.0 * h);
}

TEST_CASE("first variation of the identity field on a circle") {
  const varifold::DiscreteVarifold v = unit_circle(2048);
  // <grad x, S> = trace(S) = 1 per atom, so the value is the total length.
  const double expected = 2.0 * 2048 * std::sin(M_PI / 2048);
  const double fv = varifold::first_variation(v, [](const Vec&) { return identity_like(2); });
  CHECK(fv == doctest::Approx(expected).epsilon(1e-13));
  CHECK(fv == doctest::Approx(2.0 * M_PI).epsilon(1e-5));
}

TEST_CASE("first variation balances the curvature pairing on closed surfaces") {
  const varifold::DiscreteVarifold v = unit_circle(512);
  REQUIRE(v.has_curvature);
  const double fv = varifold::first_variation(v, [](const Vec&) { return identity_like(2); });
  const double pairing = varifold::curvature_pairing(v, [](const Vec& x) { return x; });
  CHECK(std::abs(fv + pairing) < 1e-12);
}

TEST_CASE("triangulated cap mass converges to the zone area") {
  const double theta = M_PI / 3.0;
  // Carrying sphere radius 2, zone area 2 pi r^2 (1 - sin(theta)).
  const double area = 8.0 * M_PI * (1.0 - std::sqrt(3.0) / 2.0);
  double prev = 0.0;
  for (int res : {8, 16, 32}) {
    std::vector<Vec> vertices;
    std::vector<std::array<int, 3>> triangles;
    fixtures::cap_mesh(theta, res, vertices, triangles);
    const varifold::DiscreteVarifold v = varifold::from_triangulation(vertices, triangles);
    CHECK(v.atoms.size() == 3 * triangles.size());
    const double err = std::abs(v.mass() - area);
    if (res > 8) CHECK(err < 0.35 * prev);  // second-order decay
    prev = err;
  }
  CHECK(prev < 2e-3);
}

TEST_CASE("arc patch measures are exact") {
  const varifold::BoundaryPatch arc =
      varifold::arc_patch(vec2(0.0, 0.0), 1.0, M_PI - M_PI / 6.0, 2.0 * M_PI + M_PI / 6.0, 400);
  CHECK(arc.total_measure() == doctest::Approx(M_PI + M_PI / 3.0).epsilon(1e-14));
  // Window cut by a ball around a boundary point inside the arc.
  const Vec a = vec2(0.0, -1.0);
  const double rho = 0.3;
  // |b - a| < rho on the unit circle iff the central angle from -pi/2 is
  // below 2 asin(rho/2).
  const double half = 2.0 * std::asin(0.5 * rho);
  CHECK(varifold::patch_measure_in_ball(arc, a, rho) ==
        doctest::Approx(2.0 * half).epsilon(1e-12));
}

TEST_CASE("band patch measures are exact") {
  const varifold::BoundaryPatch band = varifold::band_patch(1.0, -1.0, 0.0, 40, 160);
  CHECK(band.total_measure() == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  // Ball around the south pole cuts a polar cap: area 2 pi R (R - sqrt(R^2 - rho^2 + rho^4/4...)).
  const Vec a = vec3(0.0, 0.0, -1.0);
  const double rho = 0.4;
  // Chord distance rho on the unit sphere reaches height z < -1 + rho^2/2.
  const double cap_area = 2.0 * M_PI * (rho * rho / 2.0);
  CHECK(varifold::patch_measure_in_ball(band, a, rho) ==
        doctest::Approx(cap_area).epsilon(1e-12));
}

TEST_CASE("complement patches mirror the measure and flip conormals") {
  varifold::BoundaryPatch arc =
      varifold::arc_patch(vec2(0.0, 0.0), 1.0, M_PI - 0.3, 2.0 * M_PI + 0.3, 200);
  varifold::ContactLineNode node;
  node.q = vec2(std::cos(0.3), std::sin(0.3));
  node.conormal = vec2(-std::sin(0.3), std::cos(0.3));
  arc.contact_line.push_back(node);
  const varifold::BoundaryPatch comp = varifold::complement_patch(arc);
  CHECK(arc.total_measure() + comp.total_measure() == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
  REQUIRE(comp.contact_line.size() == 1);
  CHECK((comp.contact_line[0].conormal + node.conormal).norm() < 1e-14);

  const varifold::BoundaryPatch band = varifold::band_patch(1.0, -1.0, 0.0, 30, 120);
  const varifold::BoundaryPatch bcomp = varifold::complement_patch(band);
  CHECK(band.total_measure() + bcomp.total_measure() ==
        doctest::Approx(4.0 * M_PI).epsilon(1e-12));
  CHECK(bcomp.band->z_lo == doctest::Approx(0.0));
  CHECK(bcomp.band->z_hi == doctest::Approx(1.0));
}

TEST_CASE("closed boundary quadratures are spectrally accurate") {
  const varifold::BoundaryPatch circle = varifold::full_circle_patch(vec2(0.0, 0.0), 1.0, 256);
  CHECK(circle.total_measure() == doctest::Approx(2.0 * M_PI).epsilon(1e-13));
  const varifold::BoundaryPatch sphere = varifold::full_sphere_patch(1.0, 32, 64);
  CHECK(sphere.total_measure() == doctest::Approx(4.0 * M_PI).epsilon(1e-13));
}

TEST_CASE("surface divergence integral rejects non-tangent fields") {
  const geom::Domain disk = geom::Domain::ball(vec2(0.0, 0.0), 1.0);
  const varifold::BoundaryPatch circle = varifold::full_circle_patch(vec2(0.0, 0.0), 1.0, 64);
  const auto radial = [](const Vec& x) { return x; };
  const auto grad = [](const Vec&) { return identity_like(2); };
  CHECK_THROWS_AS(varifold::surface_divergence_integral(disk, circle, radial, grad),
                  std::invalid_argument);
  // Rotational fields are tangent with zero tangential divergence.
  const auto rot = [](const Vec& x) { return vec2(-x(1), x(0)); };
  const auto rot_grad = [](const Vec&) {
    Mat g = Mat::Zero(2, 2);
    g(0, 1) = 1.0;
    g(1, 0) = -1.0;
    return g;
  };
  CHECK(std::abs(varifold::surface_divergence_integral(disk, circle, rot, rot_grad)) < 1e-12);
}

TEST_CASE("contact line flux sums conormal pairings") {
  varifold::BoundaryPatch patch;
  patch.ambient_dim = 2;
  varifold::ContactLineNode n0, n1;
  n0.q = vec2(1.0, 0.0);
  n0.conormal = vec2(0.0, 1.0);
  n1.q = vec2(-1.0, 0.0);
  n1.conormal = vec2(0.0, -1.0);
  patch.contact_line = {n0, n1};
  const double flux = varifold::contact_line_flux(patch, [](const Vec& x) {
    return vec2(0.0, 2.0 + x(0));
  });
  CHECK(flux == doctest::Approx((2.0 + 1.0) - (2.0 - 1.0)).epsilon(1e-14));
}

TEST_CASE("obj round trip preserves the triangulated mass") {
  std::vector<Vec> vertices;
  std::vector<std::array<int, 3>> triangles;
  fixtures::cap_mesh(M_PI / 3.0, 6, vertices, triangles);
  const varifold::DiscreteVarifold direct = varifold::from_triangulation(vertices, triangles);
  const std::string path =
      (std::filesystem::temp_directory_path() / "vmt_roundtrip.obj").string();
  io::write_file(path, io::obj_mesh(vertices, triangles));
  const varifold::DiscreteVarifold reread = varifold::read_obj(path);
  REQUIRE(reread.atoms.size() == direct.atoms.size());
  CHECK(reread.mass() == doctest::Approx(direct.mass()).epsilon(1e-14));
  std::filesystem::remove(path);
}

TEST_CASE("csv dump carries one row per atom") {
  const varifold::DiscreteVarifold v =
      varifold::from_segments({vec2(0.0, 0.0), vec2(1.0, 0.0)}, 8);
  const std::string csv = varifold::dump_csv(v);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);  // header + 8 atoms
  CHECK(csv.rfind("x0,", 0) == 0);
}
