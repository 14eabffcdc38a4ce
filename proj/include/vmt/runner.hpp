#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vmt/core.hpp"
#include "vmt/fixtures.hpp"
#include "vmt/geom.hpp"

namespace vmt::runner {

struct DomainSpec {
  std::string kind;  // "ball" | "ellipsoid"
  Vec center;        // ball (defaults to the origin of the given dimension)
  double radius = 1.0;
  Vec semi_axes;            // ellipsoid
  double kappa_hint = 0.0;  // optional consistency check against s0_hint
  double s0_hint = 0.0;     // 0 = factory default
};

struct FixtureSpec {
  std::string name;  // "chord" | "cap" | "mesh"
  double param = 0.0;
  int resolution = 0;  // 0 = family default
  bool mirror = false;
  std::string mesh_path;
};

// One strict-schema JSON document drives every subcommand; unknown keys are
// rejected so typos in mathematical parameters cannot pass silently.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::optional<DomainSpec> domain;
  std::optional<FixtureSpec> fixture;
  std::vector<FixtureSpec> family;  // find-constant; empty = built-in family
  std::optional<double> sigma_override;
  double p = 0.0;  // 0 = surface dimension + 1
  double C = 1.0;
  int rho_count = 64;
  int interior_centers = 5;
  std::vector<Vec> centers;  // explicit profile centres (mesh fixtures)
  int lemma_samples = 10000;
  int residual_levels = 3;
  std::string out_dir = "out";
  bool write_csv = true, write_json = true, write_svg = true;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

geom::Domain build_domain(const DomainSpec& spec);
fixtures::Fixture build_fixture(const FixtureSpec& spec,
                                const std::optional<DomainSpec>& domain_spec);

// Exit codes: 0 = all checks passed, 2 = checks ran with violations,
// 1 (thrown) = configuration error.
int run_lemmas(const ExperimentConfig& cfg);
int run_residual(const ExperimentConfig& cfg);
int run_monotonicity(const ExperimentConfig& cfg);
int run_find_constant(const ExperimentConfig& cfg);
int run_density(const ExperimentConfig& cfg);
int run_fixture_dump(const ExperimentConfig& cfg);

}  // namespace vmt::runner
