#include "vmt/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "vmt/contact.hpp"
#include "vmt/io.hpp"
#include "vmt/mono.hpp"
#include "vmt/rng.hpp"

namespace vmt::runner {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

[[noreturn]] void config_error(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

void expect_keys(const json& j, const std::string& where,
                 std::initializer_list<const char*> allowed) {
  if (!j.is_object()) config_error(where + " must be an object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok) config_error("unknown key '" + item.key() + "' in " + where);
  }
}

double get_num(const json& j, const std::string& where) {
  if (!j.is_number()) config_error(where + " must be a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) config_error(where + " must be an integer");
  return j.get<int>();
}

std::string get_str(const json& j, const std::string& where) {
  if (!j.is_string()) config_error(where + " must be a string");
  return j.get<std::string>();
}

bool get_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) config_error(where + " must be a boolean");
  return j.get<bool>();
}

Vec get_vec(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) config_error(where + " must be a nonempty numeric array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = get_num(j[i], where + " entry");
  return v;
}

DomainSpec parse_domain(const json& j) {
  expect_keys(j, "domain", {"kind", "center", "radius", "semi_axes", "kappa_hint", "s0_hint"});
  DomainSpec d;
  if (!j.contains("kind")) config_error("domain.kind is required");
  d.kind = get_str(j.at("kind"), "domain.kind");
  if (d.kind == "ball") {
    if (!j.contains("center") || !j.contains("radius"))
      config_error("ball domains need center and radius");
    d.center = get_vec(j.at("center"), "domain.center");
    d.radius = get_num(j.at("radius"), "domain.radius");
    if (!(d.radius > 0.0)) config_error("domain.radius must be positive");
  } else if (d.kind == "ellipsoid") {
    if (!j.contains("semi_axes")) config_error("ellipsoid domains need semi_axes");
    d.semi_axes = get_vec(j.at("semi_axes"), "domain.semi_axes");
    for (int i = 0; i < d.semi_axes.size(); ++i)
      if (!(d.semi_axes(i) > 0.0)) config_error("domain.semi_axes must be positive");
  } else {
    config_error("unknown domain.kind '" + d.kind + "'");
  }
  if (j.contains("kappa_hint")) {
    d.kappa_hint = get_num(j.at("kappa_hint"), "domain.kappa_hint");
    if (!(d.kappa_hint > 0.0)) config_error("domain.kappa_hint must be positive");
  }
  if (j.contains("s0_hint")) {
    d.s0_hint = get_num(j.at("s0_hint"), "domain.s0_hint");
    if (!(d.s0_hint > 0.0)) config_error("domain.s0_hint must be positive");
  }
  if (d.kappa_hint > 0.0 && d.s0_hint > 0.0 && d.s0_hint > 1.0 / d.kappa_hint + 1e-12)
    config_error("domain.s0_hint exceeds 1/kappa_hint");
  return d;
}

FixtureSpec parse_fixture(const json& j, const std::string& where) {
  expect_keys(j, where, {"name", "d", "theta", "resolution", "mirror", "path"});
  FixtureSpec f;
  if (!j.contains("name")) config_error(where + ".name is required");
  f.name = get_str(j.at("name"), where + ".name");
  if (j.contains("resolution")) {
    f.resolution = get_int(j.at("resolution"), where + ".resolution");
    if (f.resolution < 1) config_error(where + ".resolution must be >= 1");
  }
  if (f.name == "chord") {
    if (!j.contains("d")) config_error(where + ": chord fixtures need d");
    f.param = get_num(j.at("d"), where + ".d");
    if (!(f.param >= 0.0) || !(f.param < 1.0)) config_error(where + ".d must lie in [0, 1)");
    if (j.contains("mirror")) f.mirror = get_bool(j.at("mirror"), where + ".mirror");
    if (j.contains("theta") || j.contains("path"))
      config_error(where + ": chord fixtures take only d/resolution/mirror");
  } else if (f.name == "cap") {
    if (!j.contains("theta")) config_error(where + ": cap fixtures need theta");
    f.param = get_num(j.at("theta"), where + ".theta");
    if (!(f.param > 0.0) || !(f.param < M_PI))
      config_error(where + ".theta must lie in (0, pi)");
    if (j.contains("d") || j.contains("mirror") || j.contains("path"))
      config_error(where + ": cap fixtures take only theta/resolution");
  } else if (f.name == "mesh") {
    if (!j.contains("path")) config_error(where + ": mesh fixtures need path");
    f.mesh_path = get_str(j.at("path"), where + ".path");
    if (j.contains("d") || j.contains("theta") || j.contains("mirror"))
      config_error(where + ": mesh fixtures take only path");
  } else {
    config_error("unknown fixture name '" + f.name + "'");
  }
  return f;
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_out(const ExperimentConfig& cfg) {
  if (cfg.write_csv || cfg.write_json || cfg.write_svg) fs::create_directories(cfg.out_dir);
}

struct Check {
  std::string name;
  double tol = 0.0;
  long count = 0;
  long violations = 0;
  double max_slack = -1e300;

  void add(double slack) {
    ++count;
    max_slack = std::max(max_slack, slack);
    if (slack > tol) ++violations;
  }
  json to_json() const {
    return json{{"name", name}, {"tolerance", tol}, {"samples", count},
                {"max_slack", count ? max_slack : 0.0}, {"violations", violations}};
  }
};

std::vector<std::pair<std::string, Vec>> profile_centers(const fixtures::Fixture& f,
                                                         const ExperimentConfig& cfg, Rng& rng,
                                                         bool with_interior) {
  std::vector<std::pair<std::string, Vec>> centers;
  for (std::size_t i = 0; i < f.contact_points.size(); ++i)
    centers.emplace_back("contact_" + std::to_string(i), f.contact_points[i]);
  if (with_interior)
    for (int i = 0; i < cfg.interior_centers; ++i)
      centers.emplace_back("interior_" + std::to_string(i),
                           f.dom.sample_collar_interior(rng, f.dom.s0() / 6.0));
  for (std::size_t i = 0; i < cfg.centers.size(); ++i) {
    if (cfg.centers[i].size() != f.dom.ambient_dim())
      config_error("explicit centre dimension does not match the domain");
    centers.emplace_back("explicit_" + std::to_string(i), cfg.centers[i]);
  }
  return centers;
}

mono::MonotoneParams fixture_params(const fixtures::Fixture& f, double p_cfg, double c_cfg) {
  const int n = f.V.surface_dim();
  mono::MonotoneParams mp;
  mp.surface_dim = n;
  mp.p = p_cfg > 0.0 ? p_cfg : n + 1.0;
  if (!(mp.p > n)) config_error("p must exceed the surface dimension");
  mp.C = c_cfg;
  mp.kappa = f.dom.kappa();
  mp.s0 = f.dom.s0();
  mp.sigma = f.effective_sigma();
  mp.Gamma = mono::compute_gamma(f.V, f.dom, mp.p);
  mp.validate();
  return mp;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  expect_keys(j, "config",
              {"seed", "domain", "fixture", "family", "contact", "mono", "output", "lemmas",
               "residual"});
  ExperimentConfig cfg;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) config_error("seed must be an integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("domain")) cfg.domain = parse_domain(j.at("domain"));
  if (j.contains("fixture")) cfg.fixture = parse_fixture(j.at("fixture"), "fixture");
  if (j.contains("family")) {
    if (!j.at("family").is_array()) config_error("family must be an array of fixture blocks");
    int i = 0;
    for (const auto& item : j.at("family"))
      cfg.family.push_back(parse_fixture(item, "family[" + std::to_string(i++) + "]"));
  }
  if (j.contains("contact")) {
    const json& c = j.at("contact");
    expect_keys(c, "contact", {"sigma_override"});
    if (c.contains("sigma_override"))
      cfg.sigma_override = get_num(c.at("sigma_override"), "contact.sigma_override");
  }
  if (j.contains("mono")) {
    const json& m = j.at("mono");
    expect_keys(m, "mono", {"p", "C", "rho_count", "interior_centers", "centers"});
    if (m.contains("p")) {
      cfg.p = get_num(m.at("p"), "mono.p");
      if (!(cfg.p > 1.0)) config_error("mono.p must exceed 1");
    }
    if (m.contains("C")) {
      cfg.C = get_num(m.at("C"), "mono.C");
      if (cfg.C < 0.0) config_error("mono.C must be >= 0");
    }
    if (m.contains("rho_count")) {
      cfg.rho_count = get_int(m.at("rho_count"), "mono.rho_count");
      if (cfg.rho_count < 4 || cfg.rho_count > 4096)
        config_error("mono.rho_count must lie in [4, 4096]");
    }
    if (m.contains("interior_centers")) {
      cfg.interior_centers = get_int(m.at("interior_centers"), "mono.interior_centers");
      if (cfg.interior_centers < 0) config_error("mono.interior_centers must be >= 0");
    }
    if (m.contains("centers")) {
      if (!m.at("centers").is_array()) config_error("mono.centers must be an array of points");
      for (const auto& c : m.at("centers")) cfg.centers.push_back(get_vec(c, "mono.centers entry"));
    }
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    expect_keys(o, "output", {"directory", "formats"});
    if (o.contains("directory")) cfg.out_dir = get_str(o.at("directory"), "output.directory");
    if (o.contains("formats")) {
      if (!o.at("formats").is_array()) config_error("output.formats must be an array");
      cfg.write_csv = cfg.write_json = cfg.write_svg = false;
      for (const auto& f : o.at("formats")) {
        const std::string s = get_str(f, "output.formats entry");
        if (s == "csv")
          cfg.write_csv = true;
        else if (s == "json")
          cfg.write_json = true;
        else if (s == "svg")
          cfg.write_svg = true;
        else
          config_error("unknown output format '" + s + "'");
      }
    }
  }
  if (j.contains("lemmas")) {
    const json& l = j.at("lemmas");
    expect_keys(l, "lemmas", {"samples"});
    if (l.contains("samples")) {
      cfg.lemma_samples = get_int(l.at("samples"), "lemmas.samples");
      if (cfg.lemma_samples < 1) config_error("lemmas.samples must be >= 1");
    }
  }
  if (j.contains("residual")) {
    const json& r = j.at("residual");
    expect_keys(r, "residual", {"levels"});
    if (r.contains("levels")) {
      cfg.residual_levels = get_int(r.at("levels"), "residual.levels");
      if (cfg.residual_levels < 2 || cfg.residual_levels > 6)
        config_error("residual.levels must lie in [2, 6]");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  return parse_config_text(io::read_file(path));
}

geom::Domain build_domain(const DomainSpec& spec) {
  if (spec.kind == "ball") return geom::Domain::ball(spec.center, spec.radius);
  if (spec.kind == "ellipsoid") return geom::Domain::ellipsoid(spec.semi_axes, spec.s0_hint);
  config_error("unknown domain kind '" + spec.kind + "'");
}

fixtures::Fixture build_fixture(const FixtureSpec& spec,
                                const std::optional<DomainSpec>& domain_spec) {
  if (spec.name == "chord")
    return fixtures::chord_fixture(spec.param, spec.resolution ? spec.resolution : 256,
                                   spec.mirror);
  if (spec.name == "cap")
    return fixtures::cap_fixture(spec.param, spec.resolution ? spec.resolution : 12);
  if (spec.name == "mesh") {
    if (!domain_spec) config_error("mesh fixtures need a domain block");
    fixtures::Fixture f(build_domain(*domain_spec));
    if (f.dom.ambient_dim() != 3) config_error("mesh fixtures need a 3D domain");
    f.name = "mesh";
    f.V = varifold::read_obj(spec.mesh_path, nullptr);
    f.patch.ambient_dim = 3;
    f.cfg = contact::ContactConfig::from_theta(M_PI / 2.0);
    return f;
  }
  config_error("unknown fixture '" + spec.name + "'");
}

int run_lemmas(const ExperimentConfig& cfg) {
  if (!cfg.domain) config_error("lemmas needs a domain block");
  const geom::Domain dom = build_domain(*cfg.domain);
  Rng rng(cfg.seed);
  const bool ball = dom.is_ball();
  const double kappa = dom.kappa(), s0 = dom.s0();
  const int n_samples = cfg.lemma_samples;

  Check invol{"projection-involution", ball ? 1e-9 : 1e-7};
  Check iso{"reflect-op-isometry", 1e-12};
  Check qsym{"q-symmetric", ball ? 1e-12 : 1e-6};
  Check qnu{"q-annihilates-normal", ball ? 1e-12 : 1e-6};
  Check qb{"q-curvature-bound", ball ? 1e-9 : 1e-5};
  Check qeq{"q-bound-equality", 1e-9};
  Check nproj{"normal-projector-derivative", ball ? 1e-6 : 1e-5 * std::max(1.0, kappa)};
  Check rd{"reflected-ball-distance", ball ? 1e-9 : 1e-7};
  Check rc{"reflected-ball-containment", ball ? 1e-9 : 1e-7};

  for (int i = 0; i < n_samples; ++i) {
    const Vec x = dom.sample_collar_interior(rng, 0.99 * s0);
    const geom::CollarPoint cp = dom.project(x);
    const auto back = dom.try_project(cp.xtilde);
    invol.add(back ? (back->xtilde - x).norm() : 1.0);

    const Vec y = rng.uniform(0.1, 2.0) * rng.unit_vector(dom.ambient_dim());
    const Vec iy = geom::reflect_op(cp, y);
    iso.add(std::abs(iy.norm() - y.norm()));
    iso.add((geom::reflect_op(cp, iy) - y).norm());

    const Mat q = dom.projection_derivative_defect(x);
    qsym.add(operator_norm(q - q.transpose()));
    qnu.add(operator_norm(q * cp.nu));
    const double qn = operator_norm(q);
    const double bound = kappa * cp.dist / (1.0 - kappa * cp.dist);
    qb.add(qn - bound);
    if (ball) qeq.add(std::abs(qn - bound));
  }

  const int nb = std::min(n_samples, 200);
  for (int i = 0; i < nb; ++i) {
    const Vec b = dom.sample_boundary(rng);
    const double v = dom.boundary_projector_derivative_norm(b);
    nproj.add(ball ? std::abs(v - kappa) : v - kappa);
  }

  int done = 0;
  long attempts = 0;
  while (done < n_samples && attempts < 50L * n_samples) {
    ++attempts;
    const Vec a = dom.sample_collar_interior(rng, s0 / 3.0);
    const double rho = rng.uniform(dom.boundary_distance(a), s0 / 3.0);
    if (!(rho > 0.0)) continue;
    const Vec y = rng.in_ball(a, rho);
    const auto cpy = dom.try_project(y);
    if (!cpy) continue;
    const Vec x = cpy->xtilde;  // reflects back into B_rho(a)
    rd.add(dom.boundary_distance(x) - 2.0 * rho);
    rc.add((x - a).norm() - 5.0 * rho);
    ++done;
  }

  std::vector<Check> checks{invol, iso, qsym, qnu, qb, nproj, rd, rc};
  if (ball) checks.insert(checks.begin() + 5, qeq);
  long total = 0;
  json jc = json::array();
  for (const Check& c : checks) {
    total += c.violations;
    jc.push_back(c.to_json());
    std::cout << "lemma-check " << c.name << ": samples=" << c.count
              << " violations=" << c.violations << " max_slack=" << io::format_double(c.max_slack)
              << " tol=" << io::format_double(c.tol) << "\n";
  }
  std::cout << "lemmas: " << (total == 0 ? "PASS" : "FAIL") << " (" << total << " violations)\n";

  ensure_out(cfg);
  if (cfg.write_json) {
    json out{{"domain", cfg.domain->kind}, {"samples", n_samples}, {"checks", jc},
             {"violations", total}};
    io::write_file(join(cfg.out_dir, "lemmas.json"), out.dump(2) + "\n");
  }
  return total == 0 ? 0 : 2;
}

int run_residual(const ExperimentConfig& cfg) {
  if (!cfg.fixture) config_error("verify-angle needs a fixture block");
  if (cfg.fixture->name == "mesh") config_error("verify-angle needs an analytic fixture");
  const int levels = cfg.residual_levels;

  std::vector<double> maxes, hs;
  json jentries = json::array();
  std::vector<contact::ResidualEntry> finest;
  for (int l = 0; l < levels; ++l) {
    FixtureSpec fs = *cfg.fixture;
    const int base = fs.resolution ? fs.resolution : (fs.name == "cap" ? 8 : 64);
    fs.resolution = base << l;
    const fixtures::Fixture f = build_fixture(fs, cfg.domain);

    Rng frng(cfg.seed);
    const std::vector<contact::TestField> fields = contact::default_test_family(f.dom, frng);
    Rng srng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<Vec> samples;
    for (int i = 0; i < 128; ++i) samples.push_back(f.dom.sample_boundary(srng));
    for (int i = 0; i < 128; ++i)
      samples.push_back(f.dom.sample_collar_interior(srng, 0.99 * f.dom.s0()));

    const double sigma = cfg.sigma_override ? *cfg.sigma_override : f.cfg.sigma;
    const contact::ResidualReport rep =
        contact::residual_sweep(f.V, f.dom, f.patch, sigma, fields, samples, l);
    for (const contact::ResidualEntry& e : rep.entries)
      jentries.push_back(json{{"field_id", e.field_id},
                              {"raw_residual", e.raw_residual},
                              {"normalized_residual", e.normalized_residual},
                              {"refinement_level", e.refinement_level}});
    maxes.push_back(rep.max_normalized);
    hs.push_back(1.0 / fs.resolution);
    if (l + 1 == levels) finest = rep.entries;
    std::cout << "verify-angle level " << l << " (resolution " << fs.resolution
              << "): max normalized residual " << io::format_double(rep.max_normalized) << "\n";
  }

  std::vector<double> orders;
  bool orders_ok = true;
  for (int l = 1; l < levels; ++l) {
    const double q = std::log2(std::max(maxes[l - 1], 1e-300) / std::max(maxes[l], 1e-300));
    orders.push_back(q);
    if (q < 1.8) orders_ok = false;
    std::cout << "verify-angle order " << l - 1 << "->" << l << ": " << io::format_double(q)
              << "\n";
  }
  const double schedule = 10.0 * (maxes.front() / (hs.front() * hs.front())) * hs.back() * hs.back();
  const bool below = maxes.back() <= schedule;
  const bool pass = below && orders_ok;
  std::cout << "verify-angle schedule " << io::format_double(schedule) << ": "
            << (pass ? "PASS" : "FAIL") << "\n";

  ensure_out(cfg);
  if (cfg.write_json) {
    json out{{"sigma_override", cfg.sigma_override ? json(*cfg.sigma_override) : json(nullptr)},
             {"entries", jentries},
             {"max_normalized", maxes},
             {"orders", orders},
             {"schedule", schedule},
             {"pass", pass}};
    io::write_file(join(cfg.out_dir, "residual.json"), out.dump(2) + "\n");
  }
  if (cfg.write_svg) {
    std::vector<std::string> labels;
    std::vector<double> values;
    for (const contact::ResidualEntry& e : finest) {
      labels.push_back(e.field_id);
      values.push_back(e.normalized_residual);
    }
    io::write_file(join(cfg.out_dir, "residual.svg"),
                   io::bar_chart_svg("normalized residuals (finest level)", labels, values));
  }
  return pass ? 0 : 2;
}

int run_monotonicity(const ExperimentConfig& cfg) {
  if (!cfg.fixture) config_error("monotonicity needs a fixture block");
  const fixtures::Fixture f = build_fixture(*cfg.fixture, cfg.domain);
  if (!f.V.has_curvature)
    config_error("monotonicity needs curvature data; use an analytic fixture");
  const mono::MonotoneParams mp = fixture_params(f, cfg.p, cfg.C);
  const std::vector<double> grid = mono::default_rho_grid(f.dom.s0(), cfg.rho_count);
  const mono::MassSources src = f.oracle ? f.exact_sources() : f.quadrature_sources();

  Rng rng(cfg.seed);
  const auto centers = profile_centers(f, cfg, rng, true);
  ensure_out(cfg);
  long total = 0;
  json jcenters = json::array();
  int idx = 0;
  for (const auto& [label, a] : centers) {
    mono::DensityProfile prof =
        mono::profile_I(src, f.dom, mp.surface_dim, mp.sigma, a, grid);
    mono::apply_correction(prof, mp);
    const std::vector<int> bad = mono::check_monotone(prof.corrected, 1e-6);
    total += static_cast<long>(bad.size());
    std::cout << "monotonicity " << label << ": " << bad.size() << " violations\n";
    json jc{{"label", label}, {"violations", bad}};
    jcenters.push_back(jc);
    const std::string stem = "profile_" + std::to_string(idx++);
    if (cfg.write_csv) io::write_file(join(cfg.out_dir, stem + ".csv"), io::profile_csv(prof));
    if (cfg.write_svg) {
      io::Series raw{"raw ratio", "", prof.rho, prof.raw_ratio};
      io::Series cor{"corrected", "", prof.rho, prof.corrected};
      io::write_file(join(cfg.out_dir, stem + ".svg"),
                     io::line_plot_svg("density profile at " + label, {raw, cor}, true));
    }
  }
  std::cout << "monotonicity: " << (total == 0 ? "PASS" : "FAIL") << " (C="
            << io::format_double(mp.C) << ", Gamma=" << io::format_double(mp.Gamma) << ")\n";
  if (cfg.write_json) {
    json out{{"fixture", f.name},    {"param", f.param},     {"p", mp.p},
             {"C", mp.C},            {"Gamma", mp.Gamma},    {"sigma", mp.sigma},
             {"centers", jcenters},  {"violations", total}};
    io::write_file(join(cfg.out_dir, "monotonicity.json"), out.dump(2) + "\n");
  }
  return total == 0 ? 0 : 2;
}

int run_find_constant(const ExperimentConfig& cfg) {
  std::vector<FixtureSpec> family = cfg.family;
  if (!family.empty() && cfg.fixture)
    config_error("find-constant takes either a family or a single fixture, not both");
  if (family.empty() && cfg.fixture) family.push_back(*cfg.fixture);
  if (family.empty()) {
    for (double d : {0.0, 0.25, 0.5, 0.75}) {
      FixtureSpec s;
      s.name = "chord";
      s.param = d;
      s.resolution = 64;
      family.push_back(s);
    }
    for (double th : {M_PI / 2.0, M_PI / 3.0}) {
      FixtureSpec s;
      s.name = "cap";
      s.param = th;
      s.resolution = 12;
      family.push_back(s);
    }
  }

  Rng rng(cfg.seed);
  std::vector<mono::ProfileCase> cases;
  std::vector<fixtures::Fixture> fxs;
  fxs.reserve(family.size());
  for (const FixtureSpec& spec : family) {
    if (spec.name == "mesh") config_error("find-constant needs analytic fixtures");
    fxs.push_back(build_fixture(spec, cfg.domain));
  }
  for (const fixtures::Fixture& f : fxs) {
    const mono::MonotoneParams mp = fixture_params(f, cfg.p, 0.0);
    const std::vector<double> grid = mono::default_rho_grid(f.dom.s0(), cfg.rho_count);
    const mono::MassSources src = f.exact_sources();
    std::ostringstream tag;
    tag << f.name << " " << (f.name == "chord" ? "d=" : "theta=") << f.param;
    for (const auto& [label, a] : profile_centers(f, cfg, rng, true)) {
      mono::ProfileCase pc{mono::profile_I(src, f.dom, mp.surface_dim, mp.sigma, a, grid), mp,
                           tag.str() + " " + label};
      cases.push_back(std::move(pc));
    }
  }

  const mono::ConstantSearch search = mono::find_constant(cases, 1e-6, 1000.0);
  std::cout << "find-constant: C_hat=" << io::format_double(search.c_hat)
            << (search.binding_label.empty() ? "" : " binding=" + search.binding_label)
            << (search.ok ? "" : " (NOT FOUND below C_max)") << "\n";

  ensure_out(cfg);
  if (cfg.write_json) {
    json jcases = json::array();
    for (const mono::ProfileCase& pc : cases) jcases.push_back(pc.label);
    json out{{"c_hat", search.c_hat},
             {"binding", search.binding_label},
             {"found", search.ok},
             {"profiles", jcases}};
    io::write_file(join(cfg.out_dir, "constant.json"), out.dump(2) + "\n");
  }
  return search.ok ? 0 : 2;
}

int run_density(const ExperimentConfig& cfg) {
  if (!cfg.fixture) config_error("density needs a fixture block");
  const fixtures::Fixture f = build_fixture(*cfg.fixture, cfg.domain);
  const int n = f.V.surface_dim();
  const std::vector<double> grid = mono::default_rho_grid(f.dom.s0(), cfg.rho_count);
  const mono::MassSources src = f.oracle ? f.exact_sources() : f.quadrature_sources();

  Rng rng(cfg.seed);
  const auto centers = profile_centers(f, cfg, rng, false);
  if (centers.empty()) config_error("density: fixture has no contact points and no explicit centres");
  ensure_out(cfg);
  bool all_ok = true;
  json jc = json::array();
  for (const auto& [label, a] : centers) {
    const mono::DensityProfile prof =
        mono::profile_I(src, f.dom, n, f.effective_sigma(), a, grid);
    const mono::DensityLimit lim = mono::density_limit(prof);
    all_ok = all_ok && lim.converged;
    std::cout << "density " << label << ": estimate=" << io::format_double(lim.estimate)
              << " uncertainty=" << io::format_double(lim.uncertainty)
              << (label.rfind("contact", 0) == 0
                      ? " expected=" + io::format_double(f.expected_density_limit)
                      : "")
              << (lim.converged ? "" : " (fit not converged)") << "\n";
    jc.push_back(json{{"label", label},
                      {"estimate", lim.estimate},
                      {"uncertainty", lim.uncertainty},
                      {"converged", lim.converged}});
  }
  if (cfg.write_json) {
    json out{{"fixture", f.name},
             {"param", f.param},
             {"expected_at_contact", f.expected_density_limit},
             {"centers", jc}};
    io::write_file(join(cfg.out_dir, "density.json"), out.dump(2) + "\n");
  }
  return all_ok ? 0 : 2;
}

int run_fixture_dump(const ExperimentConfig& cfg) {
  if (!cfg.fixture) config_error("fixture dump needs a fixture block");
  const fixtures::Fixture f = build_fixture(*cfg.fixture, cfg.domain);
  fs::create_directories(cfg.out_dir);

  io::write_file(join(cfg.out_dir, f.name + "_varifold.csv"), varifold::dump_csv(f.V));
  if (f.name == "chord") {
    std::vector<Vec> pts;
    const Vec& pp = f.contact_points[0];
    const Vec& pm = f.contact_points[1];
    for (int i = 0; i <= f.resolution; ++i)
      pts.push_back(pm + (static_cast<double>(i) / f.resolution) * (pp - pm));
    io::write_file(join(cfg.out_dir, "chord_polyline.csv"), io::polyline_csv(pts));
  } else if (f.name == "cap") {
    std::vector<Vec> vertices;
    std::vector<std::array<int, 3>> triangles;
    fixtures::cap_mesh(f.param, f.resolution, vertices, triangles);
    io::write_file(join(cfg.out_dir, "cap_mesh.obj"), io::obj_mesh(vertices, triangles));
  }
  if (!f.patch.nodes.empty()) {
    std::ostringstream patch;
    const int dim = f.dom.ambient_dim();
    for (int i = 0; i < dim; ++i) patch << "b" << i << ",";
    patch << "w\n";
    for (const varifold::PatchNode& nd : f.patch.nodes) {
      for (int i = 0; i < dim; ++i) patch << io::format_double(nd.b(i)) << ",";
      patch << io::format_double(nd.w) << "\n";
    }
    io::write_file(join(cfg.out_dir, f.name + "_patch.csv"), patch.str());
  }

  json jcontacts = json::array();
  for (const Vec& q : f.contact_points) {
    json pt = json::array();
    for (int i = 0; i < q.size(); ++i) pt.push_back(q(i));
    jcontacts.push_back(pt);
  }
  json out{{"name", f.name},
           {"param", f.param},
           {"resolution", f.resolution},
           {"theta", f.cfg.theta},
           {"sigma", f.cfg.sigma},
           {"mirror", f.cfg.mirror},
           {"effective_sigma", f.effective_sigma()},
           {"atoms", f.V.atoms.size()},
           {"surface_mass", f.V.mass()},
           {"oracle_mass", f.oracle ? json(f.oracle->total_mass()) : json(nullptr)},
           {"patch_measure", f.patch.total_measure()},
           {"effective_patch_measure", f.patch_eff.total_measure()},
           {"contact_points", jcontacts},
           {"expected_density_limit", f.expected_density_limit}};
  io::write_file(join(cfg.out_dir, f.name + "_summary.json"), out.dump(2) + "\n");
  std::cout << "fixture dump: " << f.name << " (param " << io::format_double(f.param) << ", "
            << f.V.atoms.size() << " atoms) written to " << cfg.out_dir << "\n";
  return 0;
}

}  // namespace vmt::runner
