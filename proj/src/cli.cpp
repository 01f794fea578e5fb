#include "holoform/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "holoform/moduli.hpp"
#include "holoform/symplectic.hpp"

namespace holoform {

namespace {

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults = {
      {"oracle", 1e-9},       {"closed", 1e-4},     {"closed_abelian", 1e-12},
      {"nondegenerate", 1e-6}, {"invariance", 1e-10}, {"lagrangian", 1e-8},
      {"groupoid", 1e-10},    {"seam", 1e-10},      {"skew", 1e-13}};
  return defaults;
}

void require_cfg(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

QMat theta_from_json(const nlohmann::json& j) {
  require_cfg(j.is_array() && !j.empty(), "theta: expected a matrix");
  const int n = static_cast<int>(j.size());
  QMat q(n, n);
  for (int i = 0; i < n; ++i) {
    require_cfg(j[i].is_array() && static_cast<int>(j[i].size()) == n,
                "theta: expected a square matrix");
    for (int k = 0; k < n; ++k) {
      const auto& cell = j[i][k];
      if (cell.is_string())
        q.at(i, k) = rat_from_string(cell.get<std::string>());
      else if (cell.is_number_integer())
        q.at(i, k) = Rat(cell.get<long>());
      else
        throw std::invalid_argument(
            "theta: entries must be integers or rational strings in exact mode");
    }
  }
  return q;
}

nlohmann::ordered_json qmat_to_json(const QMat& q) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < q.rows; ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int j = 0; j < q.cols; ++j) row.push_back(q.at(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

nlohmann::ordered_json zmat_to_json(const ZMat& z) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < z.rows; ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int j = 0; j < z.cols; ++j) row.push_back(z.at(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

nlohmann::ordered_json scenario_json(const ScenarioConfig& cfg) {
  nlohmann::ordered_json s;
  s["backend"] = cfg.backend_name;
  if (cfg.backend_name == "abelian_double") s["n"] = cfg.backend_n;
  if (cfg.backend_name == "cotangent_double") s["h"] = cfg.backend_h;
  if (!cfg.surface_builtin.empty()) s["surface"] = cfg.surface_builtin;
  if (!cfg.surface_word.empty()) s["word"] = cfg.surface_word;
  s["seeds"] = cfg.seeds;
  s["scale"] = cfg.scale;
  s["mode"] = cfg.mode;
  return s;
}

}  // namespace

ScenarioConfig parse_config(const nlohmann::json& j) {
  static const std::set<std::string> known = {"backend", "surface",    "coloring",
                                              "seeds",   "scale",      "tolerances",
                                              "mode",    "theta",      "planck"};
  for (auto it = j.begin(); it != j.end(); ++it)
    require_cfg(known.count(it.key()) > 0, "unknown config key '" + it.key() + "'");

  ScenarioConfig cfg;
  if (j.contains("backend")) {
    const auto& b = j.at("backend");
    require_cfg(b.is_object() && b.contains("name"), "backend: expected {name, ...}");
    for (auto it = b.begin(); it != b.end(); ++it)
      require_cfg(it.key() == "name" || it.key() == "n" || it.key() == "h",
                  "unknown backend key '" + it.key() + "'");
    cfg.backend_name = b.at("name").get<std::string>();
    if (b.contains("n")) cfg.backend_n = b.at("n").get<int>();
    if (b.contains("h")) cfg.backend_h = b.at("h").get<std::string>();
  }
  if (j.contains("surface")) {
    const auto& s = j.at("surface");
    if (s.is_string()) {
      cfg.surface_builtin = s.get<std::string>();
    } else if (s.is_object() && s.contains("builtin")) {
      cfg.surface_builtin = s.at("builtin").get<std::string>();
    } else if (s.is_object() && s.contains("word")) {
      cfg.surface_word = s.at("word").get<std::vector<std::string>>();
    } else if (s.is_array()) {
      cfg.surface_word = s.get<std::vector<std::string>>();
    } else {
      throw std::invalid_argument("surface: expected a builtin name or a side-token word");
    }
  }
  if (j.contains("coloring"))
    cfg.coloring = j.at("coloring").get<std::map<std::string, std::string>>();
  if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (j.contains("scale")) cfg.scale = j.at("scale").get<double>();
  if (j.contains("tolerances")) {
    for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end(); ++it) {
      require_cfg(default_tolerances().count(it.key()) > 0,
                  "unknown tolerance '" + it.key() + "'");
      cfg.tolerances[it.key()] = it.value().get<double>();
    }
  }
  if (j.contains("mode")) {
    cfg.mode = j.at("mode").get<std::string>();
    require_cfg(cfg.mode == "exact" || cfg.mode == "float", "mode: 'exact' or 'float'");
  }
  if (j.contains("theta")) {
    cfg.theta = theta_from_json(j.at("theta"));
    cfg.has_theta = true;
  }
  if (j.contains("planck")) {
    const auto& p = j.at("planck");
    cfg.planck = p.is_string() ? rat_from_string(p.get<std::string>()) : Rat(p.get<long>());
  }
  return cfg;
}

double tolerance(const ScenarioConfig& cfg, const std::string& name, double env_scale) {
  auto it = cfg.tolerances.find(name);
  if (it != cfg.tolerances.end()) return it->second;
  return default_tolerances().at(name) * env_scale;
}

Backend backend_from_config(const ScenarioConfig& cfg) {
  return make_backend(cfg.backend_name, cfg.backend_n, cfg.backend_h);
}

ColoredPolygon surface_from_config(const ScenarioConfig& cfg, const Backend& backend) {
  if (!cfg.surface_builtin.empty()) return builtin_surface(cfg.surface_builtin, backend);
  if (!cfg.surface_word.empty())
    return polygon_from_tokens(cfg.surface_word, backend, cfg.coloring);
  throw std::invalid_argument("config specifies no surface");
}

Report cmd_validate(const ScenarioConfig& cfg, double) {
  Report rep;
  rep.command = "validate";
  rep.scenario = scenario_json(cfg);
  Backend backend = backend_from_config(cfg);
  ColoredPolygon p = surface_from_config(cfg, backend);
  ValidationReport v = validate(p);
  rep.add("cut_pairing", v.cuts_consistent ? 0.0 : 1.0, 0.5, v.cuts_consistent);
  for (const ArcCheck& a : v.arcs)
    rep.add("lagrangian(" + a.label + ")",
            std::max(a.detail.isotropy_residual, a.detail.closure_residual), 1e-10,
            a.lagrangian);
  for (const CornerCheck& c : v.corners)
    rep.add("corner@" + std::to_string(c.position) + "(" + c.label_a + "," + c.label_b + ")" +
                (c.through_cut ? "+cut" : ""),
            c.transverse ? 0.0 : 1.0, 0.5, c.transverse);
  for (const std::string& e : v.errors) rep.add("error: " + e, 1.0, 0.5, false);
  return rep;
}

Report cmd_dim(const ScenarioConfig& cfg, double) {
  Report rep;
  rep.command = "dim";
  rep.scenario = scenario_json(cfg);
  Backend backend = backend_from_config(cfg);
  ColoredPolygon p = surface_from_config(cfg, backend);
  const int expected = moduli_dimension(p);
  for (std::uint64_t seed : cfg.seeds) {
    ModuliPoint pt = random_point(p, seed, cfg.scale);
    Mat jac = constraint_jacobian(pt);
    const int rank = rank_svd(jac, 1e-8);
    const int numeric = pt.params() - rank;
    rep.add("dim@seed" + std::to_string(seed) + " (formula " + std::to_string(expected) + ")",
            std::abs(numeric - expected), 0.5, numeric == expected);
  }
  return rep;
}

namespace {

std::optional<double> closed_form_auto(const ModuliPoint& pt, const Vec& xi, const Vec& eta) {
  const auto& w = pt.surface.word;
  const int n = pt.surface.size();
  auto all_arcs = [&] {
    for (const Side& s : w)
      if (s.kind != SideKind::Arc) return false;
    return true;
  };
  if (n == 6 && w[2].kind == SideKind::Cut) return closed_form_annulus(pt, xi, eta);
  if (n == 4 && all_arcs() && !w[0].reversed && !w[1].reversed && w[2].reversed &&
      w[3].reversed && w[1].label == w[3].label) {
    if (w[0].label == w[2].label) return closed_form_square_rb(pt, xi, eta);
    return closed_form_square_rbv(pt, xi, eta);
  }
  if (n == 3 && all_arcs() && !w[0].reversed && !w[1].reversed && !w[2].reversed)
    return closed_form_triangle(pt, xi, eta);
  return std::nullopt;
}

}  // namespace

Report cmd_omega(const ScenarioConfig& cfg, double env_scale) {
  Report rep;
  rep.command = "omega";
  rep.scenario = scenario_json(cfg);
  Backend backend = backend_from_config(cfg);
  ColoredPolygon p = surface_from_config(cfg, backend);
  const double tol_skew = tolerance(cfg, "skew", env_scale);
  const double tol_oracle = tolerance(cfg, "oracle", env_scale);
  for (std::uint64_t seed : cfg.seeds) {
    ModuliPoint pt = random_point(p, seed, cfg.scale);
    Mat basis = tangent_basis(pt);
    Mat gram = omega_matrix(pt, basis);
    rep.add_residual("skew@seed" + std::to_string(seed),
                     max_abs(gram + gram.transpose()), tol_skew);
    double worst = 0.0;
    bool have_oracle = true;
    for (int i = 0; i < basis.cols() && have_oracle; ++i)
      for (int j = 0; j < basis.cols(); ++j) {
        auto cf = closed_form_auto(pt, basis.col(i), basis.col(j));
        if (!cf) {
          have_oracle = false;
          break;
        }
        worst = std::max(worst, std::abs(gram(i, j) - *cf));
      }
    if (have_oracle)
      rep.add_residual("oracle@seed" + std::to_string(seed), worst, tol_oracle);
    if (rep.scenario.contains("gram") == false && seed == cfg.seeds.front()) {
      nlohmann::ordered_json g = nlohmann::ordered_json::array();
      for (int i = 0; i < gram.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < gram.cols(); ++j) row.push_back(gram(i, j));
        g.push_back(row);
      }
      rep.scenario["gram"] = g;
    }
  }
  return rep;
}

namespace {

bool is_abelian_backend(const std::string& name) { return name == "abelian_double"; }

// seeded composable pair for the product (square, b-seam) or module
// (r/b/v square acted on by the square along the r-seam) gluings
struct ComposablePair {
  ModuliPoint pt1, pt2;
  int a1 = 0, a2 = 0;
};

ComposablePair sample_pair(const ScenarioConfig& cfg, const Backend& backend,
                           std::uint64_t seed) {
  ComposablePair pair;
  if (!cfg.surface_builtin.empty() && cfg.surface_builtin == "gamma11") {
    ColoredPolygon rbv = builtin_surface("gamma11", backend);
    ColoredPolygon sq = builtin_surface("square", backend);
    pair.a1 = 0;  // rbv square's r side
    pair.a2 = 2;  // square's reversed r side
    pair.pt1 = random_point(rbv, seed, cfg.scale);
    const Mat seam = pair.pt1.holonomy[pair.pt1.layout.side_slot[pair.a1]];
    pair.pt2 = random_point_with_fixed_slot(sq, seed + 1, cfg.scale, pair.a2, seam);
    return pair;
  }
  ColoredPolygon sq = builtin_surface("square", backend);
  pair.a1 = 1;  // b1 of the first square
  pair.a2 = 3;  // b2 of the second
  pair.pt1 = random_point(sq, seed, cfg.scale);
  const Mat seam = pair.pt1.holonomy[pair.pt1.layout.side_slot[pair.a1]];
  pair.pt2 = random_point_with_fixed_slot(sq, seed + 1, cfg.scale, pair.a2, seam);
  return pair;
}

}  // namespace

Report cmd_check(const ScenarioConfig& cfg, const std::string& which, double env_scale) {
  Report rep;
  rep.command = "check " + which;
  rep.scenario = scenario_json(cfg);
  Backend backend = backend_from_config(cfg);

  if (which == "closed") {
    ColoredPolygon p = surface_from_config(cfg, backend);
    const bool abelian = is_abelian_backend(cfg.backend_name);
    const double tol =
        tolerance(cfg, abelian ? "closed_abelian" : "closed", env_scale);
    for (std::uint64_t seed : cfg.seeds) {
      ModuliPoint pt = random_point(p, seed, cfg.scale);
      Mat basis = tangent_basis(pt);
      ClosednessReport c = check_closed(pt, basis);
      rep.add_residual("domega@seed" + std::to_string(seed), c.max_residual, tol);
    }
  } else if (which == "nondegenerate") {
    ColoredPolygon p = surface_from_config(cfg, backend);
    const double floor = tolerance(cfg, "nondegenerate", env_scale);
    for (std::uint64_t seed : cfg.seeds) {
      ModuliPoint pt = random_point(p, seed, cfg.scale);
      rep.add_floor("min_singular@seed" + std::to_string(seed),
                    check_nondegenerate(pt, tangent_basis(pt)), floor);
    }
  } else if (which == "invariance") {
    ColoredPolygon p = surface_from_config(cfg, backend);
    const double tol = tolerance(cfg, "invariance", env_scale);
    for (std::uint64_t seed : cfg.seeds) {
      ModuliPoint pt = random_point(p, seed, cfg.scale);
      Mat basis = tangent_basis(pt);
      InvarianceReport inv = invariance_checks(pt, basis);
      rep.add_residual("base_rotation@seed" + std::to_string(seed), inv.rotation_residual,
                       tol);
      if (inv.recut_residual >= 0.0)
        rep.add_residual("recut@seed" + std::to_string(seed), inv.recut_residual, tol);
      if (!pt.surface.cut_ids().empty()) {
        // cut 2-form perturbations cancel between the two occurrences, exactly
        Mat reference = omega_gram(pt, basis, true);
        int fwd = -1, rev = -1;
        for (int i = 0; i < pt.surface.size(); ++i)
          if (pt.surface.word[i].kind == SideKind::Cut)
            (pt.surface.word[i].reversed ? rev : fwd) = i;
        Rng rng(seed ^ 0x9e3779b9u);
        Mat beta = Mat::Zero(basis.cols(), basis.cols());
        for (int i = 0; i < beta.rows(); ++i)
          for (int j = i + 1; j < beta.cols(); ++j) {
            beta(i, j) = rng.uniform(-1.0, 1.0);
            beta(j, i) = -beta(i, j);
          }
        std::map<int, Mat> pert = {{fwd, beta}, {rev, -beta}};
        Mat perturbed = omega_gram(pt, basis, true, 0, &pert);
        rep.add("cut_form_cancellation@seed" + std::to_string(seed),
                max_abs(perturbed - reference), 0.0,
                max_abs(perturbed - reference) == 0.0);
      }
    }
  } else if (which == "lagrangian") {
    const double tol = tolerance(cfg, "lagrangian", env_scale);
    for (std::uint64_t seed : cfg.seeds) {
      ComposablePair pair = sample_pair(cfg, backend, seed);
      LagrangianGraphReport g = check_lagrangian_graph(pair.pt1, pair.a1, pair.pt2, pair.a2);
      rep.add_residual("graph_isotropy@seed" + std::to_string(seed), g.isotropy_residual,
                       tol);
      rep.add("graph_dimension@seed" + std::to_string(seed),
              std::abs(g.graph_dim - g.expected_dim), 0.5, g.dims_ok);
    }
  } else if (which == "groupoid") {
    const double tol = tolerance(cfg, "groupoid", env_scale);
    ColoredPolygon sq = builtin_surface("square", backend);
    for (std::uint64_t seed : cfg.seeds) {
      ModuliPoint p1 = random_point(sq, seed, cfg.scale);
      ModuliPoint p2 = random_point_with_fixed_slot(sq, seed + 1, cfg.scale, 3,
                                                    lw_source(p1));
      ModuliPoint p3 = random_point_with_fixed_slot(sq, seed + 2, cfg.scale, 3,
                                                    lw_source(p2));
      ModuliPoint left = compose(compose(p1, 1, p2, 3).point, 1, p3, 3).point;
      ModuliPoint right = compose(p1, 1, compose(p2, 1, p3, 3).point, 3).point;
      rep.add_residual("associativity@seed" + std::to_string(seed),
                       point_distance_up_to_rotation(left, right), tol);
      ModuliPoint ru = compose(p1, 1, lw_unit(sq, lw_source(p1)), 3).point;
      ModuliPoint lu = compose(lw_unit(sq, lw_target(p1)), 1, p1, 3).point;
      rep.add_residual("right_unit@seed" + std::to_string(seed),
                       point_distance_up_to_rotation(ru, p1), tol);
      rep.add_residual("left_unit@seed" + std::to_string(seed),
                       point_distance_up_to_rotation(lu, p1), tol);
      ModuliPoint inv = lw_inverse(p1);
      ModuliPoint to_unit = compose(p1, 1, inv, 3).point;
      rep.add_residual("inverse@seed" + std::to_string(seed),
                       point_distance_up_to_rotation(to_unit, lw_unit(sq, lw_target(p1))),
                       tol);
    }
  } else {
    throw std::invalid_argument("unknown check '" + which + "'");
  }
  return rep;
}

Report cmd_torus_morita(const ScenarioConfig& cfg, double env_scale) {
  Report rep;
  rep.command = "torus-morita";
  rep.scenario = scenario_json(cfg);
  require_cfg(cfg.has_theta, "torus-morita requires a theta matrix");
  require_cfg(cfg.mode == "exact", "torus-morita runs in exact mode");
  SkewTheta theta = SkewTheta::from_rationals(cfg.theta);
  rep.scenario["theta"] = qmat_to_json(theta.q);
  rep.scenario["planck"] = cfg.planck.get_str();

  Backend abelian = make_backend("abelian_double", theta.n);
  GraphReport graph = lagrangian_graph(abelian, theta);
  rep.add("graph_lagrangian", graph.lagrangian ? 0.0 : 1.0, 0.5, graph.lagrangian);
  rep.add("graph_transverse_r_b", (graph.transverse_r && graph.transverse_b) ? 0.0 : 1.0,
          0.5, graph.transverse_r && graph.transverse_b);

  ZMat lattice = graph_lattice_intersection(theta);
  rep.scenario["graph_lattice_basis"] = zmat_to_json(lattice);

  GammaSpaces gs = gamma_spaces(theta);
  MoritaBivectors biv = morita_bivectors(gs, theta);
  rep.scenario["pi_r"] = qmat_to_json(biv.pi_r);
  rep.scenario["pi_b"] = qmat_to_json(biv.pi_b);
  rep.scenario["epsilon"] = biv.epsilon;
  rep.add("morita_bivectors_shared_eps", biv.witnessed ? 0.0 : 1.0, 0.5, biv.witnessed);

  SurjectivityReport sur = morita_surjectivity(gs.g01, gs.g10);
  rep.add("gamma01_to_m1_surjective", std::abs(sur.rank_g01 - sur.expected_g01), 0.5,
          sur.rank_g01 == sur.expected_g01);
  rep.add("gamma10_to_m0_surjective", std::abs(sur.rank_g10 - sur.expected_g10), 0.5,
          sur.rank_g10 == sur.expected_g10);

  nlohmann::ordered_json verdicts;
  for (const GammaModel* g : {&gs.g00, &gs.g01, &gs.g10, &gs.g11})
    verdicts[g->name] = integrality_check(g->torus, cfg.planck);
  rep.scenario["integrality"] = verdicts;

  // quantum torus relation and associativity, double-precision phases
  const double tol = tolerance(cfg, "oracle", env_scale) * 1e-3;  // 1e-12 at defaults
  double worst_rel = 0.0;
  for (int i = 0; i < theta.n; ++i)
    for (int j = 0; j < theta.n; ++j) {
      std::vector<long> ei(theta.n, 0), ej(theta.n, 0);
      ei[i] = 1;
      ej[j] = 1;
      TorusAlgebraElement lhs = qt_multiply(qt_monomial(ei), qt_monomial(ej), theta);
      TorusAlgebraElement rhs = qt_multiply(qt_monomial(ej), qt_monomial(ei), theta);
      const std::complex<double> expected =
          std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi * theta.f(i, j)));
      const std::complex<double> got =
          lhs.terms.begin()->second / rhs.terms.begin()->second;
      worst_rel = std::max(worst_rel, std::abs(got - expected));
    }
  rep.add_residual("qt_relation_phase", worst_rel, tol);

  Rng rng(7);
  double worst_assoc = 0.0;
  for (int t = 0; t < 20; ++t) {
    auto rand_mono = [&] {
      std::vector<long> p(theta.n);
      for (int i = 0; i < theta.n; ++i) p[i] = static_cast<long>(rng.uniform(-3.49, 3.49));
      return qt_monomial(p, {rng.uniform(-1, 1), rng.uniform(-1, 1)});
    };
    TorusAlgebraElement a = rand_mono(), b = rand_mono(), c = rand_mono();
    worst_assoc = std::max(
        worst_assoc, qt_distance(qt_multiply(qt_multiply(a, b, theta), c, theta),
                                 qt_multiply(a, qt_multiply(b, c, theta), theta)));
  }
  rep.add_residual("qt_associativity", worst_assoc, tol);
  return rep;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"holoform: moduli of flat connections on colored surfaces"};
  app.require_subcommand(1);

  std::string config_path, json_path, mode_override;
  std::vector<std::string> tol_overrides;
  std::int64_t seed_override = -1;

  app.add_option("--config", config_path, "scenario config (JSON)");
  app.add_option("--json", json_path, "write the JSON report to this path");
  app.add_option("--tol", tol_overrides, "tolerance override NAME=VALUE");
  app.add_option("--seed", seed_override, "run a single seed");
  app.add_option("--mode", mode_override, "exact|float");

  auto* c_validate = app.add_subcommand("validate", "surface validity report");
  auto* c_dim = app.add_subcommand("dim", "dimension formula vs numerical rank");
  auto* c_omega = app.add_subcommand("omega", "symplectic form and closed-form oracle");
  auto* c_check = app.add_subcommand("check", "structural checks");
  std::string which;
  c_check->add_option("which", which, "closed|nondegenerate|invariance|lagrangian|groupoid")
      ->required();
  auto* c_torus = app.add_subcommand("torus-morita", "exact Gamma pipeline for theta");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  double env_scale = 1.0;
  if (const char* env = std::getenv("HOLOFORM_DEFAULT_TOL")) env_scale = std::atof(env);
  if (env_scale <= 0.0) env_scale = 1.0;

  ScenarioConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("cannot open config '" + config_path + "'");
      nlohmann::json j;
      in >> j;
      cfg = parse_config(j);
    }
    for (const std::string& t : tol_overrides) {
      auto eq = t.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("tolerance override must be NAME=VALUE");
      cfg.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    }
    if (seed_override >= 0) cfg.seeds = {static_cast<std::uint64_t>(seed_override)};
    if (!mode_override.empty()) cfg.mode = mode_override;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    Report rep;
    if (c_validate->parsed())
      rep = cmd_validate(cfg, env_scale);
    else if (c_dim->parsed())
      rep = cmd_dim(cfg, env_scale);
    else if (c_omega->parsed())
      rep = cmd_omega(cfg, env_scale);
    else if (c_check->parsed())
      rep = cmd_check(cfg, which, env_scale);
    else if (c_torus->parsed())
      rep = cmd_torus_morita(cfg, env_scale);

    std::cout << rep.human_readable();
    if (!json_path.empty()) {
      std::ofstream out(json_path);
      out << rep.to_json(true).dump(2) << "\n";
    }
    return rep.pass() ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace holoform
