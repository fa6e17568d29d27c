// ringmod command line: special functions, discrete moduli, dilatations,
// bounds, the verification suite and plot-data sweeps.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ringmod/bounds.h"
#include "ringmod/dilatation.h"
#include "ringmod/dominating_factor.h"
#include "ringmod/errors.h"
#include "ringmod/graph_modulus.h"
#include "ringmod/harness.h"
#include "ringmod/plotdata.h"
#include "ringmod/spec_parse.h"
#include "ringmod/special_functions.h"

using Json = nlohmann::ordered_json;
using namespace ringmod;

namespace {

// Configuration or I/O problem: exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string json_path;
  std::string csv_path;
  int jobs = 1;
  double tol_scale = 1.0;
};

Json num(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

Json vec_json(const Vector& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json mat_json(const Matrix& m) {
  Json a = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(row);
  }
  return a;
}

Vector parse_vector(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(parse_number(tok));
  if (vals.empty()) throw std::invalid_argument("empty vector: " + text);
  return Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw UsageError("cannot write " + path);
}

// Prints the document and copies it to --json when given.
void emit(const Globals& g, const Json& doc) {
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!g.json_path.empty()) write_file(g.json_path, text);
}

Json bound_json(const BoundReport& b) {
  Json j;
  j["id"] = b.id;
  j["left"] = num(b.left);
  j["right"] = num(b.right);
  if (b.middle) j["middle"] = num(*b.middle);
  j["error"] = num(b.error);
  j["verdict"] = to_string(b.verdict);
  j["left_verdict"] = to_string(b.left_verdict);
  j["right_verdict"] = to_string(b.right_verdict);
  j["conservative"] = b.conservative;
  if (!b.note.empty()) j["note"] = b.note;
  return j;
}

int verdict_code(Verdict v) { return v == Verdict::kViolated ? 1 : 0; }

QuadratureSpec quad_spec(const Globals& g, int radial, int spherical) {
  QuadratureSpec q;
  if (radial > 0) q.radial_nodes = radial;
  if (spherical > 0) q.spherical_nodes = spherical;
  q.rel_tol = std::max(q.rel_tol / g.tol_scale, 1e-13);
  q.validate();
  return q;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ringmod: moduli of rings and semirings, dilatations and boundary bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file mirroring the command line flags");

  Globals g;
  app.add_option("--json", g.json_path, "also write the JSON output to this path");
  app.add_option("--csv", g.csv_path, "CSV output path (verify, sweep)");
  app.add_option("--jobs", g.jobs, "parallel scenarios")->envname("RINGMOD_JOBS")->check(
      CLI::PositiveNumber);
  app.add_option("--tol-scale", g.tol_scale, "divide tolerances by this factor (>= 1)")
      ->check(CLI::Range(1.0, 1e12));

  // special
  auto* special = app.add_subcommand("special", "special functions and constants");
  special->require_subcommand(1);
  auto* sp_a2 = special->add_subcommand("a2", "A_2 = sup (mo R_T(t) - log t)");
  int sp_n = 2;
  auto* sp_const = special->add_subcommand("constants", "lambda_n, A_n and Q_n");
  sp_const->add_option("--n", sp_n, "dimension")->check(CLI::Range(2, 64));
  double sp_t = 1.0;
  auto* sp_psi = special->add_subcommand("psi2", "Teichmuller ring function");
  sp_psi->add_option("--t", sp_t, "t > 0")->required();
  double sp_s = 2.0;
  auto* sp_phi = special->add_subcommand("phi2", "Grotzsch ring function");
  sp_phi->add_option("--s", sp_s, "s > 1")->required();

  // modulus
  auto* modulus = app.add_subcommand("modulus", "discrete modulus of a shape or its image");
  std::string m_shape, m_map, m_grid = "16x64", m_density;
  double m_tol = 1e-3;
  modulus->add_option("--shape", m_shape, "shape spec")->required();
  modulus->add_option("--map", m_map, "map spec (image modulus)");
  modulus->add_option("--grid", m_grid, "RxA or RxA/sK");
  modulus->add_option("--tol", m_tol, "admissibility tolerance")->check(CLI::Range(1e-9, 0.5));
  modulus->add_option("--emit-density", m_density, "write the density CSV here");

  // dilatation
  auto* dil = app.add_subcommand("dilatation", "directional dilatations at a point");
  std::string d_map, d_x, d_x0;
  dil->add_option("--map", d_map, "map spec")->required();
  dil->add_option("--x", d_x, "point")->required();
  dil->add_option("--x0", d_x0, "reference point")->required();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "integral bounds and boundary constants");
  std::string b_kind, b_map = "identity", b_shape = "semiring:n=2,r=1,R=e", b_factor, b_radii;
  std::optional<double> b_ref;
  double b_gamma = 1.0, b_m_big = std::numbers::pi, b_r0 = 1.0, b_m = 10.0, b_dist = 1.0,
         b_distance = 1e-3, b_mo = 10.0, b_radius = 1.0;
  int b_n = 2, b_radial = 0, b_spherical = 0;
  bounds->add_option("kind", b_kind,
                     "eq1est|eq2est|modintbound|domfac|holder|infinity|continuity|separation|"
                     "lipschitz")
      ->required()
      ->check(CLI::IsMember({"eq1est", "eq2est", "modintbound", "domfac", "holder", "infinity",
                             "continuity", "separation", "lipschitz"}));
  bounds->add_option("--map", b_map, "map spec");
  bounds->add_option("--shape", b_shape, "semiring or annulus spec");
  bounds->add_option("--reference", b_ref,
                     "measured mo f(S) (eq2est, modintbound) or ratio (eq1est)");
  bounds->add_option("--gamma", b_gamma, "Linear dominating factor slope");
  bounds->add_option("--factor", b_factor, "dominating factor spec (domfac)");
  bounds->add_option("--M", b_m_big, "exponential integral bound M");
  bounds->add_option("--n", b_n, "dimension")->check(CLI::Range(2, 64));
  bounds->add_option("--r0", b_r0, "radius r0");
  bounds->add_option("--m", b_m, "upper limit m (domfac)");
  bounds->add_option("--dist", b_dist, "dist(f(x0), boundary)");
  bounds->add_option("--distance", b_distance, "|x1 - x0| (continuity)");
  bounds->add_option("--mo", b_mo, "modulus (separation)");
  bounds->add_option("--R", b_radius, "radius R (lipschitz)");
  bounds->add_option("--radii", b_radii, "comma-separated radii (infinity)");
  bounds->add_option("--radial-nodes", b_radial, "quadrature radial nodes");
  bounds->add_option("--spherical-nodes", b_spherical, "quadrature angular nodes");

  // verify
  auto* verify = app.add_subcommand("verify", "run the verification scenarios");
  std::string v_filter;
  std::vector<std::string> v_ids;
  int v_grid_scale = 1;
  bool v_list = false;
  verify->add_option("--filter", v_filter, "only scenarios with this tag");
  verify->add_option("--scenario", v_ids, "run these scenario ids");
  verify->add_option("--grid-scale", v_grid_scale, "multiply solver grids")->check(
      CLI::Range(1, 8));
  verify->add_flag("--list", v_list, "list scenarios and exit");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "plot data for g(t) or the continuity bound");
  std::string s_kind, s_svg;
  double s_from = 0.0, s_to = 0.0;
  int s_count = 100, s_n = 2;
  double s_gamma = 1.0, s_m_big = std::numbers::pi, s_r0 = 0.1, s_dist = 1.0;
  sweep->add_option("kind", s_kind, "teichmuller|continuity")
      ->required()
      ->check(CLI::IsMember({"teichmuller", "continuity"}));
  sweep->add_option("--from", s_from, "first sample");
  sweep->add_option("--to", s_to, "last sample");
  sweep->add_option("--count", s_count, "number of samples (0 for an empty sweep)");
  sweep->add_option("--svg", s_svg, "also write an SVG line chart");
  sweep->add_option("--n", s_n, "dimension (continuity)");
  sweep->add_option("--gamma", s_gamma, "Linear dominating factor slope (continuity)");
  sweep->add_option("--M", s_m_big, "exponential integral bound (continuity)");
  sweep->add_option("--r0", s_r0, "radius r0 (continuity)");
  sweep->add_option("--dist", s_dist, "dist(f(x0), boundary) (continuity)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*special) {
      Json j;
      if (*sp_a2) {
        const A2Result r = compute_a2();
        j["A2"] = r.value;
        j["argmax_t"] = r.argmax_t;
        j["attained_at_boundary"] = r.attained_at_boundary;
      } else if (*sp_const) {
        const SpecialConstants k = constants_for(sp_n);
        j["n"] = k.n;
        j["lambda_lower"] = k.lambda_lower;
        j["lambda_upper"] = k.lambda_upper;
        j["A"] = k.a_value;
        j["A_exact"] = k.a_exact;
        j["Q"] = k.q_value;
      } else if (*sp_psi) {
        j["t"] = sp_t;
        j["psi2"] = psi2(sp_t);
        j["mo"] = mo_teichmuller2(sp_t);
      } else {
        j["s"] = sp_s;
        j["phi2"] = phi2(sp_s);
        j["mo"] = mo_grotzsch2(sp_s);
      }
      emit(g, j);
      return 0;
    }

    if (*modulus) {
      const Shape shape = parse_shape(m_shape);
      const GridResolution res = parse_grid(m_grid);
      SolverOptions opts;
      opts.tol = m_tol / g.tol_scale;
      ModulusEstimate est;
      GridGraph graph = build_grid(shape, res);
      std::optional<MapSpec> map;
      if (!m_map.empty()) {
        map = parse_map(m_map);
        graph = push_forward(graph, *map);
      }
      est = modulus_connect(graph, opts);
      est.mo = mo_from_gamma(est.m_gamma, shape.kind(), shape.dim());
      if (!m_density.empty()) {
        try {
          write_density_csv(graph, est, m_density);
        } catch (const std::exception& e) {
          throw UsageError(e.what());
        }
      }
      Json j;
      j["shape"] = shape.to_string();
      j["map"] = map ? map->to_string() : "identity";
      j["grid"] = res.to_string();
      j["m_gamma"] = est.m_gamma;
      j["lower_bound"] = est.lower_bound;
      j["m_sigma"] = std::pow(est.m_gamma, 1.0 / (1.0 - shape.dim()));
      j["mo"] = est.mo;
      if (!map) j["exact_mo"] = exact_modulus(shape);
      j["paths"] = est.paths;
      j["iterations"] = est.iterations;
      j["duality_gap"] = est.duality_gap;
      emit(g, j);
      return 0;
    }

    if (*dil) {
      const MapSpec map = parse_map(d_map);
      const DilatationSample s = directional_sample(map, parse_vector(d_x), parse_vector(d_x0));
      Json j;
      j["map"] = map.to_string();
      j["x"] = vec_json(s.x);
      j["x0"] = vec_json(s.x0);
      j["u"] = vec_json(s.u);
      j["jacobian"] = mat_json(jacobian(map, s.x).matrix);
      j["jacobian_det"] = s.jacobian_det;
      j["ell"] = s.ell;
      j["lcal"] = s.lcal;
      j["angular"] = s.angular;
      j["normal"] = s.normal;
      j["norm"] = s.matrix.norm;
      j["small"] = s.matrix.small;
      j["inner"] = s.matrix.inner;
      j["outer"] = s.matrix.outer;
      j["linear"] = s.matrix.linear;
      emit(g, j);
      return 0;
    }

    if (*bounds) {
      const QuadratureSpec q = quad_spec(g, b_radial, b_spherical);
      if (b_kind == "eq1est" || b_kind == "eq2est" || b_kind == "modintbound" ||
          b_kind == "holder") {
        const MapSpec map = parse_map(b_map);
        const Shape shape = parse_shape(b_shape);
        std::optional<Reference> ref;
        if (b_ref) ref = Reference{*b_ref, 0.0};
        BoundReport b;
        if (b_kind == "eq1est") {
          b = eq1est_bounds(map, shape, q, ref);
        } else if (b_kind == "eq2est") {
          b = eq2est_bounds(map, shape, q, ref);
        } else if (b_kind == "holder") {
          b = holder_identity_check(map, shape.center(), shape.inner(), shape.outer(), q);
        } else if (ref) {
          b = modintbound_check(map, shape, *ref, q);
        } else {
          const QuadResult r = modintbound(map, shape, q);
          b.id = "modintbound";
          b.left = r.value;
          b.right = r.value;
          b.error = r.error;
          b.verdict = Verdict::kInconclusive;
          b.note = "no reference given";
        }
        emit(g, bound_json(b));
        return verdict_code(b.verdict);
      }
      if (b_kind == "domfac") {
        const DominatingFactor h = b_factor.empty() ? DominatingFactor::Linear(b_gamma)
                                                    : parse_factor(b_factor);
        const DominatedBound d = dominated_modulus_bound(b_m, b_m_big, b_r0, b_n, h);
        Json j;
        j["id"] = "domfac";
        j["factor"] = h.to_string();
        j["divergence"] = to_string(is_divergence_type(h, b_n));
        j["left"] = d.value;
        j["right"] = d.closed_form ? Json(*d.closed_form) : Json(nullptr);
        j["error"] = d.error;
        j["sigma"] = d.sigma;
        Verdict v = Verdict::kInconclusive;
        if (d.closed_form)
          v = std::abs(d.value - *d.closed_form) <= d.error + 1e-12 * std::abs(*d.closed_form)
                  ? Verdict::kHolds
                  : Verdict::kViolated;
        j["verdict"] = to_string(v);
        emit(g, j);
        return verdict_code(v);
      }
      if (b_kind == "infinity") {
        std::vector<double> radii;
        if (b_radii.empty()) {
          radii = {1e2, 1e4, 1e8, 1e16, 1e32, 1e64};
        } else {
          const Vector r = parse_vector(b_radii);
          radii.assign(r.data(), r.data() + r.size());
        }
        const InfinityReport r = infinity_check(parse_map(b_map), b_n, b_r0, radii, q);
        Json j;
        j["id"] = "infinity";
        j["radii"] = r.radii;
        j["values"] = r.values;
        j["errors"] = r.errors;
        j["left"] = r.values.empty() ? Json(nullptr) : Json(r.values.back());
        j["right"] = 0.0;
        j["error"] = r.errors.empty() ? Json(nullptr) : Json(r.errors.back());
        j["verdict"] = to_string(r.verdict);
        emit(g, j);
        return 0;
      }
      if (b_kind == "continuity") {
        const ContinuityBound c =
            continuity_bounds(b_n, b_gamma, b_m_big, b_r0, b_dist, b_distance);
        Json j;
        j["id"] = "continuity";
        j["log_form"] = c.log_form;
        j["left"] = c.value;
        j["right"] = nullptr;
        j["error"] = 0.0;
        j["alpha"] = c.alpha;
        j["beta"] = c.beta;
        j["delta"] = c.delta;
        j["mu"] = c.mu;
        j["sigma"] = c.sigma;
        j["c1"] = c.c1;
        j["c2"] = c.c2;
        j["conservative"] = c.conservative;
        j["verdict"] = to_string(Verdict::kInconclusive);
        emit(g, j);
        return 0;
      }
      if (b_kind == "separation") {
        const BoundValue s = separation_bound(b_mo, b_n);
        Json j;
        j["id"] = "separation";
        j["left"] = s.value;
        std::optional<BoundValue> e;
        if (b_mo > constants_for(b_n).a_value) e = boundary_estimate(b_mo, b_dist, b_n);
        j["right"] = e ? Json(e->value) : Json(nullptr);
        j["error"] = 0.0;
        j["conservative"] = s.conservative;
        j["verdict"] = to_string(Verdict::kInconclusive);
        emit(g, j);
        return 0;
      }
      // lipschitz
      const SpecialConstants k = constants_for(b_n);
      const LipschitzConstants l = lipschitz_constants(k.a_value, b_m_big, b_radius, b_n);
      Json j;
      j["id"] = "lipschitz";
      j["left"] = l.c1;
      j["right"] = l.c2;
      j["r0_max"] = l.r0_max;
      j["error"] = 0.0;
      j["conservative"] = !k.a_exact;
      j["verdict"] = to_string(Verdict::kInconclusive);
      emit(g, j);
      return 0;
    }

    if (*verify) {
      if (v_list) {
        for (const auto& s : scenario_registry()) {
          std::string tags;
          for (const auto& t : s.tags) tags += (tags.empty() ? "" : ",") + t;
          std::printf("%-22s %-18s %s\n", s.id.c_str(), tags.c_str(), s.summary.c_str());
        }
        return 0;
      }
      HarnessConfig cfg;
      cfg.tol_scale = g.tol_scale;
      cfg.grid_scale = v_grid_scale;
      // CLI11 drops environment values that fail the check without a message
      if (const char* env = std::getenv("RINGMOD_JOBS");
          env && *env && app.get_option("--jobs")->count() == 0)
        throw UsageError(std::string("RINGMOD_JOBS: not a positive integer: ") + env);
      cfg.jobs = g.jobs;
      cfg.validate();
      AggregateReport agg;
      if (v_ids.empty()) {
        if (!v_filter.empty() && scenario_ids(v_filter).empty())
          throw UsageError("no scenario carries tag " + v_filter);
        agg = run_all(v_filter.empty() ? std::nullopt : std::optional<std::string>(v_filter),
                      cfg);
      } else {
        agg.config_hash = cfg.hash();
        for (const auto& id : v_ids) {
          try {
            agg.reports.push_back(run_scenario(id, cfg));
          } catch (const std::out_of_range& e) {
            throw UsageError(e.what());
          }
          agg.wall_time += agg.reports.back().wall_time;
        }
      }
      for (const auto& r : agg.reports) {
        int failed = 0, allowed = 0;
        for (const auto& c : r.checks) {
          failed += c.verdict == CheckVerdict::kFail;
          allowed += c.verdict == CheckVerdict::kInconclusiveAllowed;
        }
        std::fprintf(stderr, "%-4s %-22s %3zu checks, %d failed, %d inconclusive-allowed, %.2fs\n",
                     r.passed() ? "PASS" : "FAIL", r.scenario.c_str(), r.checks.size(), failed,
                     allowed, r.wall_time);
        for (const auto& c : r.checks)
          if (c.verdict == CheckVerdict::kFail)
            std::fprintf(stderr, "       %s: expected %.12g, actual %.12g, tol %.3g %s\n",
                         c.name.c_str(), c.expected, c.actual, c.tolerance, c.note.c_str());
      }
      const std::string text = report_json(agg);
      if (!g.json_path.empty()) write_file(g.json_path, text);
      if (!g.csv_path.empty()) {
        try {
          write_report_csv(agg, g.csv_path);
        } catch (const std::runtime_error& e) {
          throw UsageError(e.what());
        }
      }
      std::fprintf(stderr, "%s: %zu scenarios in %.1fs\n", agg.passed() ? "PASS" : "FAIL",
                   agg.reports.size(), agg.wall_time);
      return exit_code(agg);
    }

    if (*sweep) {
      Sweep s;
      if (s_kind == "teichmuller") {
        s = sweep_teichmuller_excess(s_from > 0 ? s_from : 1.001, s_to > 0 ? s_to : 1e3,
                                     s_count);
      } else {
        s = sweep_continuity(s_n, s_gamma, s_m_big, s_r0, s_dist, s_from > 0 ? s_from : 1e-12,
                             s_to > 0 ? s_to : 0.5 * s_r0, s_count);
      }
      try {
        if (g.csv_path.empty()) {
          std::cout << s.columns[0] << "," << s.columns[1] << "\n";
          for (const auto& r : s.rows) std::printf("%.17g,%.17g\n", r[0], r[1]);
        } else {
          write_csv(s, g.csv_path);
        }
        if (!s_svg.empty()) write_svg(s, s_svg);
      } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "error: %s (bracket [%.9g, %.9g])\n", e.what(), e.lower(), e.upper());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
