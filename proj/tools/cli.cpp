#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "lochmf/error.hpp"
#include "lochmf/hecke.hpp"
#include "lochmf/modeval.hpp"
#include "lochmf/parallel.hpp"
#include "lochmf/periods.hpp"
#include "lochmf/qforms.hpp"
#include "lochmf/verify.hpp"
#include "lochmf/walls.hpp"

namespace lochmf::cli {

using nlohmann::json;

namespace {

struct RunConfig {
  std::string command;
  std::string object = "F";
  int k = 2;
  i64 D = 5;
  std::vector<double> tau = {0.0, 2.0};
  std::vector<double> xrange = {-1.0, 1.0};
  std::vector<double> yrange = {0.02, 2.0};
  std::vector<int> steps = {100, 100};
  int class_index = -1;
  i64 p = 2;
  int m_max = 6;
  double coeff_y = 0.0;
  bool all = false;
  bool acceptance = false;
  bool primitive = false;
  bool cusp = false;
  std::vector<int> criteria;
  std::string format = "table";
  std::string output;
  EvalParams params;

  void validate() const {
    params.validate();
    if (k < 2 || k > 16) throw DomainError("--k must lie in [2, 16]");
    fundamental_factor(D);
    if (tau.size() != 2 || !(tau[1] > 0.0)) throw DomainError("--tau needs x y with y > 0");
    if (format != "table" && format != "json") throw DomainError("--format is table or json");
    if (command == "grid") {
      if (xrange.size() != 2 || yrange.size() != 2 || steps.size() != 2)
        throw DomainError("grid needs --x lo hi --y lo hi --steps nx ny");
      if (!(xrange[0] < xrange[1]) || !(yrange[0] < yrange[1]) || !(yrange[0] > 0.0))
        throw DomainError("grid ranges must be increasing with y > 0");
      if (steps[0] < 1 || steps[1] < 1) throw DomainError("--steps must be positive");
    }
    for (int c : criteria)
      if (c < 1 || c > criterion_count()) throw DomainError("--criteria entries lie in 1..11");
  }
};

json point_json(const Point& t) { return json::array({t.x, t.y}); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_c(cplx z) { return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::fabs(z.imag())) + "i"; }

void emit(const RunConfig& cfg, const json& j, const std::string& table, std::ostream& out) {
  if (cfg.format == "json")
    out << j.dump(2) << "\n";
  else
    out << table;
  if (!cfg.output.empty()) {
    std::ofstream f(cfg.output);
    if (!f) throw DomainError("cannot open --output file " + cfg.output);
    f << j.dump(2) << "\n";
  }
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const auto D = fundamental_factor(cfg.D);
  const Point t(cfg.tau[0], cfg.tau[1]);
  Evaluation e;
  std::string label = cfg.object;
  if (cfg.object == "F") {
    e = eval_F(cfg.k, D, t, cfg.params);
  } else if (cfg.object == "f") {
    e = eval_fkD(cfg.k, D, t, cfg.params);
  } else if (cfg.object == "Fprim") {
    e = eval_F_primitive(cfg.k, D, t, cfg.params);
  } else if (cfg.object == "FA" || cfg.object == "fA") {
    const auto classes = narrow_class_reps(D);
    if (cfg.class_index < 0 || cfg.class_index >= static_cast<int>(classes.size()))
      throw DomainError("--class must index one of the " + std::to_string(classes.size()) + " narrow classes");
    const auto& A = classes[cfg.class_index];
    e = cfg.object == "FA" ? eval_FA(cfg.k, A, t, cfg.params) : eval_fkDA(cfg.k, A, t, cfg.params);
    label += "[" + A.representative.str() + "]";
  } else {
    throw DomainError("--object is one of F, f, Fprim, FA, fA");
  }
  json j = {{"command", "eval"},     {"object", label},          {"k", cfg.k},
            {"D", cfg.D},            {"tau", point_json(t)},     {"value_re", e.value.real()},
            {"value_im", e.value.imag()}, {"tail_estimate", e.tail}, {"rounding_estimate", e.rounding},
            {"a_used", e.a_used},    {"n_used", e.n_used}};
  std::ostringstream s;
  s << label << "  k=" << cfg.k << "  D=" << cfg.D << "  tau=" << fmt(t.x) << " + " << fmt(t.y) << "i\n"
    << "  value  " << fmt_c(e.value) << "\n"
    << "  error  " << fmt(e.error()) << "  (tail " << fmt(e.tail) << ", rounding " << fmt(e.rounding) << ")\n";
  emit(cfg, j, s.str(), out);
  return kPass;
}

int cmd_grid(const RunConfig& cfg, std::ostream& out) {
  const auto D = fundamental_factor(cfg.D);
  const int nx = cfg.steps[0], ny = cfg.steps[1];
  const double dx = nx > 1 ? (cfg.xrange[1] - cfg.xrange[0]) / (nx - 1) : 0.0;
  const double dy = ny > 1 ? (cfg.yrange[1] - cfg.yrange[0]) / (ny - 1) : 0.0;
  // a wall is rasterised onto a sample when it passes within half a cell,
  // capped at half the height since walls accumulate at the real line
  const double margin = 0.5 * std::hypot(dx, dy);
  struct Row {
    double x, y;
    cplx F;
    double err;
    std::uint64_t hash;
    bool on_wall;
  };
  std::vector<Row> rows(static_cast<std::size_t>(nx) * ny);
  EvalParams inner = cfg.params;
  inner.threads = 1;
  parallel_for(rows.size(), cfg.params.threads, [&](std::size_t idx) {
    const int j = static_cast<int>(idx / nx), i = static_cast<int>(idx % nx);
    const Point t(cfg.xrange[0] + i * dx, cfg.yrange[0] + j * dy);
    const auto e = eval_F(cfg.k, D, t, inner);
    rows[idx] = {t.x, t.y, e.value, e.error(), interior_forms(D, t).hash(), !walls_near(D, t, std::min(margin, 0.5 * t.y)).empty()};
  });
  double err = 0.0;
  for (const auto& r : rows) err = std::max(err, r.err);
  std::ostringstream s;
  s << kGridHeader << "\n# k=" << cfg.k << " D=" << cfg.D << " max_error=" << fmt(err) << "\n"
    << "x,y,F_re,F_im,signature_hash,on_wall_flag\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.17g,%.17g,%016llx,%d\n", r.x, r.y, r.F.real(), r.F.imag(),
                  static_cast<unsigned long long>(r.hash), r.on_wall ? 1 : 0);
    s << buf;
  }
  if (!cfg.output.empty()) {
    std::ofstream f(cfg.output);
    if (!f) throw DomainError("cannot open --output file " + cfg.output);
    f << s.str();
  } else {
    out << s.str();
  }
  return kPass;
}

int cmd_periods(const RunConfig& cfg, std::ostream& out) {
  const auto D = fundamental_factor(cfg.D);
  PeriodPlan plan;
  plan.m_max = cfg.m_max;
  plan.y = cfg.coeff_y;
  const auto ps = periods(cfg.k, D, cfg.params, plan);
  json r = json::array();
  std::ostringstream s;
  s << "periods of f_{" << cfg.k << "," << cfg.D << "}\n";
  for (std::size_t n = 0; n < ps.r.size(); ++n) {
    r.push_back({{"n", n}, {"value", ps.r[n]}, {"error", ps.err[n]}, {"imag", ps.imag[n]}});
    s << "  r_" << n << " = " << fmt(ps.r[n]) << "  +- " << fmt(ps.err[n]) << "\n";
  }
  json j = {{"command", "periods"}, {"k", cfg.k}, {"D", cfg.D}, {"periods", r}};
  bool pass = true;
  if (cfg.k % 2 == 0) {
    const auto rr = check_rationality(ps, D);
    json rhs = rational_rhs_exact(cfg.k, D);
    pass = rr.residual <= rr.budget;
    j["rationality"] = {{"rational_rhs", rhs},
                        {"residual", rr.residual},
                        {"budget", rr.budget},
                        {"fitted_constant", rr.fitted_constant},
                        {"residual_opposite_sign", rr.residual_opposite},
                        {"fitted_constant_opposite_sign", rr.fitted_constant_opposite},
                        {"pass", pass}};
    s << "  r+ - 2 sum_{a<0<c} Q^{k-1} mod X^" << 2 * cfg.k - 2 << "-1:  residual " << fmt(rr.residual)
      << "  budget " << fmt(rr.budget) << "  fitted constant " << fmt(rr.fitted_constant) << "\n"
      << "  r+ + 2 sum_{a<0<c} Q^{k-1} mod X^" << 2 * cfg.k - 2 << "-1:  residual " << fmt(rr.residual_opposite)
      << "  fitted constant " << fmt(rr.fitted_constant_opposite) << "\n"
      << "  " << (pass ? "PASS" : "FAIL") << "\n";
  }
  j["pass"] = pass;
  emit(cfg, j, s.str(), out);
  return pass ? kPass : kCheckFailed;
}

int cmd_hecke(const RunConfig& cfg, std::ostream& out) {
  const auto D = fundamental_factor(cfg.D);
  const Point t(cfg.tau[0], cfg.tau[1]);
  HeckeResult h;
  std::string rel = "F_D|T_p = F_{Dp^2} + p^{-k}(D/p)F_D + p^{1-2k}F_{D/p^2}";
  if (cfg.cusp) {
    h = verify_hecke_cusp(cfg.k, D, cfg.p, t, cfg.params);
    rel = "f_D|T_p = f_{Dp^2} + p^{k-1}(D/p)f_D + p^{2k-1}f_{D/p^2}";
  } else if (cfg.primitive) {
    h = verify_hecke_primitive(cfg.k, D, cfg.p, t, cfg.params);
    rel = "primitive-form relation";
  } else {
    h = verify_hecke(cfg.k, D, cfg.p, t, cfg.params);
  }
  json j = {{"command", "hecke"}, {"relation", rel},
            {"k", cfg.k},         {"D", cfg.D},
            {"p", cfg.p},         {"tau", point_json(h.tau)},
            {"nudged", h.nudged}, {"lhs", {h.lhs.real(), h.lhs.imag()}},
            {"rhs", {h.rhs.real(), h.rhs.imag()}}, {"residual", h.residual()},
            {"budget", h.budget}, {"pass", h.pass()}};
  std::ostringstream s;
  s << rel << "\n  k=" << cfg.k << " D=" << cfg.D << " p=" << cfg.p << " tau=" << fmt(h.tau.x) << " + "
    << fmt(h.tau.y) << "i" << (h.nudged ? " (nudged off a wall)" : "") << "\n"
    << "  lhs " << fmt_c(h.lhs) << "\n  rhs " << fmt_c(h.rhs) << "\n  residual " << fmt(h.residual())
    << "  budget " << fmt(h.budget) << "  " << (h.pass() ? "PASS" : "FAIL") << "\n";
  emit(cfg, j, s.str(), out);
  return h.pass() ? kPass : kCheckFailed;
}

// Checks for one (k, D): modularity, xi, expansion, Laplacian, growth, rationality.
std::vector<CheckRecord> object_suite(const RunConfig& cfg) {
  const auto D = fundamental_factor(cfg.D);
  const auto& p = cfg.params;
  std::vector<CheckRecord> recs;
  const Point t(cfg.tau[0], cfg.tau[1]);
  for (const IMat2& g : {kMatS, kMatT, kMatS * kMatT}) recs.push_back(check_modularity(cfg.k, D, g, t, p));
  recs.push_back(check_xi(cfg.k, D, t, p));
  recs.push_back(check_laplacian(cfg.k, D, t, p));
  const Point top(t.x, std::max(t.y, 0.5 * D.sqrtD() + 0.5));
  recs.push_back(check_expansion(cfg.k, D, top, p));
  recs.push_back(check_growth(cfg.k, D, p));
  if (cfg.k % 2 == 0) {
    const auto rr = check_rationality(cfg.k, D, p);
    CheckRecord r;
    r.name = "rationality";
    r.params = {{"k", cfg.k}, {"D", cfg.D}};
    r.residual = rr.residual;
    r.budget = rr.budget;
    r.metric = rr.residual;
    r.detail = {{"fitted_constant", rr.fitted_constant}, {"residual_opposite_sign", rr.residual_opposite}};
    r.finalize();
    recs.push_back(r);
  }
  return recs;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  std::vector<CheckRecord> recs;
  if (cfg.acceptance || !cfg.criteria.empty()) {
    VerifyConfig vc = default_config();
    vc.params = cfg.params;
    if (!cfg.acceptance) vc.criteria = cfg.criteria;
    recs = run_all(vc);
  } else if (cfg.all) {
    recs = object_suite(cfg);
  } else {
    throw DomainError("verify needs --all, --acceptance or --criteria");
  }
  json arr = json::array();
  bool pass = true;
  std::ostringstream s;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-4s %-26s %-5s %-12s %-12s %-12s %-9s\n", "crit", "check", "pass", "residual",
                "budget", "metric", "tolerance");
  s << buf;
  for (const auto& r : recs) {
    arr.push_back(to_json(r));
    pass = pass && r.pass;
    std::snprintf(buf, sizeof buf, "%-4d %-26s %-5s %-12.4g %-12.4g %-12.4g %-9.3g\n", r.criterion, r.name.c_str(),
                  r.pass ? "PASS" : "FAIL", r.residual, r.budget, r.metric, r.tolerance);
    s << buf;
  }
  json j = {{"command", "verify"}, {"records", arr}, {"pass", pass}};
  emit(cfg, j, s.str(), out);
  return pass ? kPass : kCheckFailed;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--k", cfg.k, "weight parameter k (form of weight 2-2k)");
  sub->add_option("--D", cfg.D, "positive non-square discriminant");
  sub->add_option("--a-max", cfg.params.a_max, "largest |a| kept in lattice sums");
  sub->add_option("--n-max", cfg.params.n_max, "smallest translate window per (a, b)");
  sub->add_option("--tol", cfg.params.tol, "target tolerance");
  sub->add_option("--quad-points", cfg.params.quad_points, "trapezoid samples for Fourier coefficients");
  sub->add_option("--threads", cfg.params.threads, "worker count (0: LOCHMF_THREADS or all cores)");
  sub->add_option("--format", cfg.format, "table or json");
  sub->add_option("--output", cfg.output, "also write the JSON (CSV for grid) to this path");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"lochmf: wall-crossing forms F_{1-k,D} for positive discriminants"};
  app.require_subcommand(1);

  auto* ev = app.add_subcommand("eval", "evaluate F, f, Fprim, FA or fA at one point");
  add_common(ev, cfg);
  ev->add_option("--object", cfg.object, "F, f, Fprim, FA or fA");
  ev->add_option("--tau", cfg.tau, "x y")->expected(2);
  ev->add_option("--class", cfg.class_index, "narrow class index for FA and fA");

  auto* gr = app.add_subcommand("grid", "sample F on a rectangle as CSV");
  add_common(gr, cfg);
  gr->add_option("--x", cfg.xrange, "x range lo hi")->expected(2);
  gr->add_option("--y", cfg.yrange, "y range lo hi")->expected(2);
  gr->add_option("--steps", cfg.steps, "samples nx ny")->expected(2);

  auto* pe = app.add_subcommand("periods", "even periods and the rationality congruence");
  add_common(pe, cfg);
  pe->add_option("--m-max", cfg.m_max, "Fourier coefficients used");
  pe->add_option("--y", cfg.coeff_y, "coefficient extraction height (0: automatic)");

  auto* he = app.add_subcommand("hecke", "Hecke relation at one point");
  add_common(he, cfg);
  he->add_option("--p", cfg.p, "prime");
  he->add_option("--tau", cfg.tau, "x y")->expected(2);
  he->add_flag("--primitive", cfg.primitive, "primitive-form relation");
  he->add_flag("--cusp", cfg.cusp, "weight 2k relation for f");

  auto* ve = app.add_subcommand("verify", "run checks and report pass/fail records");
  add_common(ve, cfg);
  ve->add_option("--tau", cfg.tau, "x y")->expected(2);
  ve->add_flag("--all", cfg.all, "every check for the given k and D");
  ve->add_flag("--acceptance", cfg.acceptance, "all eleven acceptance criteria");
  ve->add_option("--criteria", cfg.criteria, "acceptance criteria to run")->delimiter(',');

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadInput;
  }

  for (auto* s : {ev, gr, pe, he, ve})
    if (s->parsed()) cfg.command = s->get_name();
  if (cfg.command == "hecke" || cfg.command == "verify") {
    if (ve->parsed() && ve->count("--tau") == 0) cfg.tau = {0.3, 1.0};
    if (he->parsed() && he->count("--tau") == 0) cfg.tau = {0.0, 4.0};
  }

  try {
    cfg.validate();
    if (cfg.command == "eval") return cmd_eval(cfg, out);
    if (cfg.command == "grid") return cmd_grid(cfg, out);
    if (cfg.command == "periods") return cmd_periods(cfg, out);
    if (cfg.command == "hecke") return cmd_hecke(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const BudgetInfeasible& e) {
    err << "infeasible budget: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace lochmf::cli
