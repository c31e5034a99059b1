// Command-line harness for the stabilized Runge-Kutta-Chebyshev integrators:
// adaptive and fixed-step integration of the built-in benchmarks, stability
// region scans, damping-table verification, and cost/convergence reports.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arkc/adaptive.hpp"
#include "arkc/problems.hpp"
#include "arkc/reports.hpp"
#include "arkc/stability.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArguments = 1;
constexpr int kExitNumericalFailure = 2;
constexpr int kExitVerificationFailure = 3;

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

struct ProblemArgs {
  std::string name = "linear-ad";
  double a = 1.0;
  int n = 0;  // 0: per-problem default
};

struct BuiltProblem {
  arkc::SplitOdeProblem ode;
  std::vector<double> y0;
  double dx = 0.0;
  arkc::OracleFn oracle;
};

BuiltProblem make_problem(const ProblemArgs& args) {
  BuiltProblem out;
  if (args.name == "linear-ad") {
    auto p = std::make_shared<arkc::LinearAdvectionDiffusion1D>(
        arkc::build_linear_ad(args.n > 0 ? args.n : 150, args.a));
    out.ode = p->ode;
    out.y0 = p->initial_state();
    out.dx = p->dx;
    out.oracle = [p](std::span<const double> y, double t) {
      return arkc::fourier_reference(*p, y, t);
    };
  } else if (args.name == "burgers") {
    auto p = std::make_shared<arkc::BurgersReaction1D>(
        arkc::build_burgers(args.n > 0 ? args.n : 100));
    out.ode = p->ode;
    out.y0 = p->initial_state();
    out.dx = p->dx;
    out.oracle = [p](std::span<const double> y, double t) {
      return arkc::rk5_reference(p->ode, y, 0.0, t, 1e-11);
    };
  } else {
    throw CLI::ValidationError("--problem", "unknown problem: " + args.name);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit stabilized Runge-Kutta-Chebyshev integrators for "
               "advection-diffusion-reaction systems"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  std::string format = "csv";
  unsigned seed = 0x9e3779b9u;
  app.add_option("--out", out_path, "Output path (default: stdout)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "Seed for randomized drivers");

  const auto unit_interval = CLI::Validator(
      [](std::string& value) {
        const double v = std::stod(value);
        if (!(v > 0.0 && v < 1.0)) return std::string("tolerance must lie in (0, 1)");
        return std::string();
      },
      "TOL in (0,1)");

  ProblemArgs prob;
  auto add_problem_options = [&prob](CLI::App* cmd) {
    cmd->add_option("--problem", prob.name, "Benchmark problem")
        ->check(CLI::IsMember({"linear-ad", "burgers"}));
    cmd->add_option("--a", prob.a, "Advection coefficient (linear-ad)");
    cmd->add_option("--n", prob.n, "Grid cells (default 150 linear-ad, 100 burgers)");
  };

  // integrate
  auto* integrate = app.add_subcommand("integrate", "Integrate a benchmark problem");
  add_problem_options(integrate);
  std::string scheme_name = "arkc";
  double tol = 1e-4;
  long fixed_steps = 0;
  int fixed_s = 0;
  double fixed_eta = 0.0;
  double t_end = 0.5;
  integrate->add_option("--scheme", scheme_name, "Integrator")
      ->check(CLI::IsMember({"cheb1", "rkc", "ad1", "arkc"}));
  integrate->add_option("--tol", tol, "Adaptive tolerance (atol = rtol)")->check(unit_interval);
  integrate->add_option("--fixed-steps", fixed_steps, "Use a fixed-step run with this many steps");
  integrate->add_option("--s", fixed_s, "Stage count for fixed-step runs (0: auto)");
  integrate->add_option("--eta", fixed_eta, "Damping for fixed-step runs (0: auto)");
  integrate->add_option("--t-end", t_end, "End time");

  // stability
  auto* stability = app.add_subcommand("stability", "Scan a stability region");
  std::string stab_scheme = "arkc";
  int stab_s = 20;
  double stab_eta = 0.15;
  int grid_p = 800, grid_q = 400;
  std::string metrics_path;
  stability->add_option("--scheme", stab_scheme, "ad1 or arkc")
      ->check(CLI::IsMember({"ad1", "arkc"}));
  stability->add_option("--s", stab_s, "Stage count");
  stability->add_option("--eta", stab_eta, "Damping");
  stability->add_option("--grid-p", grid_p, "Grid points along p");
  stability->add_option("--grid-q", grid_q, "Grid points along q");
  stability->add_option("--metrics", metrics_path, "Write inscribed-ellipse metrics JSON here");

  // table2
  auto* table2 = app.add_subcommand("table2", "Adaptive runs on the linear benchmark");
  std::vector<double> t2_a{0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 12.0};
  std::vector<double> t2_tol{1e-2, 1e-5};
  int t2_n = 150;
  table2->add_option("--a", t2_a, "Advection coefficients");
  table2->add_option("--tol", t2_tol, "Tolerances")->check(unit_interval);
  table2->add_option("--n", t2_n, "Grid cells");

  // convergence
  auto* convergence = app.add_subcommand("convergence", "Fixed-step convergence study");
  add_problem_options(convergence);
  std::string conv_scheme = "arkc";
  int conv_levels = 5;
  long conv_n0 = 64;
  double conv_t_end = 0.5;
  convergence->add_option("--scheme", conv_scheme, "Integrator")
      ->check(CLI::IsMember({"cheb1", "rkc", "ad1", "arkc"}));
  convergence->add_option("--levels", conv_levels, "Number of halving levels");
  convergence->add_option("--steps0", conv_n0, "Steps at the coarsest level");
  convergence->add_option("--t-end", conv_t_end, "End time");

  // cost-curve
  auto* cost = app.add_subcommand("cost-curve", "Accuracy vs cost sweep on the Burgers benchmark");
  std::vector<double> cost_tols{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  cost->add_option("--tol", cost_tols, "Tolerance sweep")->check(unit_interval);

  // verify-tables
  auto* verify = app.add_subcommand("verify-tables", "Check every damping-table band edge");
  double verify_eta_scale = 1.0;
  verify->add_option("--eta-scale", verify_eta_scale,
                     "Rescale all damping values (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitBadArguments;
  }

  std::ofstream file;
  try {
    if (integrate->parsed()) {
      const BuiltProblem built = make_problem(prob);
      arkc::IntegrationReport report;
      if (fixed_steps > 0) {
        const arkc::Scheme scheme = arkc::scheme_from_name(scheme_name);
        int s = fixed_s;
        double eta = fixed_eta;
        if (s <= 0 || eta <= 0.0) {
          const double h = t_end / static_cast<double>(fixed_steps);
          auto ed = arkc::estimate_spectral_radius(built.ode, built.y0,
                                                   arkc::RhsPart::diffusion, nullptr, seed);
          auto ea = arkc::estimate_spectral_radius(built.ode, built.y0,
                                                   arkc::RhsPart::advection, nullptr, seed);
          const double ratio =
              ed.rho > 0.0 && built.ode.has_advection() ? 1.1 * ea.rho / std::sqrt(ed.rho) : 0.0;
          auto sel = arkc::select_stages(h, 1.05 * ed.rho, ratio);
          if (!sel) throw std::runtime_error("fixed step too large for the stage cap");
          if (s <= 0) s = sel->first;
          if (eta <= 0.0) eta = sel->second;
        }
        report = arkc::integrate_fixed(built.ode, built.y0, 0.0, t_end, fixed_steps, scheme, s,
                                       eta);
      } else {
        arkc::AdaptiveConfig config;
        config.atol = config.rtol = tol;
        config.t_start = 0.0;
        config.t_end = t_end;
        config.seed = seed;
        report = arkc::integrate_adaptive(built.ode, built.y0, config);
        if (!report.complete) throw std::runtime_error("integration incomplete (max_steps)");
      }
      std::ostream& out = open_output(file, out_path);
      if (format == "csv") {
        arkc::write_state_csv(report.final_state, built.dx, out);
        out << "# steps " << report.steps_accepted << " rejected " << report.steps_rejected
            << " fd_evals " << report.fd_evals << " fa_evals " << report.fa_evals << " s_max "
            << report.s_max << '\n';
      } else {
        nlohmann::json j{{"steps", report.steps_accepted},
                         {"rejected", report.steps_rejected},
                         {"fd_evals", report.fd_evals},
                         {"fa_evals", report.fa_evals},
                         {"s_max", report.s_max},
                         {"final_time", report.final_time},
                         {"final_state", report.final_state}};
        out << j.dump(2) << '\n';
      }
    } else if (stability->parsed()) {
      arkc::GridSpec grid;
      grid.p_points = grid_p;
      grid.q_points = grid_q;
      const arkc::StabilityScan scan =
          arkc::scan_region(arkc::scheme_from_name(stab_scheme), stab_s, stab_eta, grid);
      if (scan.degenerate)
        std::cerr << "warning: no stable p < 0; inscribed-ellipse metrics are zero\n";
      std::ostream& out = open_output(file, out_path);
      if (format == "csv")
        arkc::write_scan_csv(scan, out);
      else
        arkc::write_scan_metrics_json(scan, out);
      if (!metrics_path.empty()) {
        std::ofstream mf(metrics_path);
        if (!mf) throw std::runtime_error("cannot open metrics file: " + metrics_path);
        arkc::write_scan_metrics_json(scan, mf);
      }
    } else if (table2->parsed()) {
      arkc::Table2Options options;
      options.a_values = t2_a;
      options.tol_values = t2_tol;
      options.n_cells = t2_n;
      const auto rows = arkc::run_table2(options);
      std::ostream& out = open_output(file, out_path);
      if (format == "csv")
        arkc::write_table2_csv(rows, out);
      else
        arkc::write_table2_json(rows, out);
      for (const auto& r : rows)
        if (r.failed) return kExitNumericalFailure;
    } else if (convergence->parsed()) {
      arkc::ConvergenceOptions options;
      options.scheme = arkc::scheme_from_name(conv_scheme);
      options.levels = conv_levels;
      options.n_steps_coarsest = conv_n0;
      options.t_end = conv_t_end;
      const BuiltProblem built = make_problem(prob);
      const auto report = arkc::run_convergence(built.ode, built.y0, built.oracle, options);
      std::ostream& out = open_output(file, out_path);
      if (format == "csv")
        arkc::write_convergence_csv(report, out);
      else
        arkc::write_convergence_json(report, out);
    } else if (cost->parsed()) {
      const auto rows = arkc::run_cost_curve(cost_tols);
      std::ostream& out = open_output(file, out_path);
      if (format == "csv")
        arkc::write_cost_curve_csv(rows, out);
      else
        arkc::write_cost_curve_json(rows, out);
    } else if (verify->parsed()) {
      const auto rows = arkc::verify_all_tables(verify_eta_scale);
      std::ostream& out = open_output(file, out_path);
      arkc::write_table_checks_csv(rows, out);
      for (const auto& r : rows)
        if (!r.pass) return kExitVerificationFailure;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitBadArguments;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArguments;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumericalFailure;
  }
  return kExitOk;
}
