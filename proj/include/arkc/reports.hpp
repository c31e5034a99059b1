#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arkc/adaptive.hpp"
#include "arkc/problems.hpp"

namespace arkc {

struct Table2Options {
  std::vector<double> a_values{0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 12.0};
  std::vector<double> tol_values{1e-2, 1e-5};
  int n_cells = 150;
  double t_end = 0.5;
  double h_init = 1e-3;
};

struct Table2Row {
  double a = 0.0;
  double tol = 0.0;
  long steps = 0;
  long rejected = 0;
  long fd_evals = 0;
  long fa_evals = 0;
  int s_max = 0;
  double linf_error = 0.0;
  bool failed = false;
  std::string note;
  std::vector<StepRecord> trace;
};

/// Adaptive runs on the periodic linear advection-diffusion benchmark, one
/// row per (a, tol) pair, errors measured against the Fourier oracle at t_end.
/// Driver failures are recorded per row without aborting the batch.
std::vector<Table2Row> run_table2(const Table2Options& options);

void write_table2_csv(const std::vector<Table2Row>& rows, std::ostream& out);
void write_table2_json(const std::vector<Table2Row>& rows, std::ostream& out);

struct ConvergenceLevel {
  long n_steps = 0;
  double h = 0.0;
  int s = 0;
  double eta = 0.0;
  double linf_error = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceLevel> levels;
  double slope = 0.0;
  bool exact = false;  // all errors at rounding level; slope meaningless
};

struct ConvergenceOptions {
  Scheme scheme = Scheme::arkc;
  int levels = 5;
  long n_steps_coarsest = 64;
  double t_start = 0.0;
  double t_end = 0.5;
};

using OracleFn = std::function<std::vector<double>(std::span<const double>, double)>;

/// Fixed-step runs over halving h with per-level stage selection; least
/// squares slope of log error against log h.
ConvergenceReport run_convergence(const SplitOdeProblem& problem, std::span<const double> y0,
                                  const OracleFn& oracle, const ConvergenceOptions& options);

ConvergenceReport run_convergence_linear_ad(int n_cells, double advection,
                                            const ConvergenceOptions& options);
ConvergenceReport run_convergence_burgers(const ConvergenceOptions& options);

void write_convergence_csv(const ConvergenceReport& report, std::ostream& out);
void write_convergence_json(const ConvergenceReport& report, std::ostream& out);

struct CostCurveRow {
  double tol = 0.0;
  double linf_error = 0.0;
  long fd_evals = 0;
  long fa_evals = 0;
  long steps = 0;
};

/// Adaptive Burgers runs over a tolerance sweep; errors against the
/// Dormand-Prince reference.
std::vector<CostCurveRow> run_cost_curve(const std::vector<double>& tolerances, int n_cells = 100,
                                         double t_end = 0.5);

void write_cost_curve_csv(const std::vector<CostCurveRow>& rows, std::ostream& out);
void write_cost_curve_json(const std::vector<CostCurveRow>& rows, std::ostream& out);

struct TableCheckRow {
  std::string band;
  double curve_c = 0.0;
  int s_edge = 0;
  double eta = 0.0;
  bool pass = false;
};

/// verify_table_entry at the upper edge of every stage band of the given
/// schedules. eta_scale deliberately rescales the damping (negative controls).
std::vector<TableCheckRow> verify_tables(std::span<const RatioBand> table,
                                         double eta_scale = 1.0);

/// Same over the built-in damping schedules.
std::vector<TableCheckRow> verify_all_tables(double eta_scale = 1.0);

void write_table_checks_csv(const std::vector<TableCheckRow>& rows, std::ostream& out);

}  // namespace arkc
