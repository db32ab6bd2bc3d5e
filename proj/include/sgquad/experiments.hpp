#pragma once

// Experiment drivers behind the CLI subcommands: semigroup runs against
// exact pullbacks, convergence sweeps, bound sweeps, planner envelopes,
// and the resolvent discretization-cost study. Each driver returns typed
// results; the cmd_* wrappers serialize them as CSV.

#include <iosfwd>
#include <string>
#include <vector>

#include "sgquad/config.hpp"
#include "sgquad/contour.hpp"
#include "sgquad/discretize.hpp"

namespace sgq::experiments {

/// Solver breakdown or infeasible plan (CLI exit code 3).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Contour-scheme parameters as configured; h and/or N may be deferred
/// to the tolerance-based planner ("auto").
struct SchemeSpec {
  EvenOrder m = EvenOrder(2);
  double delta = 1.0;
  double h = 0.0;       // used when h_auto is false
  long n_half = 0;      // used when n_auto is false
  bool h_auto = false;
  bool n_auto = false;
  double eps = 0.0;     // target tolerance for the auto path
  double horizon = 1.0  ;  // T
};

/// One semigroup propagation compared against the exact pullback.
struct RunResult {
  ContourPlan plan;
  double graph_norm = 0.0;
  double max_residual = 0.0;
  bool residual_warning = false;
  std::vector<double> t, error, bound, e_disc, e_trunc;
  std::vector<long> node_index;
  std::vector<std::complex<double>> node_z;
  std::vector<double> node_residual, node_apost;
};

/// Error-vs-N sweep at fixed time for one or more orders m.
struct ConvergeResult {
  struct Point {
    int m;
    long n_half;
    double h, error, bound, graph_norm;
  };
  std::vector<Point> points;
  struct Slope {
    int m;
    double slope;
    int points_used;
  };
  std::vector<Slope> slopes;  // empty when a sweep has a single N
};

/// Minimal Chebyshev degree reaching a target relative residual, per
/// contour location; capped searches report the cap.
struct ContourCostResult {
  struct Row {
    double delta;
    double eps;
    long n_min;     // smallest ladder degree meeting eps, or the cap
    bool capped;    // tolerance not reached within the ladder
    double residual;  // relative residual at n_min
  };
  std::vector<Row> rows;
  // Resolvent profiles [R_A(delta) g](y) on a uniform grid.
  std::vector<double> profile_delta, profile_y, profile_re, profile_im;
};

/// Planned-vs-optimized spacing envelope (planner quality study).
struct EnvelopeResult {
  struct Row {
    int m;
    double eps;
    double h_planned, budget_planned;
    long n_half;
    double h_optimized, budget_optimized;
  };
  std::vector<Row> rows;
};

/// Least-squares slope of log(error) vs log(N) over the decade above the
/// solver floor (points with error >= floor_factor * min error).
double fit_slope(const std::vector<double>& n, const std::vector<double>& err,
                 double floor_factor = 10.0, int* points_used = nullptr);

/// Observables fixed across experiments: sin(pi x)(1-x^2), 1-x^2,
/// exp(-2x^2 - y^2/2).
double observable_example1(double x);
double observable_example2(double x);
double observable_example34(double x, double y);

/// Velocity fields of the four example systems (1D / componentwise 2D).
double velocity_example1(double x);
double velocity_example2(double x);

/// Generator backends for the four examples at the given resolution.
/// 1D examples: Chebyshev degree `resolution`. 2D examples: a
/// resolution x resolution grid on [-halfwidth, halfwidth]^2.
Koopman1D backend_example_1d(int example, int resolution);
Koopman2D backend_example_2d(int example, int resolution, double halfwidth);

/// Default domain half-width of the 2D examples.
double default_halfwidth(int example);

/// Propagate the example observable over the time grid with the given
/// scheme and compare against the exact pullback on the grid.
RunResult run_experiment(int example, const SchemeSpec& scheme, int resolution,
                         double halfwidth, const std::vector<double>& t_grid,
                         Strategy strategy, int workers);

/// Error-vs-N sweep at time t_eval, spacing optimized per N.
ConvergeResult converge_experiment(int example, const std::vector<int>& ms,
                                   const std::vector<long>& n_halves,
                                   double delta, int resolution, double t_eval,
                                   int workers);

/// Minimal degree ladder search plus resolvent profiles.
ContourCostResult contour_cost_experiment(const std::vector<double>& deltas,
                                          const std::vector<double>& eps_list,
                                          long n_cap,
                                          const std::vector<double>& profile_deltas);

/// Planner envelope over tolerance decades (normalized graph norms).
EnvelopeResult envelope_experiment(const std::vector<int>& ms,
                                   const std::vector<double>& eps_list,
                                   double delta, double horizon);

// CLI subcommand wrappers. Each writes CSV files under out_dir and
// returns the list of paths written.
std::vector<std::string> cmd_bounds(const Config& cfg,
                                    const std::string& out_dir);
std::vector<std::string> cmd_run(const Config& cfg, const std::string& out_dir,
                                 int workers);
std::vector<std::string> cmd_converge(const Config& cfg,
                                      const std::string& out_dir, int workers);
std::vector<std::string> cmd_contour_cost(const Config& cfg,
                                          const std::string& out_dir);
void cmd_plan(const Config& cfg, std::ostream& out);

}  // namespace sgq::experiments
