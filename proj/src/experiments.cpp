#include "sgquad/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>

#include "sgquad/flows.hpp"

namespace sgq::experiments {
namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream csv_open(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // LF endings everywhere
  if (!out) throw NumericalError("cannot open output file: " + path);
  out << "# sgquad 1\n";
  return out;
}

constexpr double kPi = std::numbers::pi;

// Spacing minimizing the second-order pole-scheme budget at fixed N
// (same golden-section protocol as params::optimize_spacing, applied to
// the pole-parameterized bounds).
double optimize_spacing_2(long n_half, double delta, double a, double t,
                          const SemigroupConstants& c, double graph_norm) {
  auto total = [&](double logh) {
    double h = std::exp(logh);
    ErrorBudget b = bounds::total_budget_2(c, delta, a, t, h, n_half, graph_norm);
    return b.total;
  };
  double lo = std::log(1e-4 * delta), hi = std::log(10.0 * delta);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = total(x1), f2 = total(x2);
  if (!std::isfinite(f1) && !std::isfinite(f2)) {
    // Dense probe fallback: the budget may be infinite over most of the
    // bracket under extreme parameters.
    double best = lo, fbest = total(lo);
    for (int i = 1; i <= 100; ++i) {
      double x = lo + (hi - lo) * i / 100.0;
      double f = total(x);
      if (f < fbest) fbest = f, best = x;
    }
    lo = std::max(lo, best - (hi - lo) / 100.0);
    hi = std::min(hi, best + (hi - lo) / 100.0);
    x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    f1 = total(x1), f2 = total(x2);
  }
  while (hi - lo > 1e-6) {
    if (f1 < f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = total(x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = total(x2);
    }
  }
  return std::exp((lo + hi) / 2.0);
}

Eigen::VectorXd observable_grid_1d(int example, const Eigen::VectorXd& x) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    g[i] = example == 1 ? observable_example1(x[i]) : observable_example2(x[i]);
  return g;
}

Eigen::VectorXd observable_grid_2d(const Koopman2D& backend) {
  const auto& xs = backend.xgrid();
  const auto& ys = backend.ygrid();
  Eigen::VectorXd g(xs.size() * ys.size());
  for (int i = 0; i < xs.size(); ++i)
    for (int j = 0; j < ys.size(); ++j)
      g[backend.flat_index(i, j)] = observable_example34(xs[i], ys[j]);
  return g;
}

Eigen::VectorXd exact_pullback_1d(int example, const Eigen::VectorXd& x,
                                  double t) {
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double phi = example == 1 ? flows::flow_example1(x[i], t)
                              : flows::flow_example2(x[i], t);
    out[i] = example == 1 ? observable_example1(phi) : observable_example2(phi);
  }
  return out;
}

Eigen::VectorXd exact_pullback_2d(int example, const Koopman2D& backend,
                                  double t) {
  const auto& xs = backend.xgrid();
  const auto& ys = backend.ygrid();
  Eigen::VectorXd out(xs.size() * ys.size());
  for (int i = 0; i < xs.size(); ++i)
    for (int j = 0; j < ys.size(); ++j) {
      Eigen::Vector2d p(xs[i], ys[j]);
      Eigen::Vector2d phi = example == 3 ? flows::flow_example3(p, t)
                                         : flows::flow_example4(p, t);
      out[backend.flat_index(i, j)] = observable_example34(phi[0], phi[1]);
    }
  return out;
}

ContourPlan resolve_plan(const SchemeSpec& s, const SemigroupConstants& c,
                         double graph_norm) {
  ContourPlan p;
  p.delta = s.delta;
  p.m = s.m;
  p.t_max = s.horizon;
  if (s.h_auto || s.n_auto) {
    if (!(s.eps > 0.0))
      throw ConfigError("scheme with h=auto or N=auto needs a tolerance");
  }
  p.h = s.h_auto
            ? params::spacing_for_tolerance(s.eps, s.delta, s.m, s.horizon, c,
                                            graph_norm)
            : s.h;
  p.n_half = s.n_auto
                 ? params::nodes_for_tolerance(s.eps, s.delta, s.m, s.horizon,
                                               c, graph_norm, p.h)
                 : s.n_half;
  p.validate();
  return p;
}

void fill_run_result(RunResult& r, const ResolventSampleSet& samples,
                     const GeneratorBackend& backend,
                     const std::vector<double>& t_grid,
                     const std::function<Eigen::VectorXd(double)>& exact) {
  const ContourPlan& p = r.plan;
  r.max_residual = samples.max_residual();
  r.residual_warning = samples.residual_warning;
  for (const auto& s : samples.samples) {
    r.node_index.push_back(s.k);
    r.node_z.push_back({p.delta, p.h * double(s.k)});
    r.node_residual.push_back(s.residual_norm);
    r.node_apost.push_back(operators::aposteriori_bound(s.residual_norm, p.delta));
  }
  for (double t : t_grid) {
    Eigen::VectorXd approx = contour::assemble(samples, t, backend);
    Eigen::VectorXd ref = exact(t);
    ErrorBudget b = bounds::total_budget_m(backend.constants(), p.delta, p.m,
                                           t, p.h, p.n_half, r.graph_norm);
    r.t.push_back(t);
    r.error.push_back(operators::sup_norm(Eigen::VectorXd(approx - ref)));
    r.bound.push_back(b.total);
    r.e_disc.push_back(b.e_disc);
    r.e_trunc.push_back(b.e_trunc);
  }
}

std::vector<double> parse_t_grid(const Config& cfg) {
  std::vector<double> t = cfg.get_list("run", "t_values");
  if (!t.empty()) return t;
  double t0 = cfg.get_double_or("run", "t_start", 0.0);
  double t1 = cfg.get_double("run", "t_stop");
  long count = cfg.get_long_or("run", "t_count", 11);
  if (count < 1) throw ConfigError("[run] t_count must be >= 1");
  if (count == 1) return {t1};
  for (long i = 0; i < count; ++i)
    t.push_back(t0 + (t1 - t0) * double(i) / double(count - 1));
  return t;
}

SchemeSpec parse_scheme(const Config& cfg) {
  SchemeSpec s;
  s.m = EvenOrder(static_cast<int>(cfg.get_long("scheme", "m")));
  s.delta = cfg.get_double("scheme", "delta");
  s.h_auto = cfg.is_auto("scheme", "h");
  s.n_auto = cfg.is_auto("scheme", "N");
  if (!s.h_auto && cfg.has("scheme", "h")) s.h = cfg.get_double("scheme", "h");
  if (!s.n_auto && cfg.has("scheme", "N"))
    s.n_half = cfg.get_long("scheme", "N");
  if (!s.h_auto && !(s.h > 0.0))
    throw ConfigError("[scheme] h must be positive or auto");
  if (!s.n_auto && s.n_half < 1)
    throw ConfigError("[scheme] N must be >= 1 or auto");
  s.eps = cfg.get_double_or("scheme", "epsilon", 0.0);
  s.horizon = cfg.get_double("scheme", "T");
  if ((s.h_auto || s.n_auto) && !(s.eps > 0.0))
    throw ConfigError("[scheme] h=auto/N=auto requires epsilon");
  return s;
}

int parse_example(const Config& cfg) {
  long ex = cfg.get_long("experiment", "example");
  if (ex < 1 || ex > 4)
    throw ConfigError("[experiment] example must be 1, 2, 3 or 4");
  return static_cast<int>(ex);
}

Strategy parse_strategy(const Config& cfg) {
  std::string s = cfg.get_or("run", "strategy", "pre");
  if (s == "pre") return Strategy::pre_regularized;
  if (s == "post") return Strategy::post_regularized;
  throw ConfigError("[run] strategy must be 'pre' or 'post'");
}

std::vector<int> to_int_list(const std::vector<double>& v) {
  std::vector<int> out;
  for (double x : v) out.push_back(static_cast<int>(x));
  return out;
}

std::vector<long> to_long_list(const std::vector<double>& v) {
  std::vector<long> out;
  for (double x : v) out.push_back(static_cast<long>(x));
  return out;
}

// A present key always wins, even with an empty value (an empty sweep);
// only an absent key falls back to the default.
std::vector<double> list_or(const Config& cfg, const std::string& section,
                            const std::string& key,
                            std::vector<double> fallback) {
  return cfg.has(section, key) ? cfg.get_list(section, key)
                               : std::move(fallback);
}

}  // namespace

double observable_example1(double x) {
  return std::sin(kPi * x) * (1.0 - x * x);
}

double observable_example2(double x) { return 1.0 - x * x; }

double observable_example34(double x, double y) {
  return std::exp(-2.0 * x * x - 0.5 * y * y);
}

double velocity_example1(double x) { return -x; }

double velocity_example2(double x) { return 2.0 * x - 8.0 * x * x * x; }

Koopman1D backend_example_1d(int example, int resolution) {
  DiscreteField f;
  f.dim = 1;
  f.degree = resolution;
  f.velocity = example == 1 ? velocity_example1 : velocity_example2;
  return Koopman1D(f);
}

Koopman2D backend_example_2d(int example, int resolution, double halfwidth) {
  DiscreteField f;
  f.dim = 2;
  f.n1 = f.n2 = resolution;
  f.lx = f.ly = halfwidth;
  if (example == 3) {
    f.velocity_x = [](double, double y) { return y; };
    f.velocity_y = [](double x, double) { return -x; };
  } else {
    f.velocity_x = [](double x, double) { return velocity_example2(x); };
    f.velocity_y = [](double, double y) { return velocity_example2(y); };
  }
  return Koopman2D(f);
}

double default_halfwidth(int example) { return example == 3 ? 3.0 : 1.0; }

double fit_slope(const std::vector<double>& n, const std::vector<double>& err,
                 double floor_factor, int* points_used) {
  double floor = *std::min_element(err.begin(), err.end()) * floor_factor;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (size_t i = 0; i < n.size(); ++i) {
    if (!(err[i] >= floor) || !(err[i] > 0.0)) continue;
    double x = std::log(n[i]), y = std::log(err[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++count;
  }
  if (points_used) *points_used = count;
  if (count < 2) return std::numeric_limits<double>::quiet_NaN();
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

RunResult run_experiment(int example, const SchemeSpec& scheme, int resolution,
                         double halfwidth, const std::vector<double>& t_grid,
                         Strategy strategy, int workers) {
  RunResult r;
  if (example == 1 || example == 2) {
    Koopman1D backend = backend_example_1d(example, resolution);
    Eigen::VectorXd g = observable_grid_1d(example, backend.nodes());
    r.graph_norm =
        operators::graph_norm(backend, g, scheme.delta, scheme.m.value());
    r.plan = resolve_plan(scheme, backend.constants(), r.graph_norm);
    ResolventSampleSet samples =
        contour::precompute(backend, g, r.plan, strategy, workers);
    fill_run_result(r, samples, backend, t_grid, [&](double t) {
      return exact_pullback_1d(example, backend.nodes(), t);
    });
  } else {
    Koopman2D backend = backend_example_2d(example, resolution, halfwidth);
    Eigen::VectorXd g = observable_grid_2d(backend);
    r.graph_norm =
        operators::graph_norm(backend, g, scheme.delta, scheme.m.value());
    r.plan = resolve_plan(scheme, backend.constants(), r.graph_norm);
    ResolventSampleSet samples =
        contour::precompute(backend, g, r.plan, strategy, workers);
    fill_run_result(r, samples, backend, t_grid, [&](double t) {
      return exact_pullback_2d(example, backend, t);
    });
  }
  return r;
}

ConvergeResult converge_experiment(int example, const std::vector<int>& ms,
                                   const std::vector<long>& n_halves,
                                   double delta, int resolution, double t_eval,
                                   int workers) {
  ConvergeResult result;
  Koopman1D backend = backend_example_1d(example, resolution);
  Eigen::VectorXd g = observable_grid_1d(example, backend.nodes());
  Eigen::VectorXd exact = exact_pullback_1d(example, backend.nodes(), t_eval);
  for (int m_raw : ms) {
    EvenOrder m(m_raw);
    double norm = operators::graph_norm(backend, g, delta, m.value());
    std::vector<double> ns, errs;
    for (long n_half : n_halves) {
      ContourPlan p;
      p.delta = delta;
      p.m = m;
      p.n_half = n_half;
      p.t_max = t_eval;
      p.h = params::optimize_spacing(n_half, delta, m, t_eval,
                                     backend.constants(), norm);
      ResolventSampleSet samples = contour::precompute(
          backend, g, p, Strategy::pre_regularized, workers);
      Eigen::VectorXd approx = contour::assemble(samples, t_eval, backend);
      double err = operators::sup_norm(Eigen::VectorXd(approx - exact));
      ErrorBudget b = bounds::total_budget_m(backend.constants(), delta, m,
                                             t_eval, p.h, n_half, norm);
      result.points.push_back({m.value(), n_half, p.h, err, b.total, norm});
      ns.push_back(double(n_half));
      errs.push_back(err);
    }
    if (ns.size() > 1) {
      int used = 0;
      double slope = fit_slope(ns, errs, 10.0, &used);
      result.slopes.push_back({m.value(), slope, used});
    }
  }
  return result;
}

ContourCostResult contour_cost_experiment(
    const std::vector<double>& deltas, const std::vector<double>& eps_list,
    long n_cap, const std::vector<double>& profile_deltas) {
  ContourCostResult result;
  // Fine uniform evaluation grid for the interpolated residual
  // z u - F u' - g; the observable has unit sup-norm.
  const int fine = 2001;
  Eigen::VectorXd yfine(fine);
  for (int i = 0; i < fine; ++i) yfine[i] = -1.0 + 2.0 * i / (fine - 1);
  Eigen::VectorXd f_fine(fine), g_fine(fine);
  for (int i = 0; i < fine; ++i) {
    f_fine[i] = velocity_example2(yfine[i]);
    g_fine[i] = observable_example2(yfine[i]);
  }

  std::vector<long> ladder;
  for (long n : {8, 16, 32, 48, 64, 96, 128, 192, 256, 384, 512, 768, 1024})
    if (n <= n_cap) ladder.push_back(n);
  if (ladder.empty() || ladder.back() != n_cap) ladder.push_back(n_cap);

  // Collocation solve of (delta - F d/dy)u = g at degree n; returns the
  // nodes and nodal values for interpolation.
  auto solve_resolvent = [&](long n, double delta) {
    Eigen::VectorXd x = chebyshev_points(int(n));
    Eigen::MatrixXd d = chebyshev_diff_matrix(int(n));
    Eigen::VectorXd f(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) f[i] = velocity_example2(x[i]);
    Eigen::MatrixXcd shifted = (-(f.asDiagonal() * d)).cast<std::complex<double>>();
    shifted.diagonal().array() += delta;
    Eigen::VectorXcd u = shifted.partialPivLu().solve(
        observable_grid_1d(2, x).cast<std::complex<double>>());
    Eigen::VectorXcd du = d.cast<std::complex<double>>() * u;
    return std::make_tuple(std::move(x), std::move(u), std::move(du));
  };

  auto relative_residual = [&](long n, double delta) {
    auto [x, u, du] = solve_resolvent(n, delta);
    Eigen::VectorXcd uf = barycentric_interpolate(x, u, yfine);
    Eigen::VectorXcd duf = barycentric_interpolate(x, du, yfine);
    Eigen::VectorXcd resid = delta * uf -
                             duf.cwiseProduct(f_fine.cast<std::complex<double>>()) -
                             g_fine.cast<std::complex<double>>();
    return operators::sup_norm(resid);
  };

  for (double delta : deltas) {
    std::vector<bool> found(eps_list.size(), false);
    std::vector<ContourCostResult::Row> rows(eps_list.size());
    for (size_t e = 0; e < eps_list.size(); ++e)
      rows[e] = {delta, eps_list[e], ladder.back(), true, 0.0};
    for (long n : ladder) {
      double res = relative_residual(n, delta);
      bool all_found = true;
      for (size_t e = 0; e < eps_list.size(); ++e) {
        if (!found[e]) {
          if (res <= eps_list[e]) {
            rows[e] = {delta, eps_list[e], n, false, res};
            found[e] = true;
          } else {
            rows[e].residual = res;  // last observed value at the cap
          }
        }
        all_found = all_found && found[e];
      }
      if (all_found) break;
    }
    for (auto& row : rows) result.rows.push_back(row);
  }

  const int profile_points = 1001;
  Eigen::VectorXd yq(profile_points);
  for (int i = 0; i < profile_points; ++i)
    yq[i] = -1.0 + 2.0 * i / (profile_points - 1);
  for (double delta : profile_deltas) {
    auto [x, u, du] = solve_resolvent(512, delta);
    Eigen::VectorXcd prof = barycentric_interpolate(x, u, yq);
    for (int i = 0; i < profile_points; ++i) {
      result.profile_delta.push_back(delta);
      result.profile_y.push_back(yq[i]);
      result.profile_re.push_back(prof[i].real());
      result.profile_im.push_back(prof[i].imag());
    }
  }
  return result;
}

EnvelopeResult envelope_experiment(const std::vector<int>& ms,
                                   const std::vector<double>& eps_list,
                                   double delta, double horizon) {
  EnvelopeResult result;
  SemigroupConstants c;
  for (int m_raw : ms) {
    EvenOrder m(m_raw);
    double norm = std::pow(2.0, m.value() - 2);
    for (double eps : eps_list) {
      // m = 2 at tight tolerances needs N well beyond the default cap;
      // the budget evaluation itself stays cheap, so raise it here.
      ContourPlan p =
          params::plan(eps, delta, m, horizon, c, norm, long(1e12));
      ErrorBudget planned = bounds::total_budget_m(c, delta, m, horizon, p.h,
                                                   p.n_half, norm);
      double h_opt =
          params::optimize_spacing(p.n_half, delta, m, horizon, c, norm);
      ErrorBudget optimized = bounds::total_budget_m(c, delta, m, horizon,
                                                     h_opt, p.n_half, norm);
      result.rows.push_back({m.value(), eps, p.h, planned.total, p.n_half,
                             h_opt, optimized.total});
    }
  }
  return result;
}

std::vector<std::string> cmd_bounds(const Config& cfg,
                                    const std::string& out_dir) {
  std::string prefix = cfg.get_or("output", "prefix", "bounds");
  std::string sweep = cfg.get_or("bounds", "sweep", "nodes");
  SemigroupConstants c;
  c.growth_constant = cfg.get_double_or("bounds", "M", 1.0);
  std::vector<std::string> written;

  if (sweep == "nodes") {
    // Second-order scheme, fixed vs optimized spacing, swept over N.
    double t = cfg.get_double_or("bounds", "t", 1.0);
    double delta = cfg.get_double_or("bounds", "delta", 2.0);
    double a = cfg.get_double_or("bounds", "a", delta);
    double norm = cfg.get_double_or("bounds", "norm", 1.0);
    double h_fixed = cfg.get_double_or("bounds", "h", 0.5);
    std::vector<double> default_n;
    for (double lg = 0.5; lg <= 4.0 + 1e-9; lg += 0.125)
      default_n.push_back(std::round(std::pow(10.0, lg)));
    std::vector<long> n_values =
        to_long_list(list_or(cfg, "bounds", "n_values", default_n));
    std::string path = out_dir + "/" + prefix + "_nodes.csv";
    auto out = csv_open(path);
    out << "mode,N,h,e_disc,e_trunc,total,M,delta,a,t,graph_norm\n";
    for (long n : n_values) {
      for (int mode = 0; mode < 2; ++mode) {
        double h = mode == 0 ? h_fixed : optimize_spacing_2(n, delta, a, t, c, norm);
        ErrorBudget b = bounds::total_budget_2(c, delta, a, t, h, n, norm);
        out << (mode == 0 ? "fixed," : "optimized,") << n << ',' << fmt(h)
            << ',' << fmt(b.e_disc) << ',' << fmt(b.e_trunc) << ','
            << fmt(b.total) << ',' << fmt(c.growth_constant) << ','
            << fmt(delta) << ',' << fmt(a) << ',' << fmt(t) << ','
            << fmt(norm) << '\n';
      }
    }
    written.push_back(path);
  } else if (sweep == "pole") {
    // Second-order scheme swept over the pole offset a at several N.
    double t = cfg.get_double_or("bounds", "t", 1.0);
    double delta = cfg.get_double_or("bounds", "delta", 3.0);
    std::vector<long> n_values = to_long_list(
        list_or(cfg, "bounds", "n_values", {100, 200, 400, 800}));
    std::vector<double> default_a;
    for (double lg = -2.0; lg <= 2.0 + 1e-9; lg += 1.0 / 30.0)
      default_a.push_back(std::pow(10.0, lg));
    std::vector<double> a_values = list_or(cfg, "bounds", "a_values", default_a);
    std::string path = out_dir + "/" + prefix + "_pole.csv";
    auto out = csv_open(path);
    out << "a,N,h,e_disc,e_trunc,total,M,delta,t,graph_norm\n";
    for (long n : n_values) {
      for (double a : a_values) {
        double norm = (delta + a) * (delta + a);
        double h = optimize_spacing_2(n, delta, a, t, c, norm);
        ErrorBudget b = bounds::total_budget_2(c, delta, a, t, h, n, norm);
        out << fmt(a) << ',' << n << ',' << fmt(h) << ',' << fmt(b.e_disc)
            << ',' << fmt(b.e_trunc) << ',' << fmt(b.total) << ','
            << fmt(c.growth_constant) << ',' << fmt(delta) << ',' << fmt(t)
            << ',' << fmt(norm) << '\n';
      }
    }
    written.push_back(path);
  } else if (sweep == "envelope") {
    double delta = cfg.get_double_or("bounds", "delta", 2.0);
    double horizon = cfg.get_double_or("bounds", "T", 1.0);
    std::vector<int> ms =
        to_int_list(list_or(cfg, "bounds", "m_values", {2, 4, 6, 8}));
    std::vector<double> default_eps;
    for (int k = 1; k <= 8; ++k) default_eps.push_back(std::pow(10.0, -k));
    std::vector<double> eps_list =
        list_or(cfg, "bounds", "eps_values", default_eps);
    EnvelopeResult env = envelope_experiment(ms, eps_list, delta, horizon);
    std::string path = out_dir + "/" + prefix + "_envelope.csv";
    auto out = csv_open(path);
    out << "m,epsilon,N,h_planned,budget_planned,h_optimized,"
           "budget_optimized,M,delta,T,graph_norm\n";
    for (const auto& row : env.rows)
      out << row.m << ',' << fmt(row.eps) << ',' << row.n_half << ','
          << fmt(row.h_planned) << ',' << fmt(row.budget_planned) << ','
          << fmt(row.h_optimized) << ',' << fmt(row.budget_optimized) << ','
          << fmt(c.growth_constant) << ',' << fmt(delta) << ','
          << fmt(horizon) << ',' << fmt(std::pow(2.0, ms[0] - 2)) << '\n';
    written.push_back(path);
  } else {
    throw ConfigError("[bounds] sweep must be nodes, pole or envelope");
  }
  return written;
}

std::vector<std::string> cmd_run(const Config& cfg, const std::string& out_dir,
                                 int workers) {
  int example = parse_example(cfg);
  SchemeSpec scheme = parse_scheme(cfg);
  int resolution = int(cfg.get_long_or(
      "discretization", "resolution", example <= 2 ? 64 : 201));
  double halfwidth = cfg.get_double_or("discretization", "halfwidth",
                                       default_halfwidth(example));
  std::vector<double> t_grid = parse_t_grid(cfg);
  Strategy strategy = parse_strategy(cfg);
  std::string prefix = cfg.get_or("output", "prefix", "run");

  RunResult r =
      run_experiment(example, scheme, resolution, halfwidth, t_grid, strategy, workers);

  std::string path = out_dir + "/" + prefix + "_run.csv";
  auto out = csv_open(path);
  out << "t,error,bound,e_disc,e_trunc,M,delta,m,h,N,graph_norm\n";
  for (size_t i = 0; i < r.t.size(); ++i)
    out << fmt(r.t[i]) << ',' << fmt(r.error[i]) << ',' << fmt(r.bound[i])
        << ',' << fmt(r.e_disc[i]) << ',' << fmt(r.e_trunc[i]) << ",1,"
        << fmt(r.plan.delta) << ',' << r.plan.m.value() << ','
        << fmt(r.plan.h) << ',' << r.plan.n_half << ',' << fmt(r.graph_norm)
        << '\n';

  std::string rpath = out_dir + "/" + prefix + "_residuals.csv";
  auto rout = csv_open(rpath);
  rout << "k,z_re,z_im,residual,apost_bound\n";
  for (size_t i = 0; i < r.node_index.size(); ++i)
    rout << r.node_index[i] << ',' << fmt(r.node_z[i].real()) << ','
         << fmt(r.node_z[i].imag()) << ',' << fmt(r.node_residual[i]) << ','
         << fmt(r.node_apost[i]) << '\n';
  return {path, rpath};
}

std::vector<std::string> cmd_converge(const Config& cfg,
                                      const std::string& out_dir,
                                      int workers) {
  int example = parse_example(cfg);
  if (example > 2)
    throw ConfigError("converge supports the 1D examples (1 and 2)");
  double delta = cfg.get_double("scheme", "delta");
  double t_eval = cfg.get_double_or("converge", "t", 1.0);
  int resolution = int(cfg.get_long_or("discretization", "resolution", 64));
  std::vector<int> ms =
      to_int_list(list_or(cfg, "converge", "m_values", {2, 4, 6}));
  std::vector<long> n_values = to_long_list(
      list_or(cfg, "converge", "n_values", {10, 20, 40, 80, 160, 320}));
  std::string prefix = cfg.get_or("output", "prefix", "converge");

  ConvergeResult res = converge_experiment(example, ms, n_values, delta,
                                           resolution, t_eval, workers);

  std::string path = out_dir + "/" + prefix + "_converge.csv";
  auto out = csv_open(path);
  out << "m,N,h,error,bound,M,delta,t,graph_norm\n";
  for (const auto& p : res.points)
    out << p.m << ',' << p.n_half << ',' << fmt(p.h) << ',' << fmt(p.error)
        << ',' << fmt(p.bound) << ",1," << fmt(delta) << ',' << fmt(t_eval)
        << ',' << fmt(p.graph_norm) << '\n';

  std::string spath = out_dir + "/" + prefix + "_slopes.csv";
  auto sout = csv_open(spath);
  sout << "m,slope,points_used\n";
  for (const auto& s : res.slopes)
    sout << s.m << ',' << fmt(s.slope) << ',' << s.points_used << '\n';
  return {path, spath};
}

std::vector<std::string> cmd_contour_cost(const Config& cfg,
                                          const std::string& out_dir) {
  std::vector<double> deltas = list_or(cfg, "contour-cost", "delta_values",
                                       {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  std::vector<double> eps_list =
      list_or(cfg, "contour-cost", "eps_values", {1e-4, 1e-8});
  long n_cap = cfg.get_long_or("contour-cost", "n_cap", 1024);
  std::vector<double> profile_deltas =
      list_or(cfg, "contour-cost", "profile_deltas", {2, 5, 10});
  std::string prefix = cfg.get_or("output", "prefix", "cost");

  ContourCostResult res =
      contour_cost_experiment(deltas, eps_list, n_cap, profile_deltas);

  std::string path = out_dir + "/" + prefix + "_cost.csv";
  auto out = csv_open(path);
  out << "delta,eps,n_min,capped,residual\n";
  for (const auto& row : res.rows)
    out << fmt(row.delta) << ',' << fmt(row.eps) << ',' << row.n_min << ','
        << (row.capped ? 1 : 0) << ',' << fmt(row.residual) << '\n';

  std::string ppath = out_dir + "/" + prefix + "_profiles.csv";
  auto pout = csv_open(ppath);
  pout << "delta,y,u_re,u_im\n";
  for (size_t i = 0; i < res.profile_y.size(); ++i)
    pout << fmt(res.profile_delta[i]) << ',' << fmt(res.profile_y[i]) << ','
         << fmt(res.profile_re[i]) << ',' << fmt(res.profile_im[i]) << '\n';
  return {path, ppath};
}

void cmd_plan(const Config& cfg, std::ostream& out) {
  double eps = cfg.get_double("scheme", "epsilon");
  double delta = cfg.get_double("scheme", "delta");
  EvenOrder m(static_cast<int>(cfg.get_long("scheme", "m")));
  double horizon = cfg.get_double("scheme", "T");
  double norm = cfg.get_double_or("scheme", "norm", 1.0);
  SemigroupConstants c;
  c.growth_constant = cfg.get_double_or("scheme", "M", 1.0);

  ContourPlan p = params::plan(eps, delta, m, horizon, c, norm);
  ErrorBudget b =
      bounds::total_budget_m(c, delta, m, horizon, p.h, p.n_half, norm);
  out << "delta = " << fmt(p.delta) << "\n"
      << "h = " << fmt(p.h) << "\n"
      << "N = " << p.n_half << "\n"
      << "m = " << p.m.value() << "\n"
      << "T = " << fmt(p.t_max) << "\n"
      << "nodes = " << 2 * p.n_half + 1 << "\n"
      << "e_disc = " << fmt(b.e_disc) << "\n"
      << "e_trunc = " << fmt(b.e_trunc) << "\n"
      << "budget = " << fmt(b.total) << "\n"
      << "graph_norm = " << fmt(norm) << "\n";
}

}  // namespace sgq::experiments
