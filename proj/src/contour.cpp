#include "sgquad/contour.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace sgq {

namespace {
constexpr double kPi = std::numbers::pi;
}

double ResolventSampleSet::max_residual() const {
  double r = 0.0;
  for (const auto& s : samples) r = std::max(r, s.residual_norm);
  return r;
}

const ResolventSample& ResolventSampleSet::at(long k) const {
  const long n = plan.n_half;
  if (k < -n || k > n)
    throw std::out_of_range("ResolventSampleSet: index out of range");
  return samples[std::size_t(k + n)];
}

namespace contour {

std::vector<QuadratureNode> nodes(const ContourPlan& plan) {
  plan.validate();
  std::vector<QuadratureNode> out;
  out.reserve(2 * plan.n_half + 1);
  for (long k = -plan.n_half; k <= plan.n_half; ++k)
    out.push_back({k, {plan.delta, plan.h * double(k)}});
  return out;
}

std::complex<double> coefficient(const ContourPlan& plan, long k, double t) {
  plan.validate();
  if (std::abs(k) > plan.n_half)
    throw std::out_of_range("coefficient: |k| > N");
  if (!(t >= 0.0)) throw std::domain_error("coefficient: require t >= 0");
  const std::complex<double> zk(plan.delta, plan.h * double(k));
  const std::complex<double> pole(plan.delta, -plan.h * double(k));
  return plan.h / (2.0 * kPi) * std::exp(zk * t) /
         std::pow(pole, plan.m.value());
}

double coefficient_dynamic_range(const ContourPlan& plan, double t) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (long k = -plan.n_half; k <= plan.n_half; ++k) {
    const double a = std::abs(coefficient(plan, k, t));
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  return hi / lo;
}

namespace {

ResolventSampleSet precompute_impl(const GeneratorBackend& backend,
                                   const Eigen::VectorXcd& rhs_raw,
                                   const ContourPlan& plan, Strategy strategy,
                                   bool symmetric, int workers,
                                   double residual_ceiling,
                                   std::string x_tag) {
  plan.validate();
  if (rhs_raw.size() != backend.dimension())
    throw std::invalid_argument("precompute: vector size mismatch");
  if (workers < 1) workers = 1;

  // Pre-regularized mode solves against x~ = (2*delta - A)^m x.
  Eigen::VectorXcd rhs =
      strategy == Strategy::pre_regularized
          ? operators::apply_shift_poly(backend, rhs_raw, 2.0 * plan.delta,
                                        plan.m.value())
          : rhs_raw;

  const long n = plan.n_half;
  ResolventSampleSet set;
  set.plan = plan;
  set.strategy = strategy;
  set.conjugate_symmetric = symmetric;
  set.x_tag = std::move(x_tag);
  set.residual_ceiling = residual_ceiling;
  set.samples.resize(std::size_t(2 * n + 1));

  // Solve k = 0..N (or all k when symmetry is off); parallel map over a
  // shared index, order-merged by writing into the preallocated slot.
  const long k_lo = symmetric ? 0 : -n;
  std::atomic<long> next(k_lo);
  std::atomic<bool> failed(false);
  std::string failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const long k = next.fetch_add(1);
      if (k > n || failed.load()) return;
      try {
        const std::complex<double> z(plan.delta, plan.h * double(k));
        ShiftedSolve s = operators::solve_shifted(backend, z, rhs);
        set.samples[std::size_t(k + n)] =
            ResolventSample{k, std::move(s.u), s.residual_norm};
      } catch (const std::exception& e) {
        std::scoped_lock lock(failure_mutex);
        failed.store(true);
        failure = "precompute: node k=" + std::to_string(k) + ": " + e.what();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error(failure);

  if (symmetric) {
    for (long k = -n; k < 0; ++k) {
      const auto& src = set.samples[std::size_t(-k + n)];
      set.samples[std::size_t(k + n)] =
          ResolventSample{k, src.u.conjugate(), src.residual_norm};
    }
  }
  set.residual_warning = set.max_residual() > residual_ceiling;
  return set;
}

}  // namespace

ResolventSampleSet precompute(const GeneratorBackend& backend,
                              const Eigen::VectorXd& x,
                              const ContourPlan& plan, Strategy strategy,
                              int workers, double residual_ceiling,
                              std::string x_tag) {
  return precompute_impl(backend, x.cast<std::complex<double>>(), plan,
                         strategy, /*symmetric=*/true, workers,
                         residual_ceiling, std::move(x_tag));
}

ResolventSampleSet precompute(const GeneratorBackend& backend,
                              const Eigen::VectorXcd& x,
                              const ContourPlan& plan, Strategy strategy,
                              int workers, double residual_ceiling,
                              std::string x_tag) {
  const bool real_input = x.imag().isZero(0.0);
  return precompute_impl(backend, x, plan, strategy, real_input, workers,
                         residual_ceiling, std::move(x_tag));
}

Eigen::VectorXcd assemble_complex(const ResolventSampleSet& set, double t,
                                  const GeneratorBackend& backend) {
  const ContourPlan& plan = set.plan;
  plan.validate();
  if (!(t >= 0.0)) throw std::domain_error("assemble: require t >= 0");
  if (t > plan.t_max)
    std::cerr << "sgq: warning: assembling at t=" << t
              << " beyond plan horizon t_max=" << plan.t_max
              << "; bounds no longer apply\n";
  if (set.samples.size() != std::size_t(2 * plan.n_half + 1))
    throw std::invalid_argument("assemble: incomplete sample set");

  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(backend.dimension());
  for (const auto& s : set.samples)
    sum += coefficient(plan, s.k, t) * s.u;
  if (set.strategy == Strategy::post_regularized)
    sum = operators::apply_shift_poly(backend, sum, 2.0 * plan.delta,
                                      plan.m.value());
  return sum;
}

Eigen::VectorXd assemble(const ResolventSampleSet& set, double t,
                         const GeneratorBackend& backend, double imag_tol) {
  Eigen::VectorXcd sum = assemble_complex(set, t, backend);
  const double norm = operators::sup_norm(sum);
  const double imag_norm =
      sum.imag().size() == 0 ? 0.0 : sum.imag().cwiseAbs().maxCoeff();
  if (norm > 0.0 && imag_norm > imag_tol * norm)
    throw std::runtime_error(
        "assemble: imaginary residue exceeds tolerance (broken conjugate "
        "symmetry or complex input)");
  return sum.real();
}

void save_samples(const ResolventSampleSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_samples: cannot open " + path);
  char buf[64];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "sgq-samples,1\n";
  out << fmt(set.plan.delta) << ',' << fmt(set.plan.h) << ','
      << set.plan.n_half << ',' << set.plan.m.value() << ','
      << fmt(set.plan.t_max) << ','
      << (set.strategy == Strategy::pre_regularized ? "pre" : "post") << ','
      << (set.conjugate_symmetric ? 1 : 0) << ',' << set.x_tag << ','
      << fmt(set.residual_ceiling) << '\n';
  for (const auto& s : set.samples) {
    out << s.k << ',' << fmt(s.residual_norm);
    for (Eigen::Index i = 0; i < s.u.size(); ++i)
      out << ',' << fmt(s.u[i].real()) << ',' << fmt(s.u[i].imag());
    out << '\n';
  }
}

ResolventSampleSet load_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_samples: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("sgq-samples,", 0) != 0)
    throw std::runtime_error("load_samples: bad header");
  if (!std::getline(in, line))
    throw std::runtime_error("load_samples: missing metadata");
  std::stringstream meta(line);
  std::string tok;
  auto next = [&]() {
    if (!std::getline(meta, tok, ','))
      throw std::runtime_error("load_samples: truncated metadata");
    return tok;
  };
  const double delta = std::stod(next());
  const double h = std::stod(next());
  const long n = std::stol(next());
  const int m = std::stoi(next());
  const double t_max = std::stod(next());
  const std::string strat = next();
  const bool symmetric = std::stoi(next()) != 0;
  const std::string x_tag = next();
  const double ceiling = std::stod(next());

  ResolventSampleSet set{ContourPlan{delta, h, n, EvenOrder(m), t_max},
                         strat == "pre" ? Strategy::pre_regularized
                                        : Strategy::post_regularized,
                         symmetric,
                         x_tag,
                         ceiling,
                         false,
                         {}};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::vector<double> vals;
    std::string cell;
    std::getline(row, cell, ',');
    const long k = std::stol(cell);
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.empty() || vals.size() % 2 != 1)
      throw std::runtime_error("load_samples: malformed sample row");
    ResolventSample s;
    s.k = k;
    s.residual_norm = vals[0];
    s.u.resize(Eigen::Index((vals.size() - 1) / 2));
    for (Eigen::Index i = 0; i < s.u.size(); ++i)
      s.u[i] = {vals[1 + 2 * i], vals[2 + 2 * i]};
    set.samples.push_back(std::move(s));
  }
  if (set.samples.size() != std::size_t(2 * n + 1))
    throw std::runtime_error("load_samples: sample count mismatch");
  set.residual_warning = set.max_residual() > ceiling;
  return set;
}

}  // namespace contour
}  // namespace sgq
