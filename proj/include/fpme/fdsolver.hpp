#pragma once

// Grunwald-Letnikov time stepping for the FPME on [x_lo, x_hi] with Dirichlet
// data, used as a convergence instrument for the exact catalog solutions.
//
//   explicit:  u^n = dt^alpha L(u^{n-1}) - sum_{k>=1} w_k u^{n-k}
//   implicit:  u^n - dt^alpha L(u^n) = - sum_{k>=1} w_k u^{n-k}   (Newton)
//
// with L(u)_j = (u^r_{j+1} - 2 u^r_j + u^r_{j-1}) / dx^2.

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "fpme/pdemodel.hpp"
#include "fpme/records.hpp"

namespace fpme {

enum class Scheme { explicit_gl, implicit_gl };
std::string_view scheme_name(Scheme s);

using SpaceTimeFunction = std::function<double(double x, double t)>;

struct SolverConfig {
  FpmeParams params{0.5, 0.5};
  double x_lo = 1.0;
  double x_hi = 2.0;
  int nx = 17;
  double t_end = 1.0;
  int nt = 16;
  std::function<double(double x)> initial;
  // Evaluated at x_lo and x_hi on every layer.
  SpaceTimeFunction boundary;
  double floor = 1e-12;
  Scheme scheme = Scheme::explicit_gl;
  // Restart protocol: layers 1..history_layers are copied from history
  // instead of computed (layer 0 from initial).
  SpaceTimeFunction history;
  int history_layers = 0;
  double newton_tol = 1e-13;
  int newton_max_iter = 60;

  double dx() const { return (x_hi - x_lo) / (nx - 1); }
  double dt() const { return t_end / nt; }
  // DomainError on inconsistent settings.
  void validate() const;
};

// Data on [x_lo, x_hi] x [0, t_end] from an exact solution. Non-finite
// values of exact at t = 0 (singular solutions) become 0.
SolverConfig config_from_exact(const FpmeParams& params, const SpaceTimeFunction& exact, double x_lo,
                               double x_hi, int nx, double t_end, int nt);

struct StabilityPrecheck {
  double ratio = 0.0;  // dt^alpha max(r u^(r-1)) 2/dx^2
  bool passed = true;
};

StabilityPrecheck stability_precheck(const SolverConfig& config);

struct GridFunction {
  std::vector<double> x;
  std::vector<double> t;
  // values[n][j] = u(x_j, t_n).
  std::vector<std::vector<double>> values;
  StabilityPrecheck precheck;
  std::vector<std::string> warnings;

  // Header "t\x,x_0,...", one row per layer.
  void write_csv(std::ostream& os) const;
};

// InstabilityError on non-finite values; AccuracyError if Newton fails.
GridFunction solve_fpme(const SolverConfig& config);

// Max-abs of the discrete operator (GL in t, centred in x, implicit form)
// applied to samples of exact over interior nodes and the layers with
// t >= t_from (all layers by default). The first GL layers carry an
// O(dt^(1-alpha)) start-up error for data vanishing linearly at t = 0.
double truncation_residual(const SolverConfig& config, const SpaceTimeFunction& exact, double t_from = 0.0);

struct ConvergenceLevel {
  int nx = 0;
  int nt = 0;
  double dx = 0.0;
  double dt = 0.0;
  double max_error = 0.0;
  bool completed = false;
  std::string failure;
};

struct ConvergenceReport {
  std::string subject;
  Scheme scheme = Scheme::implicit_gl;
  std::vector<ConvergenceLevel> levels;
  // log(e_k/e_{k+1}) / log(dt_k/dt_{k+1}) between consecutive levels.
  std::vector<double> orders;
  // log2(e_k/e_{k+1}).
  std::vector<double> log2_ratios;
  bool monotone = false;
  bool partial = false;
  std::vector<std::string> flags;

  // Smallest observed order, NaN when fewer than two levels completed.
  double controlling_order() const;
  std::vector<Record> to_records() const;
};

struct ConvergenceOptions {
  int levels = 3;
  Scheme scheme = Scheme::implicit_gl;
  // Seed the first half of the layers with exact values and measure the
  // error on t in [t_end/2, t_end] only.
  bool restart_from_exact = false;
  std::string subject = "convergence";
};

// Level k uses (nx-1) 2^k + 1 nodes and ceil(nt 2^(k/alpha)) steps, which keeps
// dt^alpha/dx^2 fixed. Levels run concurrently.
ConvergenceReport convergence_study(const SolverConfig& base, const SpaceTimeFunction& exact,
                                    const ConvergenceOptions& options = {});

}  // namespace fpme
