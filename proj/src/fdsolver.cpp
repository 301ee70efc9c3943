#include "fpme/fdsolver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include <fmt/format.h>

#include "fpme/errors.hpp"
#include "fpme/frackernel.hpp"

namespace fpme {

namespace {

double power_r(double u, double r, double floor) { return std::pow(floor > 0.0 ? std::max(u, floor) : u, r); }

double dpower_r(double u, double r, double floor) {
  return r * std::pow(std::max(u, floor > 0.0 ? floor : std::numeric_limits<double>::min()), r - 1.0);
}

// L(u) at interior node j.
double diffusion(const std::vector<double>& u, std::size_t j, double r, double floor, double inv_dx2) {
  return (power_r(u[j + 1], r, floor) - 2.0 * power_r(u[j], r, floor) + power_r(u[j - 1], r, floor)) * inv_dx2;
}

// Solves a tridiagonal system in place (Thomas algorithm); sub[0] and sup[n-1] unused.
void solve_tridiagonal(std::vector<double>& sub, std::vector<double>& diag, std::vector<double>& sup,
                       std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = sub[i] / diag[i - 1];
    diag[i] -= m * sup[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

class Stepper {
 public:
  explicit Stepper(const SolverConfig& c)
      : c_(c),
        r_(c.params.r),
        nx_(static_cast<std::size_t>(c.nx)),
        inv_dx2_(1.0 / (c.dx() * c.dx())),
        dta_(std::pow(c.dt(), c.params.alpha)),
        w_(gl_weights(FracOrder(c.params.alpha), static_cast<std::size_t>(c.nt) + 1)),
        series_(nx_, std::vector<double>(static_cast<std::size_t>(c.nt) + 1, 0.0)) {}

  GridFunction run() {
    GridFunction g;
    const double dx = c_.dx(), dt = c_.dt();
    for (std::size_t j = 0; j < nx_; ++j) g.x.push_back(c_.x_lo + static_cast<double>(j) * dx);
    for (int n = 0; n <= c_.nt; ++n) g.t.push_back(n * dt);
    g.x.back() = c_.x_hi;
    g.t.back() = c_.t_end;
    x_ = g.x;

    std::vector<double> layer(nx_);
    for (std::size_t j = 0; j < nx_; ++j) layer[j] = c_.initial(g.x[j]);
    apply_floor(layer);
    store(0, layer);
    g.values.push_back(layer);

    for (int n = 1; n <= c_.nt; ++n) {
      const std::size_t un = static_cast<std::size_t>(n);
      if (n <= c_.history_layers) {
        for (std::size_t j = 0; j < nx_; ++j) layer[j] = c_.history(g.x[j], g.t[un]);
      } else {
        const auto hist = history(un);
        if (c_.scheme == Scheme::explicit_gl)
          explicit_step(layer, hist);
        else
          implicit_step(layer, hist, un, g.t[un], g.values);
        layer.front() = c_.boundary(c_.x_lo, g.t[un]);
        layer.back() = c_.boundary(c_.x_hi, g.t[un]);
      }
      for (double v : layer)
        if (!std::isfinite(v) || std::abs(v) > 1e300)
          throw InstabilityError(fmt::format("non-finite value on layer {}", n), un);
      apply_floor(layer);
      store(un, layer);
      g.values.push_back(layer);
    }
    return g;
  }

 private:
  void apply_floor(std::vector<double>& layer) const {
    if (c_.floor > 0.0)
      for (double& v : layer) v = std::max(v, c_.floor);
  }

  void store(std::size_t n, const std::vector<double>& layer) {
    for (std::size_t j = 0; j < nx_; ++j) series_[j][n] = layer[j];
  }

  // sum_{k>=1} w_k u^{n-k}_j for every node (slot n is still 0).
  std::vector<double> history(std::size_t n) const {
    std::vector<double> h(nx_);
    for (std::size_t j = 0; j < nx_; ++j) h[j] = gl_history_sum(w_, series_[j], n);
    return h;
  }

  void explicit_step(std::vector<double>& layer, const std::vector<double>& hist) const {
    const std::vector<double> prev = layer;
    for (std::size_t j = 1; j + 1 < nx_; ++j) layer[j] = dta_ * diffusion(prev, j, r_, c_.floor, inv_dx2_) - hist[j];
  }

  double residual_norm(const std::vector<double>& u, const std::vector<double>& hist,
                       std::vector<double>* out) const {
    double m = 0.0;
    for (std::size_t j = 1; j + 1 < nx_; ++j) {
      const double f = u[j] - dta_ * diffusion(u, j, r_, c_.floor, inv_dx2_) + hist[j];
      if (out) (*out)[j - 1] = f;
      m = std::max(m, std::abs(f));
    }
    return m;
  }

  void implicit_step(std::vector<double>& layer, const std::vector<double>& hist, std::size_t n, double t,
                     const std::vector<std::vector<double>>& done) const {
    std::vector<double> u(nx_);
    u.front() = c_.boundary(c_.x_lo, t);
    u.back() = c_.boundary(c_.x_hi, t);
    if (n == 1) {
      for (std::size_t j = 1; j + 1 < nx_; ++j) {
        const double s = static_cast<double>(j) / static_cast<double>(nx_ - 1);
        u[j] = (1.0 - s) * u.front() + s * u.back();
      }
    } else {
      for (std::size_t j = 1; j + 1 < nx_; ++j) u[j] = done.back()[j];
    }
    const std::size_t m = nx_ - 2;
    std::vector<double> f(m), sub(m), diag(m), sup(m), trial(nx_);
    double norm = residual_norm(u, hist, &f);
    for (int it = 0; it < c_.newton_max_iter; ++it) {
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + 1;
        diag[i] = 1.0 + 2.0 * dta_ * inv_dx2_ * dpower_r(u[j], r_, c_.floor);
        sub[i] = -dta_ * inv_dx2_ * dpower_r(u[j - 1], r_, c_.floor);
        sup[i] = -dta_ * inv_dx2_ * dpower_r(u[j + 1], r_, c_.floor);
      }
      sub[0] = 0.0;
      sup[m - 1] = 0.0;
      std::vector<double> delta = f;
      solve_tridiagonal(sub, diag, sup, delta);
      double size = 0.0, scale = 1.0;
      for (std::size_t i = 0; i < m; ++i) {
        size = std::max(size, std::abs(delta[i]));
        scale = std::max(scale, std::abs(u[i + 1]));
      }
      // Backtracking on the residual max-norm.
      double step = 1.0;
      double trial_norm = norm;
      for (int k = 0; k < 40; ++k) {
        trial = u;
        for (std::size_t i = 0; i < m; ++i) trial[i + 1] -= step * delta[i];
        trial_norm = residual_norm(trial, hist, nullptr);
        if (trial_norm < norm || trial_norm == 0.0) break;
        step *= 0.5;
      }
      u = trial;
      norm = residual_norm(u, hist, &f);
      if (size * step <= c_.newton_tol * scale) {
        for (std::size_t j = 1; j + 1 < nx_; ++j) layer[j] = u[j];
        return;
      }
    }
    throw AccuracyError(fmt::format("Newton iteration did not converge on layer {}", n), norm);
  }

  const SolverConfig& c_;
  double r_;
  std::size_t nx_;
  double inv_dx2_;
  double dta_;
  std::vector<double> w_;
  std::vector<std::vector<double>> series_;
  std::vector<double> x_;
};

}  // namespace

std::string_view scheme_name(Scheme s) { return s == Scheme::explicit_gl ? "explicit" : "implicit"; }

void SolverConfig::validate() const {
  (void)FpmeParams::make(params.alpha, params.r);
  if (!(x_lo > 0.0 && x_hi > x_lo)) throw DomainError("solver needs 0 < x_lo < x_hi");
  if (nx < 3) throw DomainError("solver needs at least 3 nodes");
  if (!(t_end > 0.0)) throw DomainError("solver needs t_end > 0");
  if (nt < 1) throw DomainError("solver needs at least one step");
  if (!(floor >= 0.0)) throw DomainError("positivity floor must be >= 0");
  if (!initial || !boundary) throw DomainError("solver needs initial and boundary data");
  if (history_layers < 0 || history_layers > nt) throw DomainError("history window outside [0, nt]");
  if (history_layers > 0 && !history) throw DomainError("history window without history data");
}

SolverConfig config_from_exact(const FpmeParams& params, const SpaceTimeFunction& exact, double x_lo,
                               double x_hi, int nx, double t_end, int nt) {
  SolverConfig c;
  c.params = params;
  c.x_lo = x_lo;
  c.x_hi = x_hi;
  c.nx = nx;
  c.t_end = t_end;
  c.nt = nt;
  c.initial = [exact](double x) {
    const double v = exact(x, 0.0);
    return std::isfinite(v) ? v : 0.0;
  };
  c.boundary = exact;
  c.history = exact;
  return c;
}

StabilityPrecheck stability_precheck(const SolverConfig& c) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  const auto take = [&](double v) {
    if (v > 0.0 && std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  };
  for (int j = 0; j < c.nx; ++j) take(c.initial(c.x_lo + j * c.dx()));
  for (int n = 1; n <= c.nt; ++n) {
    take(c.boundary(c.x_lo, n * c.dt()));
    take(c.boundary(c.x_hi, n * c.dt()));
  }
  StabilityPrecheck p;
  if (hi == 0.0) return p;
  const double r = c.params.r;
  const double slope = r * std::pow(r < 1.0 ? std::max(lo, c.floor) : hi, r - 1.0);
  p.ratio = std::pow(c.dt(), c.params.alpha) * slope * 2.0 / (c.dx() * c.dx());
  p.passed = p.ratio <= 1.0;
  return p;
}

void GridFunction::write_csv(std::ostream& os) const {
  os << "t\\x";
  for (double xv : x) os << ',' << fmt::format("{:.17g}", xv);
  os << '\n';
  for (std::size_t n = 0; n < values.size(); ++n) {
    os << fmt::format("{:.17g}", t[n]);
    for (double v : values[n]) os << ',' << fmt::format("{:.17g}", v);
    os << '\n';
  }
}

GridFunction solve_fpme(const SolverConfig& config) {
  config.validate();
  const auto pre = stability_precheck(config);
  Stepper stepper(config);
  auto g = stepper.run();
  g.precheck = pre;
  if (!pre.passed && config.scheme == Scheme::explicit_gl)
    g.warnings.push_back(fmt::format("stability precheck failed: ratio {} > 1", format_number(pre.ratio)));
  return g;
}

double truncation_residual(const SolverConfig& c, const SpaceTimeFunction& exact, double t_from) {
  c.validate();
  const std::size_t nx = static_cast<std::size_t>(c.nx), nt = static_cast<std::size_t>(c.nt);
  const double dx = c.dx(), dt = c.dt();
  const double inv_dx2 = 1.0 / (dx * dx), inv_dta = std::pow(dt, -c.params.alpha);
  const auto w = gl_weights(FracOrder(c.params.alpha), nt + 1);
  std::vector<std::vector<double>> series(nx, std::vector<double>(nt + 1));
  for (std::size_t j = 0; j < nx; ++j)
    for (std::size_t n = 0; n <= nt; ++n) {
      const double v = exact(c.x_lo + static_cast<double>(j) * dx, static_cast<double>(n) * dt);
      series[j][n] = std::isfinite(v) ? v : 0.0;
    }
  double worst = 0.0;
  std::vector<double> layer(nx);
  for (std::size_t n = 1; n <= nt; ++n) {
    if (static_cast<double>(n) * dt < t_from - 1e-12 * c.t_end) continue;
    for (std::size_t j = 0; j < nx; ++j) layer[j] = series[j][n];
    for (std::size_t j = 1; j + 1 < nx; ++j) {
      const double lhs = inv_dta * gl_history_sum(w, series[j], n);
      worst = std::max(worst, std::abs(lhs - diffusion(layer, j, c.params.r, c.floor, inv_dx2)));
    }
  }
  return worst;
}

double ConvergenceReport::controlling_order() const {
  if (orders.empty()) return std::nan("");
  return *std::min_element(orders.begin(), orders.end());
}

std::vector<Record> ConvergenceReport::to_records() const {
  std::vector<Record> out;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const auto& l = levels[k];
    Record r;
    r.add("subject", subject).add("level", k).add("nx", l.nx).add("nt", l.nt).add("dx", l.dx).add("dt", l.dt);
    if (l.completed)
      r.add("max_error", l.max_error);
    else
      r.add("failure", l.failure);
    if (k > 0 && k - 1 < orders.size()) r.add("order", orders[k - 1]).add("log2_ratio", log2_ratios[k - 1]);
    out.push_back(std::move(r));
  }
  Record s;
  s.add("subject", subject).add("scheme", std::string(scheme_name(scheme)));
  s.add("monotone", monotone ? "true" : "false").add("partial", partial ? "true" : "false");
  s.add("controlling_order", controlling_order());
  out.push_back(std::move(s));
  for (const auto& f : flags) {
    Record r;
    r.add("subject", subject).add("flag", f);
    out.push_back(std::move(r));
  }
  return out;
}

ConvergenceReport convergence_study(const SolverConfig& base, const SpaceTimeFunction& exact,
                                    const ConvergenceOptions& options) {
  if (options.levels < 3) throw DomainError("convergence study needs at least 3 levels");
  base.validate();
  ConvergenceReport rep;
  rep.subject = options.subject;
  rep.scheme = options.scheme;
  const double alpha = base.params.alpha;

  std::vector<SolverConfig> configs;
  for (int k = 0; k < options.levels; ++k) {
    SolverConfig c = base;
    c.scheme = options.scheme;
    c.nx = (base.nx - 1) * (1 << k) + 1;
    c.nt = static_cast<int>(std::ceil(base.nt * std::pow(2.0, k / alpha) - 1e-9));
    if (options.restart_from_exact) {
      c.history = exact;
      c.history_layers = c.nt / 2;
    }
    configs.push_back(std::move(c));
  }

  std::vector<std::future<ConvergenceLevel>> runs;
  for (const auto& c : configs) {
    runs.push_back(std::async(std::launch::async, [&c, &exact, &options] {
      ConvergenceLevel l;
      l.nx = c.nx;
      l.nt = c.nt;
      l.dx = c.dx();
      l.dt = c.dt();
      try {
        const auto g = solve_fpme(c);
        const std::size_t first = options.restart_from_exact ? static_cast<std::size_t>(c.history_layers) + 1
                                                             : static_cast<std::size_t>(c.nt);
        for (std::size_t n = first; n < g.values.size(); ++n)
          for (std::size_t j = 0; j < g.x.size(); ++j)
            l.max_error = std::max(l.max_error, std::abs(g.values[n][j] - exact(g.x[j], g.t[n])));
        l.completed = true;
      } catch (const std::exception& e) {
        l.failure = e.what();
      }
      return l;
    }));
  }
  for (auto& r : runs) rep.levels.push_back(r.get());

  rep.monotone = true;
  for (std::size_t k = 0; k < rep.levels.size(); ++k) {
    if (!rep.levels[k].completed) {
      rep.partial = true;
      rep.monotone = false;
      rep.flags.push_back(fmt::format("level {} failed: {}", k, rep.levels[k].failure));
      continue;
    }
    if (k == 0 || !rep.levels[k - 1].completed) continue;
    const auto& a = rep.levels[k - 1];
    const auto& b = rep.levels[k];
    if (!(b.max_error < a.max_error)) rep.monotone = false;
    const double ratio = a.max_error / b.max_error;
    rep.orders.push_back(std::log(ratio) / std::log(a.dt / b.dt));
    rep.log2_ratios.push_back(std::log2(ratio));
  }
  if (options.restart_from_exact)
    rep.flags.push_back(
        "unverifiable at t->0; measured on t in [t_end/2, t_end] with history started from exact data");
  return rep;
}

}  // namespace fpme
