#include "fpme/frackernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/format.h>

#include "fpme/errors.hpp"

namespace fpme {

namespace {

bool is_gamma_pole(double x) { return x <= 0.0 && std::floor(x) == x; }

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

}  // namespace

PoleError::PoleError(double x)
    : DomainError(fmt::format("Gamma has a pole at {}", x)), x_(x) {}

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError(fmt::format("fractional order must satisfy alpha > 0, got {}", alpha));
}

double PowerFunction::operator()(double t) const {
  if (is_zero()) return 0.0;
  return coeff * std::pow(t, exponent);
}

PowerFunction operator*(double s, const PowerFunction& g) {
  return {s * g.coeff, g.exponent};
}

PowerFunction operator*(const PowerFunction& f, const PowerFunction& g) {
  return {f.coeff * g.coeff, f.exponent + g.exponent};
}

PowerFunction pow(const PowerFunction& g, double r) {
  if (g.is_zero()) return {0.0, 0.0};
  if (g.coeff < 0.0 && !is_integer(r))
    return {std::numeric_limits<double>::quiet_NaN(), g.exponent * r};
  return {std::pow(g.coeff, r), g.exponent * r};
}

bool approx_equal(const PowerFunction& f, const PowerFunction& g, double rel_tol,
                  double exp_tol) {
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  const double scale = std::max(std::abs(f.coeff), std::abs(g.coeff));
  if (!(std::abs(f.coeff - g.coeff) <= rel_tol * scale)) return false;
  return std::abs(f.exponent - g.exponent) <= exp_tol;
}

SampledFunction::SampledFunction(double start, double step, std::vector<double> samples)
    : t0(start), h(step), values(std::move(samples)) {
  if (!(t0 >= 0.0)) throw DomainError("sampled function must start at t0 >= 0");
  if (!(h > 0.0)) throw DomainError("sample step must be positive");
  if (values.size() < 2) throw DomainError("sampled function needs at least 2 samples");
}

double gamma(double x) {
  if (std::isnan(x)) throw DomainError("Gamma of NaN");
  if (is_gamma_pole(x)) throw PoleError(x);
  return std::tgamma(x);
}

double reciprocal_gamma(double x) {
  if (is_gamma_pole(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

double binomial(double a, int n) {
  if (n < 0) return 0.0;
  double c = 1.0;
  for (int k = 0; k < n; ++k) c *= (a - k) / (k + 1);
  return c;
}

PowerFunction rl_power(FracOrder alpha, const PowerFunction& g) {
  const double p = g.exponent;
  if (!(p > -1.0))
    throw DomainError(fmt::format("power rule needs exponent > -1, got {}", p));
  const double a = alpha.value();
  if (g.is_zero()) return {0.0, p - a};
  // p = alpha - 1 + k computed in floating point misses the pole by an ulp
  double arg = p + 1.0 - a;
  if (arg < 0.5 && std::abs(arg - std::round(arg)) <= 1e-12 * std::max(1.0, std::abs(p) + a)) arg = std::round(arg);
  const double factor = gamma(p + 1.0) * reciprocal_gamma(arg);
  return {g.coeff * factor, p - a};
}

double rl_quadrature(FracOrder alpha, const std::function<double(double)>& f, double t,
                     double tol) {
  const double a = alpha.value();
  if (!alpha.in_unit_interval())
    throw DomainError(fmt::format("rl_quadrature needs 0 < alpha < 1, got {}", a));
  if (!(t > 0.0)) throw DomainError("rl_quadrature needs t > 0");
  if (!(tol > 0.0)) throw DomainError("rl_quadrature needs tol > 0");
  if (!f) throw DomainError("rl_quadrature needs a callable integrand");

  boost::math::quadrature::tanh_sinh<double> integrator;
  double quad_noise = 0.0;

  // t^(1-alpha) int_0^1 (1-s)^(-alpha) f(t s) ds; the second functor
  // argument is the signed distance to the nearer endpoint, so 1-s is
  // exact near s = 1.
  const auto fractional_integral = [&](double s) {
    const auto integrand = [&](double sigma, double sigma_c) {
      const double one_minus = sigma > 0.5 ? sigma_c : 1.0 - sigma;
      return std::pow(one_minus, -a) * f(s * sigma);
    };
    double err = 0.0;
    double l1 = 0.0;
    const double integral = integrator.integrate(integrand, 0.0, 1.0, 1e-14, &err, &l1);
    const double scale = std::pow(s, 1.0 - a);
    quad_noise = std::max(quad_noise, std::max(err, 1e-15 * l1) * scale);
    return scale * integral;
  };

  // Ridders' extrapolation of central differences.
  constexpr int kTable = 10;
  constexpr double kShrink = 1.4;
  constexpr double kShrink2 = kShrink * kShrink;
  constexpr double kSafe = 2.0;
  std::array<std::array<double, kTable>, kTable> table{};

  double h = 0.25 * t;
  table[0][0] = (fractional_integral(t + h) - fractional_integral(t - h)) / (2.0 * h);
  double best = table[0][0];
  double err = std::numeric_limits<double>::max();
  for (int i = 1; i < kTable; ++i) {
    h /= kShrink;
    table[0][i] = (fractional_integral(t + h) - fractional_integral(t - h)) / (2.0 * h);
    double fac = kShrink2;
    for (int j = 1; j <= i; ++j) {
      table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
      fac *= kShrink2;
      const double errt = std::max(std::abs(table[j][i] - table[j - 1][i]),
                                   std::abs(table[j][i] - table[j - 1][i - 1]));
      if (errt <= err) {
        err = errt;
        best = table[j][i];
      }
    }
    if (std::abs(table[i][i] - table[i - 1][i - 1]) >= kSafe * err) break;
  }

  const double norm = reciprocal_gamma(1.0 - a);
  const double value = best * norm;
  const double achieved = (err + quad_noise / h) * norm;
  if (!std::isfinite(value) || achieved > tol * std::max(1.0, std::abs(value))) {
    throw AccuracyError(
        fmt::format("RL quadrature at t={} reached error estimate {:.3e} > tol {:.3e}", t,
                    achieved, tol),
        achieved);
  }
  return value;
}

std::vector<double> gl_weights(FracOrder alpha, std::size_t n) {
  if (n < 1) throw DomainError("gl_weights needs n >= 1");
  const double a = alpha.value();
  std::vector<double> w(n);
  w[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k)
    w[k] = w[k - 1] * (1.0 - (a + 1.0) / static_cast<double>(k));
  return w;
}

double gl_history_sum(std::span<const double> weights, std::span<const double> values,
                      std::size_t n) {
  double sum = 0.0;
  for (std::size_t k = 0; k <= n; ++k) sum += weights[k] * values[n - k];
  return sum;
}

SampledFunction rl_gl(FracOrder alpha, const SampledFunction& f) {
  if (f.t0 != 0.0)
    throw DomainError(fmt::format("rl_gl needs samples starting at t0 = 0, got {}", f.t0));
  if (!alpha.in_unit_interval())
    throw DomainError(fmt::format("rl_gl needs 0 < alpha < 1, got {}", alpha.value()));
  const auto w = gl_weights(alpha, f.size());
  const double scale = std::pow(f.h, -alpha.value());
  std::vector<double> d(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) d[n] = scale * gl_history_sum(w, f.values, n);
  return SampledFunction(f.t0, f.h, std::move(d));
}

PowerFunction lemma21_solution(LemmaCase which, FracOrder alpha, double beta, double r,
                               double lambda) {
  const double a = alpha.value();
  if (lambda == 0.0) throw DomainError("power-law solution needs lambda != 0");
  switch (which) {
    case LemmaCase::I: {
      if (!(r > 0.0) || r == 1.0)
        throw DomainError(fmt::format("case I needs r > 0 and r != 1, got r={}", r));
      const double p = (a + beta) / (1.0 - r);
      if (!(p > -1.0))
        throw DomainError(fmt::format("case I needs (alpha+beta)/(1-r) > -1, got {}", p));
      const double inv = reciprocal_gamma(p + 1.0 - a);
      if (inv == 0.0)
        throw DomainError("case I: p+1-alpha is a pole of Gamma, only g = 0 solves");
      const double base = gamma(p + 1.0) * inv / lambda;
      if (!(base > 0.0))
        throw DomainError(fmt::format(
            "case I needs Gamma(p+1)/(lambda Gamma(p+1-alpha)) > 0, got {} (no real solution)",
            base));
      return {std::pow(base, 1.0 / (r - 1.0)), p};
    }
    case LemmaCase::II: {
      if (r != 0.5) throw DomainError(fmt::format("case II needs r = 1/2, got {}", r));
      if (!(2.0 * (a + beta) > -1.0))
        throw DomainError(fmt::format("case II needs 2(alpha+beta) > -1, got {}", 2.0 * (a + beta)));
      if (is_gamma_pole(a + 2.0 * beta + 1.0))
        throw DomainError("case II: alpha+2beta+1 is a pole of Gamma, only g = 0 solves");
      const double root =
          lambda * gamma(a + 2.0 * beta + 1.0) * reciprocal_gamma(2.0 * a + 2.0 * beta + 1.0);
      if (!(root > 0.0))
        throw DomainError(fmt::format(
            "case II needs lambda Gamma(alpha+2beta+1)/Gamma(2alpha+2beta+1) > 0, got {}", root));
      return {root * root, 2.0 * (a + beta)};
    }
    case LemmaCase::III: {
      if (r != 2.0) throw DomainError(fmt::format("case III needs r = 2, got {}", r));
      if (!(a + beta < 1.0))
        throw DomainError(fmt::format("case III needs alpha+beta < 1, got {}", a + beta));
      if (is_gamma_pole(1.0 - 2.0 * a - beta))
        throw DomainError("case III needs 1-2alpha-beta away from the poles of Gamma");
      const double coeff = gamma(1.0 - a - beta) * reciprocal_gamma(1.0 - 2.0 * a - beta) / lambda;
      return {coeff, -(a + beta)};
    }
  }
  throw DomainError("unknown case");
}

OdeSides frac_ode_residual(FracOrder alpha, double beta, double r, double lambda,
                           const PowerFunction& g) {
  OdeSides sides;
  sides.lhs = rl_power(alpha, g);
  sides.rhs = lambda * (PowerFunction{1.0, beta} * pow(g, r));
  return sides;
}

}  // namespace fpme
