#pragma once

// Riemann-Liouville calculus with lower terminal 0: exact action on power
// functions, numerical evaluators, and the closed-form solutions of the
// power-nonlinearity fractional ODE  D^alpha g = lambda t^beta g^r.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fpme {

// Order of a fractional derivative. Only positivity is enforced here; the
// PDE models narrow it to (0, 1).
class FracOrder {
 public:
  explicit FracOrder(double alpha);
  double value() const noexcept { return alpha_; }
  bool in_unit_interval() const noexcept { return alpha_ < 1.0; }

 private:
  double alpha_;
};

// g(t) = coeff * t^exponent on t > 0. A zero coefficient is the zero
// function whatever the exponent.
struct PowerFunction {
  double coeff = 0.0;
  double exponent = 0.0;

  bool is_zero() const noexcept { return coeff == 0.0; }
  double operator()(double t) const;
};

PowerFunction operator*(double s, const PowerFunction& g);
PowerFunction operator*(const PowerFunction& f, const PowerFunction& g);
// g^r; negative coefficients only have a real power for integer r (NaN
// coefficient otherwise).
PowerFunction pow(const PowerFunction& g, double r);

// Coefficients within relative rel_tol, exponents within exp_tol; all zero
// functions compare equal.
bool approx_equal(const PowerFunction& f, const PowerFunction& g,
                  double rel_tol = 1e-12, double exp_tol = 1e-12);

// Uniform samples values[k] = f(t0 + k h).
struct SampledFunction {
  double t0 = 0.0;
  double h = 1.0;
  std::vector<double> values;

  SampledFunction() = default;
  SampledFunction(double t0, double h, std::vector<double> values);
  std::size_t size() const noexcept { return values.size(); }
  double time(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * h; }
};

// Gamma(x); throws PoleError at non-positive integers.
double gamma(double x);
// 1/Gamma(x), exactly 0 at the poles of Gamma.
double reciprocal_gamma(double x);
// Generalized binomial coefficient Gamma(a+1) / (Gamma(n+1) Gamma(a+1-n)).
double binomial(double a, int n);

// D^alpha (A t^p) = A Gamma(p+1)/Gamma(p+1-alpha) t^(p-alpha), valid for
// p > -1. Vanishes when p+1-alpha is a pole of Gamma (e.g. p = alpha-1).
PowerFunction rl_power(FracOrder alpha, const PowerFunction& g);

// Numerical RL derivative of f at t for 0 < alpha < 1:
//   1/Gamma(1-alpha) d/dt [ t^(1-alpha) int_0^1 (1-s)^(-alpha) f(t s) ds ]
// The inner integral uses tanh-sinh quadrature (both endpoint
// singularities are integrable), the outer derivative Ridders-extrapolated
// central differences. Achieved error <= tol * max(1, |result|), otherwise
// AccuracyError.
double rl_quadrature(FracOrder alpha, const std::function<double(double)>& f,
                     double t, double tol);

// Grunwald-Letnikov weights w_0..w_{n-1}, w_k = (-1)^k binom(alpha, k).
std::vector<double> gl_weights(FracOrder alpha, std::size_t n);

// sum_{k=0}^{n} w_k f_{n-k}, accumulated in increasing k. Shared by rl_gl
// and the time stepper so both produce bitwise identical sums.
double gl_history_sum(std::span<const double> weights,
                      std::span<const double> values, std::size_t n);

// First-order GL approximation of the RL derivative on a grid starting at 0.
SampledFunction rl_gl(FracOrder alpha, const SampledFunction& f);

enum class LemmaCase { I, II, III };

// Power-law solutions of D^alpha g = lambda t^beta g^r (lower terminal 0).
//   I:   any r > 0, r != 1
//   II:  r = 1/2
//   III: r = 2
PowerFunction lemma21_solution(LemmaCase which, FracOrder alpha, double beta,
                               double r, double lambda);

struct OdeSides {
  PowerFunction lhs;  // D^alpha g
  PowerFunction rhs;  // lambda t^beta g^r
  bool matched(double rel_tol = 1e-12) const { return approx_equal(lhs, rhs, rel_tol); }
};

OdeSides frac_ode_residual(FracOrder alpha, double beta, double r,
                           double lambda, const PowerFunction& g);

}  // namespace fpme
