#pragma once

// Reference computations that share no code path with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace oracle {

inline double gamma(double x) { return boost::math::tgamma(x); }

// a (a-1) ... (a-n+1) / n!
inline double binomial(double a, int n) {
  double v = 1.0;
  for (int k = 0; k < n; ++k) v *= (a - k) / (k + 1);
  return v;
}

inline double gk(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 8, 1e-12);
}

// B(a, b) = int_0^1 s^(b-1) (1-s)^(a-1) ds for a, b > 0, split at 1/2 with
// substitutions that remove both endpoint singularities.
inline double beta(double a, double b) {
  // s = w^(1/b): s^(b-1) ds = dw / b
  const double w_hi = std::pow(0.5, b);
  const double left = gk([&](double w) { return std::pow(1.0 - std::pow(w, 1.0 / b), a - 1.0) / b; }, 0.0, w_hi);
  // 1 - s = y^(1/a)
  const double y_hi = std::pow(0.5, a);
  const double right = gk([&](double y) { return std::pow(1.0 - std::pow(y, 1.0 / a), b - 1.0) / a; }, 0.0, y_hi);
  return left + right;
}

// RL derivative of t^p at t from the definition: int_0^t (t-s)^(-alpha) s^p ds
// = B(1-alpha, p+1) t^(p+1-alpha), then the outer d/dt analytically.
inline double rl_power_value(double alpha, double p, double t) {
  const double integral_coeff = beta(1.0 - alpha, p + 1.0) / gamma(1.0 - alpha);
  return integral_coeff * (p + 1.0 - alpha) * std::pow(t, p - alpha);
}

// Classical RK4 for the autonomous system y' = f(y).
inline std::array<double, 3> rk4(const std::function<std::array<double, 3>(const std::array<double, 3>&)>& f,
                                 std::array<double, 3> y, double t_end, int steps) {
  const double h = t_end / steps;
  const auto axpy = [](const std::array<double, 3>& a, double s, const std::array<double, 3>& b) {
    return std::array<double, 3>{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
  };
  for (int n = 0; n < steps; ++n) {
    const auto k1 = f(y);
    const auto k2 = f(axpy(y, h / 2, k1));
    const auto k3 = f(axpy(y, h / 2, k2));
    const auto k4 = f(axpy(y, h, k3));
    for (int i = 0; i < 3; ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return y;
}

// Fixed-seed generator helpers for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double sign() { return integer(0, 1) ? 1.0 : -1.0; }
  // Nonzero magnitude in [lo, hi] with random sign.
  double signed_mag(double lo, double hi) { return sign() * uniform(lo, hi); }

 private:
  std::mt19937_64 rng_;
};

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1e-300, std::abs(a), std::abs(b)});
}

}  // namespace oracle
