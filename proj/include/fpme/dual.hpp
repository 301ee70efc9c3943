#pragma once

// Forward-mode dual numbers, enough to differentiate the ansatz families.

#include <cmath>

namespace fpme {

struct Dual {
  double v = 0.0;
  double d = 0.0;

  Dual() = default;
  Dual(double value, double deriv = 0.0) : v(value), d(deriv) {}
  static Dual variable(double value) { return {value, 1.0}; }
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }

inline Dual sin(Dual a) { return {std::sin(a.v), a.d * std::cos(a.v)}; }
inline Dual exp(Dual a) {
  const double e = std::exp(a.v);
  return {e, a.d * e};
}
inline Dual pow(Dual a, double p) {
  if (p == 0.0) return {1.0, 0.0};
  return {std::pow(a.v, p), a.d * p * std::pow(a.v, p - 1.0)};
}

inline double value_of(double a) { return a; }
inline double value_of(Dual a) { return a.v; }

}  // namespace fpme
