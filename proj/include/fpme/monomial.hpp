#pragma once

// Finite sums of bivariate monomials  c * t^p * (x - x0)^q  sharing one
// spatial center x0. The class is closed under the RL derivative in t,
// exact x-differentiation, products and the affine point maps generated by
// the symmetry algebras, which is what makes exact residuals possible.

#include <array>
#include <string>
#include <vector>

#include "fpme/frackernel.hpp"

namespace fpme {

struct Monomial {
  double coeff = 0.0;
  double t_exp = 0.0;
  double x_exp = 0.0;
  // Sum of |contributions| that were collected into coeff; used to tell
  // genuine terms from cancellation noise.
  double magnitude = 0.0;
};

class MonomialSum {
 public:
  static constexpr double kExponentTol = 1e-12;

  MonomialSum() = default;
  static MonomialSum term(double coeff, double t_exp, double x_exp, double x_center = 0.0);
  static MonomialSum constant(double c) { return term(c, 0.0, 0.0); }

  // Terms sorted by (t_exp, x_exp); like terms merged, exact zeros dropped.
  const std::vector<Monomial>& terms() const noexcept { return terms_; }
  double x_center() const noexcept { return x_center_; }
  bool depends_on_x() const noexcept;
  bool empty() const noexcept { return terms_.empty(); }

  MonomialSum& operator+=(const MonomialSum& other);
  MonomialSum& operator-=(const MonomialSum& other);
  MonomialSum& operator*=(double s);
  friend MonomialSum operator+(MonomialSum a, const MonomialSum& b) { return a += b; }
  friend MonomialSum operator-(MonomialSum a, const MonomialSum& b) { return a -= b; }
  friend MonomialSum operator*(double s, MonomialSum a) { return a *= s; }
  friend MonomialSum operator*(const MonomialSum& a, const MonomialSum& b);

  MonomialSum d_dx() const;
  // Termwise RL derivative in t; every t exponent must exceed -1.
  MonomialSum rl_dt(FracOrder alpha) const;
  // u^r. Exact for a single term (positive coefficient unless r is an
  // integer) and for any sum when r is a non-negative integer.
  MonomialSum pow(double r) const;

  // Graph image under (t, x, u) -> (ts t, xs x + xsh, us u + ush).
  MonomialSum transformed(double t_scale, double x_scale, double x_shift, double u_scale,
                          double u_shift) const;

  // Drops terms with |coeff| <= rel_tol * magnitude.
  MonomialSum pruned(double rel_tol) const;

  double operator()(double x, double t) const;
  // (u, u_x, u_xx) at a point.
  std::array<double, 3> x_jet(double x, double t) const;

  std::string to_string() const;

 private:
  void insert(const Monomial& m);
  void adopt_center(const MonomialSum& other);

  std::vector<Monomial> terms_;
  double x_center_ = 0.0;
};

// lhs - rhs with cancellation noise (relative rel_tol) removed.
MonomialSum exact_difference(const MonomialSum& lhs, const MonomialSum& rhs,
                             double rel_tol = 1e-12);

std::string format_monomial(const Monomial& m, double x_center);

}  // namespace fpme
