#pragma once

// Sparse real polynomials in (t, x, u) and four free constants K1..K4, used to
// substitute symmetry families into determining equations.

#include <array>
#include <map>
#include <string>
#include <vector>

namespace fpme {

enum class Var { t = 0, x = 1, u = 2, k1 = 3, k2 = 4, k3 = 5, k4 = 6 };

class Polynomial {
 public:
  static constexpr int kVars = 7;
  using Exponents = std::array<int, kVars>;

  Polynomial() = default;
  static Polynomial constant(double c);
  static Polynomial variable(Var v);

  const std::map<Exponents, double>& terms() const noexcept { return terms_; }
  bool is_zero(double tol = 0.0) const;
  double max_abs_coeff() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(double s, const Polynomial& a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  Polynomial derivative(Var v, int order = 1) const;
  // Replaces a variable by a number.
  Polynomial substitute(Var v, double value) const;
  // Drops coefficients with magnitude <= tol.
  Polynomial chopped(double tol) const;

  // constant_names label K1..K4 (e.g. C1..C4).
  std::string to_string(const std::array<std::string, 4>& constant_names) const;

 private:
  void add_term(const Exponents& e, double c);
  std::map<Exponents, double> terms_;
};

}  // namespace fpme
