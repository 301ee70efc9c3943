#pragma once

// The two three-dimensional symmetry algebras
//   H1 (porous medium):      V11 = t d_t - alpha/(r-1) u d_u,
//                            V12 = x d_x + 2/(r-1) u d_u,   V13 = d_x
//   H2 (dual porous medium): V21 = t d_t - alpha u d_u,  V22 = d_x,  V23 = d_u
// with their adjoint actions, optimal-system canonical forms and finite flows.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace fpme {

enum class AlgebraName { H1, H2 };

class AlgebraSpec {
 public:
  using Constants = std::array<std::array<std::array<double, 3>, 3>, 3>;

  static AlgebraSpec h1(double alpha, double r);
  static AlgebraSpec h2(double alpha);

  AlgebraName name() const noexcept { return name_; }
  double alpha() const noexcept { return alpha_; }
  // Only meaningful for H1.
  double r() const noexcept { return r_; }

  // c(i, j, k): coefficient of basis k in [V_i, V_j]; indices 0..2.
  double c(int i, int j, int k) const { return constants_[i][j][k]; }
  const Constants& structure_constants() const noexcept { return constants_; }

  // "V11".."V13" or "V21".."V23"; index 0..2.
  std::string basis_label(int index) const;
  // Index 0..2 of a basis label, if it belongs to this algebra.
  std::optional<int> basis_index(std::string_view label) const;

  bool operator==(const AlgebraSpec& other) const noexcept {
    return name_ == other.name_ && alpha_ == other.alpha_ && r_ == other.r_;
  }

 private:
  AlgebraSpec(AlgebraName name, double alpha, double r);

  AlgebraName name_;
  double alpha_;
  double r_;
  Constants constants_{};
};

struct AlgebraElement {
  AlgebraSpec algebra;
  std::array<double, 3> coeffs{};

  static AlgebraElement basis(const AlgebraSpec& algebra, int index);
  bool is_zero() const noexcept { return coeffs == std::array<double, 3>{}; }
  double max_abs() const noexcept;
};

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(double s, const AlgebraElement& a);
// [X, Y] through the structure constants.
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
std::string format_element(const AlgebraElement& w);

// tau = at t, xi = cx x + cc, eta = eu u + ec. tau vanishes at t = 0.
struct AffineScalingField {
  double at = 0.0;
  double cx = 0.0;
  double cc = 0.0;
  double eu = 0.0;
  double ec = 0.0;

  double tau(double t) const noexcept { return at * t; }
  double xi(double x) const noexcept { return cx * x + cc; }
  double eta(double u) const noexcept { return eu * u + ec; }
  double max_abs() const noexcept;
  bool operator==(const AffineScalingField&) const = default;
};

AffineScalingField operator+(const AffineScalingField& a, const AffineScalingField& b);
AffineScalingField operator-(const AffineScalingField& a, const AffineScalingField& b);
AffineScalingField operator*(double s, const AffineScalingField& a);

// index 1..3 as in the algebra labels.
AffineScalingField basis_field(const AlgebraSpec& algebra, int index);
AffineScalingField to_field(const AlgebraElement& w);
// Coordinates of a field in the algebra basis, if it lies in the span.
std::optional<AlgebraElement> decompose(const AlgebraSpec& algebra, const AffineScalingField& f,
                                        double tol = 1e-12);

// Geometric commutator [X, Y] = X(Y) - Y(X) of two vector fields.
AffineScalingField commutator(const AffineScalingField& x, const AffineScalingField& y);

// Ad(exp(eps X)) Y = exp(-eps ad_X) Y, series summed until the next term's
// max-abs coefficient drops below tol (at most 200 terms).
AlgebraElement adjoint(double epsilon, const AlgebraElement& x, const AlgebraElement& y,
                       double tol = 1e-15);

using AdjointTable = std::array<std::array<AlgebraElement, 3>, 3>;
// entry[i][j] = Ad(exp(eps V_i)) V_j.
AdjointTable adjoint_table(const AlgebraSpec& algebra, double epsilon);

struct CanonicalForm {
  std::string label;             // r11..r16 or r21..r26
  std::optional<double> param;   // gamma for r16, rho for r26
  AlgebraElement representative;
};

// Coefficients below this magnitude count as zero when classifying.
inline constexpr double kCanonicalZero = 1e-12;

// Optimal-system representative of the class of W under the adjoint action
// and multiplication by nonzero reals.
CanonicalForm canonicalize(const AlgebraElement& w);
// Representative element for a label; param required for r16/r26.
AlgebraElement representative(const AlgebraSpec& algebra, std::string_view label,
                              std::optional<double> param = std::nullopt);

struct Point {
  double t = 0.0;
  double x = 0.0;
  double u = 0.0;
};

// (t, x, u) -> (t_scale t, x_scale x + x_shift, u_scale u + u_shift)
struct PointTransformation {
  double t_scale = 1.0;
  double x_scale = 1.0;
  double x_shift = 0.0;
  double u_scale = 1.0;
  double u_shift = 0.0;

  static PointTransformation identity() { return {}; }
  Point operator()(const Point& p) const noexcept;
  PointTransformation inverse() const;
};

// a after b.
PointTransformation compose(const PointTransformation& a, const PointTransformation& b);

// Closed-form solution of d(t,x,u)/d eps = (tau, xi, eta).
PointTransformation flow(const AffineScalingField& x, double epsilon);

using SolutionFunction = std::function<double(double x, double t)>;

// Function whose graph is the image of the graph of sol under T.
SolutionFunction transport_solution(const PointTransformation& T, SolutionFunction sol);

}  // namespace fpme
