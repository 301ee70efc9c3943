#include "fpme/liealg.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "fpme/errors.hpp"
#include "fpme/records.hpp"

namespace fpme {

namespace {

using Matrix3 = std::array<std::array<double, 3>, 3>;

void require_same_algebra(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.algebra == b.algebra)) throw DomainError("elements belong to different algebras");
}

bool nonzero(double v) { return std::abs(v) >= kCanonicalZero; }

// (ad_X)[k][j]: component k of [X, V_j].
Matrix3 ad_matrix(const AlgebraElement& x) {
  Matrix3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m[k][j] += x.coeffs[i] * x.algebra.c(i, j, k);
  return m;
}

// x + eps*rate*x type affine flow component: returns (scale, shift).
std::pair<double, double> affine_flow(double rate, double offset, double eps) {
  if (rate == 0.0) return {1.0, offset * eps};
  return {std::exp(rate * eps), offset * std::expm1(rate * eps) / rate};
}

}  // namespace

AlgebraSpec::AlgebraSpec(AlgebraName name, double alpha, double r)
    : name_(name), alpha_(alpha), r_(r) {}

AlgebraSpec AlgebraSpec::h1(double alpha, double r) {
  if (!(alpha > 0.0)) throw DomainError(fmt::format("H1 needs alpha > 0, got {}", alpha));
  if (r == 1.0 || !std::isfinite(r)) throw DomainError("H1 needs r != 1");
  AlgebraSpec spec(AlgebraName::H1, alpha, r);
  // [V12, V13] = -V13
  spec.constants_[1][2][2] = -1.0;
  spec.constants_[2][1][2] = 1.0;
  return spec;
}

AlgebraSpec AlgebraSpec::h2(double alpha) {
  if (!(alpha > 0.0)) throw DomainError(fmt::format("H2 needs alpha > 0, got {}", alpha));
  AlgebraSpec spec(AlgebraName::H2, alpha, 0.0);
  // [V21, V23] = alpha V23
  spec.constants_[0][2][2] = alpha;
  spec.constants_[2][0][2] = -alpha;
  return spec;
}

std::string AlgebraSpec::basis_label(int index) const {
  return fmt::format("V{}{}", name_ == AlgebraName::H1 ? 1 : 2, index + 1);
}

std::optional<int> AlgebraSpec::basis_index(std::string_view label) const {
  for (int i = 0; i < 3; ++i)
    if (basis_label(i) == label) return i;
  return std::nullopt;
}

AlgebraElement AlgebraElement::basis(const AlgebraSpec& algebra, int index) {
  if (index < 0 || index > 2) throw DomainError("basis index must be 0, 1 or 2");
  AlgebraElement e{algebra, {}};
  e.coeffs[index] = 1.0;
  return e;
}

double AlgebraElement::max_abs() const noexcept {
  return std::max({std::abs(coeffs[0]), std::abs(coeffs[1]), std::abs(coeffs[2])});
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a, b);
  AlgebraElement out = a;
  for (int k = 0; k < 3; ++k) out.coeffs[k] += b.coeffs[k];
  return out;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  return a + (-1.0) * b;
}

AlgebraElement operator*(double s, const AlgebraElement& a) {
  AlgebraElement out = a;
  for (auto& c : out.coeffs) c *= s;
  return out;
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  AlgebraElement out{x.algebra, {}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out.coeffs[k] += x.coeffs[i] * y.coeffs[j] * x.algebra.c(i, j, k);
  return out;
}

std::string format_element(const AlgebraElement& w) {
  std::string out;
  for (int k = 0; k < 3; ++k) {
    const double c = w.coeffs[k];
    if (c == 0.0) continue;
    const auto label = w.algebra.basis_label(k);
    if (out.empty()) {
      if (c == 1.0)
        out = label;
      else if (c == -1.0)
        out = "-" + label;
      else
        out = format_number(c) + "·" + label;
    } else {
      out += c < 0.0 ? " - " : " + ";
      out += format_number(std::abs(c)) + "·" + label;
    }
  }
  return out.empty() ? "0" : out;
}

double AffineScalingField::max_abs() const noexcept {
  return std::max({std::abs(at), std::abs(cx), std::abs(cc), std::abs(eu), std::abs(ec)});
}

AffineScalingField operator+(const AffineScalingField& a, const AffineScalingField& b) {
  return {a.at + b.at, a.cx + b.cx, a.cc + b.cc, a.eu + b.eu, a.ec + b.ec};
}

AffineScalingField operator-(const AffineScalingField& a, const AffineScalingField& b) {
  return {a.at - b.at, a.cx - b.cx, a.cc - b.cc, a.eu - b.eu, a.ec - b.ec};
}

AffineScalingField operator*(double s, const AffineScalingField& a) {
  return {s * a.at, s * a.cx, s * a.cc, s * a.eu, s * a.ec};
}

AffineScalingField basis_field(const AlgebraSpec& algebra, int index) {
  const double alpha = algebra.alpha();
  if (algebra.name() == AlgebraName::H1) {
    const double r = algebra.r();
    if (r == 1.0) throw DomainError("H1 basis fields need r != 1");
    switch (index) {
      case 1: return {.at = 1.0, .eu = -alpha / (r - 1.0)};
      case 2: return {.cx = 1.0, .eu = 2.0 / (r - 1.0)};
      case 3: return {.cc = 1.0};
    }
  } else {
    switch (index) {
      case 1: return {.at = 1.0, .eu = -alpha};
      case 2: return {.cc = 1.0};
      case 3: return {.ec = 1.0};
    }
  }
  throw DomainError(fmt::format("basis index must be 1, 2 or 3, got {}", index));
}

AffineScalingField to_field(const AlgebraElement& w) {
  AffineScalingField f;
  for (int k = 0; k < 3; ++k) f = f + w.coeffs[k] * basis_field(w.algebra, k + 1);
  return f;
}

std::optional<AlgebraElement> decompose(const AlgebraSpec& algebra, const AffineScalingField& f,
                                        double tol) {
  AlgebraElement w{algebra, {}};
  if (algebra.name() == AlgebraName::H1)
    w.coeffs = {f.at, f.cx, f.cc};
  else
    w.coeffs = {f.at, f.cc, f.ec};
  const auto diff = to_field(w) - f;
  if (diff.max_abs() > tol * std::max(1.0, f.max_abs())) return std::nullopt;
  return w;
}

AffineScalingField commutator(const AffineScalingField& x, const AffineScalingField& y) {
  // tau components commute (both multiples of t d_t); the x and u parts are
  // one-dimensional affine fields: [a s + b, c s + d] = b c - d a.
  AffineScalingField out;
  out.cc = x.cc * y.cx - y.cc * x.cx;
  out.ec = x.ec * y.eu - y.ec * x.eu;
  return out;
}

AlgebraElement adjoint(double epsilon, const AlgebraElement& x, const AlgebraElement& y,
                       double tol) {
  require_same_algebra(x, y);
  const auto m = ad_matrix(x);
  AlgebraElement result = y;
  auto term = y.coeffs;
  for (int n = 1; n <= 200; ++n) {
    std::array<double, 3> next{};
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) next[k] += m[k][j] * term[j];
    for (auto& v : next) v *= -epsilon / n;
    term = next;
    double size = 0.0;
    for (int k = 0; k < 3; ++k) {
      result.coeffs[k] += term[k];
      size = std::max(size, std::abs(term[k]));
    }
    if (size < tol) break;
  }
  return result;
}

AdjointTable adjoint_table(const AlgebraSpec& algebra, double epsilon) {
  const std::array<AlgebraElement, 3> basis{AlgebraElement::basis(algebra, 0),
                                            AlgebraElement::basis(algebra, 1),
                                            AlgebraElement::basis(algebra, 2)};
  AdjointTable table{{{basis[0], basis[0], basis[0]},
                      {basis[0], basis[0], basis[0]},
                      {basis[0], basis[0], basis[0]}}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) table[i][j] = adjoint(epsilon, basis[i], basis[j]);
  return table;
}

AlgebraElement representative(const AlgebraSpec& algebra, std::string_view label,
                              std::optional<double> param) {
  const bool h1 = algebra.name() == AlgebraName::H1;
  const std::string prefix = h1 ? "r1" : "r2";
  if (label.size() != 3 || label.substr(0, 2) != prefix || label[2] < '1' || label[2] > '6')
    throw DomainError(fmt::format("unknown optimal-system label '{}' for {}", label,
                                  h1 ? "H1" : "H2"));
  AlgebraElement w{algebra, {}};
  switch (label[2]) {
    case '1': w.coeffs = {1, 0, 0}; break;
    case '2': w.coeffs = h1 ? std::array<double, 3>{0, 1, 0} : std::array<double, 3>{0, 1, 0}; break;
    case '3': w.coeffs = {0, 0, 1}; break;
    case '4': w.coeffs = h1 ? std::array<double, 3>{1, 0, 1} : std::array<double, 3>{0, 1, 1}; break;
    case '5': w.coeffs = h1 ? std::array<double, 3>{1, 0, -1} : std::array<double, 3>{0, 1, -1}; break;
    case '6': {
      if (!param || *param == 0.0)
        throw DomainError(fmt::format("{} needs a nonzero {} parameter", label, h1 ? "gamma" : "rho"));
      w.coeffs = {1, *param, 0};
      break;
    }
  }
  return w;
}

CanonicalForm canonicalize(const AlgebraElement& w) {
  const auto [a1, a2, a3] = w.coeffs;
  if (!nonzero(a1) && !nonzero(a2) && !nonzero(a3))
    throw DomainError("the zero element has no optimal-system class");
  const bool h1 = w.algebra.name() == AlgebraName::H1;
  std::string label;
  std::optional<double> param;
  if (h1) {
    // V11 is central; Ad(exp(e V13)) shifts a3 by -e a2, Ad(exp(e V12))
    // multiplies a3 by e^e.
    if (nonzero(a1)) {
      if (nonzero(a2)) {
        label = "r16";
        param = a2 / a1;
      } else if (!nonzero(a3)) {
        label = "r11";
      } else {
        label = (a3 / a1 > 0.0) ? "r14" : "r15";
      }
    } else if (nonzero(a2)) {
      label = "r12";
    } else {
      label = "r13";
    }
  } else {
    // V22 is central; Ad(exp(e V23)) shifts a3 by alpha e a1, Ad(exp(e V21))
    // multiplies a3 by e^(-alpha e).
    if (nonzero(a1)) {
      if (nonzero(a2)) {
        label = "r26";
        param = a2 / a1;
      } else {
        label = "r21";
      }
    } else if (nonzero(a2)) {
      if (!nonzero(a3))
        label = "r22";
      else
        label = (a3 / a2 > 0.0) ? "r24" : "r25";
    } else {
      label = "r23";
    }
  }
  return {label, param, representative(w.algebra, label, param)};
}

Point PointTransformation::operator()(const Point& p) const noexcept {
  return {t_scale * p.t, x_scale * p.x + x_shift, u_scale * p.u + u_shift};
}

PointTransformation PointTransformation::inverse() const {
  if (!(t_scale > 0.0 && x_scale > 0.0 && u_scale > 0.0))
    throw DomainError("point transformation scales must be positive");
  return {1.0 / t_scale, 1.0 / x_scale, -x_shift / x_scale, 1.0 / u_scale, -u_shift / u_scale};
}

PointTransformation compose(const PointTransformation& a, const PointTransformation& b) {
  return {a.t_scale * b.t_scale, a.x_scale * b.x_scale, a.x_scale * b.x_shift + a.x_shift,
          a.u_scale * b.u_scale, a.u_scale * b.u_shift + a.u_shift};
}

PointTransformation flow(const AffineScalingField& x, double epsilon) {
  PointTransformation T;
  T.t_scale = std::exp(x.at * epsilon);
  std::tie(T.x_scale, T.x_shift) = affine_flow(x.cx, x.cc, epsilon);
  std::tie(T.u_scale, T.u_shift) = affine_flow(x.eu, x.ec, epsilon);
  return T;
}

SolutionFunction transport_solution(const PointTransformation& T, SolutionFunction sol) {
  return [T, sol = std::move(sol)](double x, double t) {
    return T.u_scale * sol((x - T.x_shift) / T.x_scale, t / T.t_scale) + T.u_shift;
  };
}

}  // namespace fpme
