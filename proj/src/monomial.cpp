#include "fpme/monomial.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "fpme/errors.hpp"
#include "fpme/records.hpp"

namespace fpme {

namespace {

bool same_exponent(double a, double b) { return std::abs(a - b) <= MonomialSum::kExponentTol; }

bool is_x_free(const Monomial& m) { return same_exponent(m.x_exp, 0.0); }

double int_pow(double base, double e) { return e == 0.0 ? 1.0 : std::pow(base, e); }

std::string power_factor(const char* var, double e) {
  if (same_exponent(e, 0.0)) return {};
  if (e == 1.0) return fmt::format("·{}", var);
  return fmt::format("·{}^{}", var, format_number(e));
}

}  // namespace

MonomialSum MonomialSum::term(double coeff, double t_exp, double x_exp, double x_center) {
  MonomialSum s;
  s.x_center_ = x_center;
  s.insert({coeff, t_exp, x_exp, std::abs(coeff)});
  return s;
}

bool MonomialSum::depends_on_x() const noexcept {
  return std::any_of(terms_.begin(), terms_.end(), [](const Monomial& m) { return !is_x_free(m); });
}

void MonomialSum::insert(const Monomial& m) {
  if (m.coeff == 0.0) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (same_exponent(it->t_exp, m.t_exp) && same_exponent(it->x_exp, m.x_exp)) {
      it->coeff += m.coeff;
      it->magnitude += m.magnitude;
      if (it->coeff == 0.0) terms_.erase(it);
      return;
    }
  }
  const auto pos = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Monomial& a, const Monomial& b) {
    return a.t_exp != b.t_exp ? a.t_exp < b.t_exp : a.x_exp < b.x_exp;
  });
  terms_.insert(pos, m);
}

void MonomialSum::adopt_center(const MonomialSum& other) {
  if (!other.depends_on_x()) return;
  if (!depends_on_x()) {
    x_center_ = other.x_center_;
    return;
  }
  if (std::abs(x_center_ - other.x_center_) > 1e-12 * std::max(1.0, std::abs(x_center_)))
    throw UnsupportedFormError(fmt::format("monomial sums centered at x={} and x={} do not combine",
                                           x_center_, other.x_center_));
}

MonomialSum& MonomialSum::operator+=(const MonomialSum& other) {
  adopt_center(other);
  for (const auto& m : other.terms_) insert(m);
  return *this;
}

MonomialSum& MonomialSum::operator-=(const MonomialSum& other) {
  adopt_center(other);
  for (auto m : other.terms_) {
    m.coeff = -m.coeff;
    insert(m);
  }
  return *this;
}

MonomialSum& MonomialSum::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& m : terms_) {
    m.coeff *= s;
    m.magnitude *= std::abs(s);
  }
  return *this;
}

MonomialSum operator*(const MonomialSum& a, const MonomialSum& b) {
  if (a.depends_on_x() && b.depends_on_x()) {
    MonomialSum probe = a;
    probe.adopt_center(b);
  }
  MonomialSum out;
  out.x_center_ = a.depends_on_x() ? a.x_center_ : b.x_center_;
  for (const auto& ma : a.terms_)
    for (const auto& mb : b.terms_)
      out.insert({ma.coeff * mb.coeff, ma.t_exp + mb.t_exp, ma.x_exp + mb.x_exp,
                  ma.magnitude * mb.magnitude});
  return out;
}

MonomialSum MonomialSum::d_dx() const {
  MonomialSum out;
  out.x_center_ = x_center_;
  for (const auto& m : terms_) {
    if (is_x_free(m)) continue;
    out.insert({m.coeff * m.x_exp, m.t_exp, m.x_exp - 1.0, m.magnitude * std::abs(m.x_exp)});
  }
  return out;
}

MonomialSum MonomialSum::rl_dt(FracOrder alpha) const {
  MonomialSum out;
  out.x_center_ = x_center_;
  for (const auto& m : terms_) {
    const auto d = rl_power(alpha, {m.coeff, m.t_exp});
    if (d.is_zero()) continue;
    const double factor = d.coeff / m.coeff;
    out.insert({d.coeff, d.exponent, m.x_exp, m.magnitude * std::abs(factor)});
  }
  return out;
}

MonomialSum MonomialSum::pow(double r) const {
  const bool integral = std::floor(r) == r;
  if (terms_.empty()) {
    if (r > 0.0) return *this;
    throw DomainError("non-positive power of the zero function");
  }
  if (terms_.size() == 1) {
    const auto& m = terms_.front();
    if (m.coeff < 0.0 && !integral)
      throw DomainError(fmt::format("real power {} of a negative monomial", r));
    MonomialSum out;
    out.x_center_ = x_center_;
    out.insert({std::pow(m.coeff, r), m.t_exp * r, m.x_exp * r, std::pow(m.magnitude, r)});
    return out;
  }
  if (!integral || r < 0.0)
    throw UnsupportedFormError(
        fmt::format("power {} of a {}-term sum leaves the monomial class", r, terms_.size()));
  MonomialSum out = constant(1.0);
  for (int k = 0; k < static_cast<int>(r); ++k) out = out * *this;
  return out;
}

MonomialSum MonomialSum::transformed(double t_scale, double x_scale, double x_shift,
                                     double u_scale, double u_shift) const {
  MonomialSum out;
  out.x_center_ = x_shift + x_scale * x_center_;
  for (const auto& m : terms_) {
    const double factor = u_scale * int_pow(x_scale, -m.x_exp) * int_pow(t_scale, -m.t_exp);
    out.insert({m.coeff * factor, m.t_exp, m.x_exp, m.magnitude * std::abs(factor)});
  }
  if (u_shift != 0.0) out.insert({u_shift, 0.0, 0.0, std::abs(u_shift)});
  return out;
}

MonomialSum MonomialSum::pruned(double rel_tol) const {
  MonomialSum out;
  out.x_center_ = x_center_;
  for (const auto& m : terms_)
    if (std::abs(m.coeff) > rel_tol * m.magnitude) out.terms_.push_back(m);
  return out;
}

double MonomialSum::operator()(double x, double t) const {
  const double xi = x - x_center_;
  double sum = 0.0;
  for (const auto& m : terms_) sum += m.coeff * int_pow(t, m.t_exp) * int_pow(xi, m.x_exp);
  return sum;
}

std::array<double, 3> MonomialSum::x_jet(double x, double t) const {
  const double xi = x - x_center_;
  std::array<double, 3> jet{0.0, 0.0, 0.0};
  for (const auto& m : terms_) {
    const double c = m.coeff * int_pow(t, m.t_exp);
    const double q = m.x_exp;
    jet[0] += c * int_pow(xi, q);
    if (is_x_free(m)) continue;
    jet[1] += c * q * int_pow(xi, q - 1.0);
    jet[2] += c * q * (q - 1.0) * int_pow(xi, q - 2.0);
  }
  return jet;
}

std::string format_monomial(const Monomial& m, double x_center) {
  std::string x_var = "x";
  if (x_center != 0.0)
    x_var = x_center > 0.0 ? fmt::format("(x-{})", format_number(x_center))
                           : fmt::format("(x+{})", format_number(-x_center));
  return format_number(m.coeff) + power_factor(x_var.c_str(), m.x_exp) + power_factor("t", m.t_exp);
}

std::string MonomialSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& m : terms_) {
    auto piece = format_monomial(m, x_center_);
    if (out.empty()) {
      out = piece;
    } else if (piece.front() == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

MonomialSum exact_difference(const MonomialSum& lhs, const MonomialSum& rhs, double rel_tol) {
  return (lhs - rhs).pruned(rel_tol);
}

}  // namespace fpme
