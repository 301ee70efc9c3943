#include "fpme/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "fpme/records.hpp"

namespace fpme {

Polynomial Polynomial::constant(double c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::variable(Var v) {
  Polynomial p;
  Exponents e{};
  e[static_cast<int>(v)] = 1;
  p.add_term(e, 1.0);
  return p;
}

void Polynomial::add_term(const Exponents& e, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0.0) terms_.erase(it);
}

bool Polynomial::is_zero(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(double s, const Polynomial& a) {
  Polynomial out;
  for (const auto& [e, c] : a.terms_) out.add_term(e, s * c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e{};
      for (int k = 0; k < Polynomial::kVars; ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::derivative(Var v, int order) const {
  Polynomial out = *this;
  const int k = static_cast<int>(v);
  for (int n = 0; n < order; ++n) {
    Polynomial next;
    for (const auto& [key, c] : out.terms_) {
      auto e = key;
      if (e[k] == 0) continue;
      const double factor = e[k];
      --e[k];
      next.add_term(e, c * factor);
    }
    out = std::move(next);
  }
  return out;
}

Polynomial Polynomial::substitute(Var v, double value) const {
  Polynomial out;
  const int k = static_cast<int>(v);
  for (const auto& [key, c] : terms_) {
    auto e = key;
    const double factor = std::pow(value, e[k]);
    e[k] = 0;
    out.add_term(e, c * factor);
  }
  return out;
}

Polynomial Polynomial::chopped(double tol) const {
  Polynomial out;
  for (const auto& [e, c] : terms_)
    if (std::abs(c) > tol) out.terms_.emplace(e, c);
  return out;
}

std::string Polynomial::to_string(const std::array<std::string, 4>& constant_names) const {
  if (terms_.empty()) return "0";
  const std::array<std::string, kVars> names{"t", "x", "u", constant_names[0], constant_names[1],
                                             constant_names[2], constant_names[3]};
  std::string out;
  for (const auto& [e, c] : terms_) {
    std::string piece = format_number(std::abs(c));
    for (int k = 0; k < kVars; ++k) {
      if (e[k] == 0) continue;
      piece += "·" + names[k];
      if (e[k] != 1) piece += "^" + std::to_string(e[k]);
    }
    if (out.empty())
      out = (c < 0.0 ? "-" : "") + piece;
    else
      out += (c < 0.0 ? " - " : " + ") + piece;
  }
  return out;
}

}  // namespace fpme
