#include "fpme/pdemodel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <span>

#include <fmt/format.h>

#include "fpme/dual.hpp"
#include "fpme/errors.hpp"

namespace fpme {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

void require_unit_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError(fmt::format("alpha must lie in (0, 1), got {}", alpha));
}

const std::vector<EntryInfo> kEntries = {
    {"T33i", EntryKind::solution, ModelKind::fpme,
     "u = A x^(2/(r-1)) t^(alpha/(1-r)), g from the power-law ODE with lambda = 2r(r+1)/(r-1)^2"},
    {"T33ii", EntryKind::solution, ModelKind::fpme,
     "r = 1/2: u = [6 Gamma(alpha+1)/Gamma(2alpha+1)]^2 x^-4 t^(2alpha)"},
    {"T33iii", EntryKind::solution, ModelKind::fpme,
     "r = 2, alpha < 1/2: u = (1/12) Gamma(1-alpha)/Gamma(1-2alpha) x^2 t^-alpha"},
    {"T33iii-paper-proof-variant", EntryKind::solution, ModelKind::fpme,
     "r = 2: u = (1/12) x^2 [Gamma(1-alpha)/Gamma(1-2alpha)]^2 t^-alpha (squared ratio)"},
    {"FPME-case3", EntryKind::solution, ModelKind::fpme, "u = lambda t^(alpha-1), invariant under V13"},
    {"FDPME-case2", EntryKind::solution, ModelKind::fdpme, "u = kappa t^(alpha-1), invariant under V22"},
    {"FDPME-case3", EntryKind::solution, ModelKind::fdpme,
     "u = x + f(t), f = -(2c/3) t^alpha/Gamma(alpha+1), invariant under V22 + V23"},
    {"FDPME-case4", EntryKind::solution, ModelKind::fdpme,
     "u = -x + f(t), f = -(2c/3) t^alpha/Gamma(alpha+1), invariant under V22 - V23"},
    {"FPME-case1-reduced", EntryKind::reduced, ModelKind::fpme, "r11: u = t^(-alpha/(r-1)) f(x)"},
    {"FPME-case2-reduced", EntryKind::reduced, ModelKind::fpme, "r12: u = x^(2/(r-1)) g(t)"},
    {"FPME-case4-reduced", EntryKind::reduced, ModelKind::fpme, "r14: u = f(t e^-x) e^(-alpha x/(r-1))"},
    {"FPME-case5-reduced", EntryKind::reduced, ModelKind::fpme, "r15: u = f(t e^x) e^(alpha x/(r-1))"},
    {"FPME-case6-reduced", EntryKind::reduced, ModelKind::fpme,
     "r16: u = f(t x^(-1/gamma)) x^((2gamma-alpha)/(gamma(r-1)))"},
    {"FDPME-case1", EntryKind::reduced, ModelKind::fdpme, "r21: u = t^-alpha f(x)"},
    {"FDPME-case5", EntryKind::reduced, ModelKind::fdpme, "r26: u = f(t e^(-x/rho)) e^(-alpha x/rho)"},
    {"FPME-V11-transport", EntryKind::transport, ModelKind::fpme, "T33ii carried along the flow of V11"},
    {"FPME-V12-transport", EntryKind::transport, ModelKind::fpme, "T33ii carried along the flow of V12"},
    {"FPME-V13-transport", EntryKind::transport, ModelKind::fpme,
     "FPME-case3 carried along the flow of V13"},
    {"FDPME-V23-transport", EntryKind::transport, ModelKind::fdpme,
     "FDPME-case2 carried along the flow of V23"},
};

double fpme_default_r(std::string_view id) {
  if (iequals(id, "T33ii")) return 0.5;
  if (iequals(id, "T33iii") || iequals(id, "T33iii-paper-proof-variant") || iequals(id, "FPME-case3"))
    return 2.0;
  return 3.0;
}

double safe_gamma_ratio(double num_arg, double den_arg) {
  // Gamma(num_arg)/Gamma(den_arg), NaN if the numerator sits on a pole.
  try {
    return gamma(num_arg) * reciprocal_gamma(den_arg);
  } catch (const PoleError&) {
    return std::nan("");
  }
}

template <class T>
T profile_value(Profile p, T z) {
  using std::exp;
  using std::sin;
  switch (p) {
    case Profile::sine: return sin(z) + T(2.0);
    case Profile::exp_decay: return exp(-z);
    case Profile::rational: return T(1.0) / (T(1.0) + z * z);
  }
  return z;
}

template <class T>
T ansatz_value(AlgebraName name, char which, double alpha, double r, double param, Profile p, T x, T t) {
  using std::exp;
  using std::pow;
  if (name == AlgebraName::H1) {
    switch (which) {
      case '1': return pow(t, -alpha / (r - 1.0)) * profile_value(p, x);
      case '2': return pow(x, 2.0 / (r - 1.0)) * profile_value(p, t);
      case '3': return profile_value(p, t);
      case '4': return profile_value(p, t * exp(-x)) * exp(T(-alpha / (r - 1.0)) * x);
      case '5': return profile_value(p, t * exp(x)) * exp(T(alpha / (r - 1.0)) * x);
      case '6':
        return profile_value(p, t * pow(x, -1.0 / param)) *
               pow(x, (2.0 * param - alpha) / (param * (r - 1.0)));
    }
  } else {
    switch (which) {
      case '1': return pow(t, -alpha) * profile_value(p, x);
      case '2': return profile_value(p, t);
      case '4': return x + profile_value(p, t);
      case '5': return -x + profile_value(p, t);
      case '6': return profile_value(p, t * exp(T(-1.0 / param) * x)) * exp(T(-alpha / param) * x);
    }
  }
  throw UnsupportedFormError("no invariant-solution ansatz for this representative");
}

}  // namespace

FpmeParams FpmeParams::make(double alpha, double r) {
  require_unit_alpha(alpha);
  if (!(r > 0.0) || r == 1.0 || !std::isfinite(r))
    throw DomainError(fmt::format("FPME needs r > 0 and r != 1, got r = {}", r));
  return {alpha, r};
}

FdpmeParams FdpmeParams::make(double alpha, double a, double b, double c) {
  require_unit_alpha(alpha);
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
    throw DomainError("FDPME coefficients must be finite");
  return {alpha, a, b, c};
}

ModelKind kind_of(const PdeModel& model) {
  return std::holds_alternative<FpmeParams>(model) ? ModelKind::fpme : ModelKind::fdpme;
}

double alpha_of(const PdeModel& model) {
  return std::visit([](const auto& p) { return p.alpha; }, model);
}

std::string_view model_name(ModelKind kind) { return kind == ModelKind::fpme ? "fpme" : "fdpme"; }

AlgebraSpec algebra_of(const PdeModel& model) {
  if (const auto* p = std::get_if<FpmeParams>(&model)) return AlgebraSpec::h1(p->alpha, p->r);
  return AlgebraSpec::h2(std::get<FdpmeParams>(model).alpha);
}

double fpme_rhs(const FpmeParams& p, double u, double u_x, double u_xx) {
  if (!(u > 0.0)) throw DomainError(fmt::format("FPME right-hand side needs u > 0, got {}", u));
  const double r = p.r;
  return r * (r - 1.0) * std::pow(u, r - 2.0) * u_x * u_x + r * std::pow(u, r - 1.0) * u_xx;
}

double fdpme_rhs(const FdpmeParams& p, double u, double u_x, double u_xx) {
  return p.a * u_xx * u_xx + p.b * u_x * u_xx + p.c * (u * u_xx - (2.0 / 3.0) * u_x * u_x);
}

double model_rhs(const PdeModel& model, double u, double u_x, double u_xx) {
  if (const auto* p = std::get_if<FpmeParams>(&model)) {
    if (u_x == 0.0 && u_xx == 0.0) return 0.0;
    return fpme_rhs(*p, u, u_x, u_xx);
  }
  return fdpme_rhs(std::get<FdpmeParams>(model), u, u_x, u_xx);
}

SeparableSolution SeparableSolution::make(double coeff, double t_exp, double x_exp) {
  if (coeff == 0.0) return {};
  if (!(t_exp > -1.0))
    throw DomainError(fmt::format("separable solution needs t exponent > -1, got {}", t_exp));
  return {coeff, t_exp, x_exp};
}

MonomialSum SeparableSolution::as_sum() const { return MonomialSum::term(coeff, t_exp, x_exp); }

AffinePlusTime AffinePlusTime::make(int slope, const PowerFunction& f) {
  if (slope != 1 && slope != -1) throw DomainError("affine slope must be +1 or -1");
  return {slope, f};
}

MonomialSum AffinePlusTime::as_sum() const {
  return MonomialSum::term(slope, 0.0, 1.0) + MonomialSum::term(f.coeff, f.exponent, 0.0);
}

MonomialSum as_sum(const SolutionForm& form) {
  return std::visit([](const auto& s) { return s.as_sum(); }, form);
}

const std::vector<EntryInfo>& catalog_entries() { return kEntries; }

const EntryInfo& find_entry(std::string_view id) {
  for (const auto& e : kEntries)
    if (iequals(e.id, id)) return e;
  throw LookupError(fmt::format("unknown catalog entry '{}'", id));
}

PdeModel entry_model(const EntryInfo& entry, const CatalogParams& params) {
  const double alpha = params.alpha.value_or(0.4);
  if (entry.model == ModelKind::fdpme)
    return FdpmeParams::make(alpha, params.a.value_or(1.0), params.b.value_or(1.0), params.c.value_or(1.0));

  std::string_view id = entry.id;
  if (entry.kind == EntryKind::transport) id = transport_entry(entry.id).base;
  const double fixed = fpme_default_r(id);
  const bool pinned = iequals(id, "T33ii") || iequals(id, "T33iii") || iequals(id, "T33iii-paper-proof-variant");
  if (pinned && params.r && *params.r != fixed)
    throw DomainError(fmt::format("{} requires r = {}, got {}", id, fixed, *params.r));
  return FpmeParams::make(alpha, params.r.value_or(fixed));
}

CatalogSolution catalog(std::string_view id, const CatalogParams& params) {
  const auto& info = find_entry(id);
  if (info.kind != EntryKind::solution)
    throw LookupError(fmt::format("'{}' is not an exact-solution entry", info.id));
  const auto model = entry_model(info, params);
  const double alpha = alpha_of(model);
  const FracOrder order(alpha);
  const auto& name = info.id;

  if (name == "T33i") {
    const double r = std::get<FpmeParams>(model).r;
    if (!(alpha / (1.0 - r) > -1.0))
      throw DomainError(fmt::format("T33i requires alpha/(1-r) > -1, got {}", alpha / (1.0 - r)));
    const double lambda = 2.0 * r * (r + 1.0) / ((r - 1.0) * (r - 1.0));
    const auto g = lemma21_solution(LemmaCase::I, order, 0.0, r, lambda);
    return {info, model, SeparableSolution::make(g.coeff, g.exponent, 2.0 / (r - 1.0))};
  }
  if (name == "T33ii") {
    const auto g = lemma21_solution(LemmaCase::II, order, 0.0, 0.5, 6.0);
    return {info, model, SeparableSolution::make(g.coeff, g.exponent, -4.0)};
  }
  if (name == "T33iii" || name == "T33iii-paper-proof-variant") {
    if (!(alpha < 0.5)) throw DomainError(fmt::format("{} requires alpha < 1/2, got {}", name, alpha));
    const auto g = lemma21_solution(LemmaCase::III, order, 0.0, 2.0, 12.0);
    // (1/12) rho vs. (1/12) rho^2 with rho = Gamma(1-alpha)/Gamma(1-2alpha).
    const double coeff = name == "T33iii" ? g.coeff : 12.0 * g.coeff * g.coeff;
    return {info, model, SeparableSolution::make(coeff, g.exponent, 2.0)};
  }
  if (name == "FPME-case3")
    return {info, model, SeparableSolution::make(params.lambda.value_or(1.0), alpha - 1.0, 0.0)};
  if (name == "FDPME-case2")
    return {info, model, SeparableSolution::make(params.kappa.value_or(1.0), alpha - 1.0, 0.0)};
  // FDPME cases 3 and 4: D^alpha f = -(2/3) c.
  const double c = std::get<FdpmeParams>(model).c;
  const PowerFunction f{-(2.0 * c / 3.0) * reciprocal_gamma(alpha + 1.0), alpha};
  return {info, model, AffinePlusTime::make(name == "FDPME-case3" ? 1 : -1, f)};
}

SymbolicResidual separable_residual(const PdeModel& model, const MonomialSum& u) {
  SymbolicResidual out;
  out.lhs = u.rl_dt(FracOrder(alpha_of(model)));
  if (const auto* p = std::get_if<FpmeParams>(&model)) {
    if (u.depends_on_x()) out.rhs = u.pow(p->r).d_dx().d_dx();
  } else {
    const auto& q = std::get<FdpmeParams>(model);
    const auto ux = u.d_dx();
    const auto uxx = ux.d_dx();
    out.rhs = q.a * (uxx * uxx) + q.b * (ux * uxx) + q.c * (u * uxx - (2.0 / 3.0) * (ux * ux));
  }
  out.residual = exact_difference(out.lhs, out.rhs);
  return out;
}

SymbolicResidual separable_residual(const PdeModel& model, const SolutionForm& sol) {
  return separable_residual(model, as_sum(sol));
}

ReducedODESpec reduced_ode(std::string_view id, const CatalogParams& params) {
  const auto& info = find_entry(id);
  if (info.kind != EntryKind::reduced)
    throw LookupError(fmt::format("'{}' is not a reduced-equation entry", info.id));
  const auto model = entry_model(info, params);
  const double alpha = alpha_of(model);
  ReducedODESpec s;
  s.case_label = info.id;
  s.params.emplace_back("alpha", alpha);
  const std::string not_verified =
      "stored as text; the RL derivative in z after this change of variables is not defined, so the "
      "equation is not verified (the invariant-surface condition of the ansatz is)";

  if (info.kind == EntryKind::reduced && info.model == ModelKind::fpme) {
    const double r = std::get<FpmeParams>(model).r;
    s.params.emplace_back("r", r);
    if (info.id == "FPME-case1-reduced") {
      s.representative = "r11";
      s.similarity_variable = "x";
      s.ansatz = "u = t^(-alpha/(r-1)) f(x)";
      s.ode_text = "r Gamma(alpha - alpha r/(r-1) + 1)/Gamma((alpha r + 1)/(1-r)) f^(r-2) [(r-1) f'^2 + f f''] = f";
      s.corrected_text = "r Gamma(1 - alpha r/(r-1))/Gamma(1 - alpha/(r-1)) f^(r-2) [(r-1) f'^2 + f f''] = f";
      s.params.emplace_back("coefficient_printed",
                            r * safe_gamma_ratio(1.0 - alpha / (r - 1.0), (alpha * r + 1.0) / (1.0 - r)));
      s.params.emplace_back("coefficient_corrected",
                            r * safe_gamma_ratio(1.0 - alpha * r / (r - 1.0), 1.0 - alpha / (r - 1.0)));
      s.notes.push_back(
          "power rule on t^(-alpha/(r-1)) gives Gamma(1-alpha/(r-1))/Gamma(1-alpha r/(r-1)); the printed "
          "Gamma arguments do not balance");
    } else if (info.id == "FPME-case2-reduced") {
      s.representative = "r12";
      s.similarity_variable = "t";
      s.ansatz = "u = x^(2/(r-1)) g(t)";
      s.ode_text = "D_t^alpha g = [2r(r+1)/(r-1)^2] g^r";
      s.params.emplace_back("lambda", 2.0 * r * (r + 1.0) / ((r - 1.0) * (r - 1.0)));
      s.notes.push_back("power-law solutions are the T33i, T33ii and T33iii catalog entries");
    } else if (info.id == "FPME-case4-reduced" || info.id == "FPME-case5-reduced") {
      const bool four = info.id == "FPME-case4-reduced";
      s.representative = four ? "r14" : "r15";
      s.similarity_variable = four ? "z = t e^-x" : "z = t e^x";
      s.ansatz = four ? "u = f(z) e^(-alpha x/(r-1))" : "u = f(z) e^(alpha x/(r-1))";
      s.ode_text =
          "D_z^alpha f = (alpha r)^2/(r-1)^2 f^r + alpha r^2/(r-1) z f^(r-1) f' + r(r-1) z^2 f^(r-2) f'^2 "
          "+ r z^2 f^(r-1) f'' + beta z f^(r-1) f'";
      s.params.emplace_back("beta", r * (alpha * r + r - 1.0) / (r - 1.0));
      if (!four)
        s.notes.push_back(
            "printed ansatz u = f(t e^x) e^(-alpha x/(r-1)) fails the invariant-surface condition of "
            "V11 - V13; the characteristic du/u = alpha dx/(r-1) gives the exponent +alpha x/(r-1)");
      s.notes.push_back(not_verified);
    } else {
      const double g = params.gamma.value_or(1.0);
      if (g == 0.0) throw DomainError("r16 needs gamma != 0");
      s.representative = "r16";
      s.similarity_variable = "z = t x^(-1/gamma)";
      s.ansatz = "u = f(z) x^((2gamma-alpha)/(gamma(r-1)))";
      s.ode_text =
          "D_z^alpha f = (2gamma-alpha) r/(gamma(r-1)) (gamma r - alpha r + gamma)/(gamma(r-1)) f^r "
          "- (2gamma-alpha) r^2/(gamma^2 (r-1)) z f^(r-1) f' + r(r-1)/gamma^2 z^2 f^(r-2) f'^2 "
          "+ r/gamma^2 z^2 f^(r-1) f'' - r(gamma r - alpha r - r + 1 + gamma)/(gamma(r-1)) z f^(r-1) f'";
      s.params.emplace_back("gamma", g);
      s.notes.push_back(not_verified);
    }
    return s;
  }

  const auto& q = std::get<FdpmeParams>(model);
  s.params.emplace_back("a", q.a);
  s.params.emplace_back("b", q.b);
  s.params.emplace_back("c", q.c);
  if (info.id == "FDPME-case1") {
    if (!(alpha < 0.5)) throw DomainError(fmt::format("FDPME-case1 requires 0 < alpha < 1/2, got {}", alpha));
    s.representative = "r21";
    s.similarity_variable = "x";
    s.ansatz = "u = t^-alpha f(x)";
    s.ode_text = "Gamma(1-alpha)/(1-2alpha) f = a f''^2 + b f' f'' + c f'' - (2/3) c f'^2";
    s.corrected_text = "Gamma(1-alpha)/Gamma(1-2alpha) f = a f''^2 + b f' f'' + c f f'' - (2/3) c f'^2";
    s.params.emplace_back("coefficient_printed", gamma(1.0 - alpha) / (1.0 - 2.0 * alpha));
    s.params.emplace_back("coefficient_corrected", gamma(1.0 - alpha) / gamma(1.0 - 2.0 * alpha));
    s.notes.push_back(
        "power rule on t^-alpha gives Gamma(1-alpha)/Gamma(1-2alpha); c u u_xx contributes c f f''");
  } else {
    const double rho = params.rho.value_or(1.0);
    if (rho == 0.0) throw DomainError("r26 needs rho != 0");
    s.representative = "r26";
    s.similarity_variable = "z = t e^(-x/rho)";
    s.ansatz = "u = f(z) e^(-alpha x/rho)";
    s.ode_text =
        "D_z^alpha f = a((1+2alpha)/rho z f' + 1/rho^2 f'' + alpha^2/rho^2 f)^2 - (2/3) c (z f' + f)^2 "
        "+ c((1+alpha)/rho^2 z f'' f + 1/rho^2 z^2 f f'' + alpha^2/rho^2 f^2 + alpha/rho^2 z f' f) "
        "- b((1+alpha)/rho^2 z^2 f'^2 + 1/rho^3 z^3 f' f'' + alpha^2/rho^3 z f f' + alpha/rho^3 z^2 f'^2 "
        "+ alpha(1+alpha)/rho^3 z f' f + alpha/rho^3 z^2 f'' f + alpha^3/rho^3 f^2 + alpha^2/rho^3 z f f')";
    s.params.emplace_back("rho", rho);
    s.notes.push_back(not_verified);
  }
  return s;
}

TransportSpec transport_entry(std::string_view id) {
  const auto& info = find_entry(id);
  if (info.kind != EntryKind::transport)
    throw LookupError(fmt::format("'{}' is not a transport entry", info.id));
  const std::vector<double> eps{-1.0, 0.5, 2.0};
  if (info.id == "FPME-V11-transport") return {"T33ii", "V11", eps};
  if (info.id == "FPME-V12-transport") return {"T33ii", "V12", eps};
  if (info.id == "FPME-V13-transport") return {"FPME-case3", "V13", eps};
  return {"FDPME-case2", "V23", eps};
}

std::string_view profile_name(Profile p) {
  switch (p) {
    case Profile::sine: return "sin(z)+2";
    case Profile::exp_decay: return "exp(-z)";
    case Profile::rational: return "1/(1+z^2)";
  }
  return "?";
}

AnsatzJet ansatz_jet(const AlgebraSpec& algebra, std::string_view label, std::optional<double> param,
                     Profile profile, double x, double t) {
  // Validates the label and the r16/r26 parameter.
  (void)representative(algebra, label, param);
  const char which = label[2];
  const double pv = param.value_or(0.0);
  const auto name = algebra.name();
  const double alpha = algebra.alpha();
  const double r = algebra.r();
  const Dual dx = ansatz_value(name, which, alpha, r, pv, profile, Dual::variable(x), Dual(t));
  const Dual dt = ansatz_value(name, which, alpha, r, pv, profile, Dual(x), Dual::variable(t));
  return {dx.v, dx.d, dt.d};
}

std::string ansatz_text(AlgebraName algebra, std::string_view label) {
  static const std::pair<const char*, const char*> h1[] = {
      {"r11", "u = t^(-alpha/(r-1)) f(x)"},
      {"r12", "u = x^(2/(r-1)) f(t)"},
      {"r13", "u = f(t)"},
      {"r14", "u = f(t e^-x) e^(-alpha x/(r-1))"},
      {"r15", "u = f(t e^x) e^(alpha x/(r-1))"},
      {"r16", "u = f(t x^(-1/gamma)) x^((2gamma-alpha)/(gamma(r-1)))"},
  };
  static const std::pair<const char*, const char*> h2[] = {
      {"r21", "u = t^-alpha f(x)"},
      {"r22", "u = f(t)"},
      {"r23", "none (eta = 1 with tau = xi = 0)"},
      {"r24", "u = x + f(t)"},
      {"r25", "u = -x + f(t)"},
      {"r26", "u = f(t e^(-x/rho)) e^(-alpha x/rho)"},
  };
  for (const auto& [l, text] : algebra == AlgebraName::H1 ? std::span(h1) : std::span(h2))
    if (label == l) return text;
  throw LookupError(fmt::format("unknown representative '{}'", label));
}

}  // namespace fpme
