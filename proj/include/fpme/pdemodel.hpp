#pragma once

// The two model equations
//   FPME:  D_t^alpha u = (u^r)_xx
//   FDPME: D_t^alpha u = a u_xx^2 + b u_x u_xx + c (u u_xx - 2/3 u_x^2)
// together with the catalog of exact group-invariant solutions, the stored
// reduced equations, and the invariant-solution ansatz of each optimal-system
// representative.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fpme/frackernel.hpp"
#include "fpme/liealg.hpp"
#include "fpme/monomial.hpp"

namespace fpme {

struct FpmeParams {
  double alpha;
  double r;

  // Requires 0 < alpha < 1, r > 0, r != 1.
  static FpmeParams make(double alpha, double r);
};

struct FdpmeParams {
  double alpha;
  double a;
  double b;
  double c;

  // Requires 0 < alpha < 1.
  static FdpmeParams make(double alpha, double a, double b, double c);
};

using PdeModel = std::variant<FpmeParams, FdpmeParams>;

enum class ModelKind { fpme, fdpme };

ModelKind kind_of(const PdeModel& model);
double alpha_of(const PdeModel& model);
std::string_view model_name(ModelKind kind);
// The symmetry algebra of the model: H1(alpha, r) or H2(alpha).
AlgebraSpec algebra_of(const PdeModel& model);

// r (r-1) u^(r-2) u_x^2 + r u^(r-1) u_xx; u must be positive.
double fpme_rhs(const FpmeParams& p, double u, double u_x, double u_xx);
double fdpme_rhs(const FdpmeParams& p, double u, double u_x, double u_xx);
double model_rhs(const PdeModel& model, double u, double u_x, double u_xx);

// u = coeff t^t_exp x^x_exp on x > 0, t > 0.
struct SeparableSolution {
  double coeff = 0.0;
  double t_exp = 0.0;
  double x_exp = 0.0;

  static SeparableSolution make(double coeff, double t_exp, double x_exp);
  MonomialSum as_sum() const;
};

// u = slope x + f(t), slope = +1 or -1.
struct AffinePlusTime {
  int slope = 1;
  PowerFunction f;

  static AffinePlusTime make(int slope, const PowerFunction& f);
  MonomialSum as_sum() const;
};

using SolutionForm = std::variant<SeparableSolution, AffinePlusTime>;
MonomialSum as_sum(const SolutionForm& form);

enum class EntryKind { solution, reduced, transport };

struct EntryInfo {
  std::string id;
  EntryKind kind;
  ModelKind model;
  std::string description;
};

// Every identifier accepted by catalog(), reduced_ode() and transport_entry().
const std::vector<EntryInfo>& catalog_entries();
// Case-insensitive lookup; LookupError for unknown identifiers.
const EntryInfo& find_entry(std::string_view id);

// Optional overrides of the entry defaults (alpha 0.4, r per entry,
// lambda = kappa = 1, a = b = c = 1, gamma = rho = 1).
struct CatalogParams {
  std::optional<double> alpha;
  std::optional<double> r;
  std::optional<double> lambda;
  std::optional<double> kappa;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> c;
  std::optional<double> gamma;
  std::optional<double> rho;
};

// The model an entry lives in, with defaults filled and entry constraints
// (e.g. r = 1/2 for T33ii) applied.
PdeModel entry_model(const EntryInfo& entry, const CatalogParams& params);

struct CatalogSolution {
  EntryInfo info;
  PdeModel model;
  SolutionForm form;

  MonomialSum as_sum() const { return fpme::as_sum(form); }
};

// Exact solution entries; DomainError on violated entry constraints,
// LookupError for non-solution identifiers.
CatalogSolution catalog(std::string_view id, const CatalogParams& params = {});

struct SymbolicResidual {
  MonomialSum lhs;
  MonomialSum rhs;
  MonomialSum residual;  // lhs - rhs, cancellation noise removed

  bool exact() const noexcept { return residual.empty(); }
};

// Both sides of the model equation for a monomial-sum u. The FPME requires
// u > 0 wherever it depends on x (single positive term, or integer r).
SymbolicResidual separable_residual(const PdeModel& model, const MonomialSum& u);
SymbolicResidual separable_residual(const PdeModel& model, const SolutionForm& sol);

struct ReducedODESpec {
  std::string case_label;
  std::string representative;  // optimal-system label, e.g. "r16"
  std::string similarity_variable;
  std::string ansatz;
  std::string ode_text;         // as printed
  std::string corrected_text;   // empty when the printed form balances
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::string> notes;
};

// Reduced-equation records; LookupError for other identifiers.
ReducedODESpec reduced_ode(std::string_view id, const CatalogParams& params = {});

struct TransportSpec {
  std::string base;   // solution entry id
  std::string field;  // basis label, e.g. "V12"
  std::vector<double> epsilons;
};

TransportSpec transport_entry(std::string_view id);

enum class Profile { sine, exp_decay, rational };
inline constexpr Profile kProfiles[] = {Profile::sine, Profile::exp_decay, Profile::rational};
std::string_view profile_name(Profile p);

struct AnsatzJet {
  double u = 0.0;
  double u_x = 0.0;
  double u_t = 0.0;
};

// Invariant-solution form of an optimal-system representative with an
// arbitrary profile f: sin(z) + 2, exp(-z) or 1/(1 + z^2). UnsupportedFormError
// for r23, which admits no invariant graph.
AnsatzJet ansatz_jet(const AlgebraSpec& algebra, std::string_view label, std::optional<double> param,
                     Profile profile, double x, double t);
std::string ansatz_text(AlgebraName algebra, std::string_view label);

}  // namespace fpme
