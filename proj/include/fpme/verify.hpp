#pragma once

// Executable checks of symmetry and solution claims. Every check returns a
// ResidualReport; a failed claim is a "refuted" verdict, never an exception.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpme/liealg.hpp"
#include "fpme/monomial.hpp"
#include "fpme/pdemodel.hpp"
#include "fpme/polynomial.hpp"
#include "fpme/records.hpp"

namespace fpme {

enum class Verdict { verified, refuted, unverifiable };
enum class CheckMode { symbolic, numeric };

std::string_view verdict_name(Verdict v);
std::string_view mode_name(CheckMode m);

struct ResidualReport {
  std::string subject;
  CheckMode mode = CheckMode::symbolic;
  Verdict verdict = Verdict::verified;
  // Rendered residual terms (symbolic mode).
  std::vector<std::string> terms;
  // Residual of the last symbolic solution check, if any.
  MonomialSum residual;
  double max_abs = 0.0;
  double rms = 0.0;
  double tolerance = 0.0;
  double scale = 1.0;
  std::vector<std::string> notes;

  // Summary record, then one record per term and per note.
  std::vector<Record> to_records() const;
};

// Infinitesimals tau, xi, eta as polynomials in (t, x, u, K1..K4).
struct SymmetryFamily {
  Polynomial tau;
  Polynomial xi;
  Polynomial eta;
  std::array<std::string, 4> constant_names;
};

// tau = C1 t + C2, xi = C3 x + C4, eta = (2 C3 - alpha C1)/(r-1) u.
SymmetryFamily fpme_family(const FpmeParams& p);
// tau = D1 t + D2, xi = D3, eta = -alpha D1 u + D4.
SymmetryFamily fdpme_family(const FdpmeParams& p);
// Fixes constant k (1..4) to a value.
SymmetryFamily fix_constant(SymmetryFamily family, int k, double value);

inline constexpr double kDeterminingTol = 1e-14;

// Substitutes the family into each listed determining equation (the binomial
// series for n = 1..5 and the condition tau(t=0) = 0 included). Equations that
// do not vanish identically are reported as terms "eqN: polynomial".
ResidualReport check_determining(const PdeModel& model, const SymmetryFamily& family);

// A solution u(x, t) with optional analytic derivatives.
struct EvaluableSolution {
  std::function<double(double x, double t)> value;
  // (u, u_x, u_xx); central differences when empty.
  std::function<std::array<double, 3>(double x, double t)> x_jet;
  std::function<double(double x, double t)> t_derivative;

  static EvaluableSolution from_sum(const MonomialSum& u);
  static EvaluableSolution from_function(std::function<double(double, double)> f);

  std::array<double, 3> jet(double x, double t) const;
  double u_t(double x, double t) const;
  // Central-difference step 1e-6 * max(1, |x|) for first derivatives.
  double u_x(double x, double t) const;
};

struct SampleGrid {
  double x_lo = 1.0;
  double x_hi = 2.0;
  int nx = 8;
  double t_lo = 0.25;
  double t_hi = 1.0;
  int nt = 8;

  // Node list, x-major: (x_i, t_j) with both endpoints included.
  std::vector<std::pair<double, double>> points() const;
};

// max |xi Theta_x + tau Theta_t - eta(Theta)| over the points, verified when
// <= tol * max(1, max |eta|).
ResidualReport check_invariant_surface(const AffineScalingField& field, const EvaluableSolution& sol,
                                       const std::vector<std::pair<double, double>>& points,
                                       double tol = 1e-8, std::string subject = "surface");

// Symbolic residual of an exact catalog solution, with the known notes on
// discrepant entries.
ResidualReport check_solution(const CatalogSolution& sol);
ResidualReport check_solution_sum(const PdeModel& model, const MonomialSum& u, std::string subject);

// Transports base along flow(X, eps) for each eps and checks the image
// symbolically. DomainError when base itself is not an exact solution.
ResidualReport check_symmetry_transport(const PdeModel& model, const AlgebraElement& x,
                                        const MonomialSum& base, const std::vector<double>& epsilons,
                                        std::string subject = "transport");

// LHS by rl_quadrature at each node, RHS from x-derivatives; verified when
// max_abs <= 10 quad_tol scale with scale = max(1, |LHS|, |RHS|).
ResidualReport check_residual_numeric(const PdeModel& model, const EvaluableSolution& sol,
                                      const SampleGrid& grid, double quad_tol,
                                      std::string subject = "numeric");

// Invariant-surface check of a representative's ansatz with all three
// profiles on the default 8x8 grid.
ResidualReport check_ansatz_surface(const AlgebraSpec& algebra, std::string_view label,
                                    std::optional<double> param, double tol = 1e-8);

// Runs the natural check of any catalog entry: symbolic residual for
// solutions, transport for transport entries, ansatz surface for reduced
// entries.
ResidualReport verify_entry(std::string_view id, const CatalogParams& params = {});

}  // namespace fpme
