#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "fpme/errors.hpp"
#include "fpme/verify.hpp"
#include "oracles.hpp"

using namespace fpme;

namespace {
CatalogParams alpha_only(double a) {
  CatalogParams p;
  p.alpha = a;
  return p;
}

bool has_term(const ResidualReport& r, const std::string& needle) {
  for (const auto& t : r.terms)
    if (t.find(needle) != std::string::npos) return true;
  return false;
}
}  // namespace

TEST_CASE("FPME determining equations vanish once C2 = 0") {
  oracle::Gen g(71);
  for (int i = 0; i < 30; ++i) {
    double r = g.uniform(0.2, 4.0);
    if (std::abs(r - 1) < 0.05) r = 2.0;
    const auto m = FpmeParams::make(g.uniform(0.05, 0.95), r);
    auto fam = fix_constant(fpme_family(m), 2, 0.0);
    const auto rep = check_determining(m, fam);
    CHECK(rep.verdict == Verdict::verified);
    CHECK(rep.terms.empty());
    // with numeric constants as well
    fam = fix_constant(fix_constant(fix_constant(fam, 1, g.uniform(-2, 2)), 3, g.uniform(-2, 2)), 4, g.uniform(-2, 2));
    CHECK(check_determining(m, fam).verdict == Verdict::verified);
  }
}

TEST_CASE("eta of the FPME family cancels the scaling equation by construction") {
  const auto m = FpmeParams::make(0.3, 2.5);
  const auto fam = fpme_family(m);
  // alpha D_t(tau) u - 2 u xi_x + (r-1) eta
  const auto u = Polynomial::variable(Var::u);
  const auto expr = m.alpha * fam.tau.derivative(Var::t) * u - 2.0 * (u * fam.xi.derivative(Var::x)) + (m.r - 1) * fam.eta;
  CHECK(expr.is_zero(1e-15));
}

TEST_CASE("translation in t is excluded by tau(0) = 0") {
  const auto m = FpmeParams::make(0.4, 3.0);
  const auto rep = check_determining(m, fpme_family(m));
  CHECK(rep.verdict == Verdict::refuted);
  CHECK(has_term(rep, "C2"));
}

TEST_CASE("FDPME u-translation leaves -c D4") {
  for (double c : {1.0, 2.0, -0.5}) {
    const auto m = FdpmeParams::make(0.4, 1.0, 1.0, c);
    auto fam = fix_constant(fdpme_family(m), 2, 0.0);
    const auto sym = check_determining(m, fam);
    CHECK(sym.verdict == Verdict::refuted);
    CHECK(has_term(sym, "]: " + format_number(-c) + "·D4"));
    const auto one = check_determining(m, fix_constant(fam, 4, 1.0));
    CHECK(has_term(one, "]: " + format_number(-c)));
  }
}

TEST_CASE("determining residuals are homogeneous in the free constants") {
  const auto m = FdpmeParams::make(0.4, 1.0, 1.0, 1.0);
  const auto base = fix_constant(fix_constant(fix_constant(fdpme_family(m), 2, 0.0), 1, 0.0), 3, 0.0);
  for (double s : {0.5, 2.0, -3.0}) {
    const auto rep = check_determining(m, fix_constant(base, 4, s));
    CHECK(has_term(rep, "]: " + format_number(-s)));
  }
}

TEST_CASE("invariant surface examples") {
  const double alpha = 0.4, r = 3.0;
  const auto h1 = AlgebraSpec::h1(alpha, r);
  const auto pts = SampleGrid{}.points();
  // r11 with t^(-alpha/(r-1)) f(x), f = cosh
  auto sol = EvaluableSolution::from_function(
      [=](double x, double t) { return std::pow(t, -alpha / (r - 1)) * std::cosh(x); });
  sol.x_jet = [=](double x, double t) {
    const double g = std::pow(t, -alpha / (r - 1));
    return std::array<double, 3>{g * std::cosh(x), g * std::sinh(x), g * std::cosh(x)};
  };
  sol.t_derivative = [=](double x, double t) {
    return -alpha / (r - 1) * std::pow(t, -alpha / (r - 1) - 1) * std::cosh(x);
  };
  CHECK(check_invariant_surface(basis_field(h1, 1), sol, pts, 1e-10).verdict == Verdict::verified);
  // V13 with a function of t alone: exactly zero
  const auto tonly = EvaluableSolution::from_function([](double, double t) { return std::exp(t); });
  const auto rep = check_invariant_surface(basis_field(h1, 3), tonly, pts);
  CHECK(rep.max_abs == 0.0);
  // r16 with f = sin of t x^(-1/gamma)
  const double gam = 1.7;
  const auto r16 = EvaluableSolution::from_function([=](double x, double t) {
    return std::sin(t * std::pow(x, -1 / gam)) * std::pow(x, (2 * gam - alpha) / (gam * (r - 1)));
  });
  CHECK(check_invariant_surface(to_field(representative(h1, "r16", gam)), r16, pts, 1e-8).verdict ==
        Verdict::verified);
  // a mismatched field is refuted
  CHECK(check_invariant_surface(basis_field(h1, 2), sol, pts).verdict == Verdict::refuted);
}

TEST_CASE("ansatz families of every representative lie on their invariant surfaces") {
  for (const auto& s : {AlgebraSpec::h1(0.4, 3.0), AlgebraSpec::h1(0.7, 0.5), AlgebraSpec::h2(0.4)}) {
    const std::string pre = s.name() == AlgebraName::H1 ? "r1" : "r2";
    for (int k = 1; k <= 6; ++k) {
      const auto label = pre + std::to_string(k);
      if (label == "r23") continue;
      const auto rep = check_ansatz_surface(s, label, k == 6 ? std::optional<double>(-0.8) : std::nullopt);
      INFO(label);
      CHECK(rep.verdict == Verdict::verified);
      CHECK(rep.max_abs <= 1e-8);
    }
  }
}

TEST_CASE("symmetry transport examples") {
  const auto t33ii = catalog("T33ii", alpha_only(0.5));
  const auto h1 = algebra_of(t33ii.model);
  for (int k = 0; k < 3; ++k)
    CHECK(check_symmetry_transport(t33ii.model, AlgebraElement::basis(h1, k), t33ii.as_sum(), {-1, 0.5, 2}).verdict ==
          Verdict::verified);
  const auto c3 = catalog("FPME-case3");
  CHECK(check_symmetry_transport(c3.model, AlgebraElement::basis(algebra_of(c3.model), 2), c3.as_sum(), {-1, 0.5, 2})
            .verdict == Verdict::verified);

  const double a = 0.4;
  const auto f2 = catalog("FDPME-case2", alpha_only(a));
  const auto rep = check_symmetry_transport(f2.model, AlgebraElement::basis(algebra_of(f2.model), 2), f2.as_sum(), {2.0});
  CHECK(rep.verdict == Verdict::refuted);
  REQUIRE(rep.residual.terms().size() == 1);
  CHECK(rep.residual.terms()[0].coeff == doctest::Approx(2.0 / oracle::gamma(1 - a)).epsilon(1e-12));
  CHECK(rep.residual.terms()[0].t_exp == doctest::Approx(-a));

  const auto variant = catalog("T33iii-paper-proof-variant");
  CHECK_THROWS_AS(check_symmetry_transport(variant.model, AlgebraElement::basis(h1, 0), variant.as_sum(), {1.0}),
                  DomainError);
}

TEST_CASE("flow there and back returns the base solution") {
  const auto s = catalog("T33ii", alpha_only(0.5));
  const auto h1 = algebra_of(s.model);
  const auto u = s.as_sum();
  oracle::Gen g(72);
  for (int i = 0; i < 20; ++i) {
    const auto X = to_field(AlgebraElement{h1, {g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)}});
    const double e = g.uniform(-2, 2);
    const auto fwd = flow(X, e), back = flow(X, -e);
    const auto moved = transport_solution(back, transport_solution(fwd, [u](double x, double t) { return u(x, t); }));
    for (auto [x, t] : SampleGrid{}.points()) CHECK(moved(x, t) == doctest::Approx(u(x, t)).epsilon(1e-12));
  }
}

TEST_CASE("numeric residual checks") {
  const auto s = catalog("T33ii", alpha_only(0.5));
  const auto rep = check_residual_numeric(s.model, EvaluableSolution::from_sum(s.as_sum()), SampleGrid{}, 1e-8, "T33ii");
  CHECK(rep.verdict == Verdict::verified);
  CHECK(rep.max_abs <= 10 * 1e-8 * rep.scale);

  const auto one = EvaluableSolution::from_function([](double, double) { return 1.0; });
  const auto m = FpmeParams::make(0.4, 3.0);
  const auto bad = check_residual_numeric(m, one, SampleGrid{}, 1e-8);
  CHECK(bad.verdict == Verdict::refuted);
  // largest at the earliest time t = 0.25
  CHECK(bad.max_abs == doctest::Approx(std::pow(0.25, -0.4) / oracle::gamma(0.6)).epsilon(1e-6));

  const auto v = catalog("T33iii-paper-proof-variant");
  CHECK(check_residual_numeric(v.model, EvaluableSolution::from_sum(v.as_sum()), SampleGrid{}, 1e-8).verdict ==
        Verdict::refuted);
}

TEST_CASE("symbolic and numeric residuals agree") {
  // empty symbolic residual: numeric within the threshold
  for (const char* id : {"T33i", "T33ii", "T33iii", "FPME-case3", "FDPME-case2"}) {
    const auto s = catalog(id);
    const auto rep = check_residual_numeric(s.model, EvaluableSolution::from_sum(s.as_sum()), SampleGrid{}, 1e-9);
    INFO(id);
    CHECK(rep.verdict == Verdict::verified);
  }
  // single-monomial residual: nodewise equal to the monomial
  CatalogParams p = alpha_only(0.5);
  p.c = 3.0;
  const auto s = catalog("FDPME-case3", p);
  const auto sym = separable_residual(s.model, s.form).residual;
  REQUIRE(sym.terms().size() == 1);
  const auto u = s.as_sum();
  for (auto [x, t] : SampleGrid{1, 2, 3, 0.25, 1, 3}.points()) {
    const double lhs = rl_quadrature(FracOrder(0.5), [&, x = x](double tt) { return u(x, tt); }, t, 1e-10);
    const auto j = u.x_jet(x, t);
    const double rhs = model_rhs(s.model, j[0], j[1], j[2]);
    CHECK(lhs - rhs == doctest::Approx(sym(x, t)).epsilon(1e-8));
  }
}

TEST_CASE("numeric reports do not depend on evaluation order") {
  const auto s = catalog("T33iii");
  const auto a = check_residual_numeric(s.model, EvaluableSolution::from_sum(s.as_sum()), SampleGrid{}, 1e-8);
  const auto b = check_residual_numeric(s.model, EvaluableSolution::from_sum(s.as_sum()), SampleGrid{}, 1e-8);
  CHECK(a.max_abs == b.max_abs);
  CHECK(a.rms == b.rms);
}

TEST_CASE("verify_entry partitions the catalog") {
  const std::set<std::string> refuted{"FDPME-case3", "FDPME-case4", "FDPME-V23-transport", "T33iii-paper-proof-variant"};
  for (const auto& e : catalog_entries()) {
    const auto rep = verify_entry(e.id);
    INFO(e.id);
    CHECK((rep.verdict == Verdict::refuted) == (refuted.count(e.id) == 1));
    CHECK(rep.verdict != Verdict::unverifiable);
  }
}

TEST_CASE("report records") {
  const auto rep = verify_entry("FDPME-case3");
  const auto recs = rep.to_records();
  REQUIRE_FALSE(recs.empty());
  CHECK(recs[0].get("verdict") == "refuted");
  CHECK(recs[0].get("subject") == "FDPME-case3");
}
