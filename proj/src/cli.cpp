#include "fpme/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fpme/errors.hpp"
#include "fpme/fdsolver.hpp"
#include "fpme/frackernel.hpp"
#include "fpme/liealg.hpp"
#include "fpme/pdemodel.hpp"
#include "fpme/records.hpp"
#include "fpme/verify.hpp"

namespace fpme {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ParamFlags {
  CatalogParams p;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", p.alpha, "fractional order in (0, 1)");
    cmd->add_option("--r", p.r, "FPME exponent (r > 0, r != 1)");
    cmd->add_option("--lambda", p.lambda, "FPME-case3 amplitude");
    cmd->add_option("--kappa", p.kappa, "FDPME-case2 amplitude");
    cmd->add_option("--a", p.a, "FDPME coefficient a");
    cmd->add_option("--b", p.b, "FDPME coefficient b");
    cmd->add_option("--c", p.c, "FDPME coefficient c");
    cmd->add_option("--gamma", p.gamma, "r16 parameter");
    cmd->add_option("--rho", p.rho, "r26 parameter");
  }
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("not a number: '{}'", item));
    }
  }
  return out;
}

SampleGrid parse_grid(const std::string& text) {
  // XLO:XHI:NX,TLO:THI:NT
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("grid must look like XLO:XHI:NX,TLO:THI:NT");
  const auto axis = [](const std::string& s) {
    std::stringstream ss(s);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
      throw UsageError("grid axis must look like LO:HI:N");
    const auto lo = parse_list(a), hi = parse_list(b), n = parse_list(c);
    if (n[0] != std::floor(n[0]) || n[0] < 1) throw UsageError("grid node count must be a positive integer");
    return std::tuple{lo[0], hi[0], static_cast<int>(n[0])};
  };
  const auto [xlo, xhi, nx] = axis(text.substr(0, comma));
  const auto [tlo, thi, nt] = axis(text.substr(comma + 1));
  return {xlo, xhi, nx, tlo, thi, nt};
}

AlgebraSpec parse_algebra(const std::string& name, double alpha, std::optional<double> r) {
  if (name == "h1") {
    if (!r) throw UsageError("--r is required for h1");
    return AlgebraSpec::h1(alpha, *r);
  }
  if (name == "h2") return AlgebraSpec::h2(alpha);
  throw UsageError(fmt::format("unknown algebra '{}'", name));
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::verified: return kExitOk;
    case Verdict::refuted: return kExitRefuted;
    case Verdict::unverifiable: return kExitNumerical;
  }
  return kExitNumerical;
}

void check_model(const std::optional<std::string>& flag, const EntryInfo& entry) {
  if (flag && *flag != model_name(entry.model))
    throw UsageError(fmt::format("entry {} belongs to model {}", entry.id, model_name(entry.model)));
}

PdeModel model_from_flags(const std::string& model, const CatalogParams& p) {
  const double alpha = p.alpha.value_or(0.4);
  if (model == "fpme") return FpmeParams::make(alpha, p.r.value_or(3.0));
  if (model == "fdpme") return FdpmeParams::make(alpha, p.a.value_or(1.0), p.b.value_or(1.0), p.c.value_or(1.0));
  throw UsageError(fmt::format("unknown model '{}'", model));
}

AlgebraElement parse_field(const AlgebraSpec& algebra, const std::string& spec, const CatalogParams& p) {
  if (const auto idx = algebra.basis_index(spec)) return AlgebraElement::basis(algebra, *idx);
  if (spec.size() == 3 && spec[0] == 'r') {
    std::optional<double> param;
    if (spec == "r16") param = p.gamma.value_or(1.0);
    if (spec == "r26") param = p.rho.value_or(1.0);
    return representative(algebra, spec, param);
  }
  const auto c = parse_list(spec);
  if (c.size() != 3) throw UsageError(fmt::format("field '{}' is neither a label nor a1,a2,a3", spec));
  return {algebra, {c[0], c[1], c[2]}};
}

MonomialSum entry_sum(const std::string& id, const CatalogParams& p) { return catalog(id, p).as_sum(); }

struct Runner {
  std::ostream& out;
  std::ostream& err;
  OutputFormat format;

  void emit(const std::vector<Record>& recs) const { write_records(out, recs, format); }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool table_default) {
  CLI::App app{"Symmetry and solution checks for the time-fractional porous medium equations", "fpme"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format_flag;
  app.add_option("--format", format_flag, "records or table")->check(CLI::IsMember({"records", "table"}));

  // rl-deriv
  auto* rl = app.add_subcommand("rl-deriv", "Riemann-Liouville derivative of a power function or samples");
  double rl_alpha = 0.0;
  std::optional<double> rl_power_exp, rl_step;
  double rl_coeff = 1.0, rl_t = 1.0, rl_tol = 1e-10;
  std::string rl_samples, rl_method;
  rl->add_option("--alpha", rl_alpha, "order alpha > 0")->required();
  rl->add_option("--power", rl_power_exp, "exponent p of coeff t^p");
  rl->add_option("--coeff", rl_coeff, "coefficient of t^p");
  rl->add_option("--samples", rl_samples, "file of samples at t = k h, k = 0, 1, ...");
  rl->add_option("--step", rl_step, "sample spacing h");
  rl->add_option("--method", rl_method, "power, quad or gl")->check(CLI::IsMember({"power", "quad", "gl"}));
  rl->add_option("--t", rl_t, "evaluation time (quad) or end time (gl)");
  rl->add_option("--tol", rl_tol, "quadrature tolerance");

  // adjoint-table
  auto* adj = app.add_subcommand("adjoint-table", "Ad(exp(eps V_i)) V_j for all basis pairs");
  std::string adj_algebra;
  double adj_alpha = 0.0, adj_eps = 0.0;
  std::optional<double> adj_r;
  adj->add_option("--algebra", adj_algebra, "h1 or h2")->required();
  adj->add_option("--alpha", adj_alpha, "alpha")->required();
  adj->add_option("--r", adj_r, "r (h1 only)");
  adj->add_option("--epsilon", adj_eps, "group parameter")->required();

  // canonicalize
  auto* can = app.add_subcommand("canonicalize", "optimal-system class of an algebra element");
  std::string can_algebra, can_coeffs;
  double can_alpha = 0.0;
  std::optional<double> can_r;
  can->add_option("--algebra", can_algebra, "h1 or h2")->required();
  can->add_option("--alpha", can_alpha, "alpha")->required();
  can->add_option("--r", can_r, "r (h1 only)");
  can->add_option("--coeffs", can_coeffs, "a1,a2,a3")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "check a claim");
  ver->require_subcommand(1);
  std::optional<std::string> vmodel;
  std::string ventry, vfield, vgrid = "1:2:8,0.25:1:8", veps = "-1,0.5,2";
  std::vector<std::string> vfix;
  bool vnumeric = false;
  double vtol = 1e-8;
  ParamFlags vparams;

  auto* vsol = ver->add_subcommand("solution", "residual of a catalog entry");
  vsol->add_option("--model", vmodel, "fpme or fdpme")->check(CLI::IsMember({"fpme", "fdpme"}));
  vsol->add_option("--entry", ventry, "catalog identifier")->required();
  vsol->add_flag("--numeric", vnumeric, "also run the quadrature check on a grid");
  vsol->add_option("--grid", vgrid, "XLO:XHI:NX,TLO:THI:NT");
  vsol->add_option("--tol", vtol, "quadrature tolerance");
  vparams.attach(vsol);

  auto* vdet = ver->add_subcommand("determining", "substitute the symmetry family into the determining equations");
  vdet->add_option("--model", vmodel, "fpme or fdpme")->required()->check(CLI::IsMember({"fpme", "fdpme"}));
  vdet->add_option("--fix", vfix, "NAME=VALUE for a free constant (default: the t-translation constant = 0)");
  vparams.attach(vdet);

  auto* vtra = ver->add_subcommand("transport", "carry a solution along a symmetry flow");
  vtra->add_option("--model", vmodel, "fpme or fdpme")->check(CLI::IsMember({"fpme", "fdpme"}));
  vtra->add_option("--entry", ventry, "solution entry")->required();
  vtra->add_option("--field", vfield, "basis label, representative or a1,a2,a3")->required();
  vtra->add_option("--epsilons", veps, "comma-separated group parameters");
  vparams.attach(vtra);

  auto* vsur = ver->add_subcommand("surface", "invariant-surface condition");
  vsur->add_option("--field", vfield, "basis label, representative or a1,a2,a3")->required();
  vsur->add_option("--entry", ventry, "solution or reduced entry")->required();
  vsur->add_option("--tol", vtol, "relative tolerance");
  vparams.attach(vsur);

  // solve
  auto* sol = app.add_subcommand("solve", "GL time stepping with Dirichlet data from a catalog solution");
  std::string smodel = "fpme", sentry = "T33ii", sgrid = "1:2:5,0:1:800", sscheme = "explicit", sout;
  std::optional<double> stend;
  double sfloor = 1e-12;
  ParamFlags sparams;
  sol->add_option("--model", smodel, "fpme")->check(CLI::IsMember({"fpme", "fdpme"}));
  sol->add_option("--entry", sentry, "exact solution supplying initial and boundary data");
  sol->add_option("--grid", sgrid, "XLO:XHI:NX,0:TEND:NT");
  sol->add_option("--tend", stend, "end time (overrides the grid)");
  sol->add_option("--scheme", sscheme, "explicit or implicit")->check(CLI::IsMember({"explicit", "implicit"}));
  sol->add_option("--floor", sfloor, "positivity floor");
  sol->add_option("--out", sout, "CSV output file");
  sparams.attach(sol);

  // converge
  auto* con = app.add_subcommand("converge", "refinement study against an exact solution");
  std::string centry = "T33ii", cgrid = "1:2:17,0:1:16", cscheme = "implicit";
  int clevels = 3;
  bool crestart = false;
  ParamFlags cparams;
  con->add_option("--entry", centry, "exact FPME solution");
  con->add_option("--levels", clevels, "refinement levels (>= 3)");
  con->add_option("--grid", cgrid, "coarsest XLO:XHI:NX,0:TEND:NT");
  con->add_option("--scheme", cscheme, "explicit or implicit")->check(CLI::IsMember({"explicit", "implicit"}));
  con->add_flag("--restart", crestart, "seed the first half of the layers with exact data");
  cparams.attach(con);

  // catalog
  auto* cat = app.add_subcommand("catalog", "list or show catalog entries");
  cat->require_subcommand(1);
  auto* clist = cat->add_subcommand("list", "all identifiers");
  auto* cshow = cat->add_subcommand("show", "one entry");
  std::string shentry;
  ParamFlags shparams;
  cshow->add_option("--entry", shentry, "identifier")->required();
  shparams.attach(cshow);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  const OutputFormat format = format_flag.empty() ? (table_default ? OutputFormat::table : OutputFormat::records)
                              : format_flag == "table" ? OutputFormat::table
                                                       : OutputFormat::records;
  Runner run{out, err, format};

  try {
    if (*rl) {
      const FracOrder alpha(rl_alpha);
      std::string method = rl_method;
      if (method.empty()) method = rl_samples.empty() ? "power" : "gl";
      if (!rl_samples.empty()) {
        if (method != "gl") throw UsageError("--samples only supports --method gl");
        if (!rl_step) throw UsageError("--samples needs --step");
        std::ifstream in(rl_samples);
        if (!in) throw UsageError(fmt::format("cannot read '{}'", rl_samples));
        std::vector<double> values;
        std::string tok;
        while (in >> tok) {
          std::replace(tok.begin(), tok.end(), ',', ' ');
          std::stringstream ts(tok);
          double v;
          while (ts >> v) values.push_back(v);
        }
        const auto d = rl_gl(alpha, SampledFunction(0.0, *rl_step, values));
        std::vector<Record> recs;
        for (std::size_t k = 0; k < d.size(); ++k) recs.push_back(Record{}.add("t", d.time(k)).add("value", d.values[k]));
        run.emit(recs);
        return kExitOk;
      }
      if (!rl_power_exp) throw UsageError("give --power P (with --coeff) or --samples FILE");
      const PowerFunction g{rl_coeff, *rl_power_exp};
      if (method == "power") {
        const auto d = rl_power(alpha, g);
        run.emit({Record{}.add("coeff", d.coeff).add("exponent", d.is_zero() ? 0.0 : d.exponent)});
      } else if (method == "quad") {
        const double v = rl_quadrature(alpha, [g](double s) { return g(s); }, rl_t, rl_tol);
        run.emit({Record{}.add("t", rl_t).add("value", v).add("tol", rl_tol)});
      } else {
        if (!rl_step) throw UsageError("--method gl needs --step");
        const auto n = static_cast<std::size_t>(std::llround(rl_t / *rl_step)) + 1;
        std::vector<double> values(n);
        for (std::size_t k = 0; k < n; ++k) values[k] = k == 0 ? (g.exponent > 0 ? 0.0 : g(0.0)) : g(k * *rl_step);
        const auto d = rl_gl(alpha, SampledFunction(0.0, *rl_step, values));
        std::vector<Record> recs;
        for (std::size_t k = 0; k < d.size(); ++k) recs.push_back(Record{}.add("t", d.time(k)).add("value", d.values[k]));
        run.emit(recs);
      }
      return kExitOk;
    }

    if (*adj) {
      const auto algebra = parse_algebra(adj_algebra, adj_alpha, adj_r);
      const auto table = adjoint_table(algebra, adj_eps);
      std::vector<Record> recs;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          recs.push_back(Record{}
                             .add("row", algebra.basis_label(i))
                             .add("col", algebra.basis_label(j))
                             .add("entry", format_element(table[i][j])));
      run.emit(recs);
      return kExitOk;
    }

    if (*can) {
      const auto algebra = parse_algebra(can_algebra, can_alpha, can_r);
      const auto c = parse_list(can_coeffs);
      if (c.size() != 3) throw UsageError("--coeffs needs exactly three numbers");
      const auto form = canonicalize({algebra, {c[0], c[1], c[2]}});
      Record r;
      r.add("label", form.label);
      if (form.param) r.add(algebra.name() == AlgebraName::H1 ? "gamma" : "rho", *form.param);
      r.add("representative", format_element(form.representative));
      run.emit({r});
      return kExitOk;
    }

    if (*ver) {
      const auto& p = vparams.p;
      if (*vsol) {
        const auto& info = find_entry(ventry);
        check_model(vmodel, info);
        auto rep = verify_entry(info.id, p);
        auto recs = rep.to_records();
        Verdict verdict = rep.verdict;
        if (vnumeric) {
          if (info.kind != EntryKind::solution) throw UsageError("--numeric applies to exact-solution entries only");
          const auto s = catalog(info.id, p);
          const auto num = check_residual_numeric(s.model, EvaluableSolution::from_sum(s.as_sum()), parse_grid(vgrid),
                                                  vtol, info.id);
          const auto more = num.to_records();
          recs.insert(recs.end(), more.begin(), more.end());
          if (num.verdict == Verdict::unverifiable && verdict == Verdict::verified) verdict = Verdict::unverifiable;
          if (num.verdict == Verdict::refuted) verdict = Verdict::refuted;
        }
        run.emit(recs);
        return verdict_exit(verdict);
      }
      if (*vdet) {
        const auto model = model_from_flags(*vmodel, p);
        auto family = kind_of(model) == ModelKind::fpme ? fpme_family(std::get<FpmeParams>(model))
                                                        : fdpme_family(std::get<FdpmeParams>(model));
        bool translation_fixed = false;
        for (const auto& f : vfix) {
          const auto eq = f.find('=');
          if (eq == std::string::npos) throw UsageError("--fix needs NAME=VALUE");
          const auto name = f.substr(0, eq);
          const auto it = std::find(family.constant_names.begin(), family.constant_names.end(), name);
          if (it == family.constant_names.end()) throw UsageError(fmt::format("unknown constant '{}'", name));
          const int k = static_cast<int>(it - family.constant_names.begin()) + 1;
          if (k == 2) translation_fixed = true;
          family = fix_constant(family, k, parse_list(f.substr(eq + 1)).at(0));
        }
        if (!translation_fixed) family = fix_constant(family, 2, 0.0);
        const auto rep = check_determining(model, family);
        run.emit(rep.to_records());
        return verdict_exit(rep.verdict);
      }
      if (*vtra) {
        const auto& info = find_entry(ventry);
        check_model(vmodel, info);
        const auto s = catalog(info.id, p);
        const auto algebra = algebra_of(s.model);
        const auto x = parse_field(algebra, vfield, p);
        const auto rep = check_symmetry_transport(s.model, x, s.as_sum(), parse_list(veps),
                                                  fmt::format("{}-{}-transport", info.id, vfield));
        run.emit(rep.to_records());
        return verdict_exit(rep.verdict);
      }
      if (*vsur) {
        const auto& info = find_entry(ventry);
        const auto model = entry_model(info, p);
        const auto algebra = algebra_of(model);
        const auto x = parse_field(algebra, vfield, p);
        ResidualReport rep;
        if (info.kind == EntryKind::solution) {
          rep = check_invariant_surface(to_field(x), EvaluableSolution::from_sum(entry_sum(info.id, p)),
                                        SampleGrid{}.points(), vtol, fmt::format("{}-{}-surface", info.id, vfield));
        } else if (info.kind == EntryKind::reduced) {
          const auto spec = reduced_ode(info.id, p);
          std::optional<double> param;
          for (const auto& [k, v] : spec.params)
            if (k == "gamma" || k == "rho") param = v;
          const auto field = to_field(x);
          const auto pts = SampleGrid{}.points();
          rep.subject = fmt::format("{}-{}-surface", info.id, vfield);
          rep.mode = CheckMode::numeric;
          for (Profile pr : kProfiles) {
            EvaluableSolution es;
            es.value = [=](double xx, double t) { return ansatz_jet(algebra, spec.representative, param, pr, xx, t).u; };
            es.x_jet = [=](double xx, double t) {
              const auto j = ansatz_jet(algebra, spec.representative, param, pr, xx, t);
              return std::array<double, 3>{j.u, j.u_x, 0.0};
            };
            es.t_derivative = [=](double xx, double t) {
              return ansatz_jet(algebra, spec.representative, param, pr, xx, t).u_t;
            };
            const auto one = check_invariant_surface(field, es, pts, vtol);
            rep.max_abs = std::max(rep.max_abs, one.max_abs);
            rep.rms = std::max(rep.rms, one.rms);
            rep.scale = std::max(rep.scale, one.scale);
            rep.tolerance = std::max(rep.tolerance, one.tolerance);
            if (one.verdict != Verdict::verified && rep.verdict != Verdict::unverifiable) rep.verdict = one.verdict;
            rep.notes.push_back(fmt::format("profile {}: max_abs={}", profile_name(pr), format_number(one.max_abs)));
          }
        } else {
          throw UsageError("surface checks take a solution or reduced entry");
        }
        run.emit(rep.to_records());
        return verdict_exit(rep.verdict);
      }
    }

    if (*sol || *con) {
      const bool solving = sol->parsed();
      const std::string& entry_id = solving ? sentry : centry;
      const auto& p = solving ? sparams.p : cparams.p;
      if (solving && smodel != "fpme") throw DomainError("time stepping is implemented for the FPME only");
      const auto& info = find_entry(entry_id);
      if (info.model != ModelKind::fpme) throw DomainError(fmt::format("{} is not an FPME solution", info.id));
      const auto s = catalog(info.id, p);
      const auto u = s.as_sum();
      const SpaceTimeFunction exact = [u](double x, double t) { return u(x, t); };
      const auto g = parse_grid(solving ? sgrid : cgrid);
      if (g.t_lo != 0.0) throw UsageError("solver grids start at t = 0");
      const double t_end = solving && stend ? *stend : g.t_hi;
      auto config = config_from_exact(std::get<FpmeParams>(s.model), exact, g.x_lo, g.x_hi, g.nx, t_end, g.nt);
      const Scheme scheme = (solving ? sscheme : cscheme) == "explicit" ? Scheme::explicit_gl : Scheme::implicit_gl;
      if (solving) {
        config.scheme = scheme;
        config.floor = sfloor;
        const auto grid = solve_fpme(config);
        if (!sout.empty()) {
          std::ofstream f(sout);
          if (!f) throw UsageError(fmt::format("cannot write '{}'", sout));
          grid.write_csv(f);
        }
        double err_end = 0.0;
        for (std::size_t j = 0; j < grid.x.size(); ++j)
          err_end = std::max(err_end, std::abs(grid.values.back()[j] - exact(grid.x[j], grid.t.back())));
        Record r;
        r.add("entry", info.id).add("scheme", std::string(scheme_name(scheme))).add("nx", config.nx).add("nt", config.nt);
        r.add("dx", config.dx()).add("dt", config.dt()).add("stability_ratio", grid.precheck.ratio);
        r.add("precheck", grid.precheck.passed ? "passed" : "failed").add("max_error_t_end", err_end);
        std::vector<Record> recs{r};
        for (const auto& w : grid.warnings) {
          err << "warning: " << w << '\n';
          recs.push_back(Record{}.add("entry", info.id).add("warning", w));
        }
        run.emit(recs);
        return kExitOk;
      }
      ConvergenceOptions opt;
      opt.levels = clevels;
      opt.scheme = scheme;
      opt.restart_from_exact = crestart || info.id == "T33iii" || info.id == "T33iii-paper-proof-variant";
      opt.subject = info.id;
      const auto rep = convergence_study(config, exact, opt);
      run.emit(rep.to_records());
      if (rep.partial) return kExitNumerical;
      return rep.monotone ? kExitOk : kExitRefuted;
    }

    if (*cat) {
      if (*clist) {
        std::vector<Record> recs;
        for (const auto& e : catalog_entries()) {
          const char* kind = e.kind == EntryKind::solution ? "solution" : e.kind == EntryKind::reduced ? "reduced" : "transport";
          recs.push_back(Record{}.add("id", e.id).add("kind", kind).add("model", std::string(model_name(e.model))));
        }
        run.emit(recs);
        return kExitOk;
      }
      const auto& info = find_entry(shentry);
      const auto& p = shparams.p;
      Record r;
      r.add("id", info.id).add("model", std::string(model_name(info.model))).add("description", info.description);
      std::vector<Record> recs;
      if (info.kind == EntryKind::solution) {
        const auto s = catalog(info.id, p);
        r.add("alpha", alpha_of(s.model));
        if (const auto* fp = std::get_if<FpmeParams>(&s.model)) r.add("r", fp->r);
        r.add("u", s.as_sum().to_string());
        recs.push_back(r);
      } else if (info.kind == EntryKind::reduced) {
        const auto spec = reduced_ode(info.id, p);
        r.add("representative", spec.representative).add("variable", spec.similarity_variable).add("ansatz", spec.ansatz);
        r.add("ode", spec.ode_text);
        if (!spec.corrected_text.empty()) r.add("corrected", spec.corrected_text);
        for (const auto& [k, v] : spec.params) r.add(k, v);
        recs.push_back(r);
        for (const auto& n : spec.notes) recs.push_back(Record{}.add("id", info.id).add("note", n));
      } else {
        const auto t = transport_entry(info.id);
        std::string eps;
        for (double e : t.epsilons) eps += (eps.empty() ? "" : ",") + format_number(e);
        r.add("base", t.base).add("field", t.field).add("epsilons", eps);
        recs.push_back(r);
      }
      run.emit(recs);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LookupError& e) {
    err << "lookup error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedFormError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitUsage;
  } catch (const AccuracyError& e) {
    err << "numerical failure: " << e.what() << " (achieved " << format_number(e.achieved()) << ")\n";
    return kExitNumerical;
  } catch (const InstabilityError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  err << "usage error: no command\n";
  return kExitUsage;
}

}  // namespace fpme
