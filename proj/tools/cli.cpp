#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include "scq/errors.hpp"
#include "scq/genfun.hpp"
#include "scq/pde.hpp"
#include "scq/quadrature.hpp"
#include "scq/scalar_ode.hpp"
#include "scq/special_functions.hpp"
#include "scq/stability.hpp"

namespace scq::cli {

namespace {

constexpr const char* kVersion = "scq 1.0.0";

struct FamilyOpts {
  std::string family = "shifted-ng";
  double alpha = 0.5;
  std::string calculus = "integral";
  double theta = 0.0;
  int order = 2;
  int wsgl_p = 1;
  int wsgl_q = 0;
  int m = 0;
  double method_theta = std::numeric_limits<double>::quiet_NaN();
  bool unsafe = false;
};

const std::vector<std::string> kFamilies = {
    "trapezoidal", "bdf",  "bt-theta",     "ng",          "bn-theta",          "shifted-cq",
    "shifted-ng",  "wsgl", "lambda-shift", "gbdf2-theta", "central-difference"};

void add_family_options(CLI::App* app, FamilyOpts& f) {
  app->add_option("--family", f.family, "generating function")->check(CLI::IsMember(kFamilies));
  app->add_option("--alpha", f.alpha, "order magnitude");
  app->add_option("--calculus", f.calculus, "integral or derivative")
      ->check(CLI::IsMember({"integral", "derivative"}));
  app->add_option("--theta", f.theta, "shift");
  app->add_option("--order", f.order, "p for bdf, ng, shifted-cq, shifted-ng");
  app->add_option("--wsgl-p", f.wsgl_p, "WSGL shift p");
  app->add_option("--wsgl-q", f.wsgl_q, "WSGL shift q");
  app->add_option("--m", f.m, "lambda-shift exponent; sets theta when given");
  app->add_option("--method-theta", f.method_theta, "parameter of bt-theta and bn-theta");
  app->add_flag("--unsafe-theta", f.unsafe, "skip family range checks");
}

double signed_mu(const FamilyOpts& f) { return f.calculus == "integral" ? f.alpha : -f.alpha; }

GeneratingFunction build_family(const FamilyOpts& f) {
  const double mu = signed_mu(f);
  const bool u = f.unsafe;
  auto need_method_theta = [&] {
    if (std::isnan(f.method_theta)) throw ConstraintError(f.family + " needs --method-theta");
    return f.method_theta;
  };
  if (f.family == "trapezoidal") return make_trapezoidal(mu, u);
  if (f.family == "bdf") return make_bdf(f.order, mu, u);
  if (f.family == "bt-theta") return make_bt_theta(need_method_theta(), mu, u);
  if (f.family == "ng") return make_newton_gregory(f.order, mu);
  if (f.family == "bn-theta") return make_bn_theta(need_method_theta(), mu, u);
  if (f.family == "shifted-cq") return shift_of_cq(make_bdf(f.order, mu, u), f.theta);
  if (f.family == "shifted-ng") return make_shifted_newton_gregory(f.order, mu, f.theta, u);
  if (f.family == "wsgl") return make_wsgl(f.wsgl_p, f.wsgl_q, mu, u);
  if (f.family == "lambda-shift") {
    const double th = f.m > 0 ? lambda_shift_theta(mu, f.m) : f.theta;
    return make_lambda_shift(mu, th, u);
  }
  if (f.family == "gbdf2-theta") return make_gbdf2_theta(mu, f.theta, u);
  return make_central_difference(mu);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConstraintError("cannot parse number '" + item + "'");
    }
  }
  return out;
}

class Csv {
 public:
  explicit Csv(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      if (!first) os_ << ',';
      os_ << h;
      first = false;
    }
    os_ << '\n';
  }
  template <class... T>
  void row(const T&... v) {
    bool first = true;
    ((put(v, first)), ...);
    os_ << '\n';
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
  void put(double v, bool& first) {
    if (!first) os_ << ',';
    os_ << format_double(v);
    first = false;
  }
  void put(std::size_t v, bool& first) {
    if (!first) os_ << ',';
    os_ << v;
    first = false;
  }
  void put(int v, bool& first) { put(static_cast<std::size_t>(v), first); }
};

struct Output {
  std::string path;
  bool unsafe = false;
};

// Parameter map of the parsed subcommand chain, defaults included.
void collect_params(const CLI::App* app, const std::string& prefix, std::map<std::string, std::string>& out) {
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name() == "-h") continue;
    std::string name = opt->get_name();
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    std::string value;
    if (opt->count() > 0) {
      for (const std::string& r : opt->results()) value += (value.empty() ? "" : ",") + r;
      if (opt->get_expected_min() == 0 && value.empty()) value = "true";
    } else {
      value = opt->get_default_str();
      if (opt->get_expected_min() == 0 && value.empty()) value = "false";
    }
    out[prefix + name] = value;
  }
  for (const CLI::App* sub : app->get_subcommands()) {
    collect_params(sub, prefix + sub->get_name() + ".", out);
  }
}

void emit(const std::string& text, const Output& out, const CLI::App& root, const std::string& sub) {
  if (out.path.empty()) {
    std::cout << text;
    return;
  }
  {
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw ConstraintError("cannot open " + out.path + " for writing");
    f << text;
  }
  std::map<std::string, std::string> params;
  for (const CLI::App* s : root.get_subcommands()) collect_params(s, "", params);
  std::ofstream m(out.path + ".manifest", std::ios::binary);
  if (!m) throw ConstraintError("cannot open " + out.path + ".manifest for writing");
  m << "tool=" << kVersion << '\n';
  m << "subcommand=" << sub << '\n';
  for (const auto& [k, v] : params) m << "param." << k << '=' << v << '\n';
  m << "constraints=" << (out.unsafe ? "overridden (--unsafe-theta)" : "checked") << '\n';
  m << "digest.fnv1a64=" << fnv1a_hex(text) << '\n';
}

std::string complex_text(std::complex<double> z) {
  return format_double(z.real()) + (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i";
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"Shifted convolution quadrature toolkit"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // weights
  FamilyOpts wf;
  std::size_t wn = 20;
  Output wout;
  CLI::App* weights = app.add_subcommand("weights", "emit omega_0..omega_N as CSV k,omega");
  weights->option_defaults()->always_capture_default();
  add_family_options(weights, wf);
  weights->add_option("--n", wn, "highest index N");
  weights->add_option("--out", wout.path, "CSV file (stdout when absent)");

  // check
  FamilyOpts cf;
  std::string cmode;
  double cbeta = 1.0, cx = 2.0, ch = 0.125;
  bool ccorr = false;
  std::string cintegrand = "exp";
  Output cout_;
  CLI::App* check = app.add_subcommand("check", "order, condition-omega, homogeneity or convergence");
  check->option_defaults()->always_capture_default();
  check->add_option("mode", cmode)->required()->check(
      CLI::IsMember({"order", "condition-omega", "homogeneity", "convergence"}));
  add_family_options(check, cf);
  check->add_option("--beta", cbeta, "monomial t^(beta-1)");
  check->add_option("--x", cx, "homogeneity: evaluation point");
  check->add_option("--h", ch, "homogeneity: step");
  check->add_flag("--correction", ccorr, "convergence: use starting weights");
  check->add_option("--integrand", cintegrand, "convergence: monomial or exp (t^(beta-1) e^t)")
      ->check(CLI::IsMember({"monomial", "exp"}));
  check->add_option("--out", cout_.path, "CSV file (stdout when absent)");

  // ml
  double mla = 0.5, mlb = 1.0, mlz = 0.0;
  CLI::App* ml = app.add_subcommand("ml", "Mittag-Leffler E_{alpha,beta}(z)");
  ml->add_option("--alpha", mla)->required();
  ml->add_option("--beta", mlb);
  ml->add_option("--z", mlz)->required();

  // stability
  FamilyOpts sf;
  sf.calculus = "derivative";
  std::string smode, sscheme = "I";
  double sdelta = std::numbers::pi / 2.0, slambda = -1.0, sh = 0.1, sy0 = 1.0;
  std::size_t sn = 100, ssamples = 4096;
  Output sout;
  CLI::App* stab = app.add_subcommand("stability", "locus, adelta, x0 or run");
  stab->option_defaults()->always_capture_default();
  stab->add_option("mode", smode)->required()->check(CLI::IsMember({"locus", "adelta", "x0", "run"}));
  stab->add_option("--scheme", sscheme)->check(CLI::IsMember({"I", "II"}));
  add_family_options(stab, sf);
  stab->add_option("--delta", sdelta, "sector half-angle in radians");
  stab->add_option("--lambda", slambda);
  stab->add_option("--h", sh);
  stab->add_option("--n", sn);
  stab->add_option("--y0", sy0);
  stab->add_option("--samples", ssamples, "contour samples for locus");
  stab->add_option("--out", sout.path, "CSV file (stdout when absent)");

  // ode
  FamilyOpts of;
  of.calculus = "derivative";
  double olambda = -1.0, oy0 = 1.0, ot = 1.0;
  std::size_t on = 80;
  std::string osigma;
  Output oout;
  CLI::App* ode = app.add_subcommand("ode", "Caputo test equation D^alpha y = lambda y");
  ode->option_defaults()->always_capture_default();
  add_family_options(ode, of);
  ode->add_option("--lambda", olambda);
  ode->add_option("--y0", oy0);
  ode->add_option("--T", ot);
  ode->add_option("--N", on);
  ode->add_option("--sigma", osigma, "comma-separated correction exponents");
  ode->add_option("--out", oout.path, "CSV file (stdout when absent)");

  // pde
  std::string pmode, pvary = "time", pnorm = "l2", psigma;
  double palpha = 0.5, ptheta = 0.1;
  std::size_t pn = 20, pm = 1000, pfixed = 1000, pbase = 10;
  int pladder = 4;
  bool pnocorr = false, punsafe = false;
  Output pout;
  CLI::App* pde = app.add_subcommand("pde", "time-fractional diffusion: solve or study");
  pde->option_defaults()->always_capture_default();
  pde->add_option("mode", pmode)->required()->check(CLI::IsMember({"solve", "study"}));
  auto* o_alpha = pde->add_option("--alpha", palpha);
  auto* o_theta = pde->add_option("--theta", ptheta);
  pde->add_option("--N", pn, "time steps (solve)");
  pde->add_option("--M", pm, "elements (solve)");
  pde->add_flag("--no-correction", pnocorr);
  pde->add_option("--sigma", psigma, "comma-separated correction exponents (default alpha,2alpha)");
  pde->add_option("--norm", pnorm, "l2 or nodal")->check(CLI::IsMember({"l2", "nodal"}));
  pde->add_option("--vary", pvary)->check(CLI::IsMember({"time", "space"}));
  pde->add_option("--ladder", pladder, "number of step sizes");
  pde->add_option("--fixed", pfixed, "M for a time study, N for a space study");
  pde->add_option("--base", pbase, "coarsest N or M of the ladder");
  pde->add_flag("--unsafe-theta", punsafe);
  pde->add_option("--out", pout.path, "CSV file (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return kExitOk;
    }
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (weights->parsed()) {
      const GeneratingFunction gf = build_family(wf);
      const WeightTable wt = expand_weights(gf, wn);
      Csv csv({"k", "omega"});
      for (std::size_t k = 0; k < wt.omega.size(); ++k) csv.row(k, wt.omega[k]);
      wout.unsafe = wf.unsafe;
      emit(csv.str(), wout, app, "weights");
    } else if (check->parsed()) {
      const GeneratingFunction gf = build_family(cf);
      cout_.unsafe = cf.unsafe;
      if (cmode == "order") {
        const OrderEstimate e = consistency_order(gf);
        Csv csv({"order", "determinate", "fit_residual"});
        csv.row(e.order, e.determinate ? 1 : 0, e.fit_residual);
        emit(csv.str(), cout_, app, "check order");
      } else if (cmode == "condition-omega") {
        const ConditionOmegaReport r = condition_omega_check(gf);
        std::ostringstream os;
        os << "pass=" << (r.pass ? 1 : 0) << '\n';
        for (const auto& z : r.interior_roots) os << "interior_root=" << complex_text(z) << '\n';
        for (const auto& s : r.unit_singularities) {
          os << "unit_singularity=" << complex_text(s.xi) << " alpha_j=" << format_double(s.alpha_j) << '\n';
        }
        for (const auto& w : r.witnesses) os << "witness=" << w << '\n';
        emit(os.str(), cout_, app, "check condition-omega");
      } else if (cmode == "homogeneity") {
        const HomogeneityResult r = homogeneity_check(gf, cbeta, cx, ch);
        Csv csv({"lhs", "rhs", "residual", "relative"});
        csv.row(r.lhs, r.rhs, r.residual, r.relative);
        emit(csv.str(), cout_, app, "check homogeneity");
      } else {
        ConvergenceOptions opt;
        opt.exp_factor = cintegrand == "exp";
        const auto rows = empirical_convergence(gf, cbeta, ccorr, opt);
        Csv csv({"h", "error", "eoc"});
        for (const auto& r : rows) csv.row(r.h, r.error, r.eoc);
        emit(csv.str(), cout_, app, "check convergence");
      }
    } else if (ml->parsed()) {
      std::cout << format_double(mittag_leffler({mla, mlb}, mlz)) << '\n';
    } else if (stab->parsed()) {
      const SchemeSpec s = make_scheme(sscheme == "I" ? Scheme::I : Scheme::II, build_family(sf));
      sout.unsafe = sf.unsafe;
      if (smode == "locus") {
        const StabilityLocus loc = boundary_locus(s, ssamples);
        Csv csv({"re", "im"});
        for (const auto& z : loc.samples) csv.row(z.real(), z.imag());
        emit(csv.str(), sout, app, "stability locus");
      } else if (smode == "adelta") {
        const ADeltaReport r = a_delta_classify(s, sdelta);
        Csv csv({"delta", "stable", "samples", "failures", "boundary_adjacent", "inconclusive"});
        csv.row(r.delta, r.stable ? 1 : 0, r.samples, r.failures, r.boundary_adjacent, r.inconclusive);
        emit(csv.str(), sout, app, "stability adelta");
      } else if (smode == "x0") {
        Csv csv({"x0"});
        csv.row(max_stable_interval(s));
        emit(csv.str(), sout, app, "stability x0");
      } else {
        const RecursionResult r = scalar_recursion_run(s, slambda, sy0, sh, sn);
        Csv csv({"n", "t", "y"});
        for (std::size_t k = 0; k < r.y.size(); ++k) csv.row(k, static_cast<double>(k) * sh, r.y[k]);
        emit(csv.str(), sout, app, "stability run");
        if (r.diverged) std::cerr << "diverged at n=" << r.diverged_at << '\n';
      }
    } else if (ode->parsed()) {
      if (of.calculus != "derivative") throw ConstraintError("ode needs --calculus derivative");
      const GeneratingFunction gf = build_family(of);
      const CaputoRun run = solve_scalar_caputo(gf, olambda, oy0, ot, on, parse_list(osigma));
      Csv csv({"n", "t", "y", "exact"});
      for (std::size_t k = 0; k < run.t.size(); ++k) {
        csv.row(k, run.t[k], run.y[k], reference_solution(of.alpha, olambda, oy0, run.t[k]));
      }
      oout.unsafe = of.unsafe;
      emit(csv.str(), oout, app, "ode");
    } else if (pde->parsed()) {
      const ErrorNorm norm = pnorm == "l2" ? ErrorNorm::L2 : ErrorNorm::Nodal;
      pout.unsafe = punsafe;
      if (pmode == "solve") {
        TFDEProblem p = manufactured_problem(palpha, ptheta, pn, pm);
        p.unsafe_theta = punsafe;
        std::vector<double> sigma;
        if (!pnocorr) sigma = psigma.empty() ? std::vector<double>{palpha, 2.0 * palpha} : parse_list(psigma);
        const PDESolution sol = solve(p, sigma);
        Csv csv({"n", "t", "l2err"});
        const auto& err = norm == ErrorNorm::L2 ? sol.err_l2 : sol.err_nodal;
        for (std::size_t k = 0; k < sol.t.size(); ++k) csv.row(k, sol.t[k], err[k]);
        emit(csv.str(), pout, app, "pde solve");
        if (!sol.analysis_valid) std::cerr << "note: tau exceeds the Gronwall step bound\n";
      } else {
        if (punsafe) throw ConstraintError("pde study does not accept --unsafe-theta");
        StudyOptions opt;
        opt.vary = pvary == "time" ? Vary::Time : Vary::Space;
        opt.fixed = pfixed;
        opt.base = pbase;
        opt.ladder = pladder;
        opt.norm = norm;
        opt.uncorrected = !pnocorr;
        if (!psigma.empty()) opt.sigma = parse_list(psigma);
        if (o_alpha->count() > 0 || o_theta->count() > 0) {
          opt.cases = {{palpha, ptheta}};
        } else if (opt.vary == Vary::Time) {
          opt.cases = {{0.1, 0.0}, {0.1, 0.05}, {0.5, 0.1}, {0.5, 0.2}, {0.9, 0.4}, {0.9, 0.45}};
        } else {
          opt.cases = {{0.3, 0.0}, {0.3, 0.15}, {0.8, 0.3}, {0.8, 0.4}};
        }
        const auto rows = convergence_study(opt);
        Csv csv({"alpha", "theta", "tau", "h", "Ec", "rateC", "Eo", "rateO"});
        for (const auto& r : rows) csv.row(r.alpha, r.theta, r.tau, r.h, r.ec, r.rate_c, r.eo, r.rate_o);
        emit(csv.str(), pout, app, "pde study");
      }
    }
  } catch (const ConstraintError& e) {
    std::cerr << "constraint violation: " << e.what() << '\n';
    return kExitConstraint;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace scq::cli
