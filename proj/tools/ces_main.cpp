// ces: command-line front end for the conditionally-exactly-solvable
// radial-oscillator partner models. Emits spectra, wavefunctions,
// coherent-state diagnostics, measure densities, and verification reports
// as CSV or JSON. Exit codes: 0 success, 1 verification failure,
// 2 usage / parameter error.

#include <cstdio>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "json_wire.hpp"

#include "ces/batch.hpp"
#include "ces/coherent.hpp"
#include "ces/fock.hpp"
#include "ces/measure.hpp"
#include "ces/model.hpp"
#include "ces/quad.hpp"
#include "ces/specfun.hpp"

using json = nlohmann::ordered_json;
using namespace ces;

namespace {

using wire::fmt_double;
using wire::render_json;

struct RunConfig {
  double gamma = 1.0;
  double epsilon = 1.0;
  std::string phase = "broken";
  std::string format = "csv";
  std::string out_path;

  Phase phase_enum() const {
    return phase == "broken" ? Phase::broken : Phase::unbroken;
  }
  model::ModelParams params() const {
    return model::ModelParams(gamma, epsilon, phase_enum());
  }
};

void deliver(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out_path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + cfg.out_path);
  f << payload;
}

json params_header(const RunConfig& cfg, const char* command) {
  json j;
  j["command"] = command;
  j["gamma"] = cfg.gamma;
  j["epsilon"] = cfg.epsilon;
  j["phase"] = cfg.phase;
  return j;
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

int cmd_spectrum(const RunConfig& cfg, int levels) {
  const auto p = cfg.params();
  if (cfg.format == "json") {
    json j = params_header(cfg, "spectrum");
    j["levels"] = levels;
    json rows = json::array();
    for (int n = 0; n < levels; ++n) {
      json row;
      row["n"] = n;
      row["E"] = model::energy(p, n);
      rows.push_back(row);
    }
    j["rows"] = rows;
    deliver(cfg, render_json(j));
    return 0;
  }
  std::string out = "n,E_n\n";
  for (int n = 0; n < levels; ++n) {
    out += std::to_string(n) + "," + fmt_double(model::energy(p, n)) + "\n";
  }
  deliver(cfg, out);
  return 0;
}

// ---------------------------------------------------------------------------
// wavefunction
// ---------------------------------------------------------------------------

constexpr int kLevelCap = 24; // 1F1/Laguerre cancellation grows with n

int cmd_wavefunction(const RunConfig& cfg, const std::string& sector, int n,
                     double x_min, double x_max, int points) {
  if (n > kLevelCap) {
    throw std::invalid_argument("wavefunction: level cap is n <= 24");
  }
  const auto p = cfg.params();
  const Grid defaults = model::default_grid(p, n);
  const Grid grid(x_min > 0.0 ? x_min : defaults.x_min,
                  x_max > 0.0 ? x_max : defaults.x_max,
                  points > 0 ? points : defaults.n_points);
  const bool plus = sector == "+" || sector == "plus";
  const WaveFunction psi = plus ? model::eigenfunction_plus(p, n, grid)
                                : model::eigenfunction_minus(p, n, grid);
  const double norm = quad::norm(psi);

  if (cfg.format == "json") {
    json j = params_header(cfg, "wavefunction");
    j["sector"] = plus ? "+" : "-";
    j["n"] = n;
    j["norm"] = norm;
    json xs = json::array(), vs = json::array();
    for (int i = 0; i < grid.n_points; ++i) {
      xs.push_back(grid.x(i));
      vs.push_back(psi.values[i]);
    }
    j["x"] = xs;
    j["psi"] = vs;
    deliver(cfg, render_json(j));
    return 0;
  }
  std::string out = "x,psi\n";
  for (int i = 0; i < grid.n_points; ++i) {
    out += fmt_double(grid.x(i)) + "," + fmt_double(psi.values[i]) + "\n";
  }
  out += "# norm = " + fmt_double(norm) + "\n";
  deliver(cfg, out);
  return 0;
}

// ---------------------------------------------------------------------------
// coherent
// ---------------------------------------------------------------------------

int cmd_coherent(const RunConfig& cfg, double mu_re, double mu_im,
                 double rel_tail) {
  const auto p = cfg.params();
  const std::complex<double> mu(mu_re, mu_im);
  const auto st = coherent::coherent_coeffs(p, mu, rel_tail);
  const double residual = coherent::eigenvalue_residual(st);
  const auto unc = coherent::uncertainty_product(st);
  const double f_mu = coherent::min_uncertainty_functional(p, std::abs(mu), rel_tail);

  json j = params_header(cfg, "coherent");
  j["mu"] = json::array({mu_re, mu_im});
  j["truncation"] = st.truncation;
  j["c0"] = st.c0;
  json coeffs = json::array();
  for (const auto& c : st.coeffs) {
    coeffs.push_back(json::array({c.real(), c.imag()}));
  }
  j["coeffs"] = coeffs;
  j["truncation_tail"] = st.truncation_tail;
  j["residual"] = residual;
  j["uncertainty_lhs"] = unc.lhs;
  j["uncertainty_rhs"] = unc.rhs;
  j["uncertainty_equal"] =
      std::abs(unc.lhs - unc.rhs) <= 1e-8 * std::max(unc.rhs, 1e-300);
  j["F"] = f_mu;
  deliver(cfg, render_json(j)); // diagnostic record is JSON by contract
  return 0;
}

// ---------------------------------------------------------------------------
// density
// ---------------------------------------------------------------------------

struct Sweep {
  std::string parameter; // "epsilon" or "gamma"
  std::vector<double> values;
};

std::optional<Sweep> parse_sweep(const std::string& spec) {
  if (spec.empty()) return std::nullopt;
  const auto eq = spec.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("--sweep expects <gamma|epsilon>=v1,v2,...");
  }
  Sweep s;
  s.parameter = spec.substr(0, eq);
  if (s.parameter != "gamma" && s.parameter != "epsilon") {
    throw std::invalid_argument("--sweep parameter must be gamma or epsilon");
  }
  std::stringstream ss(spec.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) s.values.push_back(std::stod(item));
  }
  if (s.values.empty()) {
    throw std::invalid_argument("--sweep carries no values");
  }
  return s;
}

int cmd_density(const RunConfig& cfg, double x_max, int samples,
                const std::string& sweep_spec) {
  const auto sweep = parse_sweep(sweep_spec);
  std::vector<RunConfig> configs;
  if (sweep) {
    for (double v : sweep->values) {
      RunConfig c = cfg;
      (sweep->parameter == "gamma" ? c.gamma : c.epsilon) = v;
      configs.push_back(c);
    }
  } else {
    configs.push_back(cfg);
  }

  std::vector<measure::DensityProfile> profiles;
  std::vector<std::string> tags;
  for (const auto& c : configs) {
    profiles.push_back(
        measure::radial_density_profile(c.params(), x_max, samples));
    tags.push_back(sweep ? sweep->parameter + "=" +
                               fmt_double(sweep->parameter == "gamma"
                                              ? c.gamma
                                              : c.epsilon)
                         : "base");
  }

  if (cfg.format == "json") {
    json j = params_header(cfg, "density");
    j["x_max"] = x_max;
    j["samples"] = samples;
    json sets = json::array();
    for (std::size_t k = 0; k < profiles.size(); ++k) {
      json set;
      set["label"] = tags[k];
      set["sigma_integral"] = profiles[k].sigma_integral;
      set["x"] = profiles[k].x;
      set["sigma"] = profiles[k].sigma;
      set["radial_f"] = profiles[k].radial;
      sets.push_back(set);
    }
    j["profiles"] = sets;
    deliver(cfg, render_json(j));
    return 0;
  }

  // CSV: x plus one (sigma, radial_f) column pair per sweep value
  std::string out = "x";
  for (const auto& tag : tags) {
    out += ",sigma[" + tag + "],radial_f[" + tag + "]";
  }
  out += "\n";
  for (int i = 0; i < samples; ++i) {
    out += fmt_double(profiles[0].x[i]);
    for (const auto& prof : profiles) {
      out += "," + fmt_double(prof.sigma[i]) + "," + fmt_double(prof.radial[i]);
    }
    out += "\n";
  }
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    out += "# sigma_integral[" + tags[k] +
           "] = " + fmt_double(profiles[k].sigma_integral) + "\n";
  }
  deliver(cfg, out);
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool passed;
};

void add_check(std::vector<Check>& checks, const std::string& name,
               double value, double tol) {
  checks.push_back({name, value, tol, std::abs(value) <= tol});
}

void suite_algebra(const model::ModelParams& p, std::vector<Check>& checks) {
  const int n = 64;
  const auto d = fock::build_fock_op(p, fock::OpKind::D, n).dense();
  const auto dd = fock::build_fock_op(p, fock::OpKind::Ddag, n).dense();
  const auto h = fock::build_fock_op(p, fock::OpKind::H, n).dense();
  const auto phi_h = fock::build_fock_op(p, fock::OpKind::PhiH, n).dense();

  double scale = 0.0;
  for (int i = 0; i < n - 1; ++i) scale = std::max(scale, std::abs(phi_h[i * n + i]));

  auto commutator_defect = [&](const std::vector<fock::cplx>& a,
                               const std::vector<fock::cplx>& b,
                               const std::vector<fock::cplx>& rhs) {
    double worst = 0.0;
    for (int i = 0; i < n - 1; ++i) {
      for (int j = 0; j < n - 1; ++j) {
        fock::cplx acc = 0.0;
        for (int k = 0; k < n; ++k) {
          acc += a[i * n + k] * b[k * n + j] - b[i * n + k] * a[k * n + j];
        }
        worst = std::max(worst, std::abs(acc - rhs[i * n + j]));
      }
    }
    return worst;
  };

  std::vector<fock::cplx> rhs(d.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = -2.0 * d[i];
  add_check(checks, "[H,D] + 2D = 0", commutator_defect(h, d, rhs) / scale, 1e-12);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = 2.0 * dd[i];
  add_check(checks, "[H,Ddag] - 2Ddag = 0", commutator_defect(h, dd, rhs) / scale,
            1e-12);
  add_check(checks, "[D,Ddag] - Phi(H) = 0", commutator_defect(d, dd, phi_h) / scale,
            1e-12);

  // Phi(H) = Psi(H) - Psi(H-2) coefficient-wise
  const auto psi_c = fock::psi_coeffs(p);
  const auto phi_c = fock::phi_coeffs(p);
  std::vector<double> shifted(5, 0.0);
  for (int k = 0; k <= 4; ++k) {
    double binom = 1.0;
    for (int j = k; j >= 0; --j) {
      shifted[j] += psi_c[k] * binom * std::pow(-2.0, k - j);
      binom = binom * j / (k - j + 1.0);
    }
  }
  double coeff_defect = 0.0;
  for (int k = 0; k <= 4; ++k) {
    const double want = k <= 3 ? phi_c[k] : 0.0;
    coeff_defect = std::max(coeff_defect, std::abs(psi_c[k] - shifted[k] - want) /
                                              std::max(1.0, std::abs(want)));
  }
  add_check(checks, "Phi = Psi(H) - Psi(H-2)", coeff_defect, 1e-12);

  // Psi(E_n) equals the squared ladder coefficient above n, n <= 50
  double worst = 0.0;
  for (int k = 0; k <= 50; ++k) {
    const double c = fock::lowering_coeff(p, k + 1);
    const double lhs = fock::psi(p, model::energy(p, k));
    worst = std::max(worst, std::abs(lhs - c * c) / std::max(c * c, 1.0));
  }
  add_check(checks, "Psi(E_n) = ladder^2", worst, 1e-12);

  add_check(checks, "Casimir DDdag - Psi(H)", fock::casimir_residual(p, 32), 1e-9);

  const auto x1 = fock::build_fock_op(p, fock::OpKind::X1, n).dense();
  const auto x2 = fock::build_fock_op(p, fock::OpKind::X2, n).dense();
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    rhs[i] = fock::cplx(0.0, 0.5) * phi_h[i];
  }
  add_check(checks, "[X1,X2] = (i/2) Phi(H)", commutator_defect(x1, x2, rhs) / scale,
            1e-12);
}

void suite_wavefunction(const model::ModelParams& p, std::vector<Check>& checks) {
  const Grid g = model::default_grid(p, 6);
  std::vector<WaveFunction> minus;
  for (int n = 0; n <= 6; ++n) minus.push_back(model::eigenfunction_minus(p, n, g));

  double ortho = 0.0;
  for (int m = 0; m <= 6; ++m) {
    for (int n = m; n <= 6; ++n) {
      const double want = m == n ? 1.0 : 0.0;
      ortho = std::max(ortho, std::abs(quad::inner(minus[m], minus[n]) - want));
    }
  }
  add_check(checks, "psi- orthonormality (n<=6)", ortho, 1e-6);

  double ladder = 0.0;
  const int base = p.phase() == Phase::broken ? 0 : 1;
  for (int n = base; n <= base + 3; ++n) {
    const auto raised = model::apply_D(p, minus[n], true);
    const double coeff = quad::inner(minus[n + 1], raised);
    const double want = fock::lowering_coeff(p, n + 1);
    ladder = std::max(ladder, std::abs(coeff - want) / std::abs(want));
  }
  add_check(checks, "grid Ddag matrix elements", ladder, 1e-4);

  double inter = 0.0;
  for (int n = base; n <= base + 3; ++n) {
    const double e = model::energy(p, n);
    const int n_plus = p.phase() == Phase::broken ? n : n - 1;
    const auto plus = model::eigenfunction_plus(p, n_plus, g);
    const auto a_minus = model::apply_A(p, minus[n], false);
    double dev = 0.0;
    for (int i = 0; i < g.n_points; ++i) {
      const double d = a_minus.values[i] - std::sqrt(e) * plus.values[i];
      dev += d * d;
    }
    inter = std::max(inter, std::sqrt(dev * g.spacing()));
  }
  add_check(checks, "intertwining A psi- = sqrt(E) psi+", inter, 1e-4);

  if (p.phase() == Phase::unbroken) {
    add_check(checks, "zero mode ||A psi-_0||",
              quad::norm(model::apply_A(p, minus[0], false)), 1e-5);
  }
}

void suite_moments(const model::ModelParams& p, std::vector<Check>& checks) {
  double ident = 0.0;
  double prod = 1.0;
  for (int n = 0; n <= 12; ++n) {
    if (n > 0) {
      const double c = fock::lowering_coeff(
          p, p.phase() == Phase::broken ? n : n + 1);
      prod *= c * c;
    }
    ident = std::max(ident, std::abs(measure::moment(p, n) - prod) / prod);
  }
  add_check(checks, "moment = ladder-square product (n<=12)", ident, 1e-12);

  const auto rep = measure::verify_moments(p, 2);
  add_check(checks, "quadrature moments (n<=2)", rep.max_rel_err, 1e-5);

  std::vector<double> xs;
  for (double x = 1e-6; x < 50.0; x *= 1.9) xs.push_back(x);
  const auto sig = measure::sigma_samples(p, xs);
  double neg = 0.0;
  for (double s : sig) neg = std::min(s, neg);
  add_check(checks, "sigma >= 0 on samples", std::abs(neg), 1e-10);

  const auto res = measure::resolution_of_unity_check(p, 4);
  add_check(checks, "resolution-of-unity diagonal", res.max_deviation, 1e-5);
}

void suite_uncertainty(const model::ModelParams& p, std::vector<Check>& checks) {
  double resid = 0.0, equal = 0.0;
  for (double mu : {0.1, 1.0, 5.0}) {
    const auto st = coherent::coherent_coeffs(p, mu, 1e-14);
    resid = std::max(resid, coherent::eigenvalue_residual(st));
    const auto u = coherent::uncertainty_product(st);
    equal = std::max(equal, std::abs(u.lhs - u.rhs) / std::max(u.rhs, 1e-300));
  }
  add_check(checks, "eigenvalue residual ||D|mu> - mu|mu>||", resid, 1e-10);
  add_check(checks, "uncertainty equality lhs = rhs", equal, 1e-8);

  const auto a = coherent::coherent_coeffs(p, 2.0, 1e-14);
  const auto b = coherent::coherent_coeffs(p, 6.0, 1e-14);
  add_check(checks, "overlap two-route agreement",
            std::abs(coherent::overlap(a, b) - coherent::overlap_closed_form(a, b)),
            1e-10);

  double total = 0.0;
  for (const auto& c : a.coeffs) total += std::norm(c);
  add_check(checks, "normalisation via 0F3", std::abs(total - 1.0), 1e-12);

  const double f0 = coherent::min_uncertainty_functional(p, 0.0);
  const double c1 = fock::lowering_coeff(p, p.phase() == Phase::broken ? 1 : 2);
  add_check(checks, "F(0) = first ladder coefficient squared",
            std::abs(f0 - c1 * c1) / (c1 * c1), 1e-12);
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  const auto p = cfg.params();
  std::vector<Check> checks;
  if (suite == "all" || suite == "algebra") suite_algebra(p, checks);
  if (suite == "all" || suite == "wavefunction") suite_wavefunction(p, checks);
  if (suite == "all" || suite == "moments") suite_moments(p, checks);
  if (suite == "all" || suite == "uncertainty") suite_uncertainty(p, checks);

  bool all_passed = true;
  std::string text;
  for (const auto& c : checks) {
    all_passed = all_passed && c.passed;
    text += std::string(c.passed ? "ok   " : "FAIL ") + c.name + "  value=" +
            fmt_double(c.value) + "  tol=" + fmt_double(c.tolerance) + "\n";
  }
  text += std::string(all_passed ? "PASSED" : "FAILED") + " (" +
          std::to_string(checks.size()) + " checks, suite=" + suite + ")\n";

  if (cfg.format == "json") {
    json j = params_header(cfg, "verify");
    j["suite"] = suite;
    json arr = json::array();
    for (const auto& c : checks) {
      json e;
      e["name"] = c.name;
      e["value"] = c.value;
      e["tolerance"] = c.tolerance;
      e["passed"] = c.passed;
      arr.push_back(e);
    }
    j["checks"] = arr;
    j["passed"] = all_passed;
    deliver(cfg, render_json(j));
  } else {
    deliver(cfg, text);
  }
  return all_passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ces: conditionally exactly solvable radial-oscillator partners,\n"
      "their deformed su(1,1) ladder algebra, non-linear coherent states,\n"
      "and resolution-of-unity measures"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--gamma", cfg.gamma, "angular parameter gamma >= 0");
  app.add_option("--epsilon", cfg.epsilon,
                 "potential parameter (broken: > -2*gamma-2, unbroken: > -1)");
  app.add_option("--phase", cfg.phase, "SUSY phase")
      ->check(CLI::IsMember({"broken", "unbroken"}));
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out_path, "output path (default stdout)");

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "closed-form energy levels");
  int levels = 8;
  sp->add_option("--levels", levels, "number of levels")->check(CLI::PositiveNumber);

  // wavefunction
  auto* wf = app.add_subcommand("wavefunction", "sampled eigenfunction, unit norm");
  std::string sector = "-";
  int wf_n = 0;
  double wf_xmin = 0.0, wf_xmax = 0.0;
  int wf_points = 0;
  wf->add_option("--sector", sector, "+ (oscillator) or - (CES partner)")
      ->check(CLI::IsMember({"+", "-", "plus", "minus"}));
  wf->add_option("--n", wf_n, "level index (cap 24)")->check(CLI::NonNegativeNumber);
  wf->add_option("--x-min", wf_xmin, "grid override: x_min");
  wf->add_option("--x-max", wf_xmax, "grid override: x_max");
  wf->add_option("--points", wf_points, "grid override: point count");

  // coherent
  auto* co = app.add_subcommand("coherent",
                                "lowering-operator eigenstate diagnostics (JSON)");
  double mu_re = 1.0, mu_im = 0.0, rel_tail = 1e-14;
  co->add_option("--mu-re", mu_re, "Re mu");
  co->add_option("--mu-im", mu_im, "Im mu");
  co->add_option("--rel-tail", rel_tail, "truncation tail bound")
      ->check(CLI::PositiveNumber);

  // density
  auto* de = app.add_subcommand("density", "measure density sigma and radial f");
  double x_max = 40.0;
  int samples = 400;
  std::string sweep_spec;
  de->add_option("--x-max", x_max, "sample window end")->check(CLI::PositiveNumber);
  de->add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);
  de->add_option("--sweep", sweep_spec,
                 "sweep one parameter: gamma=v1,v2,... or epsilon=v1,v2,...");

  // verify
  auto* ve = app.add_subcommand("verify", "run the invariant suites");
  std::string suite = "all";
  ve->add_option("--suite", suite, "which suite")
      ->check(CLI::IsMember({"all", "algebra", "wavefunction", "moments",
                             "uncertainty"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e); // 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2; // usage error
  }

  try {
    if (*sp) return cmd_spectrum(cfg, levels);
    if (*wf) return cmd_wavefunction(cfg, sector, wf_n, wf_xmin, wf_xmax, wf_points);
    if (*co) return cmd_coherent(cfg, mu_re, mu_im, rel_tail);
    if (*de) return cmd_density(cfg, x_max, samples, sweep_spec);
    if (*ve) return cmd_verify(cfg, suite);
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const model::node_of_u_error& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const coherent::truncation_error& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
