#include "ces/model.hpp"

#include <cmath>
#include <algorithm>
#include <numbers>

#include "ces/specfun.hpp"
#include "ces/batch.hpp"

namespace ces::model {

namespace {

bool near_integer(double x, double tol = 1e-9) {
  return std::abs(x - std::round(x)) < tol;
}

} // namespace

ModelParams::ModelParams(double gamma, double epsilon, Phase phase)
    : gamma_(gamma), epsilon_(epsilon), phase_(phase) {
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("ModelParams: gamma must satisfy gamma >= 0");
  }
  if (phase == Phase::broken) {
    if (!(epsilon > -2.0 * gamma - 2.0)) {
      throw std::invalid_argument(
          "ModelParams: broken phase requires epsilon > -2*gamma - 2");
    }
  } else {
    if (!(epsilon > -1.0)) {
      throw std::invalid_argument(
          "ModelParams: unbroken phase requires epsilon > -1");
    }
    if (near_integer(gamma + 0.5)) {
      throw std::invalid_argument(
          "ModelParams: unbroken phase requires gamma + 1/2 not an integer");
    }
  }
  // nodelessness scan of u on a coarse grid; a sign change means the
  // parameters left the CES window. Compare signs, not products: u can sit
  // far below sqrt(DBL_MIN) and a product would underflow to zero.
  SusyFactorization fac(*this);
  auto sign_of = [](double v) { return v > 0.0 ? 1 : v < 0.0 ? -1 : 0; };
  int prev = sign_of(fac.u(1e-4));
  for (int i = 1; i <= 400; ++i) {
    const double x = 1e-4 + (20.0 - 1e-4) * i / 400.0;
    const int cur = sign_of(fac.u(x));
    if (prev * cur <= 0) throw node_of_u_error(x);
    prev = cur;
  }
}

SusyFactorization::SusyFactorization(const ModelParams& params,
                                     const Accuracy& acc)
    : params_(params), acc_(acc) {}

double SusyFactorization::u(double x) const {
  return specfun::kummer_1f1(params_.kummer_a(), params_.kummer_b(), -x * x,
                             acc_);
}

double SusyFactorization::u_prime(double x) const {
  // d/dx 1F1(a, b, -x^2) = -2x (a/b) 1F1(a+1, b+1, -x^2)
  const double a = params_.kummer_a();
  if (a == 0.0) return 0.0;
  return -2.0 * x *
         specfun::kummer_1f1_deriv(a, params_.kummer_b(), -x * x, acc_);
}

double SusyFactorization::w(double x) const {
  const double ux = u(x);
  if (ux == 0.0 || !std::isfinite(ux)) throw node_of_u_error(x);
  const double centrifugal = (params_.gamma() + 1.0) / x;
  const double sign = params_.phase() == Phase::broken ? 1.0 : -1.0;
  return x + sign * centrifugal + u_prime(x) / ux;
}

double susy_potential(const ModelParams& params, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("susy_potential: x must be > 0");
  return SusyFactorization(params).w(x);
}

double potential_plus(const ModelParams& params, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("potential_plus: x must be > 0");
  const double g = params.gamma();
  const double e = params.epsilon();
  if (params.phase() == Phase::broken) {
    return 0.5 * x * x + 0.5 * g * (g + 1.0) / (x * x) + e + g + 0.5;
  }
  // gamma -> -gamma - 2 in the closed form
  return 0.5 * x * x + 0.5 * (g + 1.0) * (g + 2.0) / (x * x) + e - g - 1.5;
}

double potential_minus(const ModelParams& params, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("potential_minus: x must be > 0");
  const double g = params.gamma();
  const double e = params.epsilon();
  SusyFactorization fac(params);
  const double ux = fac.u(x);
  if (std::abs(ux) < 1e-300) throw node_of_u_error(x);
  const double r = fac.u_prime(x) / ux;
  if (params.phase() == Phase::broken) {
    return 0.5 * x * x + 0.5 * (g + 1.0) * (g + 2.0) / (x * x) + g - e + 1.5 +
           r * (2.0 * x + 2.0 * (g + 1.0) / x + r);
  }
  return 0.5 * x * x + 0.5 * g * (g + 1.0) / (x * x) - g - e - 0.5 +
         r * (2.0 * x - 2.0 * (g + 1.0) / x + r);
}

double energy(const ModelParams& params, int n) {
  if (n < 0) throw std::invalid_argument("energy: n must be >= 0");
  if (params.phase() == Phase::broken) {
    return 2.0 * n + 2.0 * params.gamma() + 2.0 + params.epsilon();
  }
  if (n == 0) return 0.0;
  return 2.0 * (n - 1) + 1.0 + params.epsilon();
}

Grid default_grid(const ModelParams& params, int n_max) {
  double e_max = 1.0;
  for (int n = 0; n <= n_max; ++n) e_max = std::max(e_max, energy(params, n));
  return Grid(1e-4, 12.0 + std::sqrt(2.0 * e_max), 8001);
}

WaveFunction eigenfunction_plus(const ModelParams& params, int n,
                                const Grid& grid) {
  if (n < 0) throw std::invalid_argument("eigenfunction_plus: n must be >= 0");
  auto values = batch::psi_plus_samples(params, n, grid);
  WaveFunctionLabel label{params.phase(), Sector::plus, n};
  return WaveFunction(grid, std::move(values), label);
}

WaveFunction eigenfunction_minus(const ModelParams& params, int n,
                                 const Grid& grid) {
  if (n < 0) throw std::invalid_argument("eigenfunction_minus: n must be >= 0");
  WaveFunctionLabel label{params.phase(), Sector::minus, n};

  if (params.phase() == Phase::unbroken && n == 0) {
    // zero mode: A psi = 0  =>  psi ~ exp(-int W) = x^{gamma+1} e^{-x^2/2}/u
    SusyFactorization fac(params);
    std::vector<double> v(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
      const double x = grid.x(i);
      const double ux = fac.u(x);
      if (std::abs(ux) < 1e-300) throw node_of_u_error(x);
      v[i] = std::exp((params.gamma() + 1.0) * std::log(x) - 0.5 * x * x) / ux;
    }
    WaveFunction psi(grid, std::move(v), label);
    const double nrm = quad::norm(psi);
    for (double& y : psi.values) y /= nrm;
    return psi;
  }

  const int n_plus = params.phase() == Phase::broken ? n : n - 1;
  const double e = energy(params, n);
  const auto psi_plus = eigenfunction_plus(params, n_plus, grid);
  auto raw = apply_A(params, psi_plus, /*dagger=*/true);
  const double nrm = quad::norm(raw);
  // the exact prefactor is 1/sqrt(E_n); the numerical norm of A^dagger psi+
  // should sit within ~1e-3 of sqrt(E_n), anything worse flags a grid problem
  if (std::abs(nrm / std::sqrt(e) - 1.0) > 1e-3) {
    throw std::runtime_error(
        "eigenfunction_minus: A^dagger norm deviates from sqrt(E_n); "
        "grid too coarse or parameters out of range");
  }
  for (double& y : raw.values) y /= nrm;
  raw.label = label;
  return raw;
}

WaveFunction eigenfunction_minus_closed_form(const ModelParams& params, int n,
                                             const Grid& grid) {
  if (params.phase() != Phase::broken) {
    throw std::invalid_argument(
        "eigenfunction_minus_closed_form: broken phase only");
  }
  const double g = params.gamma();
  const double e = params.epsilon();
  SusyFactorization fac(params);
  // prefactor [2 n! / ((n + gamma + 1 + eps/2) Gamma(n + gamma + 3/2))]^{1/2}
  double log_pref = 0.5 * (std::log(2.0) + std::lgamma(n + 1.0) -
                           std::log(n + g + 1.0 + 0.5 * e) -
                           std::lgamma(n + g + 1.5));
  std::vector<double> v(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    const double ux = fac.u(x);
    if (std::abs(ux) < 1e-300) throw node_of_u_error(x);
    const double ratio = fac.u_prime(x) / (2.0 * x * ux);
    const double body = specfun::laguerre(n, g + 1.5, x * x) +
                        ratio * specfun::laguerre(n, g + 0.5, x * x);
    v[i] = std::exp(log_pref + (g + 2.0) * std::log(x) - 0.5 * x * x) * body;
  }
  WaveFunctionLabel label{params.phase(), Sector::minus, n};
  return WaveFunction(grid, std::move(v), label);
}

WaveFunction apply_A(const ModelParams& params, const WaveFunction& psi,
                     bool dagger) {
  SusyFactorization fac(params);
  const auto dpsi = quad::derivative(psi, 1);
  const double sgn = dagger ? -1.0 : 1.0;
  std::vector<double> v(psi.grid.n_points);
  for (int i = 0; i < psi.grid.n_points; ++i) {
    v[i] = (sgn * dpsi.values[i] + fac.w(psi.grid.x(i)) * psi.values[i]) /
           std::numbers::sqrt2;
  }
  return WaveFunction(psi.grid, std::move(v), psi.label);
}

WaveFunction apply_c(const ModelParams& params, const WaveFunction& psi,
                     bool dagger) {
  const double g = params.gamma();
  const double beta = params.phase() == Phase::broken
                          ? g * (g + 1.0)
                          : (g + 1.0) * (g + 2.0);
  const double sgn = dagger ? -1.0 : 1.0;
  // (sgn d/dx + x) applied twice, then the centrifugal term
  auto ladder_step = [&](const WaveFunction& f) {
    const auto df = quad::derivative(f, 1);
    std::vector<double> v(f.grid.n_points);
    for (int i = 0; i < f.grid.n_points; ++i) {
      v[i] = sgn * df.values[i] + f.grid.x(i) * f.values[i];
    }
    return WaveFunction(f.grid, std::move(v), f.label);
  };
  const auto once = ladder_step(psi);
  auto twice = ladder_step(once);
  for (int i = 0; i < psi.grid.n_points; ++i) {
    const double x = psi.grid.x(i);
    twice.values[i] =
        0.5 * twice.values[i] - 0.5 * beta / (x * x) * psi.values[i];
  }
  return twice;
}

WaveFunction apply_D(const ModelParams& params, const WaveFunction& psi,
                     bool dagger) {
  return apply_A(params, apply_c(params, apply_A(params, psi, false), dagger),
                 true);
}

WaveFunction scaled(const WaveFunction& psi, double factor) {
  WaveFunction out = psi;
  for (double& v : out.values) v *= factor;
  return out;
}

} // namespace ces::model
