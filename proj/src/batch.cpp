#include "ces/batch.hpp"

#include <cmath>

#include "ces/model.hpp"
#include "ces/specfun.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ces::batch {

namespace {

// one grid point of the closed-form H+ eigenfunction; shared by both flavours
// so that serial and parallel results are bitwise identical
double psi_plus_point(double x, int n, double gamma_eff, double log_norm) {
  const double nu = gamma_eff + 0.5;
  return std::exp(log_norm + (gamma_eff + 1.0) * std::log(x) - 0.5 * x * x) *
         specfun::laguerre(n, nu, x * x);
}

struct PsiPlusSpec {
  double gamma_eff;
  double log_norm;
};

PsiPlusSpec psi_plus_spec(const model::ModelParams& params, int n) {
  // unbroken phase: the regular H+ tower carries centrifugal strength
  // (gamma+1)(gamma+2), i.e. an effective angular parameter gamma + 1
  const double ge = params.phase() == Phase::broken ? params.gamma()
                                                    : params.gamma() + 1.0;
  const double log_norm = 0.5 * (std::log(2.0) + std::lgamma(n + 1.0) -
                                 std::lgamma(n + ge + 1.5));
  return {ge, log_norm};
}

} // namespace

std::vector<double> psi_plus_samples_serial(const model::ModelParams& params,
                                            int n, const Grid& grid) {
  const auto spec = psi_plus_spec(params, n);
  std::vector<double> v(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    v[i] = psi_plus_point(grid.x(i), n, spec.gamma_eff, spec.log_norm);
  }
  return v;
}

std::vector<double> psi_plus_samples(const model::ModelParams& params, int n,
                                     const Grid& grid) {
  const auto spec = psi_plus_spec(params, n);
  std::vector<double> v(grid.n_points);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < grid.n_points; ++i) {
    v[i] = psi_plus_point(grid.x(i), n, spec.gamma_eff, spec.log_norm);
  }
  return v;
}

std::vector<double> meijer_samples_serial(const std::array<double, 4>& b,
                                          std::span<const double> zs,
                                          const Accuracy& acc) {
  if (zs.empty()) return {};
  specfun::MeijerG40Evaluator eval(b, acc);
  double lo = 1e300, hi = 0.0;
  for (double z : zs) {
    lo = std::min(lo, z);
    hi = std::max(hi, z);
  }
  eval.prepare(lo, hi);
  std::vector<double> out(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    out[i] = eval.evaluate(zs[i]).value;
  }
  return out;
}

std::vector<double> meijer_samples(const std::array<double, 4>& b,
                                   std::span<const double> zs,
                                   const Accuracy& acc) {
  if (zs.empty()) return {};
  specfun::MeijerG40Evaluator eval(b, acc);
  double lo = 1e300, hi = 0.0;
  for (double z : zs) {
    lo = std::min(lo, z);
    hi = std::max(hi, z);
  }
  eval.prepare(lo, hi);
  std::vector<double> out(zs.size());
  std::vector<std::size_t> retry;
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<std::size_t> local_retry;
#pragma omp for schedule(dynamic, 16) nowait
    for (long i = 0; i < static_cast<long>(zs.size()); ++i) {
      try {
        out[i] = eval.evaluate(zs[i]).value;
      } catch (const specfun::convergence_error&) {
        local_retry.push_back(static_cast<std::size_t>(i));
      }
    }
#pragma omp critical
    retry.insert(retry.end(), local_retry.begin(), local_retry.end());
  }
#else
  for (std::size_t i = 0; i < zs.size(); ++i) {
    try {
      out[i] = eval.evaluate(zs[i]).value;
    } catch (const specfun::convergence_error&) {
      retry.push_back(i);
    }
  }
#endif
  // rare: cached resolution was not enough, refine serially
  for (std::size_t i : retry) out[i] = eval.evaluate_anywhere(zs[i]).value;
  return out;
}

namespace {

// Simpson in w with z = w^p. G decays like exp(-4 z^{1/4}), so any p >= 4
// keeps the tail tame; near the origin G grows like z^{min b} (min b > -1 in
// every admissible parameter set), so p is raised until the transformed
// integrand z^n G p w^{p-1} ~ w^{p(n + min_b + 1) - 1} vanishes at least
// quadratically at w = 0.
struct MomentGeometry {
  double w_hi;
  int m; // even panel count
  int p; // substitution power
};

int substitution_power(const std::array<double, 4>& b, int n) {
  const double min_b = *std::min_element(b.begin(), b.end());
  const double needed = 3.0 / (n + min_b + 1.0);
  return std::max(4, static_cast<int>(std::ceil(needed)));
}

double z_of_w(double w, int p) {
  double z = 1.0;
  for (int k = 0; k < p; ++k) z *= w;
  return z;
}

MomentGeometry moment_geometry(specfun::MeijerG40Evaluator& eval,
                               const std::array<double, 4>& b, int n) {
  const int p = substitution_power(b, n);
  auto integrand = [&](double w) {
    const double z = z_of_w(w, p);
    if (z < 1e-280) return 0.0;
    const auto r = eval.evaluate_anywhere(z);
    return std::pow(z, n) * r.value * p * z_of_w(w, p - 1);
  };
  double w_hi = std::pow(16.0, 4.0 / p);
  double peak = 0.0;
  for (int i = 0; i <= 64; ++i) {
    peak = std::max(peak, std::abs(integrand(w_hi * i / 64.0)));
  }
  const double w_cap = std::pow(1e9, 1.0 / p);
  while (std::abs(integrand(w_hi)) > 1e-16 * peak && w_hi < w_cap) {
    w_hi *= 1.5;
    peak = std::max(peak, std::abs(integrand(w_hi * 0.75)));
  }
  return {w_hi, 8000, p};
}

// shared scaffolding: node set, samples -> Simpson sum (serial, fixed order)
double moment_from_samples(const MomentGeometry& geo, int n,
                           std::span<const double> g_values) {
  const double h = geo.w_hi / geo.m;
  double s = 0.0;
  for (int i = 1; i <= geo.m; ++i) {
    const double w = i * h;
    const double z = z_of_w(w, geo.p);
    const double f = std::pow(z, n) * g_values[i - 1] * geo.p *
                     z_of_w(w, geo.p - 1);
    s += f * (i == geo.m ? 1.0 : (i % 2 ? 4.0 : 2.0));
  }
  return s * h / 3.0; // the i = 0 node vanishes by the choice of p
}

std::vector<double> moment_nodes(const MomentGeometry& geo) {
  const double h = geo.w_hi / geo.m;
  std::vector<double> zs(geo.m);
  for (int i = 1; i <= geo.m; ++i) zs[i - 1] = z_of_w(i * h, geo.p);
  return zs;
}

} // namespace

double meijer_moment_serial(const std::array<double, 4>& b, int n,
                            const Accuracy& acc) {
  specfun::MeijerG40Evaluator probe(b, acc);
  const auto geo = moment_geometry(probe, b, n);
  const auto zs = moment_nodes(geo);
  const auto gs = meijer_samples_serial(b, zs, acc);
  return moment_from_samples(geo, n, gs);
}

double meijer_moment(const std::array<double, 4>& b, int n,
                     const Accuracy& acc) {
  specfun::MeijerG40Evaluator probe(b, acc);
  const auto geo = moment_geometry(probe, b, n);
  const auto zs = moment_nodes(geo);
  const auto gs = meijer_samples(b, zs, acc);
  return moment_from_samples(geo, n, gs);
}

} // namespace ces::batch
