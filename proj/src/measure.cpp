#include "ces/measure.hpp"

#include <cmath>

#include "ces/batch.hpp"
#include "ces/fock.hpp"
#include "ces/specfun.hpp"

namespace ces::measure {

double moment(const model::ModelParams& params, int n) {
  if (n < 0) throw std::invalid_argument("moment: n must be >= 0");
  const double g = params.gamma();
  const double e = params.epsilon();
  double m = 1.0;
  if (params.phase() == Phase::broken) {
    for (int k = 0; k < n; ++k) {
      m *= 16.0 * (k + 1.0) * (g + 1.5 + k) * (g + 1.0 + 0.5 * e + k) *
           (g + 2.0 + 0.5 * e + k);
    }
  } else {
    for (int k = 0; k < n; ++k) {
      m *= 16.0 * (k + 1.0) * (g + 2.5 + k) * (0.5 * e + 0.5 + k) *
           (0.5 * e + 1.5 + k);
    }
  }
  return m;
}

std::array<double, 4> sigma_b(const model::ModelParams& params) {
  const double g = params.gamma();
  const double e = params.epsilon();
  if (params.phase() == Phase::broken) {
    return {0.0, g + 0.5, g + 0.5 * e, g + 1.0 + 0.5 * e};
  }
  return {0.0, g + 1.5, 0.5 * e - 0.5, 0.5 * e + 0.5};
}

double sigma_norm_denominator(const model::ModelParams& params) {
  const auto b = sigma_b(params);
  double denom = 16.0;
  for (int j = 1; j < 4; ++j) denom *= specfun::gamma_real(b[j] + 1.0);
  return denom;
}

double sigma_density(const model::ModelParams& params, double x,
                     const Accuracy& acc) {
  if (!(x > 0.0)) throw std::invalid_argument("sigma_density: x must be > 0");
  const double g = specfun::meijer_g40_04(sigma_b(params), x / 16.0, acc);
  return g / sigma_norm_denominator(params);
}

std::vector<double> sigma_samples(const model::ModelParams& params,
                                  std::span<const double> xs,
                                  const Accuracy& acc) {
  std::vector<double> zs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0)) {
      throw std::invalid_argument("sigma_samples: x must be > 0");
    }
    zs[i] = xs[i] / 16.0;
  }
  auto gs = batch::meijer_samples(sigma_b(params), zs, acc);
  const double denom = sigma_norm_denominator(params);
  for (double& v : gs) v /= denom;
  return gs;
}

MomentReport verify_moments(const model::ModelParams& params, int n_max,
                            const Accuracy& acc) {
  if (n_max < 0 || n_max > 8) {
    throw std::invalid_argument(
        "verify_moments: n_max must be in [0, 8] (quadrature conditioning)");
  }
  MomentReport rep;
  rep.n_max = n_max;
  const auto b = sigma_b(params);
  const double denom = sigma_norm_denominator(params);
  for (int n = 0; n <= n_max; ++n) {
    // int x^n sigma dx = 16^n int z^n G dz * 16 / (16 prod Gamma(b_j + 1))
    const double zmom = batch::meijer_moment(b, n, acc);
    const double quad_val = std::pow(16.0, n) * 16.0 * zmom / denom;
    const double closed = moment(params, n);
    rep.quadrature.push_back(quad_val);
    rep.closed.push_back(closed);
    const double re = std::abs(quad_val - closed) / std::abs(closed);
    rep.rel_err.push_back(re);
    rep.max_rel_err = std::max(rep.max_rel_err, re);
  }
  return rep;
}

ResolutionReport resolution_of_unity_check(const model::ModelParams& params,
                                           int basis_size,
                                           const Accuracy& acc) {
  if (basis_size < 1 || basis_size > 8) {
    throw std::invalid_argument(
        "resolution_of_unity_check: basis size must be in [1, 8]");
  }
  const bool broken = params.phase() == Phase::broken;
  const int n_moments = broken ? basis_size - 1 : basis_size - 2;
  const auto rep = verify_moments(params, std::max(n_moments, 0), acc);

  ResolutionReport out;
  for (int i = 0; i < basis_size; ++i) {
    if (!broken && i == 0) {
      // measure supported on {|1>, ...}: the |0> entry vanishes identically
      out.diagonal.push_back(0.0);
      out.target.push_back(0.0);
      continue;
    }
    // |i> carries (moment n) / (product of ladder coefficients squared);
    // the unbroken ladder starts at g_1 (basis index 2)
    const int n = broken ? i : i - 1;
    double prod_sq = 1.0;
    for (int j = broken ? 1 : 2; j <= i; ++j) {
      const double c = fock::lowering_coeff(params, j);
      prod_sq *= c * c;
    }
    out.diagonal.push_back(rep.quadrature[n] / prod_sq);
    out.target.push_back(1.0);
  }
  for (std::size_t i = 0; i < out.diagonal.size(); ++i) {
    out.max_deviation =
        std::max(out.max_deviation, std::abs(out.diagonal[i] - out.target[i]));
  }
  return out;
}

DensityProfile radial_density_profile(const model::ModelParams& params,
                                      double x_max, int n_samples,
                                      const Accuracy& acc) {
  if (!(x_max > 0.0) || n_samples < 2) {
    throw std::invalid_argument("radial_density_profile: bad sample window");
  }
  DensityProfile prof;
  prof.x.resize(n_samples);
  // sigma may behave like a (log-)power at the origin: start at 1e-6, never
  // extrapolate to 0
  const double x_lo = std::min(1e-6, x_max / n_samples);
  for (int i = 0; i < n_samples; ++i) {
    prof.x[i] = x_lo + (x_max - x_lo) * i / (n_samples - 1);
  }
  prof.sigma = sigma_samples(params, prof.x, acc);

  const double g = params.gamma();
  const double e = params.epsilon();
  const std::array<double, 3> nb =
      params.phase() == Phase::broken
          ? std::array<double, 3>{g + 1.5, g + 1.0 + 0.5 * e, g + 2.0 + 0.5 * e}
          : std::array<double, 3>{g + 2.5, 0.5 * e + 0.5, 0.5 * e + 1.5};
  prof.radial.resize(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    // c0^{-2}(sqrt(x)) = 0F3(...; x/16), so f = sigma * 0F3
    prof.radial[i] =
        prof.sigma[i] *
        specfun::hyper_0f3(nb[0], nb[1], nb[2], prof.x[i] / 16.0, acc);
  }
  // normalisation over the half-line, reusing the n = 0 moment machinery
  const double zmom = batch::meijer_moment(sigma_b(params), 0, acc);
  prof.sigma_integral = 16.0 * zmom / sigma_norm_denominator(params);
  return prof;
}

} // namespace ces::measure
