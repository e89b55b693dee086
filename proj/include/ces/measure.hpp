#pragma once

#include <array>
#include <vector>

#include "ces/accuracy.hpp"
#include "ces/model.hpp"

namespace ces::measure {

// Closed-form power moments of the resolution-of-unity density:
//   broken   M_n = 16^n n! (g+3/2)_n (g+1+e/2)_n (g+2+e/2)_n
//   unbroken M_n = 16^n n! (g+5/2)_n (e/2+1/2)_n (e/2+3/2)_n.
double moment(const model::ModelParams& params, int n);

// Meijer parameters of sigma: G^{40}_{04}(x/16 | b) / (16 prod Gamma(b_j+1)),
// with b = (0, g+1/2, g+e/2, g+1+e/2) broken and
// b = (0, g+3/2, e/2-1/2, e/2+1/2) unbroken.
std::array<double, 4> sigma_b(const model::ModelParams& params);
double sigma_norm_denominator(const model::ModelParams& params);

// The density sigma(x) on the positive half-line.
double sigma_density(const model::ModelParams& params, double x,
                     const Accuracy& acc = default_accuracy());

// Batch version (shared contour cache, parallel sampling).
std::vector<double> sigma_samples(const model::ModelParams& params,
                                  std::span<const double> xs,
                                  const Accuracy& acc = default_accuracy());

struct MomentReport {
  int n_max = 0;
  std::vector<double> quadrature; // int x^n sigma dx
  std::vector<double> closed;     // moment(params, n)
  std::vector<double> rel_err;
  double max_rel_err = 0.0;
};

// Quadrature moments of sigma against the closed forms, n = 0..n_max (<= 8).
MomentReport verify_moments(const model::ModelParams& params, int n_max,
                            const Accuracy& acc = default_accuracy());

struct ResolutionReport {
  std::vector<double> diagonal; // <n| R |n>
  std::vector<double> target;   // 1, or 0 in the unbroken |0> slot
  double max_deviation = 0.0;
};

// Diagonal of R = int d rho |mu><mu| in the energy basis: the angular
// integral kills every off-diagonal element exactly, and the diagonal
// reduces to (quadrature moment n) / prod f_i^2. Unbroken measure is
// supported on {|1>, ...}, so the |0> entry is identically zero and the
// target is 1 - |0><0|.
ResolutionReport resolution_of_unity_check(const model::ModelParams& params,
                                           int basis_size,
                                           const Accuracy& acc = default_accuracy());

struct DensityProfile {
  std::vector<double> x;
  std::vector<double> sigma;
  std::vector<double> radial; // f(x) = sigma(x) / c0^2(sqrt(x)) = sigma * 0F3
  double sigma_integral = 0.0; // int sigma over the half-line (wide window)
};

DensityProfile radial_density_profile(const model::ModelParams& params,
                                      double x_max, int n_samples,
                                      const Accuracy& acc = default_accuracy());

} // namespace ces::measure
