#pragma once

#include <array>
#include <span>
#include <vector>

#include "ces/accuracy.hpp"
#include "ces/quad.hpp"

// Data-parallel sampling kernels. Every kernel comes in two flavours: the
// OpenMP one used by default and a serial reference with identical per-sample
// arithmetic, kept so tests can pin down exact agreement and the bench tool
// can compare them. Builds without OpenMP fall back to the serial path.

namespace ces::model {
class ModelParams;
}

namespace ces::batch {

// Closed-form H+ eigenfunction sampled on the grid (normalised analytically).
std::vector<double> psi_plus_samples(const model::ModelParams& params, int n,
                                     const Grid& grid);
std::vector<double> psi_plus_samples_serial(const model::ModelParams& params,
                                            int n, const Grid& grid);

// G^{40}_{04}(z | b) over a batch of z values, one banded evaluator shared by
// all samples.
std::vector<double> meijer_samples(const std::array<double, 4>& b,
                                   std::span<const double> zs,
                                   const Accuracy& acc);
std::vector<double> meijer_samples_serial(const std::array<double, 4>& b,
                                          std::span<const double> zs,
                                          const Accuracy& acc);

// int_0^inf z^n G(z|b) dz by Simpson in w = z^{1/4}, with the upper limit
// found by doubling until the integrand drops below 1e-16 of its peak.
double meijer_moment(const std::array<double, 4>& b, int n,
                     const Accuracy& acc);
double meijer_moment_serial(const std::array<double, 4>& b, int n,
                            const Accuracy& acc);

} // namespace ces::batch
