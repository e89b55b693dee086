#pragma once

#include <complex>
#include <array>
#include <memory>
#include <vector>
#include <stdexcept>

#include "ces/accuracy.hpp"

namespace ces::specfun {

using cplx = std::complex<double>;

// Thrown when a series or contour integral fails to reach its tolerance.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Principal-branch log Gamma. Lanczos approximation (g = 607/128, 15 terms),
// reflection formula for Re z < 1/2. Throws std::domain_error at the poles
// z = 0, -1, -2, ...
cplx log_gamma_complex(cplx z);

// Real-argument Gamma via exp(log_gamma_complex).
double gamma_real(double x);

// Confluent hypergeometric 1F1(a, b; z), real arguments.
// Terminating polynomial when a is a non-positive integer. For large
// negative z the direct alternating series cancels catastrophically, so the
// evaluation switches to e^z * 1F1(b-a, b; -z), whose terms do not alternate
// once k exceeds |b|. Throws std::invalid_argument when b is a non-positive
// integer.
double kummer_1f1(double a, double b, double z,
                  const Accuracy& acc = default_accuracy());

// d/dz 1F1(a, b; z) = (a/b) 1F1(a+1, b+1; z).
double kummer_1f1_deriv(double a, double b, double z,
                        const Accuracy& acc = default_accuracy());

// Generalised Laguerre polynomial L_n^nu(y), three-term recurrence in n.
// Any real nu is accepted; quadrature-backed uses need nu > -1.
double laguerre(int n, double nu, double y);

// Generalised hypergeometric 0F3(b1, b2, b3; z) by term recurrence
//   t_{k+1} = t_k * z / ((b1+k)(b2+k)(b3+k)(k+1)),
// Kahan-compensated, summed until |t| < rel_tol * |sum|.
double hyper_0f3(double b1, double b2, double b3, double z,
                 const Accuracy& acc = default_accuracy());

struct MeijerResult {
  double value = 0.0;            // Re of the contour integral
  double imag_residual = 0.0;    // |Im| of the contour integral (noise level)
  double half_width = 0.0;       // final contour half-width T
  double step = 0.0;             // final trapezoid step
  double noise_floor = 0.0;      // cancellation floor: values below this are
                                 // indistinguishable from zero
};

// Meijer G^{40}_{04}(z | b1, b2, b3, b4) for z > 0 by direct Mellin-Barnes
// quadrature along the vertical line Re s = c:
//   (1/2\pi) \int_{-T}^{T} prod_j Gamma(b_j + c + it) z^{-c-it} dt.
// The contour half-width doubles until the integrand tail is below
// rel_tol * peak; the trapezoid step halves until the sum is converged.
// Throws std::invalid_argument if a supplied abscissa is not right of all
// poles, convergence_error if the refinement stalls.
MeijerResult meijer_g40_04_full(const std::array<double, 4>& b, double z,
                                const Accuracy& acc = default_accuracy());

double meijer_g40_04(const std::array<double, 4>& b, double z,
                     const Accuracy& acc = default_accuracy());

// Reusable Mellin-Barnes contour for a fixed parameter set: the Gamma
// products along the line are cached once and shared by every z, which is
// what makes density profiles and moment quadratures cheap. evaluate() is
// const and safe to call concurrently once prepared via ensure_level().
class MellinContour {
 public:
  // abscissa_override, when finite, wins over acc.contour_abscissa and the
  // default c = -min(b_i) + 1/4.
  MellinContour(const std::array<double, 4>& b, const Accuracy& acc,
                double abscissa_override =
                    std::numeric_limits<double>::quiet_NaN());

  // Grow the cached grid so trapezoid levels 0..level are available.
  void ensure_level(int level);
  int max_level() const { return max_level_; }

  // Trapezoid value at a given refinement level (step = coarse_step / 2^level).
  cplx sum_at_level(double z, int level) const;

  // Adaptive evaluation: refine until consecutive levels agree to rel_tol,
  // extending the cache if needed.
  MeijerResult evaluate(double z);

  // Evaluation kept below the currently cached level; never mutates. Returns
  // false via `converged` when the cached resolution is insufficient.
  MeijerResult evaluate_cached(double z, bool& converged) const;

  double abscissa() const { return c_; }
  double half_width() const { return half_width_; }

 private:
  std::array<double, 4> b_;
  Accuracy acc_;
  double c_ = 0.0;
  double half_width_ = 0.0;
  double coarse_step_ = 0.25;
  double l1_mass_ = 0.0;
  int max_level_ = 0;
  // Gamma products at the finest grid: node j of level L is t = -T + j*h_L.
  std::vector<cplx> gamma_products_;
};

// Banded G^{40}_{04} evaluator for many z of one parameter set. A fixed
// abscissa c carries a cancellation floor ~ eps * exp(+4 z^{1/4}) relative to
// the exponentially small function, so the evaluator moves the contour to
// c ~ z^{1/4} band by band, which keeps full relative accuracy into the deep
// tail. prepare() must see the full z range first; evaluation afterwards is
// const and safe to call from multiple threads.
class MeijerG40Evaluator {
 public:
  MeijerG40Evaluator(const std::array<double, 4>& b, const Accuracy& acc);

  void prepare(double z_min, double z_max);
  MeijerResult evaluate(double z) const;   // prepared range only
  MeijerResult evaluate_anywhere(double z); // mutating fallback

 private:
  MellinContour& band_for(double z);
  const MellinContour& band_for(double z) const;

  std::array<double, 4> b_;
  Accuracy acc_;
  double base_c_ = 0.0;
  int first_raised_band_ = 0;
  double prepared_lo_ = 1.0, prepared_hi_ = 0.0;
  std::vector<std::unique_ptr<MellinContour>> bands_; // index: floor(z^{1/4})
};

} // namespace ces::specfun
