#pragma once

#include <functional>

#include "ces/accuracy.hpp"
#include "ces/quad.hpp"

namespace ces::model {

// Thrown when u(x) vanishes on the working grid, i.e. the parameters are
// outside the conditionally-solvable window.
class node_of_u_error : public std::runtime_error {
 public:
  explicit node_of_u_error(double x)
      : std::runtime_error("u(x) has a node near x = " + std::to_string(x) +
                           "; parameters are outside the CES window"),
        x_node(x) {}
  double x_node;
};

// Model parameters. gamma >= 0 in both phases; the broken phase requires
// epsilon > -2 gamma - 2, the unbroken phase epsilon > -1 (conservative
// window) and gamma + 1/2 not an integer (the confluent series parameter
// -gamma - 1/2 must avoid non-positive integers). Nodelessness of u is
// checked on a scan grid at construction.
class ModelParams {
 public:
  ModelParams(double gamma, double epsilon, Phase phase);

  double gamma() const { return gamma_; }
  double epsilon() const { return epsilon_; }
  Phase phase() const { return phase_; }

  // parameters of u(x) = 1F1(a, b, -x^2)
  double kummer_a() const { return 0.5 * (1.0 - epsilon_); }
  double kummer_b() const {
    return phase_ == Phase::broken ? gamma_ + 1.5 : -gamma_ - 0.5;
  }

 private:
  double gamma_;
  double epsilon_;
  Phase phase_;
};

// The factorisation data: u, u', and the SUSY potential
//   W(x) = x + (gamma+1)/x + u'/u   (broken)
//   W(x) = x - (gamma+1)/x + u'/u   (unbroken).
class SusyFactorization {
 public:
  explicit SusyFactorization(const ModelParams& params,
                             const Accuracy& acc = default_accuracy());

  double u(double x) const;
  double u_prime(double x) const;
  double w(double x) const; // throws node_of_u_error if u vanishes at x

  const ModelParams& params() const { return params_; }

 private:
  ModelParams params_;
  Accuracy acc_;
};

double susy_potential(const ModelParams& params, double x);

// V+ : generalised radial harmonic oscillator.
double potential_plus(const ModelParams& params, double x);

// V- : the conditionally exactly solvable partner.
double potential_minus(const ModelParams& params, double x);

// Spectrum: broken E_n = 2n + 2 gamma + 2 + epsilon; unbroken E_0 = 0 and
// E_{n+1} = 2n + 1 + epsilon.
double energy(const ModelParams& params, int n);

// Default working grid: x_min = 1e-4, x_max = 12 + sqrt(2 E_max),
// 8001 points.
Grid default_grid(const ModelParams& params, int n_max);

// Closed-form H+ eigenfunctions, unit L2 norm on the grid scale. In the
// unbroken phase this is the regular tower of the (gamma+1)-sector
// oscillator.
WaveFunction eigenfunction_plus(const ModelParams& params, int n,
                                const Grid& grid);

// H- eigenfunctions built by applying A^dagger to psi+_n with finite
// differences (E_n^{-1/2} A^dagger psi+_n), then renormalised. The unbroken
// n = 0 state is the zero mode ~ x^{gamma+1} e^{-x^2/2} / u(x).
WaveFunction eigenfunction_minus(const ModelParams& params, int n,
                                 const Grid& grid);

// Corrected closed form of psi-_n (broken phase):
//   prefactor * x^{gamma+2} e^{-x^2/2} [L_n^{gamma+3/2}(x^2)
//                + u'/(2 x u) L_n^{gamma+1/2}(x^2)].
// The term in square brackets needs the Laguerre factor on u'/(2xu); the
// bare-u'/(2xu) variant does not solve the eigenvalue problem for n >= 1
// (tests demonstrate this).
WaveFunction eigenfunction_minus_closed_form(const ModelParams& params, int n,
                                             const Grid& grid);

// A = (d/dx + W)/sqrt(2), A^dagger = (-d/dx + W)/sqrt(2).
WaveFunction apply_A(const ModelParams& params, const WaveFunction& psi,
                     bool dagger);

// Oscillator ladder in the H+ sector: c = (d/dx + x)^2/2 - beta/(2x^2) with
// beta = gamma (gamma+1) broken, (gamma+1)(gamma+2) unbroken, i.e. the
// centrifugal strength of V+ in each phase - the choice that actually
// lowers/raises the H+ tower and reproduces the ladder constants.
WaveFunction apply_c(const ModelParams& params, const WaveFunction& psi,
                     bool dagger);

// D = A^dagger c A, D^dagger = A^dagger c^dagger A, by composition.
WaveFunction apply_D(const ModelParams& params, const WaveFunction& psi,
                     bool dagger);

// scale * psi, convenience for tests
WaveFunction scaled(const WaveFunction& psi, double factor);

} // namespace ces::model
