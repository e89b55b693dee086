#pragma once

#include <complex>
#include <vector>

#include "ces/fock.hpp"

namespace ces::coherent {

using cplx = std::complex<double>;

// Normalised eigenstate of the lowering operator D. coeffs[n] is the
// amplitude on |n>: c_0 * mu^n / (f_1...f_n) in the broken phase;
// in the unbroken phase the state lives on {|1>, |2>, ...} and coeffs[0]
// is exactly zero. c0 comes from the 0F3 normalisation; the truncation N is
// grown until both the amplitude tail and the Phi-weighted tail (which
// controls second moments of X1, X2) drop below rel_tail.
struct CoherentState {
  cplx mu;
  model::ModelParams params;
  int truncation = 0;
  std::vector<cplx> coeffs;
  double c0 = 1.0;
  double truncation_tail = 0.0;
};

class truncation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CoherentState coherent_coeffs(const model::ModelParams& params, cplx mu,
                              double rel_tail = 1e-14);

// || D |mu> - mu |mu> || in the truncated basis, excluding the last slot
// (which the truncated D cannot fill).
double eigenvalue_residual(const CoherentState& state);

// <A|B> by coefficient summation.
cplx overlap(const CoherentState& a, const CoherentState& b);

// Closed form c0(mu) c0(nu) 0F3(b1, b2, b3; conj(mu) nu / 16), evaluated
// independently of the coefficient route.
cplx overlap_closed_form(const CoherentState& a, const CoherentState& b);

// <state| op |state>; op.dim() >= state.truncation (state padded with zeros).
cplx expectation(const CoherentState& state, const fock::FockOp& op);

struct UncertaintyProduct {
  double lhs; // (dX1)^2 (dX2)^2
  double rhs; // |<[X1,X2]>|^2 / 4 = |<Phi(H)>|^2 / 16
  double var_x1;
  double var_x2;
};

UncertaintyProduct uncertainty_product(const CoherentState& state);

// Same diagnostics for an arbitrary coefficient vector (tests use this to
// show a perturbed non-eigenstate breaks the equality).
UncertaintyProduct uncertainty_product_raw(const model::ModelParams& params,
                                           std::span<const cplx> amplitudes);

// F(mu) = <mu| D D^dagger |mu> - |mu|^2, a function of |mu| only.
double min_uncertainty_functional(const model::ModelParams& params, double abs_mu,
                                  double rel_tail = 1e-14);

struct ScanResult {
  double mu0 = 0.0;   // minimising |mu|
  double f_min = 0.0; // F(mu0)
  bool interior = false;
  std::vector<double> mu_grid;
  std::vector<double> f_values;
  // maximal ranges of monotone decrease/increase, as [start, end] indices
  std::vector<std::pair<int, int>> monotone_segments;
};

ScanResult min_uncertainty_scan(const model::ModelParams& params,
                                double mu_max, int steps);

} // namespace ces::coherent
