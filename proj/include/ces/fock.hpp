#pragma once

#include <complex>
#include <vector>

#include "ces/model.hpp"

namespace ces::fock {

using cplx = std::complex<double>;

// Structure constants of the deformed su(1,1) ladder:
//   broken   f_n = -2 sqrt(n (n+gamma+1/2)(2n+2gamma+2+eps)(2n+2gamma+eps))
//   unbroken g_n = -2 sqrt(n (n+gamma+3/2)(2n-1+eps)(2n+1+eps))
// with f_0 = g_0 = 0. Throws std::domain_error on a negative radicand
// (parameters outside the admissible window).
double f_n(const model::ModelParams& params, int n);
double g_n(const model::ModelParams& params, int n);

// Lowering coefficient of D in the H- eigenbasis: D e_j = coeff * e_{j-1}.
// This is f_j in the broken phase and g_{j-1} in the unbroken one (the
// unbroken ladder acts on |n+1>).
double lowering_coeff(const model::ModelParams& params, int j);

// Cubic structure function: [D, D^dagger] = Phi(H-):
//   Phi(H) = 8 H^3 - 12 (gamma + eps + 1/2) H^2 + 4 (2 eps gamma + eps^2 +
//            eps + 1) H,
// with gamma -> -gamma - 2 in the unbroken phase.
double phi(const model::ModelParams& params, double h);

// Product polynomial with D D^dagger = Psi(H-):
//   Psi(H) = (H - 2 gamma - eps)(H + 1 - eps)(H + 2) H.
// The (H + 1 - eps) factor is forced: it is the only sign for which
// Psi(E_n) = f_{n+1}^2 and Phi(H) = Psi(H) - Psi(H-2) both hold (the
// (H + 1 + eps) variant fails both, see tests). Unbroken phase:
// gamma -> -gamma - 2 in the first factor.
double psi(const model::ModelParams& params, double h);

// Coefficient polynomial forms, highest degree last; for the coefficient-wise
// identity Phi(H) = Psi(H) - Psi(H - 2).
std::vector<double> phi_coeffs(const model::ModelParams& params);
std::vector<double> psi_coeffs(const model::ModelParams& params);

enum class OpKind { D, Ddag, H, X1, X2, PhiH, PsiH, Casimir };

// Truncated operator in the H- eigenbasis {|0>, ..., |N-1>}. Everything the
// algebra needs is tridiagonal: D sits on the superdiagonal (column index =
// source state), D^dagger on the subdiagonal, H / Phi(H) / Psi(H) on the
// diagonal, X1 = (D + D^dagger)/2 real symmetric, X2 = (D - D^dagger)/(2i)
// imaginary antisymmetric. Casimir = D D^dagger - Psi(H) within the
// truncation (zero on the interior, a defect in the last slot).
class FockOp {
 public:
  FockOp(int dim, OpKind kind);

  int dim() const { return dim_; }
  OpKind kind() const { return kind_; }

  cplx diag(int i) const { return diag_[i]; }
  cplx super(int i) const { return super_[i]; } // entry [i, i+1]
  cplx sub(int i) const { return sub_[i]; }     // entry [i+1, i]
  cplx at(int row, int col) const;

  std::vector<cplx> apply(std::span<const cplx> v) const;

  // dense row-major copy, for products and commutators in tests
  std::vector<cplx> dense() const;

  cplx& diag_mut(int i) { return diag_[i]; }
  cplx& super_mut(int i) { return super_[i]; }
  cplx& sub_mut(int i) { return sub_[i]; }

 private:
  int dim_;
  OpKind kind_;
  std::vector<cplx> diag_, super_, sub_;
};

FockOp build_fock_op(const model::ModelParams& params, OpKind kind, int n);

// max |(D D^dagger - Psi(H))_{ij}| over the truncation interior
// (rows/cols < N-1), relative to max |Psi(E_n)| there.
double casimir_residual(const model::ModelParams& params, int n);

// (f_1 f_2 ... f_n)^{-1}, together with the closed Pochhammer form
// (-1/4)^n [n! (g+3/2)_n (g+1+e/2)_n (g+2+e/2)_n]^{-1/2}; the two are
// computed independently and must agree (asserted), the product value is
// returned. Broken phase only.
double normalized_state_coeff(const model::ModelParams& params, int n);

double pochhammer(double a, int n);

} // namespace ces::fock
