#include "ces/fock.hpp"

#include <cmath>
#include <algorithm>

namespace ces::fock {

double f_n(const model::ModelParams& params, int n) {
  if (params.phase() != Phase::broken) {
    throw std::invalid_argument("f_n: broken phase only (use g_n)");
  }
  if (n < 0) throw std::invalid_argument("f_n: n must be >= 0");
  if (n == 0) return 0.0;
  const double g = params.gamma();
  const double e = params.epsilon();
  const double radicand =
      n * (n + g + 0.5) * (2.0 * n + 2.0 * g + 2.0 + e) * (2.0 * n + 2.0 * g + e);
  if (radicand < 0.0) {
    throw std::domain_error("f_n: negative radicand, parameters out of range");
  }
  return -2.0 * std::sqrt(radicand);
}

double g_n(const model::ModelParams& params, int n) {
  if (params.phase() != Phase::unbroken) {
    throw std::invalid_argument("g_n: unbroken phase only (use f_n)");
  }
  if (n < 0) throw std::invalid_argument("g_n: n must be >= 0");
  if (n == 0) return 0.0;
  const double g = params.gamma();
  const double e = params.epsilon();
  const double radicand =
      n * (n + g + 1.5) * (2.0 * n - 1.0 + e) * (2.0 * n + 1.0 + e);
  if (radicand < 0.0) {
    throw std::domain_error("g_n: negative radicand, parameters out of range");
  }
  return -2.0 * std::sqrt(radicand);
}

double lowering_coeff(const model::ModelParams& params, int j) {
  if (j <= 0) return 0.0;
  return params.phase() == Phase::broken ? f_n(params, j) : g_n(params, j - 1);
}

std::vector<double> phi_coeffs(const model::ModelParams& params) {
  const double g = params.phase() == Phase::broken ? params.gamma()
                                                   : -params.gamma() - 2.0;
  const double e = params.epsilon();
  return {0.0, 4.0 * (2.0 * e * g + e * e + e + 1.0), -12.0 * (g + e + 0.5),
          8.0};
}

std::vector<double> psi_coeffs(const model::ModelParams& params) {
  const double g = params.phase() == Phase::broken ? params.gamma()
                                                   : -params.gamma() - 2.0;
  const double e = params.epsilon();
  // (H - 2g - e)(H + 1 - e)(H + 2) H expanded:
  // H^4 + (2 - A - B) H^3 + (AB - 2A - 2B) H^2 + 2AB H, A = 2g+e, B = e-1
  const double a = 2.0 * g + e;
  const double b = e - 1.0;
  return {0.0, 2.0 * a * b, a * b - 2.0 * a - 2.0 * b, 2.0 - a - b, 1.0};
}

namespace {
double horner(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
  return v;
}
} // namespace

double phi(const model::ModelParams& params, double h) {
  return horner(phi_coeffs(params), h);
}

double psi(const model::ModelParams& params, double h) {
  return horner(psi_coeffs(params), h);
}

FockOp::FockOp(int dim, OpKind kind)
    : dim_(dim), kind_(kind), diag_(dim, 0.0), super_(dim > 0 ? dim - 1 : 0, 0.0),
      sub_(dim > 0 ? dim - 1 : 0, 0.0) {
  if (dim < 2) throw std::invalid_argument("FockOp: dim must be >= 2");
}

cplx FockOp::at(int row, int col) const {
  if (row == col) return diag_[row];
  if (col == row + 1) return super_[row];
  if (row == col + 1) return sub_[col];
  return 0.0;
}

std::vector<cplx> FockOp::apply(std::span<const cplx> v) const {
  if (static_cast<int>(v.size()) != dim_) {
    throw std::invalid_argument("FockOp::apply: dimension mismatch");
  }
  std::vector<cplx> out(dim_, 0.0);
  for (int i = 0; i < dim_; ++i) {
    cplx acc = diag_[i] * v[i];
    if (i + 1 < dim_) acc += super_[i] * v[i + 1];
    if (i > 0) acc += sub_[i - 1] * v[i - 1];
    out[i] = acc;
  }
  return out;
}

std::vector<cplx> FockOp::dense() const {
  std::vector<cplx> m(static_cast<std::size_t>(dim_) * dim_, 0.0);
  for (int i = 0; i < dim_; ++i) {
    m[i * dim_ + i] = diag_[i];
    if (i + 1 < dim_) {
      m[i * dim_ + i + 1] = super_[i];
      m[(i + 1) * dim_ + i] = sub_[i];
    }
  }
  return m;
}

FockOp build_fock_op(const model::ModelParams& params, OpKind kind, int n) {
  FockOp op(n, kind);
  const cplx half_i(0.0, 0.5);
  switch (kind) {
    case OpKind::D:
      for (int j = 1; j < n; ++j) op.super_mut(j - 1) = lowering_coeff(params, j);
      break;
    case OpKind::Ddag:
      for (int j = 1; j < n; ++j) op.sub_mut(j - 1) = lowering_coeff(params, j);
      break;
    case OpKind::H:
      for (int j = 0; j < n; ++j) op.diag_mut(j) = model::energy(params, j);
      break;
    case OpKind::X1:
      for (int j = 1; j < n; ++j) {
        const double f = lowering_coeff(params, j);
        op.super_mut(j - 1) = 0.5 * f;
        op.sub_mut(j - 1) = 0.5 * f;
      }
      break;
    case OpKind::X2:
      for (int j = 1; j < n; ++j) {
        const double f = lowering_coeff(params, j);
        op.super_mut(j - 1) = -half_i * f; // f/(2i)
        op.sub_mut(j - 1) = half_i * f;
      }
      break;
    case OpKind::PhiH:
      for (int j = 0; j < n; ++j) {
        op.diag_mut(j) = phi(params, model::energy(params, j));
      }
      break;
    case OpKind::PsiH:
      for (int j = 0; j < n; ++j) {
        op.diag_mut(j) = psi(params, model::energy(params, j));
      }
      break;
    case OpKind::Casimir:
      // D D^dagger - Psi(H) within the truncation: the product diagonal is
      // f_{j+1}^2 for j < n-1 and 0 in the clipped last slot.
      for (int j = 0; j < n; ++j) {
        const double dd =
            j + 1 < n ? std::pow(lowering_coeff(params, j + 1), 2) : 0.0;
        op.diag_mut(j) = dd - psi(params, model::energy(params, j));
      }
      break;
  }
  return op;
}

double casimir_residual(const model::ModelParams& params, int n) {
  if (n < 3) throw std::invalid_argument("casimir_residual: N must be >= 3");
  const FockOp d = build_fock_op(params, OpKind::D, n);
  const FockOp ddag = build_fock_op(params, OpKind::Ddag, n);
  // dense product D * Ddag
  const auto a = d.dense();
  const auto b = ddag.dense();
  double max_resid = 0.0, scale = 0.0;
  for (int i = 0; i < n - 1; ++i) {
    for (int j = 0; j < n - 1; ++j) {
      cplx prod = 0.0;
      for (int k = 0; k < n; ++k) prod += a[i * n + k] * b[k * n + j];
      const double target =
          i == j ? psi(params, model::energy(params, i)) : 0.0;
      max_resid = std::max(max_resid, std::abs(prod - target));
      if (i == j) scale = std::max(scale, std::abs(target));
    }
  }
  return max_resid / std::max(scale, 1e-300);
}

double pochhammer(double a, int n) {
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= a + k;
  return p;
}

double normalized_state_coeff(const model::ModelParams& params, int n) {
  if (params.phase() != Phase::broken) {
    throw std::invalid_argument("normalized_state_coeff: broken phase only");
  }
  double prod = 1.0;
  for (int i = 1; i <= n; ++i) prod *= f_n(params, i);
  const double via_product = 1.0 / prod;

  const double g = params.gamma();
  const double e = params.epsilon();
  double factln = 0.0;
  for (int i = 2; i <= n; ++i) factln += std::log(static_cast<double>(i));
  const double inside = std::exp(factln) * pochhammer(g + 1.5, n) *
                        pochhammer(g + 1.0 + 0.5 * e, n) *
                        pochhammer(g + 2.0 + 0.5 * e, n);
  const double closed = std::pow(-0.25, n) / std::sqrt(inside);

  if (std::abs(via_product - closed) >
      1e-10 * std::max(std::abs(closed), 1e-300)) {
    throw std::logic_error(
        "normalized_state_coeff: product and Pochhammer forms disagree");
  }
  return via_product;
}

} // namespace ces::fock
