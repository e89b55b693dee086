#include "ces/coherent.hpp"

#include <cmath>
#include <algorithm>

#include "ces/specfun.hpp"

namespace ces::coherent {

namespace {

// 0F3 parameter triple entering the normalisation: broken
// (g+3/2, g+1+e/2, g+2+e/2), unbroken (g+5/2, e/2+1/2, e/2+3/2).
std::array<double, 3> norm_params(const model::ModelParams& p) {
  const double g = p.gamma();
  const double e = p.epsilon();
  if (p.phase() == Phase::broken) {
    return {g + 1.5, g + 1.0 + 0.5 * e, g + 2.0 + 0.5 * e};
  }
  return {g + 2.5, 0.5 * e + 0.5, 0.5 * e + 1.5};
}

// 0F3 with a complex argument, same term recurrence as the real routine;
// kept private to this module (the overlap closed form needs conj(mu)*nu).
cplx hyper_0f3_complex(const std::array<double, 3>& b, cplx z) {
  cplx sum = 0.0, term = 1.0;
  for (int k = 0; k < 512; ++k) {
    sum += term;
    term *= z / ((b[0] + k) * (b[1] + k) * (b[2] + k) * (k + 1.0));
    if (k > 0 && std::abs(term) < 1e-16 * std::abs(sum)) break;
  }
  return sum;
}

} // namespace

CoherentState coherent_coeffs(const model::ModelParams& params, cplx mu,
                              double rel_tail) {
  if (!(rel_tail > 0.0)) {
    throw std::invalid_argument("coherent_coeffs: rel_tail must be > 0");
  }
  const bool broken = params.phase() == Phase::broken;

  // ratio recurrence t_{n+1} = t_n * mu / f_{n+1}; |f_n| grows like 4 n^2 so
  // the amplitudes decay superfactorially and never overflow
  constexpr int kCap = 512;
  std::vector<cplx> raw; // amplitude on ladder level n (before basis offset)
  raw.reserve(32);
  cplx t = 1.0;
  double sum_sq = 0.0, sum_phi = 0.0;
  int n = 0;
  const int offset = broken ? 0 : 1; // unbroken states live on |n+1>
  while (true) {
    raw.push_back(t);
    const double w = std::norm(t);
    sum_sq += w;
    sum_phi += w * std::abs(fock::phi(params, model::energy(params, n + offset)));
    // tail estimates from the next amplitude and the (super)geometric decay;
    // run out at least four levels so small-|mu| states still fill the
    // minimal operator dimension with genuine amplitudes
    const double fn1 = std::abs(fock::lowering_coeff(params, n + 1 + offset));
    if (fn1 > 0.0) {
      const double next = std::norm(t) * std::norm(mu) / (fn1 * fn1);
      const double ratio = std::norm(mu) / (fn1 * fn1);
      if (ratio < 0.5 && raw.size() >= 4) {
        const double tail_sq = next / (1.0 - ratio);
        const double phi_next = std::abs(
            fock::phi(params, model::energy(params, n + 1 + offset)));
        const double tail_phi = next * phi_next * 4.0 / (1.0 - ratio);
        if (tail_sq < rel_tail * std::max(sum_sq, 1e-300) &&
            tail_phi < rel_tail * std::max(sum_phi, sum_sq)) {
          break;
        }
      }
      t *= mu / fock::lowering_coeff(params, n + 1 + offset);
    } else {
      break; // no coupling upward, the state ends here
    }
    ++n;
    if (n >= kCap) {
      throw truncation_error(
          "coherent_coeffs: truncation cap exceeded; |mu| too large");
    }
  }

  // normalisation only once the truncation is known to be reachable
  const auto b = norm_params(params);
  Accuracy acc;
  acc.max_terms = 4096;
  const double c0 = 1.0 / std::sqrt(specfun::hyper_0f3(
                              b[0], b[1], b[2], 0.25 * 0.25 * std::norm(mu), acc));

  CoherentState state{mu, params, 0, {}, c0, 0.0};
  const int levels = static_cast<int>(raw.size());
  state.truncation = std::max(levels + offset, 4);
  state.coeffs.assign(state.truncation, 0.0);
  for (int k = 0; k < levels; ++k) state.coeffs[k + offset] = c0 * raw[k];
  // residual tail after normalisation: | sum |coeffs|^2 - 1 |
  double total = 0.0;
  for (const cplx& a : state.coeffs) total += std::norm(a);
  state.truncation_tail = std::abs(total - 1.0);
  return state;
}

double eigenvalue_residual(const CoherentState& state) {
  const int n = state.truncation;
  const fock::FockOp d = fock::build_fock_op(state.params, fock::OpKind::D, n);
  const auto dv = d.apply(state.coeffs);
  double resid = 0.0;
  for (int i = 0; i + 1 < n; ++i) { // exclude the clipped last slot
    resid += std::norm(dv[i] - state.mu * state.coeffs[i]);
  }
  return std::sqrt(resid);
}

cplx overlap(const CoherentState& a, const CoherentState& b) {
  if (a.params.phase() != b.params.phase() ||
      a.params.gamma() != b.params.gamma() ||
      a.params.epsilon() != b.params.epsilon()) {
    throw std::invalid_argument("overlap: states from different models");
  }
  const int n = std::min(a.truncation, b.truncation);
  cplx s = 0.0;
  for (int i = 0; i < n; ++i) s += std::conj(a.coeffs[i]) * b.coeffs[i];
  return s;
}

cplx overlap_closed_form(const CoherentState& a, const CoherentState& b) {
  const auto bp = norm_params(a.params);
  const cplx arg = std::conj(a.mu) * b.mu / 16.0;
  return static_cast<double>(a.c0) * static_cast<double>(b.c0) *
         hyper_0f3_complex(bp, arg);
}

cplx expectation(const CoherentState& state, const fock::FockOp& op) {
  if (op.dim() < state.truncation) {
    throw std::invalid_argument("expectation: operator dimension too small");
  }
  std::vector<cplx> padded(op.dim(), 0.0);
  std::copy(state.coeffs.begin(), state.coeffs.end(), padded.begin());
  const auto ov = op.apply(padded);
  cplx s = 0.0;
  for (int i = 0; i < op.dim(); ++i) s += std::conj(padded[i]) * ov[i];
  return s;
}

UncertaintyProduct uncertainty_product_raw(const model::ModelParams& params,
                                           std::span<const cplx> amplitudes) {
  // pad by two slots so X^2 second moments see every coupling of the state
  const int n = static_cast<int>(amplitudes.size()) + 2;
  std::vector<cplx> v(n, 0.0);
  std::copy(amplitudes.begin(), amplitudes.end(), v.begin());
  const fock::FockOp x1 = fock::build_fock_op(params, fock::OpKind::X1, n);
  const fock::FockOp x2 = fock::build_fock_op(params, fock::OpKind::X2, n);

  auto moment = [&](const fock::FockOp& op, cplx& mean, double& second) {
    const auto ov = op.apply(v);
    cplx m = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      m += std::conj(v[i]) * ov[i];
      s2 += std::norm(ov[i]); // <psi|Op^2|psi> = ||Op psi||^2 (hermitian Op)
    }
    mean = m;
    second = s2;
  };
  cplx m1, m2;
  double s1, s2;
  moment(x1, m1, s1);
  moment(x2, m2, s2);
  const double var1 = s1 - std::norm(m1);
  const double var2 = s2 - std::norm(m2);

  // rhs = |<[X1,X2]>|^2 / 4 from the matrices themselves
  const auto x2v = x2.apply(v);
  const auto x1v = x1.apply(v);
  const auto x1x2v = x1.apply(x2v);
  const auto x2x1v = x2.apply(x1v);
  cplx comm = 0.0;
  for (int i = 0; i < n; ++i) {
    comm += std::conj(v[i]) * (x1x2v[i] - x2x1v[i]);
  }
  const double rhs = 0.25 * std::norm(comm);
  return {var1 * var2, rhs, var1, var2};
}

UncertaintyProduct uncertainty_product(const CoherentState& state) {
  return uncertainty_product_raw(state.params, state.coeffs);
}

double min_uncertainty_functional(const model::ModelParams& params,
                                  double abs_mu, double rel_tail) {
  const CoherentState st = coherent_coeffs(params, cplx(abs_mu, 0.0), rel_tail);
  // <D D^dagger> = sum f_{n+1}^2 |a_n|^2 taken from the band structure, which
  // keeps the level above the truncation edge in play
  double s = 0.0;
  for (int i = 0; i < st.truncation; ++i) {
    const double f = fock::lowering_coeff(params, i + 1);
    s += f * f * std::norm(st.coeffs[i]);
  }
  return s - abs_mu * abs_mu;
}

ScanResult min_uncertainty_scan(const model::ModelParams& params,
                                double mu_max, int steps) {
  if (!(mu_max > 0.0) || steps < 2) {
    throw std::invalid_argument("min_uncertainty_scan: bad scan window");
  }
  ScanResult res;
  res.mu_grid.resize(steps + 1);
  res.f_values.resize(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    res.mu_grid[i] = mu_max * i / steps;
    res.f_values[i] = min_uncertainty_functional(params, res.mu_grid[i]);
  }
  // maximal monotone runs, for the interior/boundary diagnostic
  int seg_start = 0;
  bool dir = res.f_values[1] >= res.f_values[0];
  for (int i = 2; i <= steps; ++i) {
    const bool d = res.f_values[i] >= res.f_values[i - 1];
    if (d != dir) {
      res.monotone_segments.emplace_back(seg_start, i - 1);
      seg_start = i - 1;
      dir = d;
    }
  }
  res.monotone_segments.emplace_back(seg_start, steps);

  int best = 0;
  for (int i = 1; i <= steps; ++i) {
    if (res.f_values[i] < res.f_values[best]) best = i;
  }

  // golden-section refinement around the best grid point
  double lo = res.mu_grid[std::max(0, best - 1)];
  double hi = res.mu_grid[std::min(steps, best + 1)];
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = min_uncertainty_functional(params, x1);
  double f2 = min_uncertainty_functional(params, x2);
  for (int it = 0; it < 60 && hi - lo > 1e-10 * std::max(1.0, hi); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = min_uncertainty_functional(params, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = min_uncertainty_functional(params, x2);
    }
  }
  res.mu0 = 0.5 * (lo + hi);
  res.f_min = min_uncertainty_functional(params, res.mu0);
  if (res.f_values[best] < res.f_min) {
    res.mu0 = res.mu_grid[best];
    res.f_min = res.f_values[best];
  }
  res.interior = best != 0 && best != steps;
  return res;
}

} // namespace ces::coherent
