#include "ces/quad.hpp"

#include <cmath>

namespace ces::quad {

double integrate(std::span<const double> f, const Grid& grid) {
  if (static_cast<int>(f.size()) != grid.n_points) {
    throw std::invalid_argument("integrate: sample/grid length mismatch");
  }
  const double h = grid.spacing();
  const int n = grid.n_points;
  if (n % 2 == 1) {
    double s = f[0] + f[n - 1];
    for (int i = 1; i < n - 1; ++i) s += f[i] * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
  }
  double s = 0.5 * (f[0] + f[n - 1]);
  for (int i = 1; i < n - 1; ++i) s += f[i];
  return s * h;
}

double inner(const WaveFunction& psi, const WaveFunction& phi) {
  if (!(psi.grid == phi.grid)) {
    throw std::invalid_argument("inner: wavefunctions live on different grids");
  }
  std::vector<double> prod(psi.values.size());
  for (std::size_t i = 0; i < prod.size(); ++i) {
    prod[i] = psi.values[i] * phi.values[i];
  }
  return integrate(prod, psi.grid);
}

double norm(const WaveFunction& psi) { return std::sqrt(inner(psi, psi)); }

std::vector<double> fd_weights(double x0, std::span<const double> nodes,
                               int order) {
  // B. Fornberg, "Generation of finite difference formulas on arbitrarily
  // spaced grids", Math. Comp. 51 (1988).
  const int n = static_cast<int>(nodes.size()) - 1;
  const int m = order;
  std::vector<std::vector<double>> delta(
      n + 1, std::vector<double>(m + 1, 0.0));
  delta[0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i <= n; ++i) {
    double c2 = 1.0;
    const std::vector<double> prev_row = delta[i - 1]; // before this sweep
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      for (int k = std::min(i, m); k >= 0; --k) {
        delta[j][k] = ((nodes[i] - x0) * delta[j][k] -
                       (k > 0 ? k * delta[j][k - 1] : 0.0)) /
                      c3;
      }
    }
    for (int k = std::min(i, m); k >= 0; --k) {
      delta[i][k] = c1 / c2 *
                    ((k > 0 ? k * prev_row[k - 1] : 0.0) -
                     (nodes[i - 1] - x0) * prev_row[k]);
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int j = 0; j <= n; ++j) w[j] = delta[j][m];
  return w;
}

WaveFunction derivative(const WaveFunction& psi, int order) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("derivative: order must be 1 or 2");
  }
  const int n = psi.grid.n_points;
  if (n < 7) throw std::invalid_argument("derivative: grid too small");
  const double h = psi.grid.spacing();
  std::vector<double> out(n, 0.0);

  // central 4th-order stencils
  if (order == 1) {
    for (int i = 2; i < n - 2; ++i) {
      out[i] = (psi.values[i - 2] - 8.0 * psi.values[i - 1] +
                8.0 * psi.values[i + 1] - psi.values[i + 2]) /
               (12.0 * h);
    }
  } else {
    for (int i = 2; i < n - 2; ++i) {
      out[i] = (-psi.values[i - 2] + 16.0 * psi.values[i - 1] -
                30.0 * psi.values[i] + 16.0 * psi.values[i + 1] -
                psi.values[i + 2]) /
               (12.0 * h * h);
    }
  }

  // one-sided 4th-order stencils at the four edge points
  const int width = order == 1 ? 5 : 6;
  std::vector<double> nodes(width);
  for (int e = 0; e < 2; ++e) {
    for (int j = 0; j < width; ++j) nodes[j] = j * h;
    for (int i : {e == 0 ? 0 : n - 1, e == 0 ? 1 : n - 2}) {
      const int base = e == 0 ? 0 : n - width;
      const double x0 = (i - base) * h;
      const auto w = fd_weights(x0, nodes, order);
      double acc = 0.0;
      for (int j = 0; j < width; ++j) acc += w[j] * psi.values[base + j];
      out[i] = acc;
    }
  }

  WaveFunctionLabel l = psi.label;
  return WaveFunction(psi.grid, std::move(out), l);
}

} // namespace ces::quad
