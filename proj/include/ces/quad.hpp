#pragma once

#include <span>
#include <string>
#include <vector>
#include <stdexcept>

namespace ces {

enum class Phase { broken, unbroken };
enum class Sector { plus, minus };

// Uniform grid on [x_min, x_max], x_min > 0 so the Dirichlet origin is
// excluded. Wavefunctions on the positive half-line vanish like x^{gamma+1}
// at the origin, so a small positive x_min approximates psi(0) = 0.
struct Grid {
  double x_min;
  double x_max;
  int n_points;

  Grid(double lo, double hi, int n) : x_min(lo), x_max(hi), n_points(n) {
    if (!(0.0 < lo) || !(lo < hi)) {
      throw std::invalid_argument("Grid: requires 0 < x_min < x_max");
    }
    if (n < 16) throw std::invalid_argument("Grid: n_points must be >= 16");
  }

  double spacing() const { return (x_max - x_min) / (n_points - 1); }
  double x(int i) const { return x_min + spacing() * i; }
  std::vector<double> points() const {
    std::vector<double> xs(n_points);
    for (int i = 0; i < n_points; ++i) xs[i] = x(i);
    return xs;
  }
  bool operator==(const Grid& o) const {
    return x_min == o.x_min && x_max == o.x_max && n_points == o.n_points;
  }
};

struct WaveFunctionLabel {
  Phase phase = Phase::broken;
  Sector sector = Sector::plus;
  int level = 0;
};

// Sampled real wavefunction. Values are immutable after construction by
// convention: operations return new WaveFunctions.
struct WaveFunction {
  Grid grid;
  std::vector<double> values;
  WaveFunctionLabel label;

  WaveFunction(Grid g, std::vector<double> v, WaveFunctionLabel l = {})
      : grid(g), values(std::move(v)), label(l) {
    if (static_cast<int>(values.size()) != grid.n_points) {
      throw std::invalid_argument("WaveFunction: value/grid length mismatch");
    }
  }
};

namespace quad {

// Composite Simpson when the point count is odd, trapezoid otherwise.
double integrate(std::span<const double> f, const Grid& grid);

// L2 inner product: all in-scope wavefunctions are real.
double inner(const WaveFunction& psi, const WaveFunction& phi);
double norm(const WaveFunction& psi);

// 4th-order finite differences: central in the interior, one-sided at the
// edges (Fornberg weights). order is 1 or 2.
WaveFunction derivative(const WaveFunction& psi, int order);

// Finite-difference weights for the m-th derivative at x0 from arbitrary
// nodes (Fornberg's recursion); exposed for tests.
std::vector<double> fd_weights(double x0, std::span<const double> nodes,
                               int order);

} // namespace quad
} // namespace ces
