#pragma once

#include <limits>

namespace ces {

// Accuracy knobs shared by the series and contour-integral routines.
//   rel_tol            relative tolerance for series / quadrature convergence
//   max_terms          hard cap on series terms
//   contour_half_width initial half-width T of the Mellin-Barnes contour,
//                      integration runs over Im(s) in [-T, T] and T doubles
//                      until the integrand tail is negligible
//   contour_abscissa   real part c of the contour; NaN selects the default
//                      c = -min(b_i) + 1/4 (right of every Gamma pole)
struct Accuracy {
  double rel_tol = 1e-12;
  int max_terms = 1000;
  double contour_half_width = 8.0;
  double contour_abscissa = std::numeric_limits<double>::quiet_NaN();
};

inline const Accuracy& default_accuracy() {
  static const Accuracy acc{};
  return acc;
}

} // namespace ces
