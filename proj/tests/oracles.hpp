// Test-only reference implementations, deliberately independent of the
// library's evaluation paths: Stirling-series log Gamma in long double with
// argument shifting, explicit binomial-sum Laguerre, and a long-double
// compensated 0F3. Used to freeze and to cross-check expected values.
#pragma once

#include <complex>
#include <cmath>

namespace oracle {

using cld = std::complex<long double>;

inline cld log_gamma_stirling(cld z) {
  static const long double coef[] = {
      1.0L / 12.0L,      -1.0L / 360.0L,      1.0L / 1260.0L,
      -1.0L / 1680.0L,   1.0L / 1188.0L,      -691.0L / 360360.0L,
      1.0L / 156.0L,     -3617.0L / 122400.0L, 43867.0L / 244188.0L,
      -174611.0L / 125400.0L,
  };
  cld shift = 0.0L;
  while (std::abs(z) < 40.0L) {
    shift -= std::log(z);
    z += 1.0L;
  }
  const long double half_log_2pi = 0.91893853320467274178032973640561763986L;
  cld s = (z - 0.5L) * std::log(z) - z + half_log_2pi;
  cld zp = z;
  const cld z2 = z * z;
  for (const long double c : coef) {
    s += c / zp;
    zp *= z2;
  }
  return s + shift;
}

inline long double gamma_ld(long double x) {
  return std::exp(std::real(log_gamma_stirling(cld(x, 0.0L))));
}

// L_n^nu(y) as the explicit alternating binomial sum.
inline long double laguerre_sum(int n, long double nu, long double y) {
  long double total = 0.0L;
  for (int k = 0; k <= n; ++k) {
    long double lb = std::real(log_gamma_stirling(cld(n + nu + 1.0L))) -
                     std::real(log_gamma_stirling(cld(nu + k + 1.0L))) -
                     std::real(log_gamma_stirling(cld((long double)(n - k + 1))));
    long double term = std::exp(lb);
    for (int j = 0; j < k; ++j) term *= y / (j + 1);
    total += (k % 2 == 0) ? term : -term;
  }
  return total;
}

inline long double hyper0f3_ld(long double b1, long double b2, long double b3,
                               long double z) {
  long double sum = 0.0L, c = 0.0L, t = 1.0L;
  for (int k = 0; k < 500; ++k) {
    const long double y = t - c;
    const long double s2 = sum + y;
    c = (s2 - sum) - y;
    sum = s2;
    t *= z / ((b1 + k) * (b2 + k) * (b3 + k) * (k + 1));
    if (std::fabs(t) < 1e-30L * std::fabs(sum)) break;
  }
  return sum;
}

// Partial sum of the first m terms (orders 0..m-1) of the 0F3 series.
inline long double hyper0f3_partial(long double b1, long double b2,
                                    long double b3, long double z, int m) {
  long double sum = 0.0L, t = 1.0L;
  for (int k = 0; k < m; ++k) {
    sum += t;
    t *= z / ((b1 + k) * (b2 + k) * (b3 + k) * (k + 1));
  }
  return sum;
}

} // namespace oracle
