#include "ces/specfun.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>

namespace ces::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfLog2Pi = 0.918938533204672741780329736406;

// Lanczos coefficients, g = 607/128, N = 15 (Godfrey's table; the set used
// by GSL and numerous ports). Gives ~1e-14 relative accuracy in double.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool is_nonpositive_integer(double x, double tol = 1e-12) {
  return x <= tol && std::abs(x - std::round(x)) < tol;
}

// Lanczos sum for Re z >= 1/2.
cplx log_gamma_positive(cplx z) {
  cplx sum = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) {
    sum += kLanczos[k] / (z + static_cast<double>(k - 1));
  }
  const cplx base = z + (kLanczosG - 0.5);
  return (z - 0.5) * std::log(base) - base + kHalfLog2Pi + std::log(sum);
}

} // namespace

cplx log_gamma_complex(cplx z) {
  if (z.imag() == 0.0 && is_nonpositive_integer(z.real())) {
    throw std::domain_error("log_gamma_complex: pole of Gamma at z = " +
                            std::to_string(z.real()));
  }
  if (z.real() >= 0.5) return log_gamma_positive(z);
  // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
  // Keeps the principal branch for the real axis and the small-|Im| band
  // used here; sin(pi z) overflows only for |Im z| large, which is out of
  // scope for this artifact.
  const cplx lg = std::log(kPi) - std::log(std::sin(kPi * z)) -
                  log_gamma_positive(1.0 - z);
  return lg;
}

double gamma_real(double x) {
  // exp of the complex log carries the sign for negative non-integer x.
  return std::exp(log_gamma_complex(cplx(x, 0.0))).real();
}

namespace {

// Direct Kummer series, Kahan-compensated.
double kummer_series(double a, double b, double z, const Accuracy& acc,
                     int forced_terms = -1) {
  double sum = 0.0, comp = 0.0, term = 1.0;
  const int n_terms = forced_terms > 0 ? forced_terms : acc.max_terms;
  for (int k = 0;; ++k) {
    const double y = term - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    if (forced_terms > 0) {
      if (k + 1 >= n_terms) break;
    } else if (k > 2 && std::abs(term) < acc.rel_tol * std::abs(sum)) {
      break;
    } else if (k + 1 >= n_terms) {
      throw convergence_error("kummer_1f1: series did not converge within " +
                              std::to_string(n_terms) + " terms");
    }
    term *= (a + k) * z / ((b + k) * (k + 1));
  }
  return sum;
}

} // namespace

double kummer_1f1(double a, double b, double z, const Accuracy& acc) {
  if (is_nonpositive_integer(b)) {
    throw std::invalid_argument(
        "kummer_1f1: b must not be a non-positive integer (b = " +
        std::to_string(b) + ")");
  }
  if (z == 0.0 || a == 0.0) return 1.0;
  // Terminating polynomial: exact, no cancellation concern.
  if (is_nonpositive_integer(a)) {
    const int n = static_cast<int>(std::lround(-a));
    return kummer_series(a, b, z, acc, n + 1);
  }
  // The direct alternating series loses roughly e^{|z|} digits for z < 0;
  // past |z| = 8 switch to the Kummer transform e^z 1F1(b-a, b; -z), whose
  // terms have a fixed sign once k > |b|.
  if (z < -8.0) {
    if (z < -690.0) {
      throw convergence_error(
          "kummer_1f1: |z| too large for the transformed series");
    }
    double sum = 0.0, comp = 0.0, term = 1.0;
    const double w = -z;
    const double ap = b - a;
    for (int k = 0;; ++k) {
      const double y = term - comp;
      const double s = sum + y;
      comp = (s - sum) - y;
      sum = s;
      if (k > w && std::abs(term) < acc.rel_tol * std::abs(sum)) break;
      if (k + 1 >= std::max(acc.max_terms, static_cast<int>(2 * w) + 64)) {
        throw convergence_error("kummer_1f1: transformed series stalled");
      }
      term *= (ap + k) * w / ((b + k) * (k + 1));
    }
    return std::exp(z) * sum;
  }
  return kummer_series(a, b, z, acc);
}

double kummer_1f1_deriv(double a, double b, double z, const Accuracy& acc) {
  if (is_nonpositive_integer(b)) {
    throw std::invalid_argument(
        "kummer_1f1_deriv: b must not be a non-positive integer");
  }
  if (a == 0.0) return 0.0;
  return a / b * kummer_1f1(a + 1.0, b + 1.0, z, acc);
}

double laguerre(int n, double nu, double y) {
  if (n < 0) throw std::invalid_argument("laguerre: n must be >= 0");
  if (n == 0) return 1.0;
  double lm1 = 1.0;
  double l = 1.0 + nu - y;
  for (int k = 1; k < n; ++k) {
    const double lp1 = ((2.0 * k + 1.0 + nu - y) * l - (k + nu) * lm1) / (k + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

double hyper_0f3(double b1, double b2, double b3, double z,
                 const Accuracy& acc) {
  for (double b : {b1, b2, b3}) {
    if (is_nonpositive_integer(b)) {
      throw std::invalid_argument(
          "hyper_0f3: parameter must not be a non-positive integer");
    }
  }
  double sum = 0.0, comp = 0.0, term = 1.0;
  for (int k = 0;; ++k) {
    const double y = term - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    if (k > 0 && std::abs(term) < acc.rel_tol * std::abs(sum)) break;
    if (k + 1 >= acc.max_terms) {
      throw convergence_error("hyper_0f3: series did not converge within " +
                              std::to_string(acc.max_terms) + " terms");
    }
    term *= z / ((b1 + k) * (b2 + k) * (b3 + k) * (k + 1));
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Mellin-Barnes contour machinery
// ---------------------------------------------------------------------------

MellinContour::MellinContour(const std::array<double, 4>& b,
                             const Accuracy& acc, double abscissa_override)
    : b_(b), acc_(acc) {
  const double min_b = *std::min_element(b_.begin(), b_.end());
  c_ = !std::isnan(abscissa_override) ? abscissa_override
       : std::isnan(acc.contour_abscissa) ? -min_b + 0.25
                                          : acc.contour_abscissa;
  if (c_ <= -min_b) {
    throw std::invalid_argument(
        "meijer_g40_04: contour abscissa c must satisfy c > -min(b_i)");
  }

  // Double T until the Gamma-product tail falls below rel_tol * peak.
  // |z^{-c-it}| = z^{-c} is independent of t, so the criterion is shared by
  // every z.
  auto gamma_prod_mag = [&](double t) {
    cplx lg = 0.0;
    for (double bi : b_) lg += log_gamma_complex(cplx(bi + c_, t));
    return std::exp(lg.real());
  };
  const double peak = gamma_prod_mag(0.0);
  double half = acc.contour_half_width > 0 ? acc.contour_half_width : 8.0;
  int doublings = 0;
  while (gamma_prod_mag(half) > acc_.rel_tol * peak * 1e-2) {
    half *= 2.0;
    if (++doublings > 12) {
      throw convergence_error("meijer_g40_04: contour tail does not decay");
    }
  }
  half_width_ = half;
  max_level_ = -1;
  ensure_level(0);
  l1_mass_ = 0.0;
  for (const cplx& g : gamma_products_) l1_mass_ += std::abs(g);
  l1_mass_ *= coarse_step_ / (2.0 * kPi);
}

void MellinContour::ensure_level(int level) {
  if (level <= max_level_) return;
  const auto n_nodes = [&](int l) {
    return (static_cast<std::size_t>(std::llround(2.0 * half_width_ /
                                                  (coarse_step_ / (1 << l))))) + 1;
  };
  std::vector<cplx> grown(n_nodes(level));
  const double h = coarse_step_ / (1 << level);
  const int stride = max_level_ >= 0 ? (1 << (level - max_level_)) : 0;
  for (std::size_t j = 0; j < grown.size(); ++j) {
    if (stride > 0 && j % stride == 0) {
      grown[j] = gamma_products_[j / stride];
      continue;
    }
    const double t = -half_width_ + static_cast<double>(j) * h;
    cplx lg = 0.0;
    for (double bi : b_) lg += log_gamma_complex(cplx(bi + c_, t));
    grown[j] = std::exp(lg);
  }
  gamma_products_ = std::move(grown);
  max_level_ = level;
}

cplx MellinContour::sum_at_level(double z, int level) const {
  const double h = coarse_step_ / (1 << level);
  const int stride = 1 << (max_level_ - level);
  const std::size_t n = (gamma_products_.size() - 1) / stride + 1;
  const double log_z = std::log(z);
  // z^{-c-it} = z^{-c} exp(-it log z); the z^{-c} factor is applied once at
  // the end. Trapezoid endpoints carry half weight.
  cplx sum = 0.5 * (gamma_products_.front() *
                        std::exp(cplx(0.0, half_width_ * log_z)) +
                    gamma_products_.back() *
                        std::exp(cplx(0.0, -half_width_ * log_z)));
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double t = -half_width_ + static_cast<double>(j) * h;
    sum += gamma_products_[j * stride] * std::exp(cplx(0.0, -t * log_z));
  }
  return sum * std::exp(-c_ * log_z) * h / (2.0 * kPi);
}

MeijerResult MellinContour::evaluate(double z) {
  bool ok = false;
  MeijerResult r = evaluate_cached(z, ok);
  while (!ok) {
    if (max_level_ >= 14) {
      throw convergence_error(
          "meijer_g40_04: trapezoid refinement stalled at z = " +
          std::to_string(z));
    }
    ensure_level(max_level_ + 1);
    r = evaluate_cached(z, ok);
  }
  return r;
}

MeijerResult MellinContour::evaluate_cached(double z, bool& converged) const {
  cplx prev = sum_at_level(z, 0);
  converged = false;
  MeijerResult r;
  // Rounding floor: the integrand's L1 mass times machine epsilon bounds the
  // achievable absolute accuracy; without it, tiny values at large z would
  // demand impossible relative convergence.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       l1_mass_ * std::pow(z, -c_);
  for (int level = 1; level <= max_level_; ++level) {
    const cplx cur = sum_at_level(z, level);
    r.value = cur.real();
    r.imag_residual = std::abs(cur.imag());
    r.half_width = half_width_;
    r.step = coarse_step_ / (1 << level);
    r.noise_floor = floor;
    if (std::abs(cur - prev) <=
        std::max(acc_.rel_tol * std::abs(cur), floor)) {
      converged = true;
      return r;
    }
    prev = cur;
  }
  return r;
}

MeijerResult meijer_g40_04_full(const std::array<double, 4>& b, double z,
                                const Accuracy& acc) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw std::invalid_argument("meijer_g40_04: z must be positive and finite");
  }
  MellinContour contour(b, acc);
  return contour.evaluate(z);
}

double meijer_g40_04(const std::array<double, 4>& b, double z,
                     const Accuracy& acc) {
  return meijer_g40_04_full(b, z, acc).value;
}

// ---------------------------------------------------------------------------
// banded evaluator
// ---------------------------------------------------------------------------

namespace {
int band_index(double z) {
  return std::max(0, static_cast<int>(std::floor(std::pow(z, 0.25))));
}
} // namespace

MeijerG40Evaluator::MeijerG40Evaluator(const std::array<double, 4>& b,
                                       const Accuracy& acc)
    : b_(b), acc_(acc) {
  const double min_b = *std::min_element(b_.begin(), b_.end());
  base_c_ = std::isnan(acc.contour_abscissa) ? -min_b + 0.25
                                             : acc.contour_abscissa;
  // below this band the default abscissa already dominates the saddle point
  first_raised_band_ = static_cast<int>(std::ceil(base_c_)) + 2;
}

MellinContour& MeijerG40Evaluator::band_for(double z) {
  const int idx = std::min<int>(std::max(band_index(z), 0),
                                static_cast<int>(bands_.size()) - 1);
  return *bands_[idx];
}

const MellinContour& MeijerG40Evaluator::band_for(double z) const {
  const int idx = std::min<int>(std::max(band_index(z), 0),
                                static_cast<int>(bands_.size()) - 1);
  return *bands_[idx];
}

void MeijerG40Evaluator::prepare(double z_min, double z_max) {
  if (!(z_min > 0.0) || !(z_max >= z_min)) {
    throw std::invalid_argument("MeijerG40Evaluator: bad z range");
  }
  const int top_band = band_index(z_max);
  bands_.clear();
  bands_.reserve(top_band + 1);
  for (int k = 0; k <= top_band; ++k) {
    const double c = (k < first_raised_band_)
                         ? base_c_
                         : std::max(base_c_, static_cast<double>(k) + 0.5);
    bands_.push_back(std::make_unique<MellinContour>(b_, acc_, c));
  }
  // pre-refine each band at its extreme |log z| values so that the const
  // evaluate() path almost never lacks resolution
  for (int k = 0; k <= top_band; ++k) {
    const double lo = std::max(z_min, std::pow(static_cast<double>(k), 4.0));
    const double hi = std::min(z_max, std::pow(static_cast<double>(k) + 1, 4.0));
    if (!(lo <= hi)) continue;
    bands_[k]->evaluate(std::max(lo, 1e-300));
    bands_[k]->evaluate(hi);
  }
  prepared_lo_ = z_min;
  prepared_hi_ = z_max;
}

MeijerResult MeijerG40Evaluator::evaluate(double z) const {
  if (bands_.empty() || z < prepared_lo_ * 0.999 || z > prepared_hi_ * 1.001) {
    throw std::logic_error("MeijerG40Evaluator: evaluate outside prepared range");
  }
  bool ok = false;
  MeijerResult r = band_for(z).evaluate_cached(z, ok);
  if (!ok) {
    throw convergence_error(
        "MeijerG40Evaluator: cached resolution insufficient at z = " +
        std::to_string(z));
  }
  return r;
}

MeijerResult MeijerG40Evaluator::evaluate_anywhere(double z) {
  if (bands_.empty() || band_index(z) >= static_cast<int>(bands_.size())) {
    prepare(std::min(z, prepared_lo_ > prepared_hi_ ? z : prepared_lo_),
            std::max(z, prepared_lo_ > prepared_hi_ ? z : prepared_hi_));
  }
  return band_for(z).evaluate(z);
}

} // namespace ces::specfun
