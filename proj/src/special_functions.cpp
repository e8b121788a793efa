#include "scq/special_functions.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <quadmath.h>

#include "scq/errors.hpp"

namespace scq {

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

constexpr double kTolerance = 1e-10;

// Largest log-magnitude of a series term the quad-precision sum tolerates
// while keeping the absolute error under kTolerance.
constexpr double kMaxLogTerm = 45.0;

// ln|1/Gamma(x)| together with the sign of 1/Gamma(x); sign == 0 at poles.
__float128 log_abs_rgamma(__float128 x, int& sign) {
  if (x <= 0 && x == floorq(x)) {
    sign = 0;
    return 0;
  }
  if (x > 0) {
    sign = 1;
  } else {
    const long long fl = static_cast<long long>(floorq(x));
    sign = (fl % 2 == 0) ? 1 : -1;
  }
  return -lgammaq(x);
}

struct SeriesOutcome {
  double value = 0.0;
  double error = std::numeric_limits<double>::infinity();
};

// Peak of j*ln|z| - lnGamma(alpha*j + beta) over j; bails out as soon as
// the bound is exceeded since the series is then unusable anyway.
double peak_log_term(double alpha, double beta, double log_abs_z, double bound) {
  double peak = -std::numeric_limits<double>::infinity();
  for (long j = 0; j < 2000000; ++j) {
    const double arg = alpha * static_cast<double>(j) + beta;
    if (is_nonpositive_integer(arg)) continue;
    const double l = static_cast<double>(j) * log_abs_z - std::lgamma(arg);
    if (l > bound) return l;
    if (l > peak) {
      peak = l;
    } else if (arg > 2.0 && l < peak - 120.0) {
      break;
    }
  }
  return peak;
}

SeriesOutcome series_sum(double alpha, double beta, double z) {
  const __float128 a = alpha;
  const __float128 b = beta;
  const __float128 log_abs_z = logq(fabsq(static_cast<__float128>(z)));
  const bool negative = z < 0.0;

  __float128 sum = 0;
  __float128 comp = 0;  // Neumaier compensation
  __float128 max_term = 0;
  double max_log_arg = 1.0;
  __float128 last = 0;
  long j = 0;
  for (; j < 2000000; ++j) {
    const __float128 arg = a * j + b;
    int sign = 0;
    const __float128 lr = log_abs_rgamma(arg, sign);
    if (sign == 0) continue;
    const __float128 log_term = j * log_abs_z + lr;
    __float128 term = expq(log_term);
    if (sign < 0) term = -term;
    if (negative && (j % 2 == 1)) term = -term;

    const __float128 t = sum + term;
    if (fabsq(sum) >= fabsq(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;

    max_term = fmaxq(max_term, fabsq(term));
    max_log_arg = std::fmax(max_log_arg, static_cast<double>(fabsq(log_term)) + static_cast<double>(fabsq(lr)));
    last = fabsq(term);
    // Past the peak, terms decay at least geometrically once alpha*j+beta
    // outgrows |z|^(1/alpha); stop when they are far below the target.
    if (static_cast<double>(arg) > 1.0 && j > 2 && last < static_cast<__float128>(1e-40) * fmaxq(1, fabsq(sum))) {
      const __float128 ratio_log = log_abs_z - a * logq(arg);
      if (ratio_log < 0) break;
    }
  }
  SeriesOutcome out;
  out.value = static_cast<double>(sum + comp);
  const double eps_q = 1.93e-34;
  out.error = static_cast<double>(max_term) * eps_q * max_log_arg + static_cast<double>(last);
  if (j >= 2000000) out.error = std::numeric_limits<double>::infinity();
  return out;
}

// E_{alpha,beta}(z) ~ -sum_{k>=1} z^{-k} / Gamma(beta - alpha k), z -> -inf.
SeriesOutcome negative_asymptotic(double alpha, double beta, double z) {
  const double az = std::fabs(z);
  double sum = 0.0;
  double prev_envelope = std::numeric_limits<double>::infinity();
  SeriesOutcome out;
  for (int k = 1; k < 2000; ++k) {
    const double arg = beta - alpha * k;
    // |1/Gamma(arg)| <= Gamma(1 - arg) / pi by reflection; used as the
    // envelope so zero terms at poles do not end the sum prematurely.
    const double log_env = -k * std::log(az) + (1.0 - arg > 0.0 ? std::lgamma(1.0 - arg) : 0.0);
    const double envelope = std::exp(log_env) / M_PI;
    if (envelope > prev_envelope && k > 2) {
      out.value = sum;
      out.error = prev_envelope;
      return out;
    }
    const double term = -std::pow(z, -k) * rgamma(arg);
    sum += term;
    prev_envelope = envelope;
    if (envelope < 1e-17 * std::fmax(1.0, std::fabs(sum))) {
      out.value = sum;
      out.error = envelope;
      return out;
    }
  }
  out.value = sum;
  return out;
}

}  // namespace

double gamma(double x) {
  if (is_nonpositive_integer(x)) {
    std::ostringstream os;
    os << "gamma: pole at x = " << x;
    throw PoleError(os.str());
  }
  return std::tgamma(x);
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 171.7) return 0.0;
  return 1.0 / std::tgamma(x);
}

double mittag_leffler(MLParams p, double z) {
  if (!(p.alpha > 0.0) || p.alpha > 2.0 || !std::isfinite(p.beta)) {
    std::ostringstream os;
    os << "mittag_leffler: alpha must lie in (0, 2], got " << p.alpha;
    throw ConstraintError(os.str());
  }
  if (!std::isfinite(z)) throw ConstraintError("mittag_leffler: argument must be finite");
  if (z == 0.0) return rgamma(p.beta);
  if (p.alpha == 1.0 && p.beta == 1.0) return std::exp(z);

  const double log_abs_z = std::log(std::fabs(z));
  if (z > 0.0) {
    // Positive terms (for beta > 0): no cancellation, only overflow.
    if (std::pow(z, 1.0 / p.alpha) > 700.0) return std::numeric_limits<double>::infinity();
    const SeriesOutcome s = series_sum(p.alpha, p.beta, z);
    if (s.error <= kTolerance * std::fmax(1.0, std::fabs(s.value))) return s.value;
    throw NumericalError("mittag_leffler: series did not converge");
  }

  const double peak = peak_log_term(p.alpha, p.beta, log_abs_z, kMaxLogTerm + 1.0);
  SeriesOutcome best;
  if (peak <= kMaxLogTerm) {
    best = series_sum(p.alpha, p.beta, z);
    if (best.error <= kTolerance) return best.value;
  }
  if (p.alpha < 1.0) {
    const SeriesOutcome a = negative_asymptotic(p.alpha, p.beta, z);
    if (a.error <= kTolerance) return a.value;
    if (a.error < best.error) best = a;
  }
  std::ostringstream os;
  os << "mittag_leffler: no regime reached 1e-10 at alpha=" << p.alpha << " beta=" << p.beta
     << " z=" << z << " (best error estimate " << best.error << ")";
  throw NumericalError(os.str());
}

}  // namespace scq
