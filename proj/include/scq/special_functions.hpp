#pragma once

namespace scq {

/// Gamma function for real arguments. Throws PoleError at 0, -1, -2, ...
double gamma(double x);

/// Reciprocal Gamma, 1/Gamma(x); zero at the poles of Gamma.
double rgamma(double x);

struct MLParams {
  double alpha = 1.0;  // in (0, 2]
  double beta = 1.0;
};

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real z.
///
/// The power series is summed in quad precision while its cancellation
/// stays below the tolerance; beyond that (large negative z with
/// alpha < 1) the algebraic asymptotic expansion is used with optimal
/// truncation. Absolute error is at most 1e-10 for |z| <= 50 and
/// alpha in (0, 2]. Throws NumericalError when neither regime reaches that.
double mittag_leffler(MLParams p, double z);

}  // namespace scq
