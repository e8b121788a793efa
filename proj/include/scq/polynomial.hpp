#pragma once

#include <complex>
#include <vector>

namespace scq {

using cplx = std::complex<double>;

/// Horner evaluation; coefficients in ascending powers.
cplx horner(const std::vector<double>& c, cplx x);
double horner(const std::vector<double>& c, double x);

/// All complex roots of a real polynomial (ascending coefficients,
/// trailing zeros ignored). Aberth-Ehrlich iteration followed by a Newton
/// polish on the original coefficients. Degrees 1 and 2 are closed form.
std::vector<cplx> polynomial_roots(const std::vector<double>& c);

}  // namespace scq
