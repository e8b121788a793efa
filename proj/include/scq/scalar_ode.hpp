#pragma once

#include <cstddef>
#include <vector>

#include "scq/genfun.hpp"

namespace scq {

/// Caputo problem D^alpha y = lambda y, y(0) = y0 on [0, T] with a
/// derivative generating function (mu = -alpha), written for v = y - y0.
/// A non-empty sigma adds starting weights to both the convolution and the
/// theta-interpolation of the right-hand side; the first max-node levels
/// are then solved as one coupled system.
struct CaputoRun {
  std::vector<double> t;
  std::vector<double> y;
};

CaputoRun solve_scalar_caputo(const GeneratingFunction& gf, double lambda, double y0, double t_end,
                              std::size_t n, const std::vector<double>& sigma = {});

/// max_n |y^n - y0 E_alpha(lambda t_n^alpha)|.
double max_error_vs_reference(const CaputoRun& run, double alpha, double lambda, double y0);

}  // namespace scq
