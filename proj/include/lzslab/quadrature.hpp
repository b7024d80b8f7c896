#pragma once

#include <complex>
#include <functional>

#include "lzslab/errors.hpp"

namespace lzslab::quadrature {

struct QuadResult {
  double value{0.0};
  double est_error{0.0};
  std::size_t evals{0};
};

// Adaptive Gauss pair (7/15 point) with bisection; the 15-7 difference
// drives refinement.  Throws QuadratureFailure if the tolerance cannot be
// met within the depth limit.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10, int max_depth = 48);

struct QuadResultC {
  std::complex<double> value{0.0, 0.0};
  double est_error{0.0};
  std::size_t evals{0};
};

QuadResultC integrate_complex(const std::function<std::complex<double>(double)>& f, double a,
                              double b, double abs_tol = 1e-10, int max_depth = 48);

}  // namespace lzslab::quadrature
