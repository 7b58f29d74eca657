#pragma once

// Box-constrained limited-memory quasi-Newton minimizer.
//
// Projected L-BFGS: variables pinned at a bound with the gradient pointing
// outward are held fixed, the two-loop recursion runs on the free set, and
// an Armijo backtracking search follows the projected path P(x + a d).

#include "planesearch/types.hpp"

#include <functional>

namespace planesearch::optim {

/// Returns f(x) and writes the gradient into `grad` (already sized).
using Objective = std::function<double(const Vector& x, Vector& grad)>;

struct BoundedOptions {
  int max_iterations = 200;
  int memory = 10;
  double gradient_tolerance = 1e-8;  // max-norm of the projected gradient
  double relative_tolerance = 1e-13;  // on successive function values
};

struct BoundedResult {
  Vector x;
  double value = 0.0;
  Vector gradient;
  double projected_gradient_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

BoundedResult minimize_bounded(const Objective& f, const Vector& x0, const Vector& lower,
                               const Vector& upper, const BoundedOptions& options = {});

/// Projected gradient: components that would push x through an active bound are zeroed.
Vector projected_gradient(const Vector& x, const Vector& grad, const Vector& lower, const Vector& upper);

}  // namespace planesearch::optim
