#include "planesearch/optimize.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace planesearch::optim {

namespace {

bool pinned(double x, double g, double lo, double hi) {
  return (x <= lo && g > 0.0) || (x >= hi && g < 0.0);
}

Vector project(const Vector& x, const Vector& lower, const Vector& upper) {
  return x.cwiseMax(lower).cwiseMin(upper);
}

struct Pair {
  Vector s;
  Vector y;
  double rho;
};

// Two-loop recursion on the free coordinates only.
Vector lbfgs_direction(const Vector& grad, const std::deque<Pair>& memory, const Eigen::ArrayXd& free_mask) {
  Vector q = (grad.array() * free_mask).matrix();
  std::vector<double> alpha(memory.size());
  for (std::size_t k = memory.size(); k-- > 0;) {
    const Pair& p = memory[k];
    alpha[k] = p.rho * (p.s.array() * free_mask).matrix().dot(q);
    q -= alpha[k] * (p.y.array() * free_mask).matrix();
  }
  if (!memory.empty()) {
    const Pair& last = memory.back();
    const Vector ym = (last.y.array() * free_mask).matrix();
    const double yy = ym.squaredNorm();
    const double sy = (last.s.array() * free_mask).matrix().dot(ym);
    if (yy > 0.0 && sy > 0.0) q *= sy / yy;
  }
  for (std::size_t k = 0; k < memory.size(); ++k) {
    const Pair& p = memory[k];
    const double beta = p.rho * (p.y.array() * free_mask).matrix().dot(q);
    q += (alpha[k] - beta) * (p.s.array() * free_mask).matrix();
  }
  return -(q.array() * free_mask).matrix();
}

}  // namespace

Vector projected_gradient(const Vector& x, const Vector& grad, const Vector& lower, const Vector& upper) {
  Vector pg = grad;
  for (Index k = 0; k < x.size(); ++k)
    if (pinned(x(k), grad(k), lower(k), upper(k))) pg(k) = 0.0;
  return pg;
}

BoundedResult minimize_bounded(const Objective& f, const Vector& x0, const Vector& lower,
                               const Vector& upper, const BoundedOptions& options) {
  const Index n = x0.size();
  if (lower.size() != n || upper.size() != n) throw std::invalid_argument("minimize_bounded: bound size mismatch");
  if ((lower.array() > upper.array()).any()) throw std::invalid_argument("minimize_bounded: lower > upper");

  BoundedResult result;
  result.x = project(x0, lower, upper);
  result.gradient = Vector::Zero(n);
  result.value = f(result.x, result.gradient);
  result.evaluations = 1;
  if (!std::isfinite(result.value)) return result;

  std::deque<Pair> memory;
  Vector trial_grad(n);
  constexpr double armijo = 1e-4;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Vector pg = projected_gradient(result.x, result.gradient, lower, upper);
    result.projected_gradient_norm = pg.size() ? pg.cwiseAbs().maxCoeff() : 0.0;
    if (result.projected_gradient_norm <= options.gradient_tolerance) {
      result.converged = true;
      break;
    }

    Eigen::ArrayXd free_mask(n);
    for (Index k = 0; k < n; ++k)
      free_mask(k) = pinned(result.x(k), result.gradient(k), lower(k), upper(k)) ? 0.0 : 1.0;

    Vector direction = lbfgs_direction(result.gradient, memory, free_mask);
    if (!(direction.dot(pg) < 0.0)) {
      memory.clear();
      direction = -pg;
    }

    double step = 1.0;
    if (memory.empty()) step = std::min(1.0, 1.0 / direction.cwiseAbs().maxCoeff());

    bool accepted = false;
    Vector trial_x;
    double trial_value = 0.0;
    for (int attempt = 0; attempt < 40; ++attempt) {
      trial_x = project(result.x + step * direction, lower, upper);
      const Vector moved = trial_x - result.x;
      if (moved.cwiseAbs().maxCoeff() == 0.0) break;
      trial_value = f(trial_x, trial_grad);
      ++result.evaluations;
      if (std::isfinite(trial_value) &&
          trial_value <= result.value + armijo * result.gradient.dot(moved)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }

    if (!accepted) {
      if (memory.empty()) break;  // steepest descent made no progress either
      memory.clear();
      continue;
    }

    const Vector s = trial_x - result.x;
    const Vector y = trial_grad - result.gradient;
    const double previous = result.value;
    result.x = trial_x;
    result.value = trial_value;
    result.gradient = trial_grad;
    result.iterations = iter + 1;

    const double sy = s.dot(y);
    if (sy > 1e-12 * s.squaredNorm()) {
      memory.push_back(Pair{s, y, 1.0 / sy});
      if (static_cast<int>(memory.size()) > options.memory) memory.pop_front();
    }

    if (previous - result.value <= options.relative_tolerance * std::max(1.0, std::abs(result.value))) {
      const Vector pg_new = projected_gradient(result.x, result.gradient, lower, upper);
      result.projected_gradient_norm = pg_new.size() ? pg_new.cwiseAbs().maxCoeff() : 0.0;
      result.converged = result.projected_gradient_norm <= options.gradient_tolerance;
      break;
    }
  }

  const Vector pg = projected_gradient(result.x, result.gradient, lower, upper);
  result.projected_gradient_norm = pg.size() ? pg.cwiseAbs().maxCoeff() : 0.0;
  if (result.projected_gradient_norm <= options.gradient_tolerance) result.converged = true;
  return result;
}

}  // namespace planesearch::optim
