#pragma once

#include "planesearch/kernel.hpp"
#include "planesearch/preference.hpp"

#include <Eigen/Cholesky>

#include <stdexcept>

namespace planesearch {

/// Log-normal priors on the kernel hyperparameters, parameterized by their
/// medians: log(theta) ~ Normal(log(median), log_variance).
struct HyperPrior {
  double median_amplitude = 0.2;
  double median_length_scale = 0.5;
  double log_variance = 0.01;

  void validate() const;
  KernelHyperparams medians(int dim) const;
  /// Sum of log-normal log densities; gradient with respect to log(theta),
  /// amplitude first, then length scales.
  double log_density(const KernelHyperparams& h, Vector* grad_log = nullptr) const;
};

struct FitOptions {
  double btl_scale = 0.01;
  double jitter_relative = 1e-8;  // jitter = jitter_relative * amplitude
  bool freeze_hyperparams = false;
  int max_iterations = 200;
  double gradient_tolerance = 1e-6;

  void validate() const;
};

struct FitDiagnostics {
  double objective = 0.0;
  /// Max-norm of the joint objective gradient in optimizer coordinates
  /// (whitened latents, log hyperparameters).
  double gradient_max_norm = 0.0;
  int outer_iterations = 0;
};

/// MAP estimate of the latent goodness values and kernel hyperparameters.
/// Immutable; safe to share between threads for posterior queries.
class FittedModel {
 public:
  FittedModel(Dataset dataset, KernelHyperparams hyperparams, Vector latent, double btl_scale,
              double jitter, FitDiagnostics diagnostics = {});

  const Dataset& dataset() const { return dataset_; }
  const SearchSpace& space() const { return dataset_.space(); }
  const KernelHyperparams& hyperparams() const { return hyper_; }
  const Vector& latent_goodness() const { return latent_; }
  double btl_scale() const { return btl_scale_; }
  double jitter() const { return jitter_; }
  const FitDiagnostics& diagnostics() const { return diagnostics_; }

  /// Observed points, n x N.
  const Matrix& points() const { return points_; }
  /// Lower Cholesky factor of K + jitter I.
  Matrix kernel_factor() const { return llt_.matrixL(); }
  const Eigen::LLT<Matrix>& llt() const { return llt_; }
  /// (K + jitter I)^{-1} g.
  const Vector& weights() const { return weights_; }

 private:
  Dataset dataset_;
  KernelHyperparams hyper_;
  Vector latent_;
  double btl_scale_;
  double jitter_;
  FitDiagnostics diagnostics_;
  Matrix points_;
  Eigen::LLT<Matrix> llt_;
  Vector weights_;
};

/// Raised when the objective stops being finite; carries the last finite iterate.
class FitFailure : public std::runtime_error {
 public:
  FitFailure(const std::string& what, Vector last_latent, KernelHyperparams last_hyperparams)
      : std::runtime_error(what),
        last_latent(std::move(last_latent)),
        last_hyperparams(std::move(last_hyperparams)) {}

  Vector last_latent;
  KernelHyperparams last_hyperparams;
};

/// Log posterior (up to a constant) of latent values g and hyperparameters:
///   sum_r log BTL(r; g) + log N(g; 0, K + jitter I) + log prior(h).
double map_objective(const Dataset& dataset, const HyperPrior& prior, const FitOptions& options,
                     const Eigen::Ref<const Vector>& latent, const KernelHyperparams& h);

FittedModel map_fit(const Dataset& dataset, const HyperPrior& prior = {}, const FitOptions& options = {});

struct PosteriorValue {
  double mean = 0.0;
  double variance = 0.0;
};

struct PosteriorGradient {
  double mean = 0.0;
  double variance = 0.0;
  Vector mean_gradient;
  Vector variance_gradient;
};

/// Posterior mean and variance of the latent goodness at x. Variances below
/// the jitter level are reported as exactly zero.
PosteriorValue posterior(const FittedModel& model, const Eigen::Ref<const Vector>& x);
PosteriorGradient posterior_with_gradient(const FittedModel& model, const Eigen::Ref<const Vector>& x);

/// Posterior over the columns of `queries` (n x M).
std::vector<PosteriorValue> posterior_batch(const FittedModel& model, const Eigen::Ref<const Matrix>& queries);

enum class BestMode { posterior_mean, last_chosen };

/// Index into the model's dataset of the current best observed point.
Index current_best(const FittedModel& model, BestMode mode = BestMode::posterior_mean);

}  // namespace planesearch
