#include "planesearch/gp.hpp"

#include "planesearch/optimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace planesearch {

Matrix kernel_matrix(const Eigen::Ref<const Matrix>& points, const KernelHyperparams& h) {
  const Index n = points.cols();
  Matrix k(n, n);
  for (Index j = 0; j < n; ++j) {
    k(j, j) = h.amplitude;
    for (Index i = j + 1; i < n; ++i) k(i, j) = k(j, i) = kernel(points.col(i), points.col(j), h);
  }
  return k;
}

Matrix cross_kernel(const Eigen::Ref<const Matrix>& points, const Eigen::Ref<const Matrix>& queries,
                    const KernelHyperparams& h) {
  if (points.rows() != queries.rows()) throw std::invalid_argument("cross_kernel: dimension mismatch");
  Matrix k(points.cols(), queries.cols());
  for (Index j = 0; j < queries.cols(); ++j)
    for (Index i = 0; i < points.cols(); ++i) k(i, j) = kernel(points.col(i), queries.col(j), h);
  return k;
}

// ---------------------------------------------------------------------------
// Hyperparameter prior

void HyperPrior::validate() const {
  if (!(median_amplitude > 0.0 && median_length_scale > 0.0 && log_variance > 0.0))
    throw std::invalid_argument("HyperPrior: all parameters must be > 0");
}

KernelHyperparams HyperPrior::medians(int dim) const {
  return KernelHyperparams{median_amplitude, Vector::Constant(dim, median_length_scale)};
}

double HyperPrior::log_density(const KernelHyperparams& h, Vector* grad_log) const {
  const int n = h.dim();
  if (grad_log) grad_log->resize(n + 1);
  const double norm = -0.5 * std::log(2.0 * std::numbers::pi * log_variance);
  auto term = [&](double value, double median, Index slot) {
    const double eta = std::log(value);
    const double dev = eta - std::log(median);
    if (grad_log) (*grad_log)(slot) = -1.0 - dev / log_variance;
    return norm - eta - 0.5 * dev * dev / log_variance;
  };
  double total = term(h.amplitude, median_amplitude, 0);
  for (int k = 0; k < n; ++k) total += term(h.length_scales(k), median_length_scale, k + 1);
  return total;
}

void FitOptions::validate() const {
  if (!(btl_scale > 0.0)) throw std::invalid_argument("FitOptions: btl_scale must be > 0");
  if (!(jitter_relative > 0.0)) throw std::invalid_argument("FitOptions: jitter must be > 0");
  if (max_iterations < 1) throw std::invalid_argument("FitOptions: max_iterations must be >= 1");
}

// ---------------------------------------------------------------------------
// Fitted model

FittedModel::FittedModel(Dataset dataset, KernelHyperparams hyperparams, Vector latent, double btl_scale,
                         double jitter, FitDiagnostics diagnostics)
    : dataset_(std::move(dataset)),
      hyper_(std::move(hyperparams)),
      latent_(std::move(latent)),
      btl_scale_(btl_scale),
      jitter_(jitter),
      diagnostics_(diagnostics),
      points_(dataset_.point_matrix()) {
  hyper_.validate();
  if (hyper_.dim() != dataset_.dim()) throw std::invalid_argument("FittedModel: hyperparameter dimension mismatch");
  if (latent_.size() != dataset_.size()) throw std::invalid_argument("FittedModel: one latent value per point required");
  if (dataset_.empty()) throw InvalidState("FittedModel: empty dataset");
  Matrix k = kernel_matrix(points_, hyper_);
  k.diagonal().array() += jitter_;
  llt_.compute(k);
  if (llt_.info() != Eigen::Success) throw std::runtime_error("FittedModel: kernel matrix is not positive definite");
  weights_ = llt_.solve(latent_);
}

// ---------------------------------------------------------------------------
// MAP estimation

namespace {

constexpr double log_two_pi = 1.8378770664093454836;

KernelHyperparams from_log(const Vector& eta) {
  return KernelHyperparams{std::exp(eta(0)), eta.tail(eta.size() - 1).array().exp().matrix()};
}

Vector to_log(const KernelHyperparams& h) {
  Vector eta(h.dim() + 1);
  eta(0) = std::log(h.amplitude);
  eta.tail(h.dim()) = h.length_scales.array().log().matrix();
  return eta;
}

struct LatentSolution {
  Vector z;
  Vector g;
  double value = 0.0;  // log-likelihood - z'z/2
  double gradient_max_norm = 0.0;
};

// Maximizes sum_r log BTL(L z) - z'z/2 over the whitened latents z by damped
// Newton. The problem is concave with Hessian -(I + L' W L).
LatentSolution solve_latent(const std::vector<PreferenceRecord>& records, const Matrix& factor, double scale,
                            Vector z) {
  const Index n = factor.rows();
  auto evaluate = [&](const Vector& zz, Vector* grad_z, Matrix* w) {
    Vector grad_g;
    const Vector g = factor.triangularView<Eigen::Lower>() * zz;
    const double ll = btl_log_likelihood(records, g, scale, grad_z ? &grad_g : nullptr, w);
    if (grad_z) *grad_z = factor.transpose().triangularView<Eigen::Upper>() * grad_g - zz;
    return ll - 0.5 * zz.squaredNorm();
  };

  LatentSolution out;
  Vector grad;
  Matrix w;
  double value = evaluate(z, &grad, &w);
  for (int iter = 0; iter < 100 && std::isfinite(value); ++iter) {
    if (grad.cwiseAbs().maxCoeff() <= 1e-11) break;
    Matrix h = factor.transpose() * w.selfadjointView<Eigen::Lower>() * factor;
    h.diagonal().array() += 1.0;
    const Vector step = h.llt().solve(grad);
    const double slope = grad.dot(step);
    if (!(slope > 0.0)) break;

    double t = 1.0;
    bool moved = false;
    for (int attempt = 0; attempt < 50; ++attempt) {
      const Vector candidate = z + t * step;
      const double cv = evaluate(candidate, nullptr, nullptr);
      if (std::isfinite(cv) && cv >= value + 1e-4 * t * slope) {
        z = candidate;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
    const double previous = value;
    value = evaluate(z, &grad, &w);
    if (std::abs(value - previous) <= 1e-15 * std::max(1.0, std::abs(value)) &&
        grad.cwiseAbs().maxCoeff() <= 1e-8)
      break;
  }
  out.value = value;
  out.gradient_max_norm = grad.size() ? grad.cwiseAbs().maxCoeff() : 0.0;
  out.g = factor.triangularView<Eigen::Lower>() * z;
  out.z = std::move(z);
  (void)n;
  return out;
}

// Profile objective over the log hyperparameters. At the latent optimum the
// joint gradient with respect to eta equals the partial derivative with g
// held fixed:
//   d/d eta_k = a'dK_k a / 2 - tr(K^-1 dK_k) / 2 + d log prior / d eta_k.
class ProfileObjective {
 public:
  ProfileObjective(const Dataset& dataset, const HyperPrior& prior, const FitOptions& options)
      : dataset_(dataset), prior_(prior), options_(options), points_(dataset.point_matrix()) {
    last_g_ = Vector::Zero(dataset.size());
    last_hyper_ = prior.medians(dataset.dim());
  }

  struct Evaluation {
    double value = 0.0;  // the joint log posterior
    Vector grad_eta;
    LatentSolution latent;
    Matrix factor;
  };

  Evaluation evaluate(const Vector& eta, bool want_gradient) {
    const KernelHyperparams h = from_log(eta);
    const double jitter = options_.jitter_relative * h.amplitude;
    Matrix k = kernel_matrix(points_, h);
    k.diagonal().array() += jitter;
    Eigen::LLT<Matrix> llt(k);
    if (llt.info() != Eigen::Success) throw FitFailure("map_fit: kernel matrix factorization failed", last_g_, last_hyper_);

    Evaluation ev;
    ev.factor = llt.matrixL();
    const Vector z0 = ev.factor.triangularView<Eigen::Lower>().solve(last_g_);
    ev.latent = solve_latent(dataset_.records(), ev.factor, options_.btl_scale, z0);

    Vector prior_grad;
    const double log_prior = prior_.log_density(h, want_gradient ? &prior_grad : nullptr);
    const double log_det_half = ev.factor.diagonal().array().log().sum();
    ev.value = ev.latent.value - log_det_half - 0.5 * static_cast<double>(dataset_.size()) * log_two_pi + log_prior;
    if (!std::isfinite(ev.value)) throw FitFailure("map_fit: non-finite objective", last_g_, last_hyper_);

    last_g_ = ev.latent.g;
    last_hyper_ = h;

    if (want_gradient) {
      const Index n = points_.cols();
      const Vector alpha = ev.factor.transpose().triangularView<Eigen::Upper>().solve(ev.latent.z);
      const Matrix k_inv = llt.solve(Matrix::Identity(n, n));
      const Matrix core = 0.5 * (alpha * alpha.transpose() - k_inv);

      ev.grad_eta.resize(eta.size());
      // The jitter is proportional to the amplitude, so d(K + jI)/d log a = K + jI.
      ev.grad_eta(0) = (core.cwiseProduct(k)).sum() + prior_grad(0);

      // dK_ij / d log theta_k = a * slope(r_ij) * (x_ik - x_jk)^2 / theta_k^2
      Matrix slope(n, n);
      for (Index j = 0; j < n; ++j) {
        slope(j, j) = 0.0;
        for (Index i = j + 1; i < n; ++i) {
          const double r = detail::scaled_distance(points_.col(i), points_.col(j), h);
          slope(i, j) = slope(j, i) = h.amplitude * detail::matern52_slope(r);
        }
      }
      const Matrix m = core.cwiseProduct(slope);
      const Vector row_sum = m.rowwise().sum();
      for (int d = 0; d < h.dim(); ++d) {
        const Vector xd = points_.row(d).transpose();
        const double quad = 2.0 * xd.cwiseAbs2().dot(row_sum) - 2.0 * xd.dot(m * xd);
        ev.grad_eta(d + 1) = quad / (h.length_scales(d) * h.length_scales(d)) + prior_grad(d + 1);
      }
    }
    return ev;
  }

 private:
  const Dataset& dataset_;
  const HyperPrior& prior_;
  const FitOptions& options_;
  Matrix points_;
  Vector last_g_;
  KernelHyperparams last_hyper_;
};

}  // namespace

double map_objective(const Dataset& dataset, const HyperPrior& prior, const FitOptions& options,
                     const Eigen::Ref<const Vector>& latent, const KernelHyperparams& h) {
  if (latent.size() != dataset.size()) throw std::invalid_argument("map_objective: latent size mismatch");
  const Matrix points = dataset.point_matrix();
  Matrix k = kernel_matrix(points, h);
  k.diagonal().array() += options.jitter_relative * h.amplitude;
  Eigen::LLT<Matrix> llt(k);
  if (llt.info() != Eigen::Success) throw std::runtime_error("map_objective: kernel matrix factorization failed");
  const Vector z = llt.matrixL().solve(latent);
  const double ll = btl_log_likelihood(dataset.records(), latent, options.btl_scale, nullptr, nullptr);
  const double log_det_half = Matrix(llt.matrixL()).diagonal().array().log().sum();
  return ll - 0.5 * z.squaredNorm() - log_det_half - 0.5 * static_cast<double>(dataset.size()) * log_two_pi +
         prior.log_density(h);
}

FittedModel map_fit(const Dataset& dataset, const HyperPrior& prior, const FitOptions& options) {
  prior.validate();
  options.validate();
  if (dataset.size() < 2 || dataset.records().empty())
    throw InvalidState("map_fit: need at least two points and one preference record");

  ProfileObjective profile(dataset, prior, options);
  const Vector eta0 = to_log(prior.medians(dataset.dim()));

  FitDiagnostics diag;
  Vector eta = eta0;
  if (!options.freeze_hyperparams) {
    const double spread = 5.0;  // in log units; the prior is far tighter than this
    const Vector lower = eta0.array() - spread;
    const Vector upper = eta0.array() + spread;
    optim::BoundedOptions bo;
    bo.max_iterations = options.max_iterations;
    bo.gradient_tolerance = options.gradient_tolerance;
    auto negated = [&](const Vector& x, Vector& grad) {
      auto ev = profile.evaluate(x, true);
      grad = -ev.grad_eta;
      return -ev.value;
    };
    const auto result = optim::minimize_bounded(negated, eta0, lower, upper, bo);
    eta = result.x;
    diag.outer_iterations = result.iterations;
  }

  auto final_eval = profile.evaluate(eta, !options.freeze_hyperparams);
  diag.objective = final_eval.value;
  diag.gradient_max_norm = final_eval.latent.gradient_max_norm;
  if (!options.freeze_hyperparams)
    diag.gradient_max_norm = std::max(diag.gradient_max_norm, final_eval.grad_eta.cwiseAbs().maxCoeff());

  const KernelHyperparams h = from_log(eta);
  return FittedModel(dataset, h, final_eval.latent.g, options.btl_scale, options.jitter_relative * h.amplitude, diag);
}

// ---------------------------------------------------------------------------
// Posterior queries

namespace {

void require_query(const FittedModel& model, const Eigen::Ref<const Vector>& x) {
  if (x.size() != model.space().dim()) throw std::invalid_argument("posterior: dimension mismatch");
}

// The exact variance at a training point is below the jitter. Cancellation in a - |v|^2 can push it
// slightly above, so allow a rounding budget proportional to the amplitude.
double floor_variance(double v, const FittedModel& model) {
  const double cutoff = model.jitter() + 1024.0 * std::numeric_limits<double>::epsilon() * model.hyperparams().amplitude;
  return v > cutoff ? v : 0.0;
}

}  // namespace

PosteriorValue posterior(const FittedModel& model, const Eigen::Ref<const Vector>& x) {
  require_query(model, x);
  const Matrix& pts = model.points();
  const KernelHyperparams& h = model.hyperparams();
  Vector ks(pts.cols());
  for (Index i = 0; i < pts.cols(); ++i) ks(i) = kernel(pts.col(i), x, h);
  const Vector v = model.llt().matrixL().solve(ks);
  return PosteriorValue{ks.dot(model.weights()), floor_variance(h.amplitude - v.squaredNorm(), model)};
}

PosteriorGradient posterior_with_gradient(const FittedModel& model, const Eigen::Ref<const Vector>& x) {
  require_query(model, x);
  const Matrix& pts = model.points();
  const KernelHyperparams& h = model.hyperparams();
  const Index n = pts.cols();
  Vector ks(n);
  Matrix dks(x.size(), n);
  for (Index i = 0; i < n; ++i) {
    ks(i) = kernel(x, pts.col(i), h);
    dks.col(i) = kernel_gradient(x, pts.col(i), h);
  }
  const Vector v = model.llt().matrixL().solve(ks);
  PosteriorGradient out;
  out.mean = ks.dot(model.weights());
  out.mean_gradient = dks * model.weights();
  out.variance = floor_variance(h.amplitude - v.squaredNorm(), model);
  if (out.variance > 0.0) {
    const Vector beta = model.llt().matrixU().solve(v);
    out.variance_gradient = -2.0 * (dks * beta);
  } else {
    out.variance_gradient = Vector::Zero(x.size());
  }
  return out;
}

std::vector<PosteriorValue> posterior_batch(const FittedModel& model, const Eigen::Ref<const Matrix>& queries) {
  if (queries.rows() != model.space().dim()) throw std::invalid_argument("posterior_batch: dimension mismatch");
  const Matrix ks = cross_kernel(model.points(), queries, model.hyperparams());
  const Matrix v = model.llt().matrixL().solve(ks);
  const Vector means = ks.transpose() * model.weights();
  std::vector<PosteriorValue> out(static_cast<std::size_t>(queries.cols()));
  for (Index j = 0; j < queries.cols(); ++j)
    out[static_cast<std::size_t>(j)] =
        PosteriorValue{means(j), floor_variance(model.hyperparams().amplitude - v.col(j).squaredNorm(), model)};
  return out;
}

Index current_best(const FittedModel& model, BestMode mode) {
  const Dataset& data = model.dataset();
  if (data.empty()) throw InvalidState("current_best: empty dataset");
  if (mode == BestMode::last_chosen) {
    if (data.records().empty()) throw InvalidState("current_best: last_chosen mode needs a record");
    return data.records().back().winner;
  }
  const auto values = posterior_batch(model, model.points());
  Index best = 0;
  for (Index i = 1; i < static_cast<Index>(values.size()); ++i)
    if (values[static_cast<std::size_t>(i)].mean > values[static_cast<std::size_t>(best)].mean) best = i;
  return best;
}

}  // namespace planesearch
