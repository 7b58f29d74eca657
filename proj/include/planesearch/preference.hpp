#pragma once

#include "planesearch/types.hpp"

#include <optional>
#include <vector>

namespace planesearch {

/// "winner is preferred over every loser", as indices into Dataset::points().
struct PreferenceRecord {
  Index winner = 0;
  std::vector<Index> losers;

  bool operator==(const PreferenceRecord&) const = default;
};

/// A preference expressed over raw parameter vectors, before the points are
/// registered in a Dataset.
struct PreferenceIntent {
  Vector winner;
  std::vector<Vector> losers;
};

/// Observed parameter sets and the preference relations between them.
/// Points closer than the dedup tolerance (max-norm) are merged.
class Dataset {
 public:
  static constexpr double default_dedup_tolerance = 1e-10;

  explicit Dataset(SearchSpace space, double dedup_tolerance = default_dedup_tolerance);

  const SearchSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }
  double dedup_tolerance() const { return dedup_tolerance_; }

  Index size() const { return static_cast<Index>(points_.size()); }
  bool empty() const { return points_.empty(); }
  const std::vector<Vector>& points() const { return points_; }
  const Vector& point(Index i) const { return points_.at(static_cast<std::size_t>(i)); }
  const std::vector<PreferenceRecord>& records() const { return records_; }

  /// Points as the columns of an n x N matrix.
  Matrix point_matrix() const;

  std::optional<Index> find(const Vector& x) const;

  /// Index of x, registering it if no existing point lies within tolerance.
  Index add_point(const Vector& x);

  /// Validates and appends a record. Losers equal to the winner are dropped
  /// and duplicates removed; throws std::invalid_argument if none remain.
  const PreferenceRecord& add_record(Index winner, std::vector<Index> losers);

  /// Registers the intent's points and appends the resulting record.
  const PreferenceRecord& add(const PreferenceIntent& intent);

  bool operator==(const Dataset&) const = default;

 private:
  SearchSpace space_;
  double dedup_tolerance_;
  std::vector<Vector> points_;
  std::vector<PreferenceRecord> records_;
};

/// log P(winner | choice set) under the Bradley-Terry-Luce model with
/// temperature `scale`: exp(g_w / s) / sum_j exp(g_j / s).
double btl_log_likelihood(const PreferenceRecord& record, const Eigen::Ref<const Vector>& goodness,
                          double scale);

/// Log-likelihood of every record, accumulating the gradient and (optionally)
/// the negative Hessian with respect to the goodness values.
double btl_log_likelihood(const std::vector<PreferenceRecord>& records,
                          const Eigen::Ref<const Vector>& goodness, double scale, Vector* gradient,
                          Matrix* neg_hessian);

}  // namespace planesearch
