#include "planesearch/preference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace planesearch {

Dataset::Dataset(SearchSpace space, double dedup_tolerance)
    : space_(space), dedup_tolerance_(dedup_tolerance) {
  if (!(dedup_tolerance > 0.0)) throw std::invalid_argument("Dataset: dedup tolerance must be > 0");
}

Matrix Dataset::point_matrix() const {
  Matrix m(dim(), size());
  for (Index i = 0; i < size(); ++i) m.col(i) = points_[static_cast<std::size_t>(i)];
  return m;
}

std::optional<Index> Dataset::find(const Vector& x) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (x.size() == points_[i].size() && max_norm_distance(x, points_[i]) <= dedup_tolerance_)
      return static_cast<Index>(i);
  return std::nullopt;
}

Index Dataset::add_point(const Vector& x) {
  space_.require(x, "Dataset::add_point");
  if (auto existing = find(x)) return *existing;
  points_.push_back(x);
  return size() - 1;
}

const PreferenceRecord& Dataset::add_record(Index winner, std::vector<Index> losers) {
  auto in_range = [this](Index i) { return i >= 0 && i < size(); };
  if (!in_range(winner)) throw std::invalid_argument("Dataset::add_record: winner index out of range");
  for (Index l : losers)
    if (!in_range(l)) throw std::invalid_argument("Dataset::add_record: loser index out of range");

  std::vector<Index> cleaned;
  for (Index l : losers)
    if (l != winner && std::find(cleaned.begin(), cleaned.end(), l) == cleaned.end()) cleaned.push_back(l);
  if (cleaned.empty()) throw std::invalid_argument("Dataset::add_record: record has no distinct losers");

  records_.push_back(PreferenceRecord{winner, std::move(cleaned)});
  return records_.back();
}

const PreferenceRecord& Dataset::add(const PreferenceIntent& intent) {
  const Index w = add_point(intent.winner);
  std::vector<Index> losers;
  losers.reserve(intent.losers.size());
  for (const Vector& l : intent.losers) losers.push_back(add_point(l));
  return add_record(w, std::move(losers));
}

namespace {

void check_record(const PreferenceRecord& record, Index n) {
  if (record.losers.empty()) throw std::invalid_argument("btl_log_likelihood: empty loser set");
  if (record.winner < 0 || record.winner >= n)
    throw std::invalid_argument("btl_log_likelihood: winner index out of range");
  for (Index l : record.losers)
    if (l < 0 || l >= n) throw std::invalid_argument("btl_log_likelihood: loser index out of range");
}

}  // namespace

double btl_log_likelihood(const PreferenceRecord& record, const Eigen::Ref<const Vector>& goodness,
                          double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("btl_log_likelihood: scale must be > 0");
  check_record(record, goodness.size());

  double top = goodness(record.winner);
  for (Index l : record.losers) top = std::max(top, goodness(l));
  double denom = std::exp((goodness(record.winner) - top) / scale);
  for (Index l : record.losers) denom += std::exp((goodness(l) - top) / scale);
  return (goodness(record.winner) - top) / scale - std::log(denom);
}

double btl_log_likelihood(const std::vector<PreferenceRecord>& records,
                          const Eigen::Ref<const Vector>& goodness, double scale, Vector* gradient,
                          Matrix* neg_hessian) {
  if (!(scale > 0.0)) throw std::invalid_argument("btl_log_likelihood: scale must be > 0");
  const Index n = goodness.size();
  if (gradient) gradient->setZero(n);
  if (neg_hessian) neg_hessian->setZero(n, n);

  double total = 0.0;
  std::vector<Index> members;
  std::vector<double> prob;
  for (const PreferenceRecord& record : records) {
    check_record(record, n);
    members.assign(1, record.winner);
    members.insert(members.end(), record.losers.begin(), record.losers.end());

    double top = -std::numeric_limits<double>::infinity();
    for (Index m : members) top = std::max(top, goodness(m));
    prob.resize(members.size());
    double denom = 0.0;
    for (std::size_t a = 0; a < members.size(); ++a) {
      prob[a] = std::exp((goodness(members[a]) - top) / scale);
      denom += prob[a];
    }
    for (double& p : prob) p /= denom;
    total += (goodness(record.winner) - top) / scale - std::log(denom);

    if (gradient) {
      (*gradient)(record.winner) += 1.0 / scale;
      for (std::size_t a = 0; a < members.size(); ++a) (*gradient)(members[a]) -= prob[a] / scale;
    }
    if (neg_hessian) {
      // (diag(p) - p p^T) / s^2 on the choice set.
      const double s2 = scale * scale;
      for (std::size_t a = 0; a < members.size(); ++a) {
        (*neg_hessian)(members[a], members[a]) += prob[a] / s2;
        for (std::size_t b = 0; b < members.size(); ++b)
          (*neg_hessian)(members[a], members[b]) -= prob[a] * prob[b] / s2;
      }
    }
  }
  return total;
}

}  // namespace planesearch
