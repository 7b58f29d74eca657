#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace planesearch {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Thrown when an operation is called in a state that does not permit it
/// (completed session, empty dataset, ...).
class InvalidState : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The normalized design space [0,1]^n.
class SearchSpace {
 public:
  explicit SearchSpace(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("SearchSpace: dimension must be >= 1");
  }

  int dim() const { return dim_; }

  Vector center() const { return Vector::Constant(dim_, 0.5); }

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& x) const {
    if (x.size() != dim_) return false;
    for (Index k = 0; k < x.size(); ++k) {
      const double c = x(k);
      if (!(c >= 0.0 && c <= 1.0)) return false;
    }
    return true;
  }

  /// Throws std::invalid_argument unless x is a finite point of the space.
  template <typename Derived>
  void require(const Eigen::MatrixBase<Derived>& x, const char* what = "point") const {
    if (x.size() != dim_)
      throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                  std::to_string(dim_) + ", got " + std::to_string(x.size()));
    if (!contains(x)) throw std::invalid_argument(std::string(what) + ": outside [0,1]^n");
  }

  bool operator==(const SearchSpace&) const = default;

 private:
  int dim_;
};

/// Coordinate-wise clamp into [0,1]^n.
template <typename Derived>
Vector clamp_to_unit(const Eigen::MatrixBase<Derived>& x) {
  return x.cwiseMax(0.0).cwiseMin(1.0);
}

template <typename DerivedA, typename DerivedB>
double max_norm_distance(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace planesearch
