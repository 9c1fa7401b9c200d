#pragma once

#include <Eigen/Core>

#include <vector>

namespace cloudsig {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// A finite set of m distinct points in R^d. Points are stored as the columns
// of a d x m matrix. The order is kept (generators and the noise model use
// it) but no algorithm depends on it.
class PointCloud {
 public:
  PointCloud() = default;

  // Throws InvalidCloud for empty input, non-finite coordinates or ragged
  // rows, and DuplicatePoints when two points coincide.
  explicit PointCloud(Mat points);
  explicit PointCloud(const std::vector<std::vector<double>>& rows);

  Eigen::Index size() const { return points_.cols(); }
  Eigen::Index dim() const { return points_.rows(); }

  const Mat& points() const { return points_; }
  auto point(Eigen::Index i) const { return points_.col(i); }

  double min_pairwise_distance() const;
  // Largest pairwise distance.
  double diameter() const;
  Vec bbox_min() const { return points_.rowwise().minCoeff(); }
  Vec bbox_max() const { return points_.rowwise().maxCoeff(); }

  // Same points in a different order: result.point(k) == point(order[k]).
  PointCloud permuted(const std::vector<Eigen::Index>& order) const;

 private:
  Mat points_;
};

}  // namespace cloudsig
