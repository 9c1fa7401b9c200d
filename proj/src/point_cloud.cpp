#include "cloudsig/point_cloud.hpp"

#include "cloudsig/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cloudsig {

PointCloud::PointCloud(Mat points) : points_(std::move(points)) {
  if (points_.cols() < 1 || points_.rows() < 1) {
    throw InvalidCloud("point cloud needs at least one point of dimension >= 1");
  }
  if (!points_.allFinite()) {
    throw InvalidCloud("point cloud contains non-finite coordinates");
  }
  const Eigen::Index m = points_.cols();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index k = i + 1; k < m; ++k) {
      if ((points_.col(i) - points_.col(k)).squaredNorm() == 0.0) {
        throw DuplicatePoints("points " + std::to_string(i) + " and " +
                              std::to_string(k) + " coincide");
      }
    }
  }
}

namespace {

Mat from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw InvalidCloud("point cloud needs at least one point of dimension >= 1");
  }
  const auto d = static_cast<Eigen::Index>(rows.front().size());
  Mat pts(d, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != d) {
      throw InvalidCloud("row " + std::to_string(i) + " has " +
                         std::to_string(rows[i].size()) + " coordinates, expected " +
                         std::to_string(d));
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      pts(j, static_cast<Eigen::Index>(i)) = rows[i][static_cast<std::size_t>(j)];
    }
  }
  return pts;
}

}  // namespace

PointCloud::PointCloud(const std::vector<std::vector<double>>& rows)
    : PointCloud(from_rows(rows)) {}

double PointCloud::min_pairwise_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < size(); ++i) {
    for (Eigen::Index k = i + 1; k < size(); ++k) {
      best = std::min(best, (points_.col(i) - points_.col(k)).norm());
    }
  }
  return best;
}

double PointCloud::diameter() const {
  double best = 0.0;
  for (Eigen::Index i = 0; i < size(); ++i) {
    for (Eigen::Index k = i + 1; k < size(); ++k) {
      best = std::max(best, (points_.col(i) - points_.col(k)).norm());
    }
  }
  return best;
}

PointCloud PointCloud::permuted(const std::vector<Eigen::Index>& order) const {
  if (static_cast<Eigen::Index>(order.size()) != size()) {
    throw InvalidCloud("permutation length does not match cloud size");
  }
  Mat pts(dim(), size());
  for (Eigen::Index k = 0; k < size(); ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    if (src < 0 || src >= size()) throw InvalidCloud("permutation index out of range");
    pts.col(k) = points_.col(src);
  }
  return PointCloud(std::move(pts));
}

}  // namespace cloudsig
