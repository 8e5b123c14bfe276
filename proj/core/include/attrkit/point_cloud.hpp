#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "attrkit/common.hpp"

namespace attrkit {

/// Finite sample of a compact subset of R^dim. All points share the ambient
/// dimension and every coordinate is finite; both are checked on
/// construction and on push.
struct PointCloud {
  int dim = 0;
  std::vector<Vec> points;

  PointCloud() = default;
  explicit PointCloud(int dimension) : dim(dimension) {
    require(dim >= 1, "point cloud: dimension must be positive, got ", dim);
  }
  PointCloud(int dimension, std::vector<Vec> pts);

  void push(Vec p);
  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  double max_norm() const;

  /// Largest nearest-neighbour gap over the cloud (sampling resolution).
  double nn_spacing() const;
};

/// dist(A,B) = sup_{a in A} inf_{b in B} |a-b|. Exact sup-inf over the finite
/// clouds; both must be nonempty and share the ambient dimension.
double hausdorff_semidist(const PointCloud& a, const PointCloud& b);

/// Distance from a single point to the cloud.
double dist_to_cloud(const Vec& p, const PointCloud& cloud);

nlohmann::json cloud_to_json(const PointCloud& cloud);
PointCloud cloud_from_json(const nlohmann::json& j);

}  // namespace attrkit
