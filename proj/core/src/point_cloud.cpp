#include "attrkit/point_cloud.hpp"

#include <limits>

#include <nlohmann/json.hpp>

namespace attrkit {

PointCloud::PointCloud(int dimension, std::vector<Vec> pts) : PointCloud(dimension) {
  points.reserve(pts.size());
  for (Vec& p : pts) push(std::move(p));
}

void PointCloud::push(Vec p) {
  require(static_cast<int>(p.size()) == dim, "point cloud: point of dimension ",
          p.size(), " pushed into cloud of dimension ", dim);
  require(all_finite(p), "point cloud: coordinates must be finite");
  points.push_back(std::move(p));
}

double PointCloud::max_norm() const {
  double m = 0.0;
  for (const Vec& p : points) m = std::max(m, norm(p));
  return m;
}

double PointCloud::nn_spacing() const {
  require(points.size() >= 2, "point cloud: nn_spacing needs at least two points");
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      best = std::min(best, dist_sq(points[i], points[j]));
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

double dist_to_cloud(const Vec& p, const PointCloud& cloud) {
  require(!cloud.empty(), "dist_to_cloud: empty cloud is not a compact-set representation");
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& q : cloud.points) best = std::min(best, dist_sq(p, q));
  return std::sqrt(best);
}

double hausdorff_semidist(const PointCloud& a, const PointCloud& b) {
  require(a.dim == b.dim, "hausdorff_semidist: dimension mismatch ", a.dim, " vs ", b.dim);
  require(!a.empty() && !b.empty(),
          "hausdorff_semidist: empty cloud is not a compact-set representation");
  double sup = 0.0;
  for (const Vec& p : a.points) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& q : b.points) {
      const double d = dist_sq(p, q);
      if (d < best) {
        best = d;
        if (best <= sup) break;  // cannot raise the sup
      }
    }
    sup = std::max(sup, best);
  }
  return std::sqrt(sup);
}

nlohmann::json cloud_to_json(const PointCloud& cloud) {
  nlohmann::json j;
  j["dim"] = cloud.dim;
  j["points"] = nlohmann::json::array();
  for (const Vec& p : cloud.points) j["points"].push_back(p);
  return j;
}

PointCloud cloud_from_json(const nlohmann::json& j) {
  PointCloud cloud(j.at("dim").get<int>());
  for (const auto& p : j.at("points")) cloud.push(p.get<Vec>());
  return cloud;
}

}  // namespace attrkit
