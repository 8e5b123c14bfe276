#include "attrkit/embedding.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "attrkit/rng.hpp"

namespace attrkit {

Vec Embedding::apply(const Vec& x) const { return add(matvec(matrix, x), offset); }

Vec Embedding::invert_nearest(const Vec& y) const {
  require(!anchors_out.empty(), "embedding: no anchors for nearest-anchor inversion");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < anchors_out.size(); ++i) {
    const double d = dist_sq(y, anchors_out.points[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return anchors_in.points[best];
}

double embedding_margin(const Mat& m, const PointCloud& X) {
  double margin = std::numeric_limits<double>::infinity();
  std::vector<Vec> images;
  images.reserve(X.size());
  for (const Vec& x : X.points) images.push_back(matvec(m, x));
  for (std::size_t i = 0; i < X.size(); ++i) {
    for (std::size_t j = i + 1; j < X.size(); ++j) {
      const double base = dist(X.points[i], X.points[j]);
      require(base > 0.0, "embedding: duplicate sample points at indices ", i, " and ", j);
      margin = std::min(margin, dist(images[i], images[j]) / base);
    }
  }
  return margin;
}

Embedding embed(const PointCloud& X, int k, int attempts, std::uint64_t seed,
                double margin_floor) {
  require(!X.empty(), "embed: X must be nonempty");
  require(k >= 0, "embed: k must be >= 0");
  require(attempts >= 1, "embed: attempts must be >= 1");
  const int target = 2 * k + 1;
  const int ambient = X.dim;
  require(target <= ambient, "embed: target dimension ", target,
          " exceeds ambient dimension ", ambient);

  const CounterRng rng = CounterRng(seed).stream("embedding");
  double best_margin = -1.0;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Mat m(target, ambient);
    if (attempt == 0 && target == ambient) {
      m = Mat::identity(target);
    } else {
      for (int i = 0; i < target; ++i)
        for (int j = 0; j < ambient; ++j)
          m.at(i, j) = rng.gaussian(
              (static_cast<std::uint64_t>(attempt) * target + static_cast<std::uint64_t>(i)) *
                  static_cast<std::uint64_t>(ambient) +
              static_cast<std::uint64_t>(j));
      orthonormalize_rows(m);
    }
    const double margin = embedding_margin(m, X);
    best_margin = std::max(best_margin, margin);
    if (margin > margin_floor) {
      Embedding e;
      e.matrix = std::move(m);
      e.offset = zeros(target);
      e.k = k;
      e.injectivity_margin = margin;
      e.seed = seed;
      e.anchors_in = X;
      e.anchors_out = PointCloud(target);
      for (const Vec& x : X.points) e.anchors_out.push(e.apply(x));
      return e;
    }
  }
  fail("embed: margin floor ", margin_floor, " not reached in ", attempts,
       " attempts (best margin ", best_margin, ")");
}

PointCloud pad_dimension(const PointCloud& cloud) {
  require(!cloud.empty(), "pad_dimension: cloud must be nonempty");
  PointCloud out(cloud.dim + 1);
  for (const Vec& p : cloud.points) {
    Vec q = p;
    q.push_back(0.0);
    out.push(std::move(q));
  }
  return out;
}

SampledSystem conjugate_system(const SampledSystem& F, const Embedding& e,
                               double margin_floor) {
  F.validate();
  require(F.domain.dim == e.source_dim(), "conjugate_system: dimension mismatch");
  const double margin = embedding_margin(e.matrix, F.domain);
  require(margin > margin_floor, "conjugate_system: margin ", margin,
          " below floor ", margin_floor, "; conjugacy ill-conditioned");

  SampledSystem out;
  out.domain = PointCloud(e.target_dim());
  out.image = PointCloud(e.target_dim());
  for (const Vec& x : F.domain.points) out.domain.push(e.apply(x));
  for (const Vec& y : F.image.points) out.image.push(e.apply(y));
  return out;
}

nlohmann::json embedding_to_json(const Embedding& e) {
  nlohmann::json j;
  j["k"] = e.k;
  j["margin"] = e.injectivity_margin;
  j["seed"] = e.seed;
  j["offset"] = e.offset;
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < e.matrix.rows; ++i) {
    Vec row(e.matrix.a.begin() + static_cast<std::ptrdiff_t>(i) * e.matrix.cols,
            e.matrix.a.begin() + static_cast<std::ptrdiff_t>(i + 1) * e.matrix.cols);
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

}  // namespace attrkit
