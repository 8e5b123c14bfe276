#pragma once

#include <nlohmann/json_fwd.hpp>

#include "attrkit/dynamics.hpp"
#include "attrkit/linalg.hpp"
#include "attrkit/point_cloud.hpp"

namespace attrkit {

/// Affine embedding e(x) = M x + offset of a sampled compact set into
/// R^{2k+1}. injectivity_margin is the min over distinct sample pairs of
/// |e(x)-e(y)| / |x-y|; the inverse on the embedded set is nearest-anchor
/// lookup (exact on anchors).
struct Embedding {
  Mat matrix;
  Vec offset;
  int k = 0;
  double injectivity_margin = 0.0;
  std::uint64_t seed = 0;
  PointCloud anchors_in;   // original samples
  PointCloud anchors_out;  // their images

  int source_dim() const { return matrix.cols; }
  int target_dim() const { return matrix.rows; }

  Vec apply(const Vec& x) const;
  /// Nearest-anchor preimage; exact on anchors.
  Vec invert_nearest(const Vec& y) const;
};

/// Margin of an affine map on a cloud (min pairwise distance ratio; +inf for
/// fewer than two points). Throws on duplicate points.
double embedding_margin(const Mat& m, const PointCloud& X);

/// Random orthonormal-row projection into R^{2k+1} with injectivity retry:
/// up to `attempts` seeded draws, accepting the first with margin above the
/// floor (when the ambient dimension already equals 2k+1 the identity is
/// tried first). Errors carry the best margin found.
Embedding embed(const PointCloud& X, int k, int attempts, std::uint64_t seed,
                double margin_floor = 1e-4);

/// Appends one zero coordinate to every point.
PointCloud pad_dimension(const PointCloud& cloud);

/// Paired samples (e(x_i), e(F(x_i))) of the conjugated system e o F o e^-1.
/// Refuses when the margin is below the floor.
SampledSystem conjugate_system(const SampledSystem& F, const Embedding& e,
                               double margin_floor = 1e-4);

nlohmann::json embedding_to_json(const Embedding& e);

}  // namespace attrkit
