#include "attrkit/extension.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "attrkit/rng.hpp"

namespace attrkit {

ExtensionOperator::ExtensionOperator(PointCloud anchors, PointCloud values, double radius,
                                     double blend_margin, double shepard_power)
    : anchors_(std::move(anchors)),
      values_(std::move(values)),
      radius_(radius),
      blend_margin_(blend_margin),
      shepard_power_(shepard_power) {
  require(!anchors_.empty(), "extend: need at least one anchor");
  require(anchors_.dim == values_.dim, "extend: anchor/value dimension mismatch");
  require(anchors_.size() == values_.size(), "extend: anchor/value count mismatch");
  require(radius_ > 0.0, "extend: identity radius must be positive");
  require(blend_margin_ > 0.0 && blend_margin_ < 1.0, "extend: blend_margin must be in (0,1)");
  require(shepard_power_ >= 2.0, "extend: shepard power must be >= 2");

  // Anchor exactness and the identity blend can only coexist when anchors
  // stay out of the blend shell.
  const double pure = (1.0 - blend_margin_) * radius_;
  for (std::size_t i = 0; i < anchors_.size(); ++i) {
    const double n = norm(anchors_.points[i]);
    require(n < pure, "extend: anchor ", i, " has norm ", n,
            ", not strictly inside the pure-interpolant radius ", pure);
    for (std::size_t j = i + 1; j < anchors_.size(); ++j)
      require(dist_sq(anchors_.points[i], anchors_.points[j]) > 0.0,
              "extend: duplicate anchors at indices ", i, " and ", j);
  }
}

Vec ExtensionOperator::shepard(const Vec& p) const {
  // Work with weights (dmin/d_i)^power so the largest weight is 1; no
  // overflow however close p sits to an anchor.
  double dmin = std::numeric_limits<double>::infinity();
  std::size_t nearest = 0;
  for (std::size_t i = 0; i < anchors_.size(); ++i) {
    const double d = dist_sq(p, anchors_.points[i]);
    if (d < dmin) {
      dmin = d;
      nearest = i;
    }
  }
  dmin = std::sqrt(dmin);
  if (dmin <= 1e-13 * (1.0 + norm(p))) return values_.points[nearest];

  Vec acc = zeros(anchors_.dim);
  double total = 0.0;
  for (std::size_t i = 0; i < anchors_.size(); ++i) {
    const double w = std::pow(dmin / dist(p, anchors_.points[i]), shepard_power_);
    acc = axpy(std::move(acc), w, values_.points[i]);
    total += w;
  }
  return scaled(std::move(acc), 1.0 / total);
}

Vec ExtensionOperator::operator()(const Vec& p) const {
  require(static_cast<int>(p.size()) == anchors_.dim, "extension: dimension mismatch");
  const double r = norm(p);
  if (r >= radius_) return p;  // exterior identity, bitwise
  const double pure = (1.0 - blend_margin_) * radius_;
  if (r <= pure) return shepard(p);
  const double lambda = (r - pure) / (radius_ - pure);
  Vec s = shepard(p);
  Vec out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    out[i] = lambda * p[i] + (1.0 - lambda) * s[i];
  return out;
}

double ExtensionOperator::continuity_probe(double delta, int count, std::uint64_t seed) const {
  const CounterRng rng = CounterRng(seed).stream("continuity");
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t u = static_cast<std::uint64_t>(i);
    Vec p(static_cast<std::size_t>(anchors_.dim));
    for (int j = 0; j < anchors_.dim; ++j)
      p[static_cast<std::size_t>(j)] =
          1.2 * radius_ * rng.symmetric(u * static_cast<std::uint64_t>(anchors_.dim) + static_cast<std::uint64_t>(j));
    Vec q = p;
    Vec step = rng.gaussian_vec(u, anchors_.dim);
    const double n = norm(step);
    if (n < 1e-12) continue;
    q = axpy(std::move(q), delta / n, step);
    worst = std::max(worst, dist((*this)(p), (*this)(q)) / delta);
  }
  return worst;
}

ExtensionPtr extend(PointCloud anchors, PointCloud values, double radius,
                    double blend_margin, double shepard_power) {
  return std::make_shared<ExtensionOperator>(std::move(anchors), std::move(values), radius,
                                             blend_margin, shepard_power);
}

nlohmann::json extension_to_json(const ExtensionOperator& op) {
  nlohmann::json j;
  j["kind"] = op.kind();
  j["anchors"] = cloud_to_json(op.anchors());
  j["values"] = cloud_to_json(op.values());
  j["R"] = op.radius();
  j["blend_margin"] = op.blend_margin();
  j["shepard_power"] = op.shepard_power();
  return j;
}

ExtensionPtr extension_from_json(const nlohmann::json& j) {
  return extend(cloud_from_json(j.at("anchors")), cloud_from_json(j.at("values")),
                j.at("R").get<double>(), j.at("blend_margin").get<double>(),
                j.at("shepard_power").get<double>());
}

}  // namespace attrkit
