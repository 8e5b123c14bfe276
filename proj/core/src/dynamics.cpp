#include "attrkit/dynamics.hpp"

#include <cmath>
#include <numeric>

#include "attrkit/samplers.hpp"

namespace attrkit {

void SampledSystem::validate(double tol) const {
  require(domain.dim == image.dim, "sampled system: domain/image dimension mismatch");
  require(domain.size() == image.size(), "sampled system: domain/image pairing broken (",
          domain.size(), " vs ", image.size(), ")");
  if (evaluator) {
    for (std::size_t i = 0; i < domain.size(); ++i)
      require(dist(evaluator(domain.points[i]), image.points[i]) <= tol,
              "sampled system: image[", i, "] disagrees with the evaluator");
  }
  if (inverse_evaluator) {
    for (std::size_t i = 0; i < image.size(); ++i)
      require(dist(inverse_evaluator(image.points[i]), domain.points[i]) <= tol,
              "sampled system: inverse evaluator disagrees at sample ", i);
  }
}

SampledSystem SampledSystem::from_map(MapPtr m, const PointCloud& domain_samples) {
  require(m != nullptr, "sampled system: null map");
  require(m->dim() == domain_samples.dim, "sampled system: map/sample dimension mismatch");
  SampledSystem sys;
  sys.domain = domain_samples;
  sys.image = PointCloud(domain_samples.dim);
  for (const Vec& x : domain_samples.points) sys.image.push(m->forward(x));
  MapPtr held = m;
  sys.evaluator = [held](const Vec& p) { return held->forward(p); };
  sys.inverse_evaluator = [held](const Vec& p) { return held->inverse(p); };
  sys.map = std::move(m);
  return sys;
}

SampledSystem SampledSystem::swapped() const {
  SampledSystem out;
  out.domain = image;
  out.image = domain;
  out.evaluator = inverse_evaluator;
  out.inverse_evaluator = evaluator;
  out.map = map ? map->inverted() : nullptr;
  return out;
}

namespace {

// Single-linkage clusters at the given radius; returns one centroid each.
PointCloud cluster_centroids(const PointCloud& pool, double radius) {
  const std::size_t n = pool.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dist_sq(pool.points[i], pool.points[j]) <= r2) parent[find(i)] = find(j);

  std::map<std::size_t, std::pair<Vec, std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) {
    auto& [sum, count] = groups.try_emplace(find(i), zeros(pool.dim), 0).first->second;
    sum = add(std::move(sum), pool.points[i]);
    ++count;
  }
  PointCloud out(pool.dim);
  for (auto& [root, acc] : groups)
    out.push(scaled(std::move(acc.first), 1.0 / static_cast<double>(acc.second)));
  return out;
}

}  // namespace

PointCloud omega_limit(const SampledSystem& system, const PointCloud& B,
                       const OmegaOptions& opts) {
  require(static_cast<bool>(system.evaluator), "omega_limit: evaluator required");
  require(opts.burn_in >= 1 && opts.window >= 1, "omega_limit: burn_in and window must be >= 1");
  require(B.dim == system.domain.dim, "omega_limit: dimension mismatch");

  PointCloud pool(B.dim);
  for (std::size_t s = 0; s < B.size(); ++s) {
    Vec x = B.points[s];
    for (int n = 0; n < opts.burn_in + opts.window; ++n) {
      x = system.evaluator(x);
      require(norm(x) <= opts.divergence_bound, "omega_limit: orbit of sample ", s,
              " diverged at iterate ", n, " (norm ", norm(x), ")");
      if (n >= opts.burn_in) pool.push(x);
    }
  }
  return cluster_centroids(pool, opts.cluster_tol);
}

CertifiedAttractor certify_attractor(const SampledSystem& system, const PointCloud& K,
                                     int j_max, double divergence_bound) {
  require(static_cast<bool>(system.evaluator), "certify_attractor: evaluator required");
  require(j_max >= 1, "certify_attractor: j_max must be >= 1");
  require(!K.empty(), "certify_attractor: K must be nonempty");
  CertifiedAttractor out;
  out.cloud = K;
  for (int j = 0; j < j_max; ++j) {
    PointCloud next(K.dim);
    for (std::size_t s = 0; s < out.cloud.size(); ++s) {
      Vec y = system.evaluator(out.cloud.points[s]);
      require(norm(y) <= divergence_bound, "certify_attractor: orbit of sample ", s,
              " diverged at iterate ", j + 1);
      next.push(std::move(y));
    }
    out.step_dist.push_back(hausdorff_semidist(next, out.cloud));
    out.cloud = std::move(next);
  }
  return out;
}

CellSequence cells_from_homeomorphism(const SampledSystem& system, double R, int j_count,
                                      int n_cap, int probe_samples, std::uint64_t seed) {
  require(system.map != nullptr && system.evaluator && system.inverse_evaluator,
          "cells_from_homeomorphism: exact invertible map required");
  require(R > 0.0 && j_count >= 1, "cells_from_homeomorphism: bad parameters");

  // Probe absorption F^n(B(0,R)) inside B(0,R) on boundary + interior samples.
  PointCloud probes = sample_sphere(system.domain.dim, R, probe_samples, seed);
  {
    PointCloud inner = sample_ball(system.domain.dim, R, probe_samples / 2 + 1, seed ^ 0xBA11ull);
    for (Vec& p : inner.points) probes.push(std::move(p));
  }

  int n_found = -1;
  std::vector<Vec> current = probes.points;
  for (int n = 1; n <= n_cap; ++n) {
    double worst = 0.0;
    for (Vec& p : current) {
      p = system.map->forward(p);
      worst = std::max(worst, norm(p));
    }
    if (worst < R) {
      n_found = n;
      break;
    }
  }
  require(n_found > 0, "cells_from_homeomorphism: not verifiably absorbing at radius ", R,
          " within n <= ", n_cap);

  std::vector<Cell> cells;
  std::vector<MapPtr> reps;
  for (int j = 1; j <= j_count; ++j) {
    for (int i = 0; i < n_found; ++i) reps.push_back(system.map);
    cells.push_back(cell_from_chart(compose(reps), R, "iterate",
                                    {{"n", n_found}, {"j", j}}));
  }
  CellSequence seq(std::move(cells), R);
  seq.validate_nesting(32, seed ^ 0x5EEDull);
  return seq;
}

SemiflowWitness contraction_witness(const Semiflow& semiflow, const PointCloud& A,
                                    std::size_t q_index, double U_radius, int t_grid,
                                    double t_cap) {
  require(static_cast<bool>(semiflow), "contraction_witness: semiflow required");
  require(!A.empty() && q_index < A.size(), "contraction_witness: bad base point index");
  require(U_radius > 0.0, "contraction_witness: neighbourhood radius must be positive");

  const Vec q = A.points[q_index];
  // G(p,t) = q + (1-t)(p-q): straight-line pull toward q.
  auto G = [&q](const Vec& p, double t) {
    Vec out = q;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += (1.0 - t) * (p[i] - q[i]);
    return out;
  };

  double T = 1.0;
  for (;; T *= 2.0) {
    require(T <= t_cap, "contraction_witness: attraction time not found (cap ", t_cap, ")");
    bool contained = true;
    for (const Vec& p : A.points) {
      for (int ti = 0; ti <= t_grid && contained; ++ti) {
        const double t = static_cast<double>(ti) / t_grid;
        if (dist_to_cloud(semiflow(T, G(p, t)), A) >= U_radius) contained = false;
      }
      if (!contained) break;
    }
    if (contained) break;
  }

  SemiflowWitness w;
  w.T = T;
  w.q = q;
  const Semiflow flow = semiflow;
  const Vec qc = q;
  w.eval = [flow, qc, T](const Vec& p, double t) {
    require(t >= 0.0 && t <= 1.0, "witness: t must be in [0,1]");
    if (t <= 0.5) return flow(2.0 * T * t, p);
    const double s = 2.0 * t - 1.0;
    Vec g = qc;
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += (1.0 - s) * (p[i] - qc[i]);
    return flow(T, g);
  };
  return w;
}

}  // namespace attrkit
