#pragma once

#include <functional>
#include <map>

#include "attrkit/cells.hpp"
#include "attrkit/invertible_map.hpp"
#include "attrkit/point_cloud.hpp"

namespace attrkit {

using EvalFn = std::function<Vec(const Vec&)>;

/// Discrete dynamical system given by paired samples (x_i, F(x_i)) on a
/// compact set, plus optional closed-form evaluators. When `map` is present
/// it is the exact homeomorphism behind the evaluators (registry systems
/// provide it); consumers that need iteration to be invertible require it.
struct SampledSystem {
  PointCloud domain;
  PointCloud image;
  EvalFn evaluator;          // may be empty
  EvalFn inverse_evaluator;  // may be empty
  MapPtr map;                // may be null

  /// Checks pairing, dimensions, and (when evaluators are present) that
  /// image[i] = evaluator(domain[i]) within tol.
  void validate(double tol = 1e-12) const;

  /// System generated by an exact homeomorphism sampled on a cloud.
  static SampledSystem from_map(MapPtr m, const PointCloud& domain_samples);

  /// Domain and image swapped (samples of F^-1).
  SampledSystem swapped() const;
};

struct OmegaOptions {
  int burn_in = 200;
  int window = 50;
  double cluster_tol = 1e-3;
  double divergence_bound = 1e6;
};

/// Clustered accumulation points of {F^n(b) : b in B, burn_in <= n <
/// burn_in+window}; single-linkage clustering at radius cluster_tol, one
/// centroid per cluster. Orbits exceeding the divergence bound abort, naming
/// the escaping sample.
PointCloud omega_limit(const SampledSystem& system, const PointCloud& B,
                       const OmegaOptions& opts);

struct CertifiedAttractor {
  PointCloud cloud;                // F^{j_max}(K)
  std::vector<double> step_dist;   // dist(F^{j+1}(K), F^j(K)), one per step
};

/// Finite truncation of the nested-intersection characterization: returns
/// F^{j_max}(K) together with the per-step semidistances (nonincreasing in
/// the attracting regime).
CertifiedAttractor certify_attractor(const SampledSystem& system, const PointCloud& K,
                                     int j_max, double divergence_bound = 1e6);

/// Cells C_j = F^{nj}(closed ball of radius R), where n is the smallest
/// exponent with F^n(B(0,R)) strictly inside B(0,R) (searched on samples up
/// to n_cap). Requires the exact homeomorphism. Errors if no absorbing
/// exponent is found.
CellSequence cells_from_homeomorphism(const SampledSystem& system, double R, int j_count,
                                      int n_cap = 64, int probe_samples = 128,
                                      std::uint64_t seed = 0xD1ull);

/// Semiflow S(t)(p), defined for all t >= 0.
using Semiflow = std::function<Vec(double, const Vec&)>;

/// Checkable witness that the attractor is contractible within its
/// neighbourhood: witness(p,0) = p, witness(p,1) = S(T)(q), ranging inside
/// N(A, U_radius) on samples.
struct SemiflowWitness {
  double T = 0.0;
  Vec q;
  std::function<Vec(const Vec&, double)> eval;
};

/// Builds the witness with T found by doubling until S(T) carries the
/// straight-line contraction G into the U_radius-neighbourhood of A on
/// samples. Errors when T exceeds t_cap.
SemiflowWitness contraction_witness(const Semiflow& semiflow, const PointCloud& A,
                                    std::size_t q_index, double U_radius,
                                    int t_grid = 9, double t_cap = 1.8e19);

}  // namespace attrkit
