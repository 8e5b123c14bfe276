#pragma once

#include <memory>

#include "attrkit/cells.hpp"
#include "attrkit/invertible_map.hpp"

namespace attrkit {

/// Truncated Brown collapse: a homeomorphism of R^n built as a stack of
/// ray-preserving squeezes, one per cell. Stage j crushes the image of cell j
/// onto the ball of radius t_j = R*2^-j (so stage j maps cell j inside
/// B(0, R/(j+1))) and is the exact identity outside the previous stage's
/// image ball; stages therefore agree bitwise outside the previous cell, and
/// the whole map is the exact identity outside B(0,R).
///
/// The per-direction stage profiles are rebuilt from the cell extents at
/// every evaluation, identically for forward and inverse, so round trips are
/// exact up to a few ulp of piecewise-linear arithmetic.
class CollapseMap final : public InvertibleMap {
 public:
  int dim() const override;
  Vec forward(const Vec& p) const override;
  Vec inverse(const Vec& p) const override;
  MapPtr inverted() const override;
  std::string kind() const override { return "restriction_stack"; }

  int depth() const { return stages_used_; }
  double outer_radius() const;
  const CellSequence& cells() const;

  /// t_j for stage j (1-based).
  double stage_target(int j) const;
  double innermost_target() const { return stage_target(stages_used_); }

  /// The partial collapse g_j (stages 1..j), sharing this map's data.
  std::shared_ptr<const CollapseMap> stage(int j) const;

 private:
  friend CollapseMap brown_collapse(const CellSequence&, double, int, int, int,
                                    std::uint64_t);

  struct Core {
    CellSequence cells;
    double R;
    std::vector<double> targets;
    Core(CellSequence c, double r, std::vector<double> t)
        : cells(std::move(c)), R(r), targets(std::move(t)) {}
  };

  CollapseMap(std::shared_ptr<const Core> core, int stages, bool inverse_mode)
      : core_(std::move(core)), stages_used_(stages), inverse_mode_(inverse_mode) {}

  struct StageParams {
    double b;      // image extent of cell j along the query ray
    double t;      // squeeze target
    double outer;  // identity from here outward
  };
  std::vector<StageParams> stage_params(const Vec& xi) const;
  Vec eval(const Vec& p, bool inverse) const;

  std::shared_ptr<const Core> core_;
  int stages_used_;
  bool inverse_mode_;
};

/// Lemma-style truncated collapse. Validates strict nesting (throws naming
/// the offending cell index) and that cell 1 lies strictly inside B(0,R).
///
/// Stage targets follow the paper bound R/(j+1) for the first
/// harmonic_prefix stages and halve afterwards; both Phasen stay within
/// R/(j+1). A longer harmonic prefix keeps the squeeze shallow where orbits
/// transit (fewer iterations to a given neighbourhood), halving afterwards
/// keeps the truncated image of the core small.
CollapseMap brown_collapse(const CellSequence& cells, double R, int J,
                           int harmonic_prefix = 1, int validation_dirs = 64,
                           std::uint64_t seed = 0xCE11);

}  // namespace attrkit
