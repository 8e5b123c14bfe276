#include "attrkit/cells.hpp"

#include <cmath>
#include <limits>

#include "attrkit/rng.hpp"
#include "attrkit/samplers.hpp"

namespace attrkit {

namespace {

// p -> p * extent(p/|p|)/R, optionally the reciprocal. Rays map to
// themselves, so the inverse recomputes the same direction.
class StarScaleMap final : public InvertibleMap {
 public:
  StarScaleMap(int dim, double R, ExtentFn extent, bool reciprocal)
      : dim_(dim), R_(R), extent_(std::move(extent)), reciprocal_(reciprocal) {
    require(dim_ >= 1 && R_ > 0.0, "star chart: bad dimension or radius");
  }
  int dim() const override { return dim_; }
  Vec forward(const Vec& p) const override { return eval(p, reciprocal_); }
  Vec inverse(const Vec& p) const override { return eval(p, !reciprocal_); }
  MapPtr inverted() const override {
    return std::make_shared<StarScaleMap>(dim_, R_, extent_, !reciprocal_);
  }
  std::string kind() const override { return "radial"; }

 private:
  Vec eval(const Vec& p, bool reciprocal) const {
    require(static_cast<int>(p.size()) == dim_, "star chart: dimension mismatch");
    if (is_zero(p)) return p;
    const double r = norm(p);
    Vec xi = scaled(p, 1.0 / r);
    const double s = extent_(xi) / R_;
    require(s > 0.0 && std::isfinite(s), "star chart: extent must be positive, got ", s);
    return scaled(Vec(p), reciprocal ? 1.0 / s : s);
  }

  int dim_;
  double R_;
  ExtentFn extent_;
  bool reciprocal_;
};

double bisect_extent(const InvertibleMap& chart, double R, const Vec& xi) {
  // Largest t with |chart^{-1}(t xi)| <= R, assuming the image is
  // star-shaped about the origin (monotone preimage norm along rays).
  require(norm(chart.inverse(zeros(chart.dim()))) < R,
          "cell extent: chart preimage of the origin lies outside the domain ball");
  double hi = R;
  int grow = 0;
  while (norm(chart.inverse(scaled(xi, hi))) < R) {
    hi *= 2.0;
    require(++grow < 80, "cell extent: ray never leaves the cell");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (norm(chart.inverse(scaled(xi, mid))) < R ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Cell round_cell(int dim, double R, double radius) {
  require(radius > 0.0, "round cell: radius must be positive");
  const double ratio = radius / R;
  return Cell{radial_map(RadialProfile::scaling(ratio), dim),
              [radius](const Vec&) { return radius; },
              "round",
              {{"dim", dim}, {"radius", radius}},
              radius,
              {}};
}

Cell flat_ball_cell(int dim, int flat_dim, double L, double R, double margin) {
  require(flat_dim >= 0 && flat_dim <= dim, "flat_ball cell: bad flat dimension");
  require(L >= 0.0 && margin > 0.0, "flat_ball cell: bad geometry");
  ExtentFn extent = [flat_dim, L, margin](const Vec& xi) {
    return flat_ball_extent(xi, flat_dim, L, margin);
  };
  std::vector<Vec> extremes;
  if (flat_dim > 0 && L > 0.0) {
    Vec axis = zeros(dim);
    axis[0] = 1.0;
    extremes.push_back(std::move(axis));
  }
  return Cell{star_chart(dim, R, extent), extent, "flat_ball",
              {{"dim", dim}, {"flat_dim", flat_dim}, {"L", L}, {"margin", margin}},
              L + margin,
              std::move(extremes)};
}

Cell ellipsoid_cell(int dim, double R, const Mat& axes, double radius) {
  require(axes.rows == dim && axes.cols == dim, "ellipsoid cell: axes must be dim x dim");
  require(radius > 0.0, "ellipsoid cell: radius must be positive");
  Mat axes_inv = invert(axes);
  ExtentFn extent = [axes_inv, radius](const Vec& xi) {
    return radius / norm(matvec(axes_inv, xi));
  };
  Mat scaled_axes = axes;
  for (double& x : scaled_axes.a) x *= radius / R;
  nlohmann::json axes_rows = nlohmann::json::array();
  for (int i = 0; i < dim; ++i) {
    Vec row(axes.a.begin() + static_cast<std::ptrdiff_t>(i) * dim,
            axes.a.begin() + static_cast<std::ptrdiff_t>(i + 1) * dim);
    axes_rows.push_back(row);
  }
  double frob = 0.0;
  for (double x : axes.a) frob += x * x;
  // Top singular direction of A^-1-norm minimizer = argmax of the extent.
  Vec top(static_cast<std::size_t>(dim), 1.0 / std::sqrt(static_cast<double>(dim)));
  for (int it = 0; it < 64; ++it) {
    Vec next = matvec(axes, matvec(transpose(axes), top));
    const double n = norm(next);
    if (n < 1e-30) break;
    top = scaled(std::move(next), 1.0 / n);
  }
  return Cell{linear_map(std::move(scaled_axes)), extent, "ellipsoid",
              {{"dim", dim}, {"radius", radius}, {"axes", axes_rows}},
              radius * std::sqrt(frob),
              {top}};
}

Cell scaled_cell(const Cell& cell, double s, double chart_R) {
  // Shipped providers rescale exactly through their parameters;
  // s*N(X_L, d) = N(X_{s L}, s d) and s * (r * E) = (s r) * E.
  const nlohmann::json& p = cell.params;
  if (cell.provider == "round")
    return round_cell(p.at("dim"), chart_R, s * p.at("radius").get<double>());
  if (cell.provider == "flat_ball")
    return flat_ball_cell(p.at("dim"), p.at("flat_dim"), s * p.at("L").get<double>(), chart_R,
                          s * p.at("margin").get<double>());
  if (cell.provider == "ellipsoid") {
    const int dim = p.at("dim");
    Mat axes(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) axes.at(i, j) = p.at("axes")[i][j].get<double>();
    return ellipsoid_cell(dim, chart_R, axes, s * p.at("radius").get<double>());
  }
  // Generic chart: wrap.
  ExtentFn base = cell.extent;
  ExtentFn extent = [base, s](const Vec& xi) { return s * base(xi); };
  MapPtr chart = compose({cell.chart, radial_map(RadialProfile::scaling(s), cell.chart->dim())});
  nlohmann::json params = cell.params;
  params["scale"] = s * params.value("scale", 1.0);
  return Cell{std::move(chart), std::move(extent), cell.provider, std::move(params),
              s * cell.extent_bound, cell.extreme_dirs};
}

}  // namespace

MapPtr star_chart(int dim, double R, ExtentFn extent) {
  return std::make_shared<StarScaleMap>(dim, R, std::move(extent), false);
}

double flat_ball_extent(const Vec& xi, int flat_dim, double L, double d) {
  if (flat_dim == 0 || L == 0.0) return d;
  double u2 = 0.0;
  for (int i = 0; i < flat_dim; ++i) u2 += xi[static_cast<std::size_t>(i)] * xi[static_cast<std::size_t>(i)];
  double w2 = 0.0;
  for (std::size_t i = static_cast<std::size_t>(flat_dim); i < xi.size(); ++i) w2 += xi[i] * xi[i];
  const double u = std::sqrt(u2), w = std::sqrt(w2);
  if (w > 1e-15) {
    const double t = d / w;
    if (t * u <= L) return t;  // boundary met over the flat ball's interior
  }
  // Boundary met past the rim: (t u - L)^2 + (t w)^2 = d^2 with u^2 + w^2 = 1.
  const double disc = d * d - L * L * w2;
  return L * u + std::sqrt(std::max(disc, 0.0));
}

CellSequence::CellSequence(std::vector<Cell> cells, double R) : cells_(std::move(cells)), R_(R) {
  require(!cells_.empty(), "cell sequence: needs at least one cell");
  require(R_ > 0.0, "cell sequence: chart radius must be positive");
  for (const Cell& c : cells_) require(c.chart != nullptr, "cell sequence: null chart");
}

void CellSequence::validate_nesting(int direction_samples, std::uint64_t seed) const {
  const int dim = cells_.front().chart->dim();
  const PointCloud dirs = sample_sphere(dim, 1.0, direction_samples, seed);
  for (std::size_t j = 0; j + 1 < cells_.size(); ++j) {
    for (const Vec& xi : dirs.points) {
      const double outer = cells_[j].extent(xi);
      const double inner = cells_[j + 1].extent(xi);
      require(inner < outer, "cell sequence: nesting violation at index ", j + 1,
              " (extent ", inner, " !< ", outer, ")");
      // Interior membership through the stored inverse.
      const Vec boundary = attrkit::scaled(Vec(xi), inner);
      const double pre = norm(cells_[j].chart->inverse(boundary));
      require(pre < R_, "cell sequence: chart membership violation at index ", j + 1,
              " (|chart^-1| = ", pre, " !< ", R_, ")");
    }
  }
}

CellSequence CellSequence::scaled(double s) const {
  require(s > 0.0 && std::isfinite(s), "cell sequence: bad scale factor");
  std::vector<Cell> out;
  out.reserve(cells_.size());
  for (const Cell& c : cells_) out.push_back(scaled_cell(c, s, R_));
  return CellSequence(std::move(out), R_);
}

CellSequence round_cells(int dim, double R, const std::vector<double>& radii) {
  require(!radii.empty(), "round_cells: need at least one radius");
  std::vector<Cell> cells;
  double prev = R;
  for (double r : radii) {
    require(r > 0.0 && r < prev, "round_cells: radii must be strictly decreasing below R");
    cells.push_back(round_cell(dim, R, r));
    prev = r;
  }
  return CellSequence(std::move(cells), R);
}

CellSequence flat_ball_cells(int dim, int flat_dim, double L, double R,
                             const std::vector<double>& margins) {
  require(!margins.empty(), "flat_ball_cells: need at least one margin");
  std::vector<Cell> cells;
  double prev = std::numeric_limits<double>::infinity();
  for (double d : margins) {
    require(d > 0.0 && d < prev, "flat_ball_cells: margins must be strictly decreasing");
    require(L + d < R, "flat_ball_cells: cell of margin ", d, " exceeds the chart ball ", R);
    cells.push_back(flat_ball_cell(dim, flat_dim, L, R, d));
    prev = d;
  }
  return CellSequence(std::move(cells), R);
}

CellSequence ellipsoid_cells(int dim, double R, const Mat& axes,
                             const std::vector<double>& radii) {
  require(!radii.empty(), "ellipsoid_cells: need at least one radius");
  std::vector<Cell> cells;
  double prev = std::numeric_limits<double>::infinity();
  for (double r : radii) {
    require(r > 0.0 && r < prev, "ellipsoid_cells: radii must be strictly decreasing");
    cells.push_back(ellipsoid_cell(dim, R, axes, r));
    prev = r;
  }
  return CellSequence(std::move(cells), R);
}

Cell cell_from_chart(MapPtr chart, double R, std::string provider, nlohmann::json params) {
  require(chart != nullptr, "cell_from_chart: null chart");
  MapPtr held = chart;
  ExtentFn extent = [held, R](const Vec& xi) { return bisect_extent(*held, R, xi); };
  // No closed form for the sup; probe directions and pad.
  const PointCloud dirs = sample_sphere(chart->dim(), 1.0, 256, 0xB0D5ull);
  double bound = 0.0;
  Vec argmax = dirs.points.front();
  for (const Vec& xi : dirs.points) {
    const double e = extent(xi);
    if (e > bound) {
      bound = e;
      argmax = xi;
    }
  }
  return Cell{std::move(chart), std::move(extent), std::move(provider), std::move(params),
              1.25 * bound, {argmax}};
}

nlohmann::json cells_to_json(const CellSequence& cells) {
  nlohmann::json j;
  j["R"] = cells.R();
  j["cells"] = nlohmann::json::array();
  for (const Cell& c : cells.cells()) {
    require(c.provider == "round" || c.provider == "flat_ball" || c.provider == "ellipsoid",
            "cells_to_json: provider '", c.provider, "' has no parameter form");
    j["cells"].push_back({{"provider", c.provider}, {"params", c.params}});
  }
  return j;
}

CellSequence cells_from_json(const nlohmann::json& j) {
  const double R = j.at("R").get<double>();
  std::vector<Cell> cells;
  for (const auto& cj : j.at("cells")) {
    const std::string provider = cj.at("provider");
    const nlohmann::json& p = cj.at("params");
    if (provider == "round") {
      cells.push_back(round_cell(p.at("dim"), R, p.at("radius")));
    } else if (provider == "flat_ball") {
      cells.push_back(flat_ball_cell(p.at("dim"), p.at("flat_dim"), p.at("L"), R, p.at("margin")));
    } else if (provider == "ellipsoid") {
      const int dim = p.at("dim");
      Mat axes(dim, dim);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) axes.at(r, c) = p.at("axes")[r][c].get<double>();
      cells.push_back(ellipsoid_cell(dim, R, axes, p.at("radius")));
    } else {
      fail("cells_from_json: unknown provider '", provider, "'");
    }
  }
  return CellSequence(std::move(cells), R);
}

}  // namespace attrkit
