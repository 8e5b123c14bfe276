#include "attrkit/invertible_map.hpp"

#include <cmath>
#include <utility>

namespace attrkit {

namespace {

class IdentityPlain final : public PlainMap {
 public:
  explicit IdentityPlain(int dim) : dim_(dim) {}
  int dim() const override { return dim_; }
  Vec operator()(const Vec& p) const override { return p; }
  std::string kind() const override { return "identity"; }

 private:
  int dim_;
};

class FunctionPlain final : public PlainMap {
 public:
  FunctionPlain(int dim, std::function<Vec(const Vec&)> fn, std::string label)
      : dim_(dim), fn_(std::move(fn)), label_(std::move(label)) {}
  int dim() const override { return dim_; }
  Vec operator()(const Vec& p) const override { return fn_(p); }
  std::string kind() const override { return label_; }

 private:
  int dim_;
  std::function<Vec(const Vec&)> fn_;
  std::string label_;
};

class IdentityMap final : public InvertibleMap {
 public:
  explicit IdentityMap(int dim) : dim_(dim) {
    require(dim >= 1, "identity map: dimension must be positive");
  }
  int dim() const override { return dim_; }
  Vec forward(const Vec& p) const override { return p; }
  Vec inverse(const Vec& p) const override { return p; }
  MapPtr inverted() const override { return std::make_shared<IdentityMap>(dim_); }
  std::string kind() const override { return "identity"; }

 private:
  int dim_;
};

class RadialMapNode final : public InvertibleMap {
 public:
  RadialMapNode(RadialProfile profile, int dim)
      : profile_(std::move(profile)), inv_profile_(profile_.inverse()), dim_(dim) {
    require(dim >= 1, "radial map: dimension must be positive");
  }
  int dim() const override { return dim_; }
  Vec forward(const Vec& p) const override { return radial_apply(profile_, p); }
  Vec inverse(const Vec& p) const override { return radial_apply(inv_profile_, p); }
  MapPtr inverted() const override {
    return std::make_shared<RadialMapNode>(inv_profile_, dim_);
  }
  std::string kind() const override { return "radial"; }
  const RadialProfile& profile() const { return profile_; }

 private:
  RadialProfile profile_;
  RadialProfile inv_profile_;
  int dim_;
};

class AffineMap final : public InvertibleMap {
 public:
  AffineMap(Mat a, Mat a_inv, Vec b)
      : a_(std::move(a)), a_inv_(std::move(a_inv)), b_(std::move(b)) {}
  int dim() const override { return a_.rows; }
  Vec forward(const Vec& p) const override { return add(matvec(a_, p), b_); }
  Vec inverse(const Vec& p) const override { return matvec(a_inv_, sub(p, b_)); }
  MapPtr inverted() const override {
    return std::make_shared<AffineMap>(a_inv_, a_, scaled(matvec(a_inv_, b_), -1.0));
  }
  std::string kind() const override { return "affine"; }

 private:
  Mat a_;
  Mat a_inv_;
  Vec b_;
};

class CompositionMap final : public InvertibleMap {
 public:
  explicit CompositionMap(std::vector<MapPtr> children) : children_(std::move(children)) {
    require(!children_.empty(), "composition: needs at least one child");
    for (const MapPtr& c : children_) {
      require(c != nullptr, "composition: null child");
      require(c->dim() == children_.front()->dim(),
              "composition: children must share dimension");
    }
  }
  int dim() const override { return children_.front()->dim(); }
  Vec forward(const Vec& p) const override {
    Vec q = p;
    for (const MapPtr& c : children_) q = c->forward(q);
    return q;
  }
  Vec inverse(const Vec& p) const override {
    Vec q = p;
    for (auto it = children_.rbegin(); it != children_.rend(); ++it) q = (*it)->inverse(q);
    return q;
  }
  MapPtr inverted() const override {
    std::vector<MapPtr> inv;
    inv.reserve(children_.size());
    for (auto it = children_.rbegin(); it != children_.rend(); ++it)
      inv.push_back((*it)->inverted());
    return std::make_shared<CompositionMap>(std::move(inv));
  }
  std::string kind() const override { return "composition"; }

 private:
  std::vector<MapPtr> children_;
};

class ProductMap final : public InvertibleMap {
 public:
  explicit ProductMap(std::vector<MapPtr> children) : children_(std::move(children)) {
    require(!children_.empty(), "product: needs at least one child");
    dim_ = 0;
    for (const MapPtr& c : children_) {
      require(c != nullptr, "product: null child");
      dim_ += c->dim();
    }
  }
  int dim() const override { return dim_; }
  Vec forward(const Vec& p) const override { return eval(p, false); }
  Vec inverse(const Vec& p) const override { return eval(p, true); }
  MapPtr inverted() const override {
    std::vector<MapPtr> inv;
    inv.reserve(children_.size());
    for (const MapPtr& c : children_) inv.push_back(c->inverted());
    return std::make_shared<ProductMap>(std::move(inv));
  }
  std::string kind() const override { return "product"; }

 private:
  Vec eval(const Vec& p, bool inverse) const {
    require(static_cast<int>(p.size()) == dim_, "product: dimension mismatch");
    Vec out(p.size());
    std::size_t off = 0;
    for (const MapPtr& c : children_) {
      const std::size_t n = static_cast<std::size_t>(c->dim());
      Vec block(p.begin() + off, p.begin() + off + n);
      Vec r = inverse ? c->inverse(block) : c->forward(block);
      std::copy(r.begin(), r.end(), out.begin() + off);
      off += n;
    }
    return out;
  }

  std::vector<MapPtr> children_;
  int dim_ = 0;
};

// (x,y) -> (x, y + s*phi(x)) with s = +-1; self-inverse family.
class ShearMap final : public InvertibleMap {
 public:
  ShearMap(PlainPtr phi, double sign) : phi_(std::move(phi)), sign_(sign) {
    require(phi_ != nullptr, "shear: null extension");
  }
  int dim() const override { return 2 * phi_->dim(); }
  Vec forward(const Vec& p) const override { return eval(p, sign_); }
  Vec inverse(const Vec& p) const override { return eval(p, -sign_); }
  MapPtr inverted() const override { return std::make_shared<ShearMap>(phi_, -sign_); }
  std::string kind() const override { return "shear_klee_f1"; }

 private:
  Vec eval(const Vec& p, double s) const {
    const std::size_t n = static_cast<std::size_t>(phi_->dim());
    require(p.size() == 2 * n, "shear: dimension mismatch");
    Vec x(p.begin(), p.begin() + n);
    Vec shift = (*phi_)(x);
    Vec out = p;
    for (std::size_t i = 0; i < n; ++i) out[n + i] += s * shift[i];
    return out;
  }

  PlainPtr phi_;
  double sign_;
};

// forward_mode: (x,y) -> (2y + psi(x), x); otherwise the inverse direction
// (x,y) -> (y, (x - psi(y))/2).
class SwapScaleMap final : public InvertibleMap {
 public:
  SwapScaleMap(PlainPtr psi, bool forward_mode) : psi_(std::move(psi)), fwd_(forward_mode) {
    require(psi_ != nullptr, "swapscale: null extension");
  }
  int dim() const override { return 2 * psi_->dim(); }
  Vec forward(const Vec& p) const override { return fwd_ ? up(p) : down(p); }
  Vec inverse(const Vec& p) const override { return fwd_ ? down(p) : up(p); }
  MapPtr inverted() const override { return std::make_shared<SwapScaleMap>(psi_, !fwd_); }
  std::string kind() const override { return "swapscale_klee_f2"; }

 private:
  Vec up(const Vec& p) const {
    const std::size_t n = half(p);
    Vec x(p.begin(), p.begin() + n);
    Vec shift = (*psi_)(x);
    Vec out(p.size());
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = 2.0 * p[n + i] + shift[i];
      out[n + i] = p[i];
    }
    return out;
  }
  Vec down(const Vec& p) const {
    const std::size_t n = half(p);
    Vec y(p.begin() + n, p.end());
    Vec shift = (*psi_)(y);
    Vec out(p.size());
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = p[n + i];
      out[n + i] = 0.5 * (p[i] - shift[i]);
    }
    return out;
  }
  std::size_t half(const Vec& p) const {
    const std::size_t n = static_cast<std::size_t>(psi_->dim());
    require(p.size() == 2 * n, "swapscale: dimension mismatch");
    return n;
  }

  PlainPtr psi_;
  bool fwd_;
};

}  // namespace

PlainPtr identity_plain(int dim) { return std::make_shared<IdentityPlain>(dim); }

PlainPtr function_plain(int dim, std::function<Vec(const Vec&)> fn, std::string label) {
  return std::make_shared<FunctionPlain>(dim, std::move(fn), std::move(label));
}

MapPtr identity_map(int dim) { return std::make_shared<IdentityMap>(dim); }

MapPtr radial_map(RadialProfile profile, int dim) {
  return std::make_shared<RadialMapNode>(std::move(profile), dim);
}

MapPtr affine_map(Mat a, Vec b) {
  require(a.rows == a.cols, "affine map: matrix must be square");
  require(static_cast<int>(b.size()) == a.rows, "affine map: offset dimension mismatch");
  Mat a_inv = invert(a);
  return std::make_shared<AffineMap>(std::move(a), std::move(a_inv), std::move(b));
}

MapPtr linear_map(Mat a) { return affine_map(std::move(a), zeros(a.rows)); }

MapPtr rotation_map(int dim, int axis_i, int axis_j, double angle) {
  require(axis_i != axis_j && axis_i >= 0 && axis_j >= 0 && axis_i < dim && axis_j < dim,
          "rotation map: invalid axes");
  Mat m = Mat::identity(dim);
  const double c = std::cos(angle), s = std::sin(angle);
  m.at(axis_i, axis_i) = c;
  m.at(axis_i, axis_j) = -s;
  m.at(axis_j, axis_i) = s;
  m.at(axis_j, axis_j) = c;
  return linear_map(std::move(m));
}

MapPtr compose(std::vector<MapPtr> children) {
  return std::make_shared<CompositionMap>(std::move(children));
}

MapPtr block_product(std::vector<MapPtr> children) {
  return std::make_shared<ProductMap>(std::move(children));
}

MapPtr shear_f1(PlainPtr phi) { return std::make_shared<ShearMap>(std::move(phi), 1.0); }

MapPtr swapscale_f2(PlainPtr psi) {
  return std::make_shared<SwapScaleMap>(std::move(psi), true);
}

Vec radial_apply(const RadialProfile& profile, const Vec& p) {
  if (is_zero(p)) return p;
  const double r = norm(p);
  const double v = profile(r);
  if (v == r) return p;  // identity segment: bitwise exact
  return scaled(p, v / r);
}

double max_roundtrip_error(const InvertibleMap& m, const std::vector<Vec>& points) {
  double worst = 0.0;
  for (const Vec& p : points) {
    worst = std::max(worst, dist(m.inverse(m.forward(p)), p));
    worst = std::max(worst, dist(m.forward(m.inverse(p)), p));
  }
  return worst;
}

}  // namespace attrkit
