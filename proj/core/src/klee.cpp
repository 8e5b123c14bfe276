#include "attrkit/klee.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace attrkit {

RadialProfile compress_profile(double R_star, double R) {
  require(R_star > 0.0 && R_star < R, "compress: need 0 < R* < R, got R*=", R_star,
          ", R=", R);
  // Identity to R*, then linear to (2R, R), then slope 1/2.
  return RadialProfile({{R_star, R_star}, {2.0 * R, R}}, 0.5);
}

MapPtr build_compress(double R_star, double R, int n) {
  return radial_map(compress_profile(R_star, R), n);
}

KleeExtension klee_extend(const SampledSystem& f_system, double R, double blend_margin,
                          double shepard_power) {
  f_system.validate();
  require(!f_system.domain.empty(), "klee_extend: system has no samples");
  require(R > 0.0, "klee_extend: R must be positive");
  const int n = f_system.domain.dim;

  const double reach = std::max(f_system.domain.max_norm(), f_system.image.max_norm());
  require(reach < (1.0 - blend_margin) * R, "klee_extend: samples of norm ", reach,
          " do not fit strictly inside the pure-extension region of B(0,", R, ")");

  KleeExtension ext;
  ext.n = n;
  ext.R = R;
  // X inside B(0,R*) strictly, R* < R.
  ext.R_star = 0.5 * (reach + R);
  ext.phi = extend(f_system.domain, f_system.image, R, blend_margin, shepard_power);
  ext.psi = extend(f_system.image, f_system.domain, R, blend_margin, shepard_power);
  ext.c = build_compress(ext.R_star, R, n);
  ext.f1 = shear_f1(ext.phi);
  ext.f2 = swapscale_f2(ext.psi);
  ext.g = compose({ext.f1, ext.f2->inverted()});
  ext.chat = block_product({ext.c, ext.c});
  ext.fhat = compose({ext.g, ext.chat});
  return ext;
}

Vec klee_inverse_eval(const KleeExtension& ext, const Vec& p) {
  require(static_cast<int>(p.size()) == 2 * ext.n, "klee_inverse_eval: dimension mismatch");
  return ext.fhat->inverse(p);
}

nlohmann::json klee_to_json(const KleeExtension& ext) {
  nlohmann::json j;
  j["kind"] = "klee";
  j["n"] = ext.n;
  j["R"] = ext.R;
  j["R_star"] = ext.R_star;
  j["phi"] = extension_to_json(*ext.phi);
  j["psi"] = extension_to_json(*ext.psi);
  j["compress"] = profile_to_json(compress_profile(ext.R_star, ext.R));
  return j;
}

}  // namespace attrkit
