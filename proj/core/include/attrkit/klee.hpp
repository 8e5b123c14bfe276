#pragma once

#include <nlohmann/json_fwd.hpp>

#include "attrkit/dynamics.hpp"
#include "attrkit/extension.hpp"

namespace attrkit {

/// Three-segment compress profile: identity up to R*, r/2 from 2R on.
RadialProfile compress_profile(double R_star, double R);

/// Lemma-style compress map c of R^n: c|_{B(0,R*)} = id (bitwise),
/// c(B(0,r)) inside B(0,r/2) for r >= 2R.
MapPtr build_compress(double R_star, double R, int n);

/// Dimension-doubling extension of a sampled homeomorphism f of a compact
/// X inside B(0,R) in R^n to a homeomorphism fhat of R^{2n}:
///
///   fhat = chat o f2^-1 o f1,   f1(x,y) = (x, y + phi(x)),
///                               f2(x,y) = (2y + psi(x), x),
///                               chat(x,y) = (c(x), c(y)),
///
/// with phi extending f, psi extending f^-1 (built from the swapped sample
/// pairs) and c the compress map. fhat(x, 0) = (f(x), 0) exactly at anchors,
/// and fhat maps B(0,r) x B(0,r) into itself for r >= R.
struct KleeExtension {
  ExtensionPtr phi;
  ExtensionPtr psi;
  MapPtr c;     // compress in R^n
  MapPtr f1;    // shear
  MapPtr f2;    // swap-scale
  MapPtr g;     // f2^-1 o f1
  MapPtr chat;  // c x c
  MapPtr fhat;  // chat o g
  int n = 0;
  double R = 0.0;
  double R_star = 0.0;
};

KleeExtension klee_extend(const SampledSystem& f_system, double R,
                          double blend_margin = 0.2, double shepard_power = 4.0);

/// Exact compositional inverse f1^-1 o f2 o chat^-1.
Vec klee_inverse_eval(const KleeExtension& ext, const Vec& p);

nlohmann::json klee_to_json(const KleeExtension& ext);

}  // namespace attrkit
