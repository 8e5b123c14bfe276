#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "attrkit/dynamics.hpp"

namespace attrkit {

/// Geometry of the attractor's flat model: a ball of radius L in the span of
/// `frame` (d0 vectors) around `center`. d0 = 0 means a single point.
struct FlatShape {
  int d0 = 0;
  std::vector<Vec> frame;
  Vec center;
  double L = 0.0;
};

/// Registry entry: an exact ambient homeomorphism with a known global
/// attractor, sampled deterministically.
struct DemoSystem {
  std::string name;
  std::string description;
  int ambient_dim = 0;
  int k = 0;
  MapPtr map;
  PointCloud attractor_samples;
  FlatShape shape;
  bool pipeline_ready = false;
};

const std::vector<std::string>& demo_names();
bool is_demo(const std::string& name);

/// Builds a registry system. Recognized params vary per demo (dim, lambda,
/// angle, samples, ...); unknown names error.
DemoSystem make_demo(const std::string& name, const nlohmann::json& params = nlohmann::json::object());

/// The demo as a sampled system (exact map attached).
SampledSystem demo_system(const DemoSystem& demo);

/// Standalone Garay construction inputs: a sampled compact set with a nested
/// cell sequence shrinking onto it inside B(0,R).
struct GarayDemo {
  std::string name;
  PointCloud X;
  CellSequence cells;
  double R = 0.0;
  FlatShape shape;  // for exact distance oracles in tests
};

/// "point" (origin in R^2, round cells) or "segment" (arc in R^3, flat-ball
/// cells).
GarayDemo make_garay_demo(const std::string& name);

}  // namespace attrkit
