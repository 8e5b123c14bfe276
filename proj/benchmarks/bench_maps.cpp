#include <benchmark/benchmark.h>

#include "attrkit/demos.hpp"
#include "attrkit/garay.hpp"
#include "attrkit/klee.hpp"
#include "attrkit/pipeline.hpp"
#include "attrkit/samplers.hpp"

using namespace attrkit;

namespace {

GarayPtr bench_garay() {
  static const GarayPtr h = [] {
    const GarayDemo demo = make_garay_demo("segment");
    GarayOptions opts;
    opts.collapse_depth = 12;
    opts.harmonic_prefix = 4;
    opts.bk_depth = 16;
    return garay_map(demo.X, demo.cells, demo.R, opts);
  }();
  return h;
}

const PipelineResult& bench_pipeline() {
  static const PipelineResult res = [] {
    PipelineConfig cfg;
    cfg.demo = "arc_morse";
    cfg.samples.invariance = 50;
    cfg.samples.rate_per_radius = 20;
    cfg.samples.roundtrip = 50;
    cfg.samples.certify_cloud = 20;
    cfg.samples.attractor_iterates = 4;
    cfg.samples.attraction_starts = 4;
    return run_pipeline(cfg);
  }();
  return res;
}

void BM_CollapseForward(benchmark::State& state) {
  const GarayPtr h = bench_garay();
  const PointCloud pts = sample_ball(h->dim(), 1.8, 64, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(h->collapse().forward(pts.points[i % pts.size()]));
    ++i;
  }
}
BENCHMARK(BM_CollapseForward);

void BM_GarayStep(benchmark::State& state) {
  const GarayPtr h = bench_garay();
  const PointCloud pts = sample_ball(h->dim(), 1.8, 64, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(h->forward(pts.points[i % pts.size()]));
    ++i;
  }
}
BENCHMARK(BM_GarayStep);

void BM_KleeForward(benchmark::State& state) {
  const PipelineResult& res = bench_pipeline();
  const PointCloud pts = sample_ball(res.fhat1.fhat->dim(), res.R, 64, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(res.fhat1.fhat->forward(pts.points[i % pts.size()]));
    ++i;
  }
}
BENCHMARK(BM_KleeForward);

void BM_PipelineStep(benchmark::State& state) {
  const PipelineResult& res = bench_pipeline();
  const PointCloud pts = sample_ball(res.f->dim(), res.R, 64, 4);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(res.f->forward(pts.points[i % pts.size()]));
    ++i;
  }
}
BENCHMARK(BM_PipelineStep);

void BM_HausdorffSemidist(benchmark::State& state) {
  const PointCloud a = sample_ball(3, 1.0, static_cast<int>(state.range(0)), 5);
  const PointCloud b = sample_ball(3, 1.0, static_cast<int>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff_semidist(a, b));
}
BENCHMARK(BM_HausdorffSemidist)->Arg(64)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
