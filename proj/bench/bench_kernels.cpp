#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "dmin/curvature.hpp"
#include "dmin/fixtures.hpp"
#include "dmin/kernels.hpp"

using namespace dmin;

namespace {

std::shared_ptr<const PlanarPattern> pattern(int rings) {
  static std::map<int, std::shared_ptr<const PlanarPattern>> cache;
  auto& p = cache[rings];
  if (!p) p = fixtures::hex_disk(rings, 0.2, 1);
  return p;
}

// Lifted circumcentres of a planar triangulation: all corners of a dual face
// lie on the polar plane of its primal vertex, so every face is planar.
const PolySurface& surface(int rings) {
  static std::map<int, PolySurface> cache;
  auto it = cache.find(rings);
  if (it != cache.end()) return it->second;
  const auto p = pattern(rings);
  const auto& c = p->mesh();
  const auto d = dual(c);
  std::vector<Vec3> x(d.complex.num_vertices());
  for (int f = 0; f < c.num_faces(); ++f) {
    const auto fv = c.face_vertices(f);
    const Complex a = p->g(fv[0]), b = p->g(fv[1]), e = p->g(fv[2]);
    const Complex ba = b - a, ea = e - a;
    const Complex cc = a + (std::norm(ba) * ea - std::norm(ea) * ba) / (ba * std::conj(ea) - std::conj(ba) * ea);
    const double z = 2.0 * (cc.real() * a.real() + cc.imag() * a.imag()) - std::norm(a);
    x[d.map.face_to_dual_vertex[f]] = Vec3(cc.real(), cc.imag(), z);
  }
  return cache.emplace(rings, PolySurface(std::make_shared<const CellComplex>(d.complex), x)).first->second;
}

const std::vector<double>& random_q(int rings) {
  static std::map<int, std::vector<double>> cache;
  auto& q = cache[rings];
  if (q.empty()) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    q.resize(pattern(rings)->mesh().num_edges());
    for (double& v : q) v = u(rng);
  }
  return q;
}

template <class F>
void run(benchmark::State& st, F f) {
  f();  // builds the cached fixtures outside the timed loop
  for (auto _ : st) benchmark::DoNotOptimize(f());
}

}  // namespace

#define PAIR(name, expr)                                                                        \
  static void BM_parallel_##name(benchmark::State& st) {                                        \
    using namespace kernels;                                                                    \
    const int rings = static_cast<int>(st.range(0));                                            \
    run(st, [&] { return expr; });                                                              \
  }                                                                                             \
  static void BM_serial_##name(benchmark::State& st) {                                          \
    using namespace serial;                                                                     \
    const int rings = static_cast<int>(st.range(0));                                            \
    run(st, [&] { return expr; });                                                              \
  }                                                                                             \
  BENCHMARK(BM_parallel_##name)->Arg(20)->Arg(60)->Unit(benchmark::kMicrosecond);                \
  BENCHMARK(BM_serial_##name)->Arg(20)->Arg(60)->Unit(benchmark::kMicrosecond);

PAIR(cross_ratios, cross_ratios(pattern(rings)->mesh(), pattern(rings)->g()))
PAIR(vertex_relations, vertex_relation_residuals(*pattern(rings)))
PAIR(hqd_residuals, hqd_residuals(*pattern(rings), random_q(rings)))
PAIR(mean_curvature, mean_curvatures(surface(rings)))
PAIR(tube_mean_curvature, tube_mean_curvatures(surface(rings)))
PAIR(signed_area, signed_areas(surface(rings)))

BENCHMARK_MAIN();
