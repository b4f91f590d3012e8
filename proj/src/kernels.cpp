#include "dmin/kernels.hpp"

#include <cmath>
#include <limits>
#include <optional>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "dmin/curvature.hpp"

namespace dmin::kernels {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Non-throwing dihedral angle; nullopt wherever dmin::dihedral would throw.
std::optional<double> try_dihedral(const PolySurface& s, int h, double len) {
  const int l = s.left_plane(h), r = s.right_plane(h);
  if (l == kNone || r == kNone || !s.has_normal(l) || !s.has_normal(r)) return std::nullopt;
  if (!(len > 1e-15 * s.scale())) return std::nullopt;
  const CellComplex& c = s.mesh();
  const Vec3 e = (s.position(c.dest(h)) - s.position(c.origin(h))) / len;
  const Vec3& nl = s.normal(l);
  const Vec3& nr = s.normal(r);
  const double cs = nl.dot(nr);
  if (std::abs(cs + 1.0) <= 1e-12) return std::nullopt;
  return std::atan2(nl.cross(nr).dot(e), cs);
}

template <class Weight>
std::vector<double> face_sums(const PolySurface& s, Weight weight) {
  const CellComplex& c = s.mesh();
  const int nf = c.num_faces();
  std::vector<double> out(nf, kNaN);
#pragma omp parallel for schedule(static)
  for (int f = 0; f < nf; ++f) {
    double sum = 0.0;
    bool ok = true;
    const int start = c.face_halfedge(f);
    int h = start;
    do {
      const double len = s.edge_length(h);
      auto a = try_dihedral(s, h, len);
      if (!a) {
        ok = false;
        break;
      }
      sum += len * weight(*a);
      h = c.next(h);
    } while (h != start);
    if (ok) out[f] = 0.5 * sum;
  }
  return out;
}

}  // namespace

int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<Complex> cross_ratios(const CellComplex& c, std::span<const Complex> g) {
  const int ne = c.num_edges();
  std::vector<Complex> x(ne, Complex(kNaN, kNaN));
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    if (c.is_boundary_edge(e)) continue;
    const int h = 2 * e;
    const int i = c.origin(h), j = c.dest(h);
    const int k = c.dest(c.next(h)), l = c.dest(c.next(h ^ 1));
    x[e] = -((g[k] - g[i]) * (g[l] - g[j])) / ((g[i] - g[l]) * (g[j] - g[k]));
  }
  return x;
}

std::vector<VertexRelationResidual> vertex_relation_residuals(const PlanarPattern& p) {
  const CellComplex& c = p.mesh();
  const int nv = c.num_vertices();
  std::vector<VertexRelationResidual> out(nv, VertexRelationResidual{0.0, 0.0});
#pragma omp parallel for schedule(dynamic, 64)
  for (int v = 0; v < nv; ++v) {
    if (!c.is_interior_vertex(v)) continue;
    // Clockwise: step from an outgoing halfedge to next(twin(h)).
    const int start = c.vertex_halfedge(v);
    Complex prod = 1.0, sum = 0.0;
    int h = start;
    do {
      prod *= p.cross_ratio(h / 2);
      sum += prod;
      h = c.next(h ^ 1);
    } while (h != start);
    out[v] = {prod - 1.0, sum};
  }
  return out;
}

std::vector<HqdResidual> hqd_residuals(const PlanarPattern& p, std::span<const double> q) {
  const CellComplex& c = p.mesh();
  const int nv = c.num_vertices();
  std::vector<HqdResidual> out(nv);
#pragma omp parallel for schedule(dynamic, 64)
  for (int v = 0; v < nv; ++v) {
    if (!c.is_interior_vertex(v)) continue;
    HqdResidual r;
    const int start = c.vertex_halfedge(v);
    int h = start;
    do {
      const double qe = q[h / 2];
      r.sum += qe;
      r.weighted += qe / (p.g(c.dest(h)) - p.g(v));
      h = c.next(h ^ 1);
    } while (h != start);
    out[v] = r;
  }
  return out;
}

std::vector<double> mean_curvatures(const PolySurface& s) {
  return face_sums(s, [](double a) { return std::tan(0.5 * a); });
}

std::vector<double> tube_mean_curvatures(const PolySurface& s) {
  return face_sums(s, [](double a) { return 0.5 * a; });
}

std::vector<double> signed_areas(const PolySurface& s) {
  const CellComplex& c = s.mesh();
  const int nf = c.num_faces();
  std::vector<double> out(nf, kNaN);
#pragma omp parallel for schedule(static)
  for (int f = 0; f < nf; ++f) {
    if (!s.has_normal(f)) continue;
    Vec3 acc = Vec3::Zero();
    const int start = c.face_halfedge(f);
    int h = start;
    do {
      acc += s.position(c.origin(h)).cross(s.position(c.dest(h)));
      h = c.next(h);
    } while (h != start);
    out[f] = 0.5 * acc.dot(s.normal(f));
  }
  return out;
}

}  // namespace dmin::kernels
