#include <limits>

#include "dmin/curvature.hpp"
#include "dmin/error.hpp"
#include "dmin/kernels.hpp"

namespace dmin::serial {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class Op>
std::vector<double> per_face(const PolySurface& s, Op op) {
  std::vector<double> out(s.num_faces(), kNaN);
  for (int f = 0; f < s.num_faces(); ++f) {
    try {
      out[f] = op(s, f);
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

std::vector<Complex> cross_ratios(const CellComplex& c, std::span<const Complex> g) {
  std::vector<Complex> x(c.num_edges(), Complex(kNaN, kNaN));
  for (int e = 0; e < c.num_edges(); ++e) {
    if (c.is_boundary_edge(e)) continue;
    auto [i, j, k, l] = edge_quad(c, CellComplex::edge_halfedge(e));
    x[e] = cross_ratio(g[i], g[j], g[k], g[l]);
  }
  return x;
}

std::vector<VertexRelationResidual> vertex_relation_residuals(const PlanarPattern& p) {
  std::vector<VertexRelationResidual> out(p.mesh().num_vertices(), VertexRelationResidual{0.0, 0.0});
  for (int v = 0; v < p.mesh().num_vertices(); ++v)
    if (p.mesh().is_interior_vertex(v)) out[v] = vertex_relations_residual(p, v);
  return out;
}

std::vector<HqdResidual> hqd_residuals(const PlanarPattern& p, std::span<const double> q) {
  std::vector<HqdResidual> out(p.mesh().num_vertices());
  for (int v = 0; v < p.mesh().num_vertices(); ++v)
    if (p.mesh().is_interior_vertex(v)) out[v] = hqd_residual(p, q, v);
  return out;
}

std::vector<double> mean_curvatures(const PolySurface& s) { return per_face(s, mean_curvature); }

std::vector<double> tube_mean_curvatures(const PolySurface& s) {
  return per_face(s, tube_mean_curvature);
}

std::vector<double> signed_areas(const PolySurface& s) { return per_face(s, signed_area); }

}  // namespace dmin::serial
