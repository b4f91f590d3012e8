#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "dmin/mesh.hpp"
#include "dmin/types.hpp"

namespace dmin {

inline constexpr double kDefaultTol = 1e-9;

/// Planar circle pattern on a triangulated complex: one finite point g_v per
/// vertex. Cross ratios and intersection angles of the interior edges are
/// computed once at construction; boundary edges carry NaN.
class PlanarPattern {
 public:
  PlanarPattern(std::shared_ptr<const CellComplex> mesh, std::vector<Complex> g);

  const CellComplex& mesh() const { return *mesh_; }
  const std::shared_ptr<const CellComplex>& mesh_ptr() const { return mesh_; }
  const std::vector<Complex>& g() const { return g_; }
  Complex g(int v) const { return g_[v]; }

  /// Cached cross ratio of an interior edge (NaN on boundary edges).
  Complex cross_ratio(int e) const { return x_[e]; }
  const std::vector<Complex>& cross_ratios() const { return x_; }
  /// Intersection angle Im log X in [0, 2pi).
  double angle(int e) const { return theta_[e]; }
  const std::vector<double>& angles() const { return theta_; }

  /// Bounding-box diagonal of the g-values; the length scale for tolerances.
  double scale() const { return scale_; }

 private:
  std::shared_ptr<const CellComplex> mesh_;
  std::vector<Complex> g_;
  std::vector<Complex> x_;
  std::vector<double> theta_;
  double scale_ = 0.0;
};

/// X = -((gk - gi)(gl - gj)) / ((gi - gl)(gj - gk)) for an edge ij with left
/// triangle ijk and right triangle jil.
Complex cross_ratio(Complex gi, Complex gj, Complex gk, Complex gl);

/// Cross ratio of edge `e` computed from the pattern's points (not the
/// cache). Throws BoundaryEdge or DegenerateEdge.
Complex cross_ratio(const PlanarPattern& p, int e);

/// The four vertices (i, j, k, l) entering the cross ratio of halfedge h.
struct EdgeQuad {
  int i, j, k, l;
};
EdgeQuad edge_quad(const CellComplex& c, int h);

/// Principal argument of X mapped to [0, 2pi).
double intersection_angle(Complex x);

/// Outgoing halfedges of an interior vertex in clockwise order. This is the
/// only place the clockwise convention of the vertex relations is encoded.
std::vector<int> clockwise_ring(const CellComplex& c, int v);

struct VertexRelationResidual {
  Complex product;  // prod_j X_ij - 1
  Complex sum;      // X_1 + X_1 X_2 + ... + X_1 ... X_r
};

/// Residuals of the product and telescoping-sum relations at an interior
/// vertex, using the cached cross ratios. Throws BoundaryVertex.
VertexRelationResidual vertex_relations_residual(const PlanarPattern& p, int v);
VertexRelationResidual vertex_relations_residual(const CellComplex& c,
                                                 std::span<const Complex> x, int v);

struct Anchor {
  int face = 0;
  /// Values for the face's vertices, in face order.
  std::array<Complex, 3> g{};
};

/// Rebuild g from edge cross ratios by breadth-first propagation over
/// triangles. A vertex reached twice must agree to tol * scale.
/// Throws InconsistentCrossRatios, DegenerateAnchor, NotSimplyConnected.
PlanarPattern reconstruct_from_cross_ratios(std::shared_ptr<const CellComplex> mesh,
                                            std::span<const Complex> x, const Anchor& anchor,
                                            double tol = kDefaultTol);

/// Per-edge Delaunay flag: Im log X in [0, pi). Boundary edges pass.
std::vector<bool> delaunay_edges(const PlanarPattern& p);
bool is_delaunay(const PlanarPattern& p);

/// Sphere point of z: (2 Re z, 2 Im z, |z|^2 - 1) / (1 + |z|^2).
Vec3 inverse_stereographic(Complex z);
/// Plane point of a unit vector; throws NorthPole at (0,0,1).
Complex stereographic(const Vec3& n);

struct TangentResidual {
  double sum;        // sum_j q_ij
  Complex weighted;  // q_1 X_1 + (q_1 + q_2) X_1 X_2 + ...
};

/// Residuals of the linearised vertex relations for a real edge function q.
/// Throws BoundaryVertex.
TangentResidual tangent_residual(const PlanarPattern& p, std::span<const double> q, int v);
/// Residuals at every vertex; non-interior vertices report zero.
std::vector<TangentResidual> tangent_residuals(const PlanarPattern& p, std::span<const double> q);

}  // namespace dmin
