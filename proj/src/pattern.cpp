#include "dmin/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "dmin/error.hpp"
#include "dmin/kernels.hpp"

namespace dmin {

namespace {

double bbox_diagonal(std::span<const Complex> pts) {
  if (pts.empty()) return 0.0;
  double x0 = pts[0].real(), x1 = x0, y0 = pts[0].imag(), y1 = y0;
  for (Complex z : pts) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  }
  return std::hypot(x1 - x0, y1 - y0);
}

}  // namespace

PlanarPattern::PlanarPattern(std::shared_ptr<const CellComplex> mesh, std::vector<Complex> g)
    : mesh_(std::move(mesh)), g_(std::move(g)) {
  const CellComplex& c = *mesh_;
  if (static_cast<int>(g_.size()) != c.num_vertices())
    throw Error(ErrorCode::InvalidInput, "pattern needs one point per vertex");
  if (!c.is_triangulated())
    throw Error(ErrorCode::InvalidInput, "circle patterns require a triangulated complex");
  for (int v = 0; v < c.num_vertices(); ++v)
    if (!std::isfinite(g_[v].real()) || !std::isfinite(g_[v].imag()))
      throw Error(ErrorCode::InvalidInput,
                  "vertex " + std::to_string(c.vertex_id(v)) + " is not at a finite position");
  scale_ = bbox_diagonal(g_);
  for (int e = 0; e < c.num_edges(); ++e) {
    int a = c.origin(2 * e), b = c.origin(2 * e + 1);
    if (std::abs(g_[a] - g_[b]) <= 1e-14 * std::max(scale_, 1e-300))
      throw Error(ErrorCode::DegenerateEdge,
                  "edge {" + std::to_string(c.vertex_id(a)) + "," +
                      std::to_string(c.vertex_id(b)) + "} collapses to a point");
  }
  x_ = kernels::cross_ratios(c, g_);
  theta_.resize(x_.size());
  for (std::size_t e = 0; e < x_.size(); ++e) theta_[e] = intersection_angle(x_[e]);
}

Complex cross_ratio(Complex gi, Complex gj, Complex gk, Complex gl) {
  return -((gk - gi) * (gl - gj)) / ((gi - gl) * (gj - gk));
}

EdgeQuad edge_quad(const CellComplex& c, int h) {
  const int t = CellComplex::twin(h);
  return {c.origin(h), c.dest(h), c.dest(c.next(h)), c.dest(c.next(t))};
}

Complex cross_ratio(const PlanarPattern& p, int e) {
  const CellComplex& c = p.mesh();
  if (c.is_boundary_edge(e))
    throw Error(ErrorCode::BoundaryEdge, "edge " + std::to_string(e) + " has only one triangle");
  auto [i, j, k, l] = edge_quad(c, CellComplex::edge_halfedge(e));
  const Complex den = (p.g(i) - p.g(l)) * (p.g(j) - p.g(k));
  if (std::abs(den) == 0.0)
    throw Error(ErrorCode::DegenerateEdge, "zero denominator in cross ratio of edge " + std::to_string(e));
  return cross_ratio(p.g(i), p.g(j), p.g(k), p.g(l));
}

double intersection_angle(Complex x) {
  double a = std::arg(x);
  if (a < 0.0) a += 2.0 * kPi;
  if (a >= 2.0 * kPi) a -= 2.0 * kPi;
  return a;
}

std::vector<int> clockwise_ring(const CellComplex& c, int v) {
  auto ring = c.outgoing_ccw(v);
  std::reverse(ring.begin(), ring.end());
  return ring;
}

VertexRelationResidual vertex_relations_residual(const CellComplex& c,
                                                 std::span<const Complex> x, int v) {
  if (!c.is_interior_vertex(v))
    throw Error(ErrorCode::BoundaryVertex,
                "vertex " + std::to_string(c.vertex_id(v)) + " is not interior");
  Complex prod = 1.0, sum = 0.0;
  for (int h : clockwise_ring(c, v)) {
    prod *= x[CellComplex::edge_of(h)];
    sum += prod;
  }
  return {prod - 1.0, sum};
}

VertexRelationResidual vertex_relations_residual(const PlanarPattern& p, int v) {
  return vertex_relations_residual(p.mesh(), p.cross_ratios(), v);
}

PlanarPattern reconstruct_from_cross_ratios(std::shared_ptr<const CellComplex> mesh,
                                            std::span<const Complex> x, const Anchor& anchor,
                                            double tol) {
  const CellComplex& c = *mesh;
  if (!c.is_triangulated())
    throw Error(ErrorCode::InvalidInput, "reconstruction requires a triangulated complex");
  if (!c.is_simply_connected())
    throw Error(ErrorCode::NotSimplyConnected, "reconstruction requires a disk or a sphere");
  if (static_cast<int>(x.size()) != c.num_edges())
    throw Error(ErrorCode::InvalidInput, "one cross ratio per edge expected");
  if (anchor.face < 0 || anchor.face >= c.num_faces())
    throw Error(ErrorCode::DegenerateAnchor, "anchor face out of range");

  const auto& a = anchor.g;
  const double anchor_scale =
      std::max({std::abs(a[0] - a[1]), std::abs(a[1] - a[2]), std::abs(a[2] - a[0])});
  if (std::min({std::abs(a[0] - a[1]), std::abs(a[1] - a[2]), std::abs(a[2] - a[0])}) <=
      1e-14 * anchor_scale || anchor_scale == 0.0)
    throw Error(ErrorCode::DegenerateAnchor, "anchor triangle has coincident points");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<Complex> g(c.num_vertices(), Complex(nan, nan));
  std::vector<bool> known(c.num_vertices(), false);
  double scale = anchor_scale;
  {
    auto fv = c.face_vertices(anchor.face);
    for (int k = 0; k < 3; ++k) {
      g[fv[k]] = a[k];
      known[fv[k]] = true;
    }
  }

  std::vector<bool> visited(c.num_faces(), false);
  std::queue<int> queue;
  queue.push(anchor.face);
  visited[anchor.face] = true;
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop();
    for (int h : c.face_halfedges(f)) {
      const int t = c.face(CellComplex::twin(h));
      if (t == kNone || visited[t]) continue;
      auto [i, j, k, l] = edge_quad(c, h);
      const Complex xe = x[CellComplex::edge_of(h)];
      const Complex da = g[k] - g[i];
      const Complex db = g[j] - g[k];
      const Complex den = xe * db - da;
      if (std::abs(den) <= 1e-14 * std::abs(xe * db) || !std::isfinite(std::abs(den)))
        throw Error(ErrorCode::InconsistentCrossRatios,
                    "cross ratio of edge " + std::to_string(CellComplex::edge_of(h)) +
                        " places a vertex at infinity");
      const Complex gl = (xe * db * g[i] - da * g[j]) / den;
      if (known[l]) {
        if (std::abs(gl - g[l]) > tol * scale)
          throw Error(ErrorCode::InconsistentCrossRatios,
                      "vertex " + std::to_string(c.vertex_id(l)) +
                          " is reached with two different positions");
      } else {
        g[l] = gl;
        known[l] = true;
        scale = std::max(scale, std::abs(gl - g[i]));
      }
      visited[t] = true;
      queue.push(t);
    }
  }
  for (int v = 0; v < c.num_vertices(); ++v)
    if (!known[v] && !c.is_isolated_vertex(v))
      throw Error(ErrorCode::InvalidInput, "complex is not connected to the anchor");
  // edges outside the spanning tree are checked through their cross ratios
  PlanarPattern out(std::move(mesh), std::move(g));
  for (int e = 0; e < c.num_edges(); ++e) {
    if (c.is_boundary_edge(e)) continue;
    if (std::abs(out.cross_ratio(e) - x[e]) > tol * std::max(1.0, std::abs(x[e])))
      throw Error(ErrorCode::InconsistentCrossRatios,
                  "cross ratio of edge " + std::to_string(e) + " is not realised");
  }
  return out;
}

std::vector<bool> delaunay_edges(const PlanarPattern& p) {
  const CellComplex& c = p.mesh();
  std::vector<bool> out(c.num_edges(), true);
  for (int e = 0; e < c.num_edges(); ++e)
    if (!c.is_boundary_edge(e)) out[e] = p.angle(e) < kPi;
  return out;
}

bool is_delaunay(const PlanarPattern& p) {
  auto flags = delaunay_edges(p);
  return std::all_of(flags.begin(), flags.end(), [](bool b) { return b; });
}

Vec3 inverse_stereographic(Complex z) {
  const double r2 = std::norm(z);
  return Vec3(2.0 * z.real(), 2.0 * z.imag(), r2 - 1.0) / (1.0 + r2);
}

Complex stereographic(const Vec3& n) {
  const double d = 1.0 - n.z();
  if (std::abs(d) <= 1e-15)
    throw Error(ErrorCode::NorthPole, "the north pole has no finite image");
  return Complex(n.x() / d, n.y() / d);
}

TangentResidual tangent_residual(const PlanarPattern& p, std::span<const double> q, int v) {
  const CellComplex& c = p.mesh();
  if (!c.is_interior_vertex(v))
    throw Error(ErrorCode::BoundaryVertex,
                "vertex " + std::to_string(c.vertex_id(v)) + " is not interior");
  double partial = 0.0;
  Complex prod = 1.0, weighted = 0.0;
  for (int h : clockwise_ring(c, v)) {
    const int e = CellComplex::edge_of(h);
    partial += q[e];
    prod *= p.cross_ratio(e);
    weighted += partial * prod;
  }
  return {partial, weighted};
}

std::vector<TangentResidual> tangent_residuals(const PlanarPattern& p, std::span<const double> q) {
  std::vector<TangentResidual> out(p.mesh().num_vertices(), TangentResidual{0.0, 0.0});
  for (int v = 0; v < p.mesh().num_vertices(); ++v)
    if (p.mesh().is_interior_vertex(v)) out[v] = tangent_residual(p, q, v);
  return out;
}

}  // namespace dmin
