#include "dmin/weierstrass.hpp"

#include <cmath>
#include <queue>

#include <Eigen/Dense>

#include "dmin/error.hpp"

namespace dmin {

namespace {

Vec3 im_rotated(const Vec3c& z, double theta) {
  const Complex r = std::polar(1.0, theta);
  return Vec3((r * z(0)).imag(), (r * z(1)).imag(), (r * z(2)).imag());
}

bool planar_member(double theta) {
  const double m = std::remainder(theta, kPi);
  return std::abs(m) <= 1e-12;
}

}  // namespace

HoloCurve integrate(std::shared_ptr<const PlanarPattern> pattern, const EdgeOneForm& form, int basepoint,
                    const Vec3c& base_value, TreeOrder order, double tol) {
  const CellComplex& c = pattern->mesh();
  if (!c.is_simply_connected())
    throw Error(ErrorCode::NotSimplyConnected,
                "integration needs a connected disk or sphere (Euler characteristic " +
                    std::to_string(c.euler_characteristic()) + ", " +
                    std::to_string(c.num_boundary_loops()) + " boundary loops)");
  if (basepoint < 0 || basepoint >= c.num_faces())
    throw Error(ErrorCode::InvalidInput, "basepoint is not a dual vertex");

  HoloCurve curve{pattern, std::vector<Vec3c>(c.num_faces(), Vec3c::Zero()), basepoint, base_value};
  std::vector<bool> reached(c.num_faces(), false);
  std::vector<bool> tree_edge(c.num_edges(), false);
  reached[basepoint] = true;
  curve.F[basepoint] = base_value;

  // F_left - F_right = w(h): crossing h from its right face to its left face
  // adds w(h).
  auto expand = [&](int f, auto&& push) {
    for (int h : c.face_halfedges(f)) {
      const int t = CellComplex::twin(h);
      const int g = c.face(t);
      if (g == kNone || reached[g]) continue;
      reached[g] = true;
      tree_edge[CellComplex::edge_of(h)] = true;
      curve.F[g] = curve.F[f] + form.at(t);
      push(g);
    }
  };
  if (order == TreeOrder::BreadthFirst) {
    std::queue<int> queue;
    queue.push(basepoint);
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop();
      expand(f, [&](int g) { queue.push(g); });
    }
  } else {
    std::vector<int> stack{basepoint};
    while (!stack.empty()) {
      const int f = stack.back();
      stack.pop_back();
      expand(f, [&](int g) { stack.push_back(g); });
    }
  }

  const double bound = tol * form.magnitude();
  for (int e = 0; e < c.num_edges(); ++e) {
    if (tree_edge[e] || c.is_boundary_edge(e)) continue;
    const int h = CellComplex::edge_halfedge(e);
    const Vec3c jump = curve.F[c.face(h)] - curve.F[c.face(CellComplex::twin(h))];
    if ((jump - form.at(h)).norm() > bound) {
      const auto res = closedness_residuals(form);
      int worst = 0;
      for (int v = 1; v < c.num_vertices(); ++v)
        if (res[v] > res[worst]) worst = v;
      throw Error(ErrorCode::ClosednessViolation,
                  "form is not closed around vertex " + std::to_string(c.vertex_id(worst)));
    }
  }
  return curve;
}

HoloCurve weierstrass_curve(std::shared_ptr<const PlanarPattern> pattern, std::span<const double> q, double tol) {
  const EdgeOneForm form = to_one_form(*pattern, q);
  return integrate(pattern, form, 0, Vec3c::Zero(), TreeOrder::BreadthFirst, tol);
}

double path_residual(const HoloCurve& curve, const EdgeOneForm& form) {
  const CellComplex& c = curve.pattern->mesh();
  double m = 0.0;
  for (int e = 0; e < c.num_edges(); ++e) {
    if (c.is_boundary_edge(e)) continue;
    const int h = CellComplex::edge_halfedge(e);
    m = std::max(m, (curve.F[c.face(h)] - curve.F[c.face(CellComplex::twin(h))] - form.at(h)).norm());
  }
  return m;
}

double gauss_map_sign(const HoloCurve& curve) {
  const CellComplex& c = curve.pattern->mesh();
  for (int v = 0; v < c.num_vertices(); ++v) {
    if (!c.is_interior_vertex(v)) continue;
    std::vector<Vec3> poly;
    for (int f : c.faces_around(v)) poly.push_back(im_rotated(curve.F[f], 0.0));
    const double d = newell_vector(poly).dot(inverse_stereographic(curve.pattern->g(v)));
    return d < 0.0 ? -1.0 : 1.0;
  }
  return 1.0;
}

PolySurface minimal_surface(const HoloCurve& curve, double theta) {
  const PlanarPattern& p = *curve.pattern;
  const CellComplex& c = p.mesh();
  DualResult d = dual(c);
  auto mesh = std::make_shared<const CellComplex>(std::move(d.complex));

  std::vector<Vec3> pos(c.num_faces());
  for (int f = 0; f < c.num_faces(); ++f) pos[f] = im_rotated(curve.F[f], theta);

  if (!planar_member(theta)) return PolySurface(mesh, std::move(pos));

  const double sign = gauss_map_sign(curve);
  std::vector<Vec3> normals(mesh->num_faces());
  for (int df = 0; df < mesh->num_faces(); ++df)
    normals[df] = sign * inverse_stereographic(p.g(d.map.dual_face_to_vertex[df]));
  std::vector<GhostFace> ghosts;
  for (int v = 0; v < c.num_vertices(); ++v) {
    if (!c.is_boundary_vertex(v)) continue;
    ghosts.push_back({sign * inverse_stereographic(p.g(v)), c.faces_around(v)});
  }
  return PolySurface(mesh, std::move(pos), std::move(normals), std::move(ghosts));
}

std::pair<PolySurface, PolySurface> conjugate_pair(const HoloCurve& curve) {
  return {minimal_surface(curve, 0.0), minimal_surface(curve, kPi / 2)};
}

std::vector<double> star_planarity(const HoloCurve& curve, double theta) {
  const CellComplex& c = curve.pattern->mesh();
  std::vector<double> out(c.num_faces(), 0.0);
  for (int f = 0; f < c.num_faces(); ++f) {
    std::vector<Vec3> pts{im_rotated(curve.F[f], theta)};
    bool full = true;
    for (int h : c.face_halfedges(f)) {
      const int g = c.face(CellComplex::twin(h));
      if (g == kNone) {
        full = false;
        break;
      }
      pts.push_back(im_rotated(curve.F[g], theta));
    }
    if (!full) continue;
    Vec3 ctr = Vec3::Zero();
    for (const auto& x : pts) ctr += x;
    ctr /= static_cast<double>(pts.size());
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const auto& x : pts) cov += (x - ctr) * (x - ctr).transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
    const Vec3 n = es.eigenvectors().col(0);
    double m = 0.0;
    for (const auto& x : pts) m = std::max(m, std::abs((x - ctr).dot(n)));
    out[f] = m;
  }
  return out;
}

}  // namespace dmin
