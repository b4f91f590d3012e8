#include "dmin/hqd.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "dmin/error.hpp"
#include "dmin/kernels.hpp"

namespace dmin {

namespace {

double max_abs(std::span<const double> q) {
  double m = 0.0;
  for (double v : q) m = std::max(m, std::abs(v));
  return m;
}

void normalize(std::vector<double>& q) {
  double m = 0.0;
  int arg = 0;
  for (int k = 0; k < static_cast<int>(q.size()); ++k)
    if (std::abs(q[k]) > m + 1e-15 * m) {
      m = std::abs(q[k]);
      arg = k;
    }
  if (m == 0.0) return;
  const double s = q[arg] > 0 ? 1.0 / m : -1.0 / m;
  for (double& v : q) v *= s;
}

}  // namespace

HqdResidual hqd_residual(const PlanarPattern& p, std::span<const double> q, int v) {
  const CellComplex& c = p.mesh();
  if (!c.is_interior_vertex(v))
    throw Error(ErrorCode::BoundaryVertex,
                "vertex " + std::to_string(c.vertex_id(v)) + " is not interior");
  HqdResidual r;
  for (int h : c.outgoing_ccw(v)) {
    const double qe = q[CellComplex::edge_of(h)];
    r.sum += qe;
    r.weighted += qe / (p.g(c.dest(h)) - p.g(v));
  }
  return r;
}

std::vector<HqdResidual> validate_hqd(const PlanarPattern& p, std::span<const double> q) {
  return kernels::hqd_residuals(p, q);
}

bool is_hqd(const PlanarPattern& p, std::span<const double> q, double tol) {
  const double bound = tol * max_abs(q);
  for (const auto& r : validate_hqd(p, q))
    if (std::abs(r.sum) > bound || std::abs(r.weighted) > bound) return false;
  return true;
}

Eigen::MatrixXd hqd_constraint_matrix(const PlanarPattern& p, std::span<const int> unknown_edges) {
  const CellComplex& c = p.mesh();
  std::vector<int> column(c.num_edges(), kNone);
  for (int k = 0; k < static_cast<int>(unknown_edges.size()); ++k) column[unknown_edges[k]] = k;
  std::vector<int> interior;
  for (int v = 0; v < c.num_vertices(); ++v)
    if (c.is_interior_vertex(v)) interior.push_back(v);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3 * static_cast<Eigen::Index>(interior.size()),
                                            static_cast<Eigen::Index>(unknown_edges.size()));
  for (int r = 0; r < static_cast<int>(interior.size()); ++r) {
    const int v = interior[r];
    for (int h : c.outgoing_ccw(v)) {
      const int col = column[CellComplex::edge_of(h)];
      if (col == kNone) continue;
      const Complex w = 1.0 / (p.g(c.dest(h)) - p.g(v));
      a(3 * r, col) += 1.0;
      a(3 * r + 1, col) += w.real();
      a(3 * r + 2, col) += w.imag();
    }
  }
  return a;
}

HqdBasis hqd_basis(const PlanarPattern& p) {
  const CellComplex& c = p.mesh();
  HqdBasis out;
  std::vector<int> constrained, free_edges;
  bool any_interior = false;
  for (int v = 0; v < c.num_vertices(); ++v) any_interior |= c.is_interior_vertex(v);
  out.empty_interior = !any_interior;

  for (int e = 0; e < c.num_edges(); ++e) {
    if (c.is_boundary_edge(e)) continue;
    out.unknown_edges.push_back(e);
    const int a = c.origin(2 * e), b = c.origin(2 * e + 1);
    if (c.is_interior_vertex(a) || c.is_interior_vertex(b))
      constrained.push_back(e);
    else
      free_edges.push_back(e);
  }
  out.constrained_unknowns = static_cast<int>(constrained.size());

  auto push = [&](std::vector<double> q) {
    normalize(q);
    out.basis.push_back({std::move(q)});
  };

  if (!constrained.empty()) {
    const Eigen::MatrixXd a = hqd_constraint_matrix(p, constrained);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
      if (sv(k) > 1e-10 * smax) ++rank;
    out.rank = rank;
    const Eigen::MatrixXd& vmat = svd.matrixV();
    for (Eigen::Index col = rank; col < vmat.cols(); ++col) {
      std::vector<double> q(c.num_edges(), 0.0);
      for (int k = 0; k < static_cast<int>(constrained.size()); ++k) q[constrained[k]] = vmat(k, col);
      push(std::move(q));
    }
  }
  for (int e : free_edges) {
    std::vector<double> q(c.num_edges(), 0.0);
    q[e] = 1.0;
    push(std::move(q));
  }
  return out;
}

double EdgeOneForm::magnitude() const {
  double m = 0.0;
  for (const auto& w : w_) m = std::max(m, w.norm());
  return m;
}

Vec3c weierstrass_term(Complex gi, Complex gj, double q) {
  const Complex i1(0.0, 1.0);
  const Complex s = q / (gj - gi);
  return Vec3c(s * (1.0 - gi * gj), s * i1 * (1.0 + gi * gj), s * (gi + gj));
}

EdgeOneForm to_one_form(const PlanarPattern& p, std::span<const double> q) {
  const CellComplex& c = p.mesh();
  std::vector<Vec3c> w(c.num_edges(), Vec3c::Zero());
  for (int e = 0; e < c.num_edges(); ++e) {
    if (c.is_boundary_edge(e)) continue;
    const int i = c.origin(2 * e), j = c.origin(2 * e + 1);
    if (p.g(i) == p.g(j))
      throw Error(ErrorCode::DegenerateEdge, "edge " + std::to_string(e) + " collapses to a point");
    w[e] = weierstrass_term(p.g(i), p.g(j), q[e]);
  }
  return EdgeOneForm(p.mesh_ptr(), std::move(w));
}

std::vector<double> closedness_residuals(const EdgeOneForm& form) {
  const CellComplex& c = form.mesh();
  std::vector<double> out(c.num_vertices(), 0.0);
  for (int v = 0; v < c.num_vertices(); ++v) {
    if (!c.is_interior_vertex(v)) continue;
    Vec3c s = Vec3c::Zero();
    for (int h : c.outgoing_ccw(v)) s += form.at(h);
    out[v] = s.norm();
  }
  return out;
}

bool is_closed(const EdgeOneForm& form, double tol) {
  const double bound = tol * form.magnitude();
  for (double r : closedness_residuals(form))
    if (r > bound) return false;
  return true;
}

}  // namespace dmin
