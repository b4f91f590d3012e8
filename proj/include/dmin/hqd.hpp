#pragma once

#include <span>
#include <vector>

#include "dmin/pattern.hpp"

namespace dmin {

/// Real edge function on a pattern, indexed by edge id. Only interior edges
/// carry values; boundary entries are ignored and kept at zero.
struct QuadDiff {
  std::vector<double> q;
};

struct HqdResidual {
  double sum = 0.0;       // sum_j q_ij
  Complex weighted = 0.0;  // sum_j q_ij / (g_j - g_i)
};

/// Residuals of the quadratic-differential equations at interior vertex v.
/// Throws BoundaryVertex.
HqdResidual hqd_residual(const PlanarPattern& p, std::span<const double> q, int v);

/// Residuals at every vertex (zero at non-interior vertices).
std::vector<HqdResidual> validate_hqd(const PlanarPattern& p, std::span<const double> q);

/// True iff every residual norm is at most tol * max|q|.
bool is_hqd(const PlanarPattern& p, std::span<const double> q, double tol = kDefaultTol);

struct HqdBasis {
  std::vector<QuadDiff> basis;
  /// Interior edges that carry an unknown.
  std::vector<int> unknown_edges;
  /// Unknowns that appear in at least one constraint.
  int constrained_unknowns = 0;
  int rank = 0;
  /// Set when the pattern has no interior vertex; the basis is then the
  /// coordinate basis of all interior edges.
  bool empty_interior = false;

  int dimension() const { return static_cast<int>(basis.size()); }
};

/// Basis of the real solution space of the quadratic-differential equations.
/// Constrained unknowns are handled by a dense SVD, singular values below
/// 1e-10 * sigma_max counting as zero. Interior edges with both endpoints on
/// the boundary appear in no equation and contribute coordinate vectors.
/// Every vector is scaled to max|q| = 1 with its largest entry positive.
HqdBasis hqd_basis(const PlanarPattern& p);

/// The 3 x n real constraint matrix over the given unknown edges (rows: real
/// sum, real and imaginary part of the weighted sum, per interior vertex).
Eigen::MatrixXd hqd_constraint_matrix(const PlanarPattern& p, std::span<const int> unknown_edges);

/// C^3-valued form on oriented interior edges: w(i->j) is the jump
/// F_left - F_right across the dual edge. Stored per edge for the halfedge
/// 2e; the twin reads the negated value.
class EdgeOneForm {
 public:
  EdgeOneForm() = default;
  EdgeOneForm(std::shared_ptr<const CellComplex> mesh, std::vector<Vec3c> w)
      : mesh_(std::move(mesh)), w_(std::move(w)) {}

  const CellComplex& mesh() const { return *mesh_; }
  const std::shared_ptr<const CellComplex>& mesh_ptr() const { return mesh_; }
  Vec3c at(int halfedge) const {
    const Vec3c& v = w_[CellComplex::edge_of(halfedge)];
    return (halfedge & 1) ? Vec3c(-v) : v;
  }
  const std::vector<Vec3c>& edge_values() const { return w_; }
  /// Largest |w| over all edges.
  double magnitude() const;

 private:
  std::shared_ptr<const CellComplex> mesh_;
  std::vector<Vec3c> w_;
};

/// (q_ij / (g_j - g_i)) (1 - g_i g_j, i (1 + g_i g_j), g_i + g_j).
Vec3c weierstrass_term(Complex gi, Complex gj, double q);

/// Builds the form from any real edge function; closedness is not assumed.
/// Throws DegenerateEdge.
EdgeOneForm to_one_form(const PlanarPattern& p, std::span<const double> q);

/// |sum_j w(i->j)| around each vertex (zero at non-interior vertices).
std::vector<double> closedness_residuals(const EdgeOneForm& form);
/// True iff every closedness residual is at most tol * form.magnitude().
bool is_closed(const EdgeOneForm& form, double tol = kDefaultTol);

}  // namespace dmin
