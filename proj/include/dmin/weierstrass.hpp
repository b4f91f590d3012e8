#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "dmin/curvature.hpp"
#include "dmin/hqd.hpp"

namespace dmin {

enum class TreeOrder { BreadthFirst, DepthFirst };

/// Holomorphic curve F on the dual vertices (= primal faces) of a pattern's
/// complex. F is determined up to an additive constant, fixed by the value at
/// the basepoint.
struct HoloCurve {
  std::shared_ptr<const PlanarPattern> pattern;
  std::vector<Vec3c> F;
  int basepoint = 0;
  Vec3c base_value = Vec3c::Zero();
};

/// Integrates a closed form along a spanning tree of the dual graph rooted at
/// `basepoint` (a primal face). Every non-tree edge is re-checked against the
/// form, which amounts to checking closedness.
/// Throws NotSimplyConnected, ClosednessViolation.
HoloCurve integrate(std::shared_ptr<const PlanarPattern> pattern, const EdgeOneForm& form,
                    int basepoint = 0, const Vec3c& base_value = Vec3c::Zero(),
                    TreeOrder order = TreeOrder::BreadthFirst, double tol = kDefaultTol);

/// Convenience: pattern + quadratic differential -> curve.
HoloCurve weierstrass_curve(std::shared_ptr<const PlanarPattern> pattern, std::span<const double> q,
                            double tol = kDefaultTol);

/// Largest |F_l - F_r - w| over all interior edges.
double path_residual(const HoloCurve& curve, const EdgeOneForm& form);

/// Member f_theta = Im(e^{i theta} F) of the associated family, realised on
/// the (partial) dual complex: one face per interior primal vertex. For
/// theta = 0 mod pi the Gauss map sigma^-1(g) is attached as prescribed face
/// normals, together with ghost faces for the boundary primal vertices, so
/// that curvature is defined on every closed face. The normal sign is chosen
/// so that the first face's Newell vector has non-negative inner product
/// with sigma^-1(g).
PolySurface minimal_surface(const HoloCurve& curve, double theta);

/// (f_0, f_{pi/2}) = (Im F, Re F).
std::pair<PolySurface, PolySurface> conjugate_pair(const HoloCurve& curve);

/// Sign (+1 or -1) relating face normals of minimal_surface(curve, 0) to
/// sigma^-1(g).
double gauss_map_sign(const HoloCurve& curve);

/// Planarity of the vertex stars of f_theta: for each primal face whose three
/// edges are interior, the distance of the dual vertex and its three
/// neighbours from their best-fit plane. Entries for other faces are 0.
std::vector<double> star_planarity(const HoloCurve& curve, double theta);

}  // namespace dmin
