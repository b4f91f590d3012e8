#pragma once

#include <optional>
#include <vector>

#include "dmin/curvature.hpp"
#include "dmin/types.hpp"

namespace dmin {

/// Quaternion w + xi + yj + zk; points of R^3 are the pure-imaginary ones.
struct Quat {
  double w = 0.0;
  Vec3 v = Vec3::Zero();

  static Quat pure(const Vec3& x) { return {0.0, x}; }

  Quat conj() const { return {w, -v}; }
  double norm2() const { return w * w + v.squaredNorm(); }
  Quat inverse() const;

  friend Quat operator+(const Quat& a, const Quat& b) { return {a.w + b.w, a.v + b.v}; }
  friend Quat operator-(const Quat& a, const Quat& b) { return {a.w - b.w, a.v - b.v}; }
  friend Quat operator*(const Quat& a, const Quat& b) {
    return {a.w * b.w - a.v.dot(b.v), a.w * b.v + b.w * a.v + a.v.cross(b.v)};
  }
  friend Quat operator*(double s, const Quat& a) { return {s * a.w, s * a.v}; }
};

/// Q(A,B,C,D) = (A-B)(B-C)^-1(C-D)(D-A)^-1. Throws DegeneratePair when B = C
/// or D = A (relative to the size of the quadrilateral).
Quat quat_cross_ratio(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// The same product for four points of the plane, as complex numbers.
Complex complex_quad_cross_ratio(Complex a, Complex b, Complex c, Complex d);

/// Horizontal factors live on column edges (m,n)-(m+1,n) and depend on m
/// only; vertical factors on row edges (m,n)-(m,n+1) and depend on n only.
struct IsoFactors {
  std::vector<double> alpha_h;  // cols - 1 entries
  std::vector<double> alpha_v;  // rows - 1 entries
};

/// Map from a rectangle of Z^2 (optionally masked) into R^3, stored row-major:
/// f(m, n) = f[n * cols + m] with m the column, n the row.
struct QuadNet {
  int rows = 0;
  int cols = 0;
  std::vector<Vec3> f;
  std::optional<IsoFactors> factors;
  /// Present lattice points; empty means the full rectangle.
  std::vector<bool> mask;

  int index(int m, int n) const { return n * cols + m; }
  const Vec3& at(int m, int n) const { return f[index(m, n)]; }
  bool present(int m, int n) const { return mask.empty() || mask[index(m, n)]; }
  /// All four corners of the quad with lower-left corner (m, n) are present.
  bool has_quad(int m, int n) const {
    return present(m, n) && present(m + 1, n) && present(m + 1, n + 1) && present(m, n + 1);
  }
  double scale() const;
};

/// Cross ratio Q(f(m,n), f(m+1,n), f(m+1,n+1), f(m,n+1)) of one quad.
Quat quad_cross_ratio(const QuadNet& net, int m, int n);

/// Recover the factors of a discrete isothermic net: every Q must be real
/// and negative and log|Q| must split into a column part minus a row part.
/// Normalised to alpha_h(0) = 1 with alpha_h > 0 and alpha_v < 0.
/// Throws NotIsothermic.
IsoFactors factorize_isothermic(const QuadNet& net, double tol = 1e-9);

/// Christoffel dual: edge vectors alpha * e / |e|^2, integrated from
/// `base` at the first present lattice point. Uses net.factors, or
/// factorises the net when they are missing. Throws QuadClosureViolation.
QuadNet christoffel_dual(const QuadNet& net, const Vec3& base = Vec3::Zero(), double tol = 1e-9);

/// Lattice map g into the plane, same layout as QuadNet.
struct PlanarGrid {
  int rows = 0;
  int cols = 0;
  std::vector<Complex> g;
  Complex at(int m, int n) const { return g[n * cols + m]; }
};

/// Real part of (1/(gj - gi)) (1 - gi gj, i(1 + gi gj), gi + gj), scaled by
/// alpha / 2.
Vec3 quad_weierstrass_edge(Complex gi, Complex gj, double alpha);

/// Minimal net from an isothermic planar net g and its factors. Every
/// elementary quad must close to 1e-10 * scale. Throws ClosureViolation,
/// DegenerateEdge.
QuadNet quad_weierstrass(const PlanarGrid& g, const IsoFactors& factors, const Vec3& base = Vec3::Zero());

/// Surface built from the same Weierstrass data through the triangle branch:
/// q = alpha on the lattice edges of g (zero on the diagonals of the
/// concyclic quads). Vertices sit at the quads of the grid and faces at the
/// interior lattice points, with positions Im F. Throws ClosureViolation when
/// q is not a holomorphic quadratic differential on g.
PolySurface c_minimal_companion(const PlanarGrid& g, const IsoFactors& factors);

/// Largest closing error of an elementary quad of the net's edge vectors
/// for the factors: used to test a net/factor pair without integrating.
double quad_closure_error(const QuadNet& net);

/// The net's faces as a quad complex with positions, for curvature queries.
PolySurface quad_net_surface(const QuadNet& net);

/// Largest translation-removed distance between two nets on the same domain.
double distance_up_to_translation(const QuadNet& a, const QuadNet& b);

}  // namespace dmin
