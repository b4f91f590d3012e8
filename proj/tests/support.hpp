#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "dmin/curvature.hpp"
#include "dmin/mesh.hpp"
#include "dmin/pattern.hpp"

namespace testing {

using dmin::Complex;
using dmin::Vec3;

inline std::vector<std::vector<int>> wheel_faces(int k) {
  std::vector<std::vector<int>> f;
  for (int j = 0; j < k; ++j) f.push_back({0, 1 + j, 1 + (j + 1) % k});
  return f;
}

inline std::vector<std::vector<int>> tetra_faces() { return {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}}; }

inline std::vector<std::vector<int>> cube_faces() {
  return {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
}

struct Mobius {
  Complex a, b, c, d;
  Complex operator()(Complex z) const { return (a * z + b) / (c * z + d); }
};

inline Mobius random_mobius(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  // small c keeps the pole far from the unit disk
  Mobius m{Complex(1.0 + u(rng), u(rng)), Complex(u(rng), u(rng)), 0.2 * Complex(u(rng), u(rng)),
           Complex(1.5 + 0.3 * u(rng), 0.3 * u(rng))};
  return m;
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  return q.normalized().toRotationMatrix();
}

/// Numerical rank from a Jacobi SVD, threshold relative to the largest
/// singular value.
inline int dense_rank(const Eigen::MatrixXd& a, double rel = 1e-10) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  int r = 0;
  for (int k = 0; k < s.size(); ++k)
    if (s(k) > rel * s(0)) ++r;
  return r;
}

/// Surface with all positions mapped by x -> R x + t.
inline dmin::PolySurface moved(const dmin::PolySurface& s, const Eigen::Matrix3d& r, const Vec3& t) {
  std::vector<Vec3> f;
  for (const auto& x : s.positions()) f.push_back(r * x + t);
  return dmin::PolySurface(s.mesh_ptr(), f);
}

/// Random finite-support height variation: nonzero only on closed faces
/// whose neighbours are all closed faces (so ghosts never move).
inline std::vector<double> random_hdot(const dmin::PolySurface& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> h(s.num_planes(), 0.0);
  const auto& c = s.mesh();
  for (int f = 0; f < s.num_faces(); ++f) {
    bool inner = s.is_interior_face(f);
    for (int e : c.face_halfedges(f)) inner = inner && !s.is_ghost(s.right_plane(e));
    if (inner) h[f] = u(rng);
  }
  return h;
}

}  // namespace testing
