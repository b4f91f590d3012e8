#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dmin/mesh.hpp"
#include "dmin/types.hpp"

namespace dmin {

/// A face that is only partially present: the plane of a dual face whose
/// primal vertex lies on the boundary. It has a prescribed unit normal and
/// passes through `vertices` (an open chain, possibly a single vertex).
struct GhostFace {
  Vec3 normal;
  std::vector<int> vertices;
};

/// Polyhedral surface: a realization of the vertices of a cell complex.
///
/// Faces are addressed as "planes": ids [0, F) are the complex's faces,
/// [F, F + G) the ghost faces. Normals are either prescribed or taken from
/// the Newell vector of the face polygon; heights are the mean of
/// <f_v, n> over the face's vertices and `planarity` is the spread of those
/// values. All caches are built at construction.
class PolySurface {
 public:
  PolySurface(std::shared_ptr<const CellComplex> mesh, std::vector<Vec3> positions);
  PolySurface(std::shared_ptr<const CellComplex> mesh, std::vector<Vec3> positions,
              std::optional<std::vector<Vec3>> face_normals, std::vector<GhostFace> ghosts);

  const CellComplex& mesh() const { return *mesh_; }
  const std::shared_ptr<const CellComplex>& mesh_ptr() const { return mesh_; }
  const std::vector<Vec3>& positions() const { return f_; }
  const Vec3& position(int v) const { return f_[v]; }
  const std::vector<GhostFace>& ghosts() const { return ghosts_; }
  bool has_prescribed_normals() const { return prescribed_; }

  int num_faces() const { return mesh_->num_faces(); }
  int num_planes() const { return num_faces() + static_cast<int>(ghosts_.size()); }
  bool is_ghost(int plane) const { return plane >= num_faces(); }

  const Vec3& normal(int plane) const { return n_[plane]; }
  double height(int plane) const { return h_[plane]; }
  double planarity(int plane) const { return spread_[plane]; }
  /// False when the face polygon is too degenerate to define a normal.
  bool has_normal(int plane) const { return n_valid_[plane]; }
  const std::vector<Vec3>& normals() const { return n_; }
  const std::vector<double>& heights() const { return h_; }

  /// Plane on the left of halfedge h (its face, or the ghost on a boundary
  /// halfedge), kNone if there is none.
  int left_plane(int h) const;
  int right_plane(int h) const { return left_plane(CellComplex::twin(h)); }
  /// Planes through vertex v (faces and ghosts).
  const std::vector<int>& planes_at(int v) const { return planes_at_[v]; }

  double edge_length(int h) const;
  double max_edge_length() const { return max_len_; }
  /// Bounding-box diagonal.
  double scale() const { return scale_; }
  /// Every face has a closed neighbourhood (a plane across each edge).
  bool is_interior_face(int f) const;
  std::vector<Vec3> face_positions(int f) const;

 private:
  void build_caches();

  std::shared_ptr<const CellComplex> mesh_;
  std::vector<Vec3> f_;
  std::vector<GhostFace> ghosts_;
  bool prescribed_ = false;
  std::vector<int> ghost_of_halfedge_;
  std::vector<std::vector<int>> planes_at_;
  std::vector<Vec3> n_;
  std::vector<bool> n_valid_;
  std::vector<double> h_;
  double scale_ = 0.0;
  double max_len_ = 0.0;
  std::vector<double> spread_;
};

struct FaceData {
  Vec3 normal;
  double height;
  double planarity;
};

/// Normal and height of a face, checked: throws DegenerateFace for collinear
/// vertices and NonPlanarFace when the spread exceeds tol * scale.
FaceData face_data(const PolySurface& s, int face, double tol = 1e-9);

/// Newell normal of a polygon (unnormalised, twice the vector area).
Vec3 newell_vector(std::span<const Vec3> polygon);

/// Dihedral angle of the edge of halfedge h, from
/// sin a = <n_l x n_r, e/|e|>, cos a = <n_l, n_r>. Same value for both
/// halfedges. Throws BoundaryEdge, ZeroLengthEdge, AngleAtPi.
double dihedral(const PolySurface& s, int h);

/// Integrated mean curvature 1/2 sum l tan(a/2) over the face boundary.
double mean_curvature(const PolySurface& s, int face);
/// Tubular-neighbourhood variant 1/2 sum l a/2.
double tube_mean_curvature(const PolySurface& s, int face);
/// 1/2 sum <f_i x f_j, n> over the oriented boundary.
double signed_area(const PolySurface& s, int face);

/// max |H| over interior faces is at most tol * max edge length.
bool is_minimal(const PolySurface& s, double tol = 1e-9);

/// Rebuild a trivalent surface from per-plane normals and heights: each
/// vertex is the intersection of its three planes. Ghost normals come from
/// `ghosts`, face normals from `normals` (size F + G; ghost entries are
/// ignored in favour of the ghost records). Throws NotTrivalent,
/// SingularCorner.
PolySurface surface_from_planes(std::shared_ptr<const CellComplex> mesh,
                                std::span<const Vec3> normals, std::span<const double> heights,
                                std::vector<GhostFace> ghosts);

/// Parallel offset: heights become h + t * hdot (hdot has one entry per
/// plane), normals are kept. t = 0 returns a copy of s.
PolySurface offset_surface(const PolySurface& s, std::span<const double> hdot, double t);

/// First-order change of each face area under the height variation hdot:
/// 2 hdot_f H_f + sum l / sin a (hdot_r - hdot_f). Throws FlatEdge when
/// sin a vanishes on an edge where hdot jumps.
std::vector<double> area_variation(const PolySurface& s, std::span<const double> hdot);

/// Edges whose two faces are coplanar (|a| <= tol). Reported, not merged.
std::vector<int> coplanar_edges(const PolySurface& s, double tol = 1e-12);

/// Distance of the vertex and its neighbours from their best-fit plane.
double vertex_star_planarity(const PolySurface& s, int v);

/// Per-face CSV report: face,H,H_tube,area,planarity. Non-evaluable entries
/// are written as nan.
std::string curvature_report_csv(const PolySurface& s);

}  // namespace dmin
