#include "dmin/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/Dense>

#include "dmin/error.hpp"
#include "dmin/kernels.hpp"

namespace dmin {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Unit normal of the best-fit plane, or nullopt for (nearly) collinear input.
std::optional<Vec3> fit_normal(std::span<const Vec3> pts) {
  if (pts.size() < 3) return std::nullopt;
  Vec3 c = Vec3::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) cov += (p - c) * (p - c).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  const auto& ev = es.eigenvalues();
  if (ev(1) <= 1e-24 * std::max(ev(2), 1e-300)) return std::nullopt;
  return Vec3(es.eigenvectors().col(0));
}

std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

std::vector<std::vector<int>> collect_planes(const CellComplex& c, std::span<const GhostFace> ghosts) {
  std::vector<std::vector<int>> at(c.num_vertices());
  for (int f = 0; f < c.num_faces(); ++f)
    for (int v : c.face_vertices(f)) at[v].push_back(f);
  for (int g = 0; g < static_cast<int>(ghosts.size()); ++g)
    for (int v : ghosts[g].vertices) at[v].push_back(c.num_faces() + g);
  return at;
}

}  // namespace

Vec3 newell_vector(std::span<const Vec3> polygon) {
  Vec3 n = Vec3::Zero();
  const std::size_t k = polygon.size();
  for (std::size_t a = 0; a < k; ++a) n += polygon[a].cross(polygon[(a + 1) % k]);
  return n;
}

PolySurface::PolySurface(std::shared_ptr<const CellComplex> mesh, std::vector<Vec3> positions)
    : PolySurface(std::move(mesh), std::move(positions), std::nullopt, {}) {}

PolySurface::PolySurface(std::shared_ptr<const CellComplex> mesh, std::vector<Vec3> positions,
                         std::optional<std::vector<Vec3>> face_normals, std::vector<GhostFace> ghosts)
    : mesh_(std::move(mesh)), f_(std::move(positions)), ghosts_(std::move(ghosts)) {
  const CellComplex& c = *mesh_;
  if (static_cast<int>(f_.size()) != c.num_vertices())
    throw Error(ErrorCode::InvalidInput, "surface needs one position per vertex");
  n_.assign(num_planes(), Vec3::Zero());
  n_valid_.assign(num_planes(), false);
  if (face_normals) {
    if (static_cast<int>(face_normals->size()) != c.num_faces())
      throw Error(ErrorCode::InvalidInput, "one prescribed normal per face expected");
    prescribed_ = true;
    for (int f = 0; f < c.num_faces(); ++f) {
      const double len = (*face_normals)[f].norm();
      if (len > 0.0) {
        n_[f] = (*face_normals)[f] / len;
        n_valid_[f] = true;
      }
    }
  }
  for (int g = 0; g < static_cast<int>(ghosts_.size()); ++g) {
    const int p = c.num_faces() + g;
    const double len = ghosts_[g].normal.norm();
    if (len > 0.0) {
      n_[p] = ghosts_[g].normal / len;
      n_valid_[p] = true;
    }
    for (int v : ghosts_[g].vertices)
      if (v < 0 || v >= c.num_vertices())
        throw Error(ErrorCode::InvalidInput, "ghost face references an unknown vertex");
  }

  // Boundary halfedges are matched to the ghost whose chain runs along them.
  std::map<std::uint64_t, int> chain_edge;
  for (int g = 0; g < static_cast<int>(ghosts_.size()); ++g) {
    const auto& vs = ghosts_[g].vertices;
    for (std::size_t k = 0; k + 1 < vs.size(); ++k) chain_edge[pair_key(vs[k], vs[k + 1])] = g;
  }
  ghost_of_halfedge_.assign(c.num_halfedges(), kNone);
  for (int h = 0; h < c.num_halfedges(); ++h) {
    if (!c.is_boundary_halfedge(h)) continue;
    auto it = chain_edge.find(pair_key(c.origin(h), c.dest(h)));
    if (it != chain_edge.end()) ghost_of_halfedge_[h] = c.num_faces() + it->second;
  }
  planes_at_ = collect_planes(c, ghosts_);
  build_caches();
}

void PolySurface::build_caches() {
  const CellComplex& c = *mesh_;
  if (!f_.empty()) {
    Vec3 lo = f_[0], hi = f_[0];
    for (const auto& x : f_) {
      lo = lo.cwiseMin(x);
      hi = hi.cwiseMax(x);
    }
    scale_ = (hi - lo).norm();
  }
  for (int e = 0; e < c.num_edges(); ++e) max_len_ = std::max(max_len_, edge_length(2 * e));
  const double sc = std::max(scale_, 1e-300);
  h_.assign(num_planes(), kNaN);
  spread_.assign(num_planes(), kNaN);
  for (int p = 0; p < num_planes(); ++p) {
    std::vector<Vec3> pts;
    if (p < c.num_faces()) {
      pts = face_positions(p);
      if (!prescribed_) {
        const Vec3 nw = newell_vector(pts);
        if (nw.norm() > 1e-14 * sc * sc) {
          n_[p] = nw.normalized();
          n_valid_[p] = true;
        } else if (auto fit = fit_normal(pts)) {
          n_[p] = *fit;
          n_valid_[p] = true;
        }
      }
    } else {
      for (int v : ghosts_[p - c.num_faces()].vertices) pts.push_back(f_[v]);
    }
    if (!n_valid_[p] || pts.empty()) continue;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (const auto& x : pts) {
      const double d = x.dot(n_[p]);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
      sum += d;
    }
    h_[p] = sum / static_cast<double>(pts.size());
    spread_[p] = hi - lo;
  }
}

int PolySurface::left_plane(int h) const {
  const int f = mesh_->face(h);
  return f != kNone ? f : ghost_of_halfedge_[h];
}

double PolySurface::edge_length(int h) const {
  return (f_[mesh_->dest(h)] - f_[mesh_->origin(h)]).norm();
}

bool PolySurface::is_interior_face(int f) const {
  for (int h : mesh_->face_halfedges(f))
    if (right_plane(h) == kNone) return false;
  return true;
}

std::vector<Vec3> PolySurface::face_positions(int f) const {
  std::vector<Vec3> pts;
  for (int v : mesh_->face_vertices(f)) pts.push_back(f_[v]);
  return pts;
}

FaceData face_data(const PolySurface& s, int face, double tol) {
  if (!s.has_normal(face))
    throw Error(ErrorCode::DegenerateFace, "face " + std::to_string(face) + " has collinear vertices");
  if (s.planarity(face) > tol * std::max(s.scale(), 1e-300))
    throw Error(ErrorCode::NonPlanarFace, "face " + std::to_string(face) + " is not planar");
  return {s.normal(face), s.height(face), s.planarity(face)};
}

double dihedral(const PolySurface& s, int h) {
  const int l = s.left_plane(h), r = s.right_plane(h);
  if (l == kNone || r == kNone)
    throw Error(ErrorCode::BoundaryEdge, "edge " + std::to_string(h / 2) + " has a single face");
  if (!s.has_normal(l) || !s.has_normal(r))
    throw Error(ErrorCode::DegenerateFace, "edge " + std::to_string(h / 2) + " borders a degenerate face");
  const double len = s.edge_length(h);
  if (!(len > 1e-15 * s.scale()))
    throw Error(ErrorCode::ZeroLengthEdge, "edge " + std::to_string(h / 2) + " has zero length");
  const Vec3 e = (s.position(s.mesh().dest(h)) - s.position(s.mesh().origin(h))) / len;
  const double sn = s.normal(l).cross(s.normal(r)).dot(e);
  const double cs = s.normal(l).dot(s.normal(r));
  if (std::abs(cs + 1.0) <= 1e-12)
    throw Error(ErrorCode::AngleAtPi, "edge " + std::to_string(h / 2) + " folds back onto itself");
  return std::atan2(sn, cs);
}

double mean_curvature(const PolySurface& s, int face) {
  double sum = 0.0;
  for (int h : s.mesh().face_halfedges(face)) sum += s.edge_length(h) * std::tan(0.5 * dihedral(s, h));
  return 0.5 * sum;
}

double tube_mean_curvature(const PolySurface& s, int face) {
  double sum = 0.0;
  for (int h : s.mesh().face_halfedges(face)) sum += s.edge_length(h) * 0.5 * dihedral(s, h);
  return 0.5 * sum;
}

double signed_area(const PolySurface& s, int face) {
  if (!s.has_normal(face))
    throw Error(ErrorCode::DegenerateFace, "face " + std::to_string(face) + " has no normal");
  const auto pts = s.face_positions(face);
  return 0.5 * newell_vector(pts).dot(s.normal(face));
}

bool is_minimal(const PolySurface& s, double tol) {
  const double bound = tol * s.max_edge_length();
  for (int f = 0; f < s.num_faces(); ++f) {
    if (!s.is_interior_face(f)) continue;
    if (!(std::abs(mean_curvature(s, f)) <= bound)) return false;
  }
  return true;
}

PolySurface surface_from_planes(std::shared_ptr<const CellComplex> mesh, std::span<const Vec3> normals,
                                std::span<const double> heights, std::vector<GhostFace> ghosts) {
  const CellComplex& c = *mesh;
  const int planes = c.num_faces() + static_cast<int>(ghosts.size());
  if (static_cast<int>(normals.size()) != planes || static_cast<int>(heights.size()) != planes)
    throw Error(ErrorCode::InvalidInput, "one normal and height per plane expected");
  auto normal_of = [&](int p) -> Vec3 {
    return p < c.num_faces() ? normals[p].normalized() : ghosts[p - c.num_faces()].normal.normalized();
  };
  const auto at = collect_planes(c, ghosts);
  std::vector<Vec3> pos(c.num_vertices(), Vec3::Zero());
  for (int v = 0; v < c.num_vertices(); ++v) {
    if (at[v].size() != 3)
      throw Error(ErrorCode::NotTrivalent, "vertex " + std::to_string(c.vertex_id(v)) + " lies on " +
                                               std::to_string(at[v].size()) + " planes, not 3");
    Eigen::Matrix3d a;
    Vec3 b;
    for (int k = 0; k < 3; ++k) {
      a.row(k) = normal_of(at[v][k]).transpose();
      b(k) = heights[at[v][k]];
    }
    if (std::abs(a.determinant()) <= 1e-12)
      throw Error(ErrorCode::SingularCorner,
                  "the three normals at vertex " + std::to_string(c.vertex_id(v)) + " are coplanar");
    pos[v] = a.partialPivLu().solve(b);
  }
  std::vector<Vec3> face_normals(c.num_faces());
  for (int f = 0; f < c.num_faces(); ++f) face_normals[f] = normal_of(f);
  return PolySurface(std::move(mesh), std::move(pos), std::move(face_normals), std::move(ghosts));
}

PolySurface offset_surface(const PolySurface& s, std::span<const double> hdot, double t) {
  if (static_cast<int>(hdot.size()) != s.num_planes())
    throw Error(ErrorCode::InvalidInput, "one height change per plane expected");
  if (t == 0.0) return s;
  for (int p = 0; p < s.num_planes(); ++p)
    if (!s.has_normal(p))
      throw Error(ErrorCode::DegenerateFace, "plane " + std::to_string(p) + " has no normal");
  std::vector<double> h(s.num_planes());
  for (int p = 0; p < s.num_planes(); ++p) h[p] = s.height(p) + t * hdot[p];
  return surface_from_planes(s.mesh_ptr(), s.normals(), h, s.ghosts());
}

std::vector<double> area_variation(const PolySurface& s, std::span<const double> hdot) {
  if (static_cast<int>(hdot.size()) != s.num_planes())
    throw Error(ErrorCode::InvalidInput, "one height change per plane expected");
  std::vector<double> out(s.num_faces(), kNaN);
  for (int f = 0; f < s.num_faces(); ++f) {
    if (!s.is_interior_face(f)) continue;
    double v = 2.0 * hdot[f] * mean_curvature(s, f);
    for (int h : s.mesh().face_halfedges(f)) {
      const int r = s.right_plane(h);
      const double jump = hdot[r] - hdot[f];
      if (jump == 0.0) continue;
      const double sn = std::sin(dihedral(s, h));
      if (std::abs(sn) < 1e-14)
        throw Error(ErrorCode::FlatEdge, "edge " + std::to_string(h / 2) +
                                             " is flat but the height change jumps across it");
      v += s.edge_length(h) / sn * jump;
    }
    out[f] = v;
  }
  return out;
}

std::vector<int> coplanar_edges(const PolySurface& s, double tol) {
  std::vector<int> out;
  for (int e = 0; e < s.mesh().num_edges(); ++e) {
    const int h = 2 * e;
    if (s.left_plane(h) == kNone || s.right_plane(h) == kNone) continue;
    if (!s.has_normal(s.left_plane(h)) || !s.has_normal(s.right_plane(h))) continue;
    if ((s.normal(s.left_plane(h)) - s.normal(s.right_plane(h))).norm() <= tol) out.push_back(e);
  }
  return out;
}

double vertex_star_planarity(const PolySurface& s, int v) {
  std::vector<Vec3> pts{s.position(v)};
  for (int w : s.mesh().neighbors_ccw(v)) pts.push_back(s.position(w));
  if (pts.size() < 4) return 0.0;
  auto n = fit_normal(pts);
  if (!n) return 0.0;
  Vec3 c = Vec3::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, std::abs((p - c).dot(*n)));
  return m;
}

std::string curvature_report_csv(const PolySurface& s) {
  const auto h = kernels::mean_curvatures(s);
  const auto ht = kernels::tube_mean_curvatures(s);
  const auto a = kernels::signed_areas(s);
  std::ostringstream os;
  os.precision(17);
  os << "face,H,H_tube,area,planarity\n";
  for (int f = 0; f < s.num_faces(); ++f)
    os << f << ',' << h[f] << ',' << ht[f] << ',' << a[f] << ',' << s.planarity(f) << '\n';
  return os.str();
}

}  // namespace dmin
