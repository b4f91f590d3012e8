#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dmin/types.hpp"

namespace dmin {

/// Connectivity of one halfedge. The twin of halfedge h is h ^ 1 and its
/// undirected edge is h / 2, so both are implicit.
struct Halfedge {
  int origin = kNone;
  int next = kNone;
  int prev = kNone;
  int face = kNone;  // kNone on boundary halfedges
};

/// Oriented cellular surface with optional boundary.
///
/// Vertices are stored densely (0..num_vertices()-1) and carry an opaque
/// integer label. Faces are cyclic vertex lists whose order fixes the
/// orientation. An edge with a single incident face gets a boundary halfedge
/// on its free side; boundary halfedges are chained into boundary loops by
/// next/prev.
class CellComplex {
 public:
  CellComplex() = default;

  /// Faces given as lists of dense indices 0..n-1; n is inferred.
  static CellComplex build(std::span<const std::vector<int>> faces);

  /// Faces reference the labels in `vertex_ids`; labels must be unique.
  /// Vertices that appear in no face are kept as isolated vertices.
  static CellComplex build(std::span<const int> vertex_ids,
                           std::span<const std::vector<int>> faces);

  /// Unchecked construction from raw connectivity. Used to inspect broken
  /// inputs with validate(); every other entry point validates.
  static CellComplex from_raw(std::vector<int> vertex_ids,
                              std::vector<Halfedge> halfedges,
                              std::vector<int> face_halfedge);

  int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int num_edges() const { return static_cast<int>(halfedges_.size() / 2); }
  int num_halfedges() const { return static_cast<int>(halfedges_.size()); }
  int num_faces() const { return static_cast<int>(face_half_.size()); }
  int euler_characteristic() const {
    return num_vertices() - num_edges() + num_faces();
  }

  int vertex_id(int v) const { return vertex_ids_[v]; }
  const std::vector<int>& vertex_ids() const { return vertex_ids_; }
  int index_of(int id) const;

  static int twin(int h) { return h ^ 1; }
  static int edge_of(int h) { return h / 2; }
  static int edge_halfedge(int e) { return 2 * e; }

  int origin(int h) const { return halfedges_[h].origin; }
  int dest(int h) const { return halfedges_[twin(h)].origin; }
  int next(int h) const { return halfedges_[h].next; }
  int prev(int h) const { return halfedges_[h].prev; }
  int face(int h) const { return halfedges_[h].face; }
  const Halfedge& halfedge(int h) const { return halfedges_[h]; }

  int face_halfedge(int f) const { return face_half_[f]; }
  int vertex_halfedge(int v) const { return vertex_half_[v]; }

  bool is_boundary_halfedge(int h) const { return face(h) == kNone; }
  bool is_boundary_edge(int e) const {
    return is_boundary_halfedge(2 * e) || is_boundary_halfedge(2 * e + 1);
  }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }
  bool is_isolated_vertex(int v) const { return vertex_half_[v] == kNone; }
  bool is_interior_vertex(int v) const {
    return !is_isolated_vertex(v) && !is_boundary_vertex(v);
  }
  bool has_boundary() const;
  bool is_triangulated() const;

  /// Halfedge from a to b (dense indices), or kNone.
  int find_halfedge(int a, int b) const;

  std::vector<int> face_halfedges(int f) const;
  std::vector<int> face_vertices(int f) const;
  int face_degree(int f) const;

  /// Outgoing halfedges of v in counterclockwise order. For a boundary vertex
  /// the list starts at the first face of the fan and ends with the outgoing
  /// boundary halfedge.
  std::vector<int> outgoing_ccw(int v) const;
  std::vector<int> neighbors_ccw(int v) const;
  /// Faces around v in counterclockwise order.
  std::vector<int> faces_around(int v) const;
  int degree(int v) const;

  int num_boundary_loops() const;
  int num_components() const;
  /// Connected, and a disk or a sphere.
  bool is_simply_connected() const;

  std::vector<std::vector<int>> face_lists() const;

 private:
  void finalize();

  std::vector<int> vertex_ids_;
  std::unordered_map<int, int> id_index_;
  std::vector<Halfedge> halfedges_;
  std::vector<int> face_half_;
  std::vector<int> vertex_half_;
  std::vector<bool> boundary_vertex_;
  std::unordered_map<std::uint64_t, int> directed_;
};

/// Bijections between a complex and its dual. In partial mode (complex with
/// boundary) boundary vertices and boundary edges have no dual and map to
/// kNone.
struct DualMap {
  std::vector<int> vertex_to_dual_face;
  std::vector<int> dual_face_to_vertex;
  std::vector<int> face_to_dual_vertex;
  std::vector<int> dual_vertex_to_face;
  std::vector<int> edge_to_dual_edge;
  std::vector<int> dual_edge_to_edge;
  bool partial = false;
};

struct DualResult {
  CellComplex complex;
  DualMap map;
};

/// Dual decomposition. Dual vertex k is face k of `c`; the dual face of
/// vertex v lists the faces around v counterclockwise. With `strict` set a
/// complex with boundary is rejected with HasBoundary, otherwise only the
/// interior vertices receive dual faces and the result is flagged partial.
DualResult dual(const CellComplex& c, bool strict = false);

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<int> boundary_halfedges;
  std::vector<int> isolated_vertices;

  bool ok() const { return errors.empty(); }
};

ValidationReport validate(const CellComplex& c);

}  // namespace dmin
