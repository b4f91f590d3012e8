#include "dmin/mesh.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dmin/error.hpp"

namespace dmin {

namespace {

std::uint64_t directed_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

std::uint64_t undirected_key(int a, int b) {
  return a < b ? directed_key(a, b) : directed_key(b, a);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

CellComplex CellComplex::build(std::span<const std::vector<int>> faces) {
  int max_id = -1;
  for (const auto& f : faces)
    for (int v : f) max_id = std::max(max_id, v);
  std::vector<int> ids(max_id + 1);
  std::iota(ids.begin(), ids.end(), 0);
  return build(ids, faces);
}

CellComplex CellComplex::build(std::span<const int> vertex_ids,
                               std::span<const std::vector<int>> faces) {
  CellComplex c;
  c.vertex_ids_.assign(vertex_ids.begin(), vertex_ids.end());
  for (int i = 0; i < static_cast<int>(vertex_ids.size()); ++i) {
    if (!c.id_index_.emplace(vertex_ids[i], i).second)
      throw Error(ErrorCode::InvalidInput,
                  "duplicate vertex id " + std::to_string(vertex_ids[i]));
  }

  std::vector<std::vector<int>> local(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& face = faces[f];
    if (face.size() < 3)
      throw Error(ErrorCode::DegenerateFace,
                  "face " + std::to_string(f) + " has fewer than 3 vertices");
    for (int id : face) {
      auto it = c.id_index_.find(id);
      if (it == c.id_index_.end())
        throw Error(ErrorCode::InvalidInput,
                    "face " + std::to_string(f) + " references unknown vertex " +
                        std::to_string(id));
      local[f].push_back(it->second);
    }
    auto sorted = local[f];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorCode::DegenerateFace,
                  "face " + std::to_string(f) + " repeats a vertex");
  }

  // Edge multiplicity first: more than two faces is a manifold violation
  // regardless of orientation.
  std::unordered_map<std::uint64_t, int> uses;
  for (const auto& face : local)
    for (std::size_t k = 0; k < face.size(); ++k) {
      int a = face[k], b = face[(k + 1) % face.size()];
      if (++uses[undirected_key(a, b)] > 2)
        throw Error(ErrorCode::NonManifold,
                    "edge {" + std::to_string(c.vertex_ids_[a]) + "," +
                        std::to_string(c.vertex_ids_[b]) +
                        "} is shared by more than two faces");
    }

  std::unordered_map<std::uint64_t, int> edge_of_pair;
  c.face_half_.resize(local.size());
  for (std::size_t f = 0; f < local.size(); ++f) {
    const auto& face = local[f];
    const int n = static_cast<int>(face.size());
    std::vector<int> hs(n);
    for (int k = 0; k < n; ++k) {
      int a = face[k], b = face[(k + 1) % n];
      auto [it, fresh] = edge_of_pair.emplace(undirected_key(a, b),
                                              static_cast<int>(c.halfedges_.size() / 2));
      int h;
      if (fresh) {
        h = static_cast<int>(c.halfedges_.size());
        c.halfedges_.push_back({a, kNone, kNone, kNone});
        c.halfedges_.push_back({b, kNone, kNone, kNone});
      } else {
        h = 2 * it->second;
        if (c.halfedges_[h].origin != a) h ^= 1;
        if (c.halfedges_[h].face != kNone)
          throw Error(ErrorCode::NonOrientable,
                      "edge (" + std::to_string(c.vertex_ids_[a]) + "," +
                          std::to_string(c.vertex_ids_[b]) +
                          ") is traversed in the same direction by two faces");
      }
      c.halfedges_[h].face = static_cast<int>(f);
      hs[k] = h;
    }
    for (int k = 0; k < n; ++k) {
      c.halfedges_[hs[k]].next = hs[(k + 1) % n];
      c.halfedges_[hs[(k + 1) % n]].prev = hs[k];
    }
    c.face_half_[f] = hs[0];
  }

  // Chain boundary halfedges into loops.
  std::vector<int> boundary_out(c.vertex_ids_.size(), kNone);
  for (int h = 0; h < c.num_halfedges(); ++h) {
    if (c.halfedges_[h].face != kNone) continue;
    int v = c.halfedges_[h].origin;
    if (boundary_out[v] != kNone)
      throw Error(ErrorCode::NonManifold,
                  "vertex " + std::to_string(c.vertex_ids_[v]) +
                      " is pinched (several boundary fans)");
    boundary_out[v] = h;
  }
  for (int h = 0; h < c.num_halfedges(); ++h) {
    if (c.halfedges_[h].face != kNone) continue;
    int n = boundary_out[c.dest(h)];
    c.halfedges_[h].next = n;
    c.halfedges_[n].prev = h;
  }

  for (const auto& [key, h] : edge_of_pair) {
    (void)key;
    for (int hh : {2 * h, 2 * h + 1})
      c.directed_.emplace(directed_key(c.halfedges_[hh].origin, c.dest(hh)), hh);
  }

  c.finalize();

  // Every vertex must carry a single fan.
  std::vector<int> out_count(c.vertex_ids_.size(), 0);
  for (int h = 0; h < c.num_halfedges(); ++h) ++out_count[c.halfedges_[h].origin];
  for (int v = 0; v < c.num_vertices(); ++v) {
    if (c.is_isolated_vertex(v)) continue;
    if (static_cast<int>(c.outgoing_ccw(v).size()) != out_count[v])
      throw Error(ErrorCode::NonManifold,
                  "vertex " + std::to_string(c.vertex_ids_[v]) +
                      " has a non-manifold neighbourhood");
  }
  return c;
}

CellComplex CellComplex::from_raw(std::vector<int> vertex_ids,
                                  std::vector<Halfedge> halfedges,
                                  std::vector<int> face_halfedge) {
  CellComplex c;
  c.vertex_ids_ = std::move(vertex_ids);
  for (int i = 0; i < c.num_vertices(); ++i) c.id_index_.emplace(c.vertex_ids_[i], i);
  c.halfedges_ = std::move(halfedges);
  c.face_half_ = std::move(face_halfedge);
  for (int h = 0; h < c.num_halfedges(); ++h) {
    int o = c.halfedges_[h].origin;
    int d = c.halfedges_[h ^ 1].origin;
    c.directed_.emplace(directed_key(o, d), h);
  }
  c.finalize();
  return c;
}

void CellComplex::finalize() {
  const int nv = num_vertices();
  vertex_half_.assign(nv, kNone);
  boundary_vertex_.assign(nv, false);
  for (int h = 0; h < num_halfedges(); ++h) {
    int v = halfedges_[h].origin;
    if (v < 0 || v >= nv) continue;
    if (halfedges_[h].face == kNone) {
      boundary_vertex_[v] = true;
      int p = halfedges_[h].prev;
      if (p >= 0 && p < num_halfedges()) vertex_half_[v] = twin(p);
    } else if (vertex_half_[v] == kNone) {
      vertex_half_[v] = h;
    }
  }
}

int CellComplex::index_of(int id) const {
  auto it = id_index_.find(id);
  return it == id_index_.end() ? kNone : it->second;
}

bool CellComplex::has_boundary() const {
  return std::any_of(halfedges_.begin(), halfedges_.end(),
                     [](const Halfedge& h) { return h.face == kNone; });
}

bool CellComplex::is_triangulated() const {
  for (int f = 0; f < num_faces(); ++f)
    if (face_degree(f) != 3) return false;
  return true;
}

int CellComplex::find_halfedge(int a, int b) const {
  auto it = directed_.find(directed_key(a, b));
  return it == directed_.end() ? kNone : it->second;
}

std::vector<int> CellComplex::face_halfedges(int f) const {
  std::vector<int> out;
  int start = face_half_[f], h = start;
  do {
    out.push_back(h);
    h = next(h);
  } while (h != start && static_cast<int>(out.size()) <= num_halfedges());
  return out;
}

std::vector<int> CellComplex::face_vertices(int f) const {
  std::vector<int> out;
  for (int h : face_halfedges(f)) out.push_back(origin(h));
  return out;
}

int CellComplex::face_degree(int f) const {
  return static_cast<int>(face_halfedges(f).size());
}

std::vector<int> CellComplex::outgoing_ccw(int v) const {
  std::vector<int> out;
  const int start = vertex_half_[v];
  if (start == kNone) return out;
  int h = start;
  do {
    out.push_back(h);
    if (face(h) == kNone) break;
    h = twin(prev(h));
  } while (h != start && static_cast<int>(out.size()) <= num_halfedges());
  return out;
}

std::vector<int> CellComplex::neighbors_ccw(int v) const {
  std::vector<int> out;
  for (int h : outgoing_ccw(v)) out.push_back(dest(h));
  return out;
}

std::vector<int> CellComplex::faces_around(int v) const {
  std::vector<int> out;
  for (int h : outgoing_ccw(v))
    if (face(h) != kNone) out.push_back(face(h));
  return out;
}

int CellComplex::degree(int v) const {
  return static_cast<int>(outgoing_ccw(v).size());
}

int CellComplex::num_boundary_loops() const {
  std::vector<bool> seen(num_halfedges(), false);
  int loops = 0;
  for (int h = 0; h < num_halfedges(); ++h) {
    if (face(h) != kNone || seen[h]) continue;
    ++loops;
    for (int g = h; !seen[g]; g = next(g)) seen[g] = true;
  }
  return loops;
}

int CellComplex::num_components() const {
  UnionFind uf(num_vertices());
  for (int e = 0; e < num_edges(); ++e) uf.unite(origin(2 * e), origin(2 * e + 1));
  int count = 0;
  for (int v = 0; v < num_vertices(); ++v)
    if (!is_isolated_vertex(v) && uf.find(v) == v) ++count;
  return count;
}

bool CellComplex::is_simply_connected() const {
  if (num_components() != 1) return false;
  int isolated = 0;
  for (int v = 0; v < num_vertices(); ++v) isolated += is_isolated_vertex(v);
  const int chi = euler_characteristic() - isolated;
  const int loops = num_boundary_loops();
  return (loops == 0 && chi == 2) || (loops == 1 && chi == 1);
}

std::vector<std::vector<int>> CellComplex::face_lists() const {
  std::vector<std::vector<int>> out(num_faces());
  for (int f = 0; f < num_faces(); ++f)
    for (int v : face_vertices(f)) out[f].push_back(vertex_ids_[v]);
  return out;
}

DualResult dual(const CellComplex& c, bool strict) {
  const bool bounded = c.has_boundary();
  if (strict && bounded)
    throw Error(ErrorCode::HasBoundary, "dual requested in strict mode on a complex with boundary");

  DualResult r;
  DualMap& m = r.map;
  m.partial = bounded;
  m.vertex_to_dual_face.assign(c.num_vertices(), kNone);
  m.face_to_dual_vertex.resize(c.num_faces());
  m.dual_vertex_to_face.resize(c.num_faces());
  std::iota(m.face_to_dual_vertex.begin(), m.face_to_dual_vertex.end(), 0);
  std::iota(m.dual_vertex_to_face.begin(), m.dual_vertex_to_face.end(), 0);

  std::vector<std::vector<int>> dual_faces;
  for (int v = 0; v < c.num_vertices(); ++v) {
    if (!c.is_interior_vertex(v)) continue;
    m.vertex_to_dual_face[v] = static_cast<int>(dual_faces.size());
    m.dual_face_to_vertex.push_back(v);
    dual_faces.push_back(c.faces_around(v));
  }
  r.complex = CellComplex::build(m.dual_vertex_to_face, dual_faces);

  m.edge_to_dual_edge.assign(c.num_edges(), kNone);
  m.dual_edge_to_edge.assign(r.complex.num_edges(), kNone);
  for (int e = 0; e < c.num_edges(); ++e) {
    if (c.is_boundary_edge(e)) continue;
    int h = CellComplex::edge_halfedge(e);
    int dh = r.complex.find_halfedge(c.face(CellComplex::twin(h)), c.face(h));
    if (dh == kNone) continue;
    int de = CellComplex::edge_of(dh);
    m.edge_to_dual_edge[e] = de;
    m.dual_edge_to_edge[de] = e;
  }
  return r;
}

ValidationReport validate(const CellComplex& c) {
  ValidationReport rep;
  const int nh = c.num_halfedges();
  const int nv = c.num_vertices();
  auto in_range = [nh](int h) { return h >= 0 && h < nh; };
  auto say = [&rep](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    rep.errors.push_back(os.str());
  };

  if (nh % 2 != 0) say("odd number of halfedges");
  for (int h = 0; h < nh; ++h) {
    const Halfedge& he = c.halfedge(h);
    if (he.origin < 0 || he.origin >= nv) {
      say("halfedge ", h, ": origin out of range");
      continue;
    }
    if (!in_range(he.next) || !in_range(he.prev)) {
      say("halfedge ", h, ": next/prev out of range");
      continue;
    }
    if (c.prev(he.next) != h) say("halfedge ", h, ": prev(next(h)) != h");
    if ((h ^ 1) < nh) {
      int t = h ^ 1;
      if (c.origin(t) == he.origin) say("halfedge ", h, ": twin pairing broken (twin starts at the same vertex)");
      else if (c.origin(he.next) != c.origin(t))
        say("halfedge ", h, ": twin pairing broken (twin does not start where h ends)");
      if (he.face == kNone && c.face(t) == kNone)
        say("halfedge ", h, ": edge has no incident face");
    }
    if (c.face(he.next) != he.face) say("halfedge ", h, ": next(h) lies in a different face");
    if (he.face == kNone) rep.boundary_halfedges.push_back(h);
  }

  std::unordered_map<std::uint64_t, int> seen;
  for (int h = 0; h + 1 < nh; ++h) {
    int a = c.origin(h), b = c.origin(h ^ 1);
    auto [it, fresh] = seen.emplace(directed_key(a, b), h);
    if (!fresh)
      say("halfedge ", h, ": orientation clash with halfedge ", it->second);
  }

  for (int f = 0; f < c.num_faces(); ++f) {
    int start = c.face_halfedge(f);
    if (!in_range(start) || c.face(start) != f) {
      say("face ", f, ": representative halfedge does not belong to the face");
      continue;
    }
    int len = 0, h = start;
    do {
      ++len;
      h = c.next(h);
    } while (in_range(h) && h != start && len <= nh);
    if (h != start) say("face ", f, ": next-orbit does not close");
    else if (len < 3) say("face ", f, ": fewer than 3 sides");
  }

  for (int v = 0; v < nv; ++v)
    if (c.is_isolated_vertex(v)) rep.isolated_vertices.push_back(v);
  return rep;
}

}  // namespace dmin
