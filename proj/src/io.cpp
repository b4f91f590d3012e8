#include "dmin/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "dmin/error.hpp"

namespace dmin::io {

namespace {

Json vec3(const Vec3& x) { return Json::array({x.x(), x.y(), x.z()}); }

Vec3 vec3_from(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::InvalidInput, "expected [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorCode::InvalidInput, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<Vec3> points_from(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "expected an array of points");
  std::vector<Vec3> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(vec3_from(x));
  return out;
}

template <class F>
auto checked(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, e.what());
  }
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << text;
}

void write_json_file(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

Json mesh_to_json(const CellComplex& c) {
  return Json{{"vertices", c.vertex_ids()}, {"faces", c.face_lists()}};
}

CellComplex mesh_from_json(const Json& j) {
  return checked([&] {
    const auto ids = field(j, "vertices").get<std::vector<int>>();
    const auto faces = field(j, "faces").get<std::vector<std::vector<int>>>();
    return CellComplex::build(ids, faces);
  });
}

Json pattern_to_json(const PlanarPattern& p) {
  Json g = Json::array();
  for (const Complex& z : p.g()) g.push_back({z.real(), z.imag()});
  return Json{{"mesh", mesh_to_json(p.mesh())}, {"g", g}};
}

std::shared_ptr<const PlanarPattern> pattern_from_json(const Json& j) {
  auto mesh = std::make_shared<const CellComplex>(mesh_from_json(field(j, "mesh")));
  std::vector<Complex> g = checked([&] {
    std::vector<Complex> out;
    for (const auto& z : field(j, "g")) out.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    return out;
  });
  if (static_cast<int>(g.size()) != mesh->num_vertices())
    throw Error(ErrorCode::InvalidInput, "pattern needs one g value per vertex");
  return std::make_shared<const PlanarPattern>(mesh, std::move(g));
}

Json quaddiff_to_json(const CellComplex& c, const std::vector<double>& q) {
  Json edges = Json::array(), vals = Json::array();
  for (int e = 0; e < c.num_edges(); ++e) {
    if (c.is_boundary_edge(e)) continue;
    const int h = CellComplex::edge_halfedge(e);
    edges.push_back({c.vertex_id(c.origin(h)), c.vertex_id(c.dest(h))});
    vals.push_back(q[e]);
  }
  return Json{{"edges", edges}, {"q", vals}};
}

std::vector<std::vector<double>> quaddiffs_from_json(const CellComplex& c, const Json& j) {
  auto one = [&](const Json& o) {
    return checked([&] {
      const auto edges = field(o, "edges").get<std::vector<std::array<int, 2>>>();
      const auto q = field(o, "q").get<std::vector<double>>();
      if (edges.size() != q.size()) throw Error(ErrorCode::InvalidInput, "edges and q differ in length");
      std::vector<double> out(c.num_edges(), 0.0);
      for (std::size_t k = 0; k < edges.size(); ++k) {
        const int a = c.index_of(edges[k][0]), b = c.index_of(edges[k][1]);
        const int h = (a == kNone || b == kNone) ? kNone : c.find_halfedge(a, b);
        if (h == kNone)
          throw Error(ErrorCode::InvalidInput, "quad differential names a missing edge " +
                                                   std::to_string(edges[k][0]) + "-" + std::to_string(edges[k][1]));
        out[CellComplex::edge_of(h)] = q[k];
      }
      return out;
    });
  };
  std::vector<std::vector<double>> out;
  if (j.is_array())
    for (const auto& o : j) out.push_back(one(o));
  else
    out.push_back(one(j));
  return out;
}

Json surface_to_json(const PolySurface& s) {
  const CellComplex& c = s.mesh();
  Json f = Json::array();
  for (const auto& x : s.positions()) f.push_back(vec3(x));
  Json j{{"dual_mesh", mesh_to_json(c)}, {"f", f}};
  if (s.has_prescribed_normals()) {
    Json n = Json::array();
    for (int k = 0; k < c.num_faces(); ++k) n.push_back(vec3(s.normal(k)));
    j["normals"] = n;
  }
  if (!s.ghosts().empty()) {
    Json gs = Json::array();
    for (const auto& g : s.ghosts()) {
      std::vector<int> ids;
      for (int v : g.vertices) ids.push_back(c.vertex_id(v));
      gs.push_back({{"normal", vec3(g.normal)}, {"vertices", ids}});
    }
    j["ghosts"] = gs;
  }
  return j;
}

PolySurface surface_from_json(const Json& j) {
  auto mesh = std::make_shared<const CellComplex>(mesh_from_json(field(j, "dual_mesh")));
  std::vector<Vec3> f = points_from(field(j, "f"));
  std::optional<std::vector<Vec3>> normals;
  if (j.contains("normals")) normals = points_from(j.at("normals"));
  std::vector<GhostFace> ghosts;
  if (j.contains("ghosts")) {
    checked([&] {
      for (const auto& g : j.at("ghosts")) {
        GhostFace gf{vec3_from(field(g, "normal")), {}};
        for (int id : field(g, "vertices").get<std::vector<int>>()) {
          const int v = mesh->index_of(id);
          if (v == kNone) throw Error(ErrorCode::InvalidInput, "ghost names unknown vertex " + std::to_string(id));
          gf.vertices.push_back(v);
        }
        ghosts.push_back(std::move(gf));
      }
      return 0;
    });
  }
  if (!normals && ghosts.empty()) return PolySurface(mesh, std::move(f));
  return PolySurface(mesh, std::move(f), std::move(normals), std::move(ghosts));
}

Json quadnet_to_json(const QuadNet& net) {
  Json f = Json::array();
  for (const auto& x : net.f) f.push_back(vec3(x));
  Json j{{"rows", net.rows}, {"cols", net.cols}, {"f", f}};
  if (net.factors) {
    j["alpha_h"] = net.factors->alpha_h;
    j["alpha_v"] = net.factors->alpha_v;
  }
  if (!net.mask.empty()) {
    std::vector<int> m(net.mask.begin(), net.mask.end());
    j["mask"] = m;
  }
  return j;
}

QuadNet quadnet_from_json(const Json& j) {
  return checked([&] {
    QuadNet net;
    net.rows = field(j, "rows").get<int>();
    net.cols = field(j, "cols").get<int>();
    if (net.rows < 2 || net.cols < 2) throw Error(ErrorCode::InvalidInput, "quad net must be at least 2 x 2");
    net.f = points_from(field(j, "f"));
    if (static_cast<int>(net.f.size()) != net.rows * net.cols)
      throw Error(ErrorCode::InvalidInput, "quad net needs rows * cols points");
    if (j.contains("alpha_h") && j.contains("alpha_v"))
      net.factors = IsoFactors{j.at("alpha_h").get<std::vector<double>>(), j.at("alpha_v").get<std::vector<double>>()};
    if (j.contains("mask")) {
      for (int b : j.at("mask").get<std::vector<int>>()) net.mask.push_back(b != 0);
      if (net.mask.size() != net.f.size()) throw Error(ErrorCode::InvalidInput, "mask size mismatch");
    }
    return net;
  });
}

std::string surface_obj(const PolySurface& s) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& x : s.positions()) out << "v " << x.x() << ' ' << x.y() << ' ' << x.z() << '\n';
  const CellComplex& c = s.mesh();
  for (int f = 0; f < c.num_faces(); ++f) {
    out << 'f';
    for (int v : c.face_vertices(f)) out << ' ' << v + 1;
    out << '\n';
  }
  return out.str();
}

std::string quadnet_obj(const QuadNet& net) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& x : net.f) out << "v " << x.x() << ' ' << x.y() << ' ' << x.z() << '\n';
  for (int n = 0; n + 1 < net.rows; ++n)
    for (int m = 0; m + 1 < net.cols; ++m)
      if (net.has_quad(m, n))
        out << "f " << net.index(m, n) + 1 << ' ' << net.index(m + 1, n) + 1 << ' ' << net.index(m + 1, n + 1) + 1
            << ' ' << net.index(m, n + 1) + 1 << '\n';
  return out.str();
}

std::string pattern_svg(const PlanarPattern& p) {
  const CellComplex& c = p.mesh();
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const Complex& z : p.g()) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  }
  struct Circle {
    Complex c;
    double r;
  };
  std::vector<Circle> circles;
  for (int f = 0; f < c.num_faces(); ++f) {
    const auto vs = c.face_vertices(f);
    const Complex a = p.g(vs[0]), b = p.g(vs[1]), d = p.g(vs[2]);
    // circumcenter of a, b, d
    const Complex bb = b - a, dd = d - a;
    const double den = 2.0 * (bb.real() * dd.imag() - bb.imag() * dd.real());
    if (den == 0.0) continue;
    const Complex ctr =
        a + Complex((dd.imag() * std::norm(bb) - bb.imag() * std::norm(dd)) / den,
                    (bb.real() * std::norm(dd) - dd.real() * std::norm(bb)) / den);
    const double r = std::abs(ctr - a);
    circles.push_back({ctr, r});
    x0 = std::min(x0, ctr.real() - r);
    x1 = std::max(x1, ctr.real() + r);
    y0 = std::min(y0, ctr.imag() - r);
    y1 = std::max(y1, ctr.imag() + r);
  }
  const double w = std::max(x1 - x0, 1e-12), h = std::max(y1 - y0, 1e-12);
  const double pad = 0.05 * std::max(w, h);
  const double stroke = 0.003 * std::max(w, h);
  std::ostringstream out;
  out.precision(10);
  // y is flipped so the picture has the usual orientation
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << x0 - pad << ' ' << -y1 - pad << ' '
      << w + 2 * pad << ' ' << h + 2 * pad << "\">\n";
  out << "<g fill=\"none\" stroke=\"#4a7ab5\" stroke-width=\"" << stroke << "\">\n";
  for (const auto& cc : circles)
    out << "<circle cx=\"" << cc.c.real() << "\" cy=\"" << -cc.c.imag() << "\" r=\"" << cc.r << "\"/>\n";
  out << "</g>\n<g stroke=\"#222\" stroke-width=\"" << stroke << "\">\n";
  for (int e = 0; e < c.num_edges(); ++e) {
    const int hh = CellComplex::edge_halfedge(e);
    const Complex a = p.g(c.origin(hh)), b = p.g(c.dest(hh));
    out << "<line x1=\"" << a.real() << "\" y1=\"" << -a.imag() << "\" x2=\"" << b.real() << "\" y2=\""
        << -b.imag() << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace dmin::io
