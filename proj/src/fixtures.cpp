#include "dmin/fixtures.hpp"

#include <cmath>
#include <random>

#include "dmin/error.hpp"
#include "dmin/io.hpp"

namespace dmin::fixtures {

namespace {

double orient(Complex a, Complex b, Complex c) {
  const Complex u = b - a, v = c - a;
  return u.real() * v.imag() - u.imag() * v.real();
}

// > 0 when d lies strictly inside the circumcircle of the ccw triangle abc.
double in_circle(Complex a, Complex b, Complex c, Complex d) {
  const Complex ad = a - d, bd = b - d, cd = c - d;
  return std::norm(ad) * orient(0.0, bd, cd) - std::norm(bd) * orient(0.0, ad, cd) +
         std::norm(cd) * orient(0.0, ad, bd);
}

std::shared_ptr<const PlanarPattern> make_pattern(const std::vector<std::vector<int>>& faces,
                                                  std::vector<Complex> g) {
  auto mesh = std::make_shared<const CellComplex>(CellComplex::build(faces));
  return std::make_shared<const PlanarPattern>(mesh, std::move(g));
}

}  // namespace

std::shared_ptr<const PlanarPattern> wheel(int k, std::uint64_t seed) {
  if (k < 3) throw Error(ErrorCode::InvalidInput, "a wheel needs at least 3 spokes");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double jitter = seed == 0 ? 0.0 : 1.0;
  std::vector<Complex> g{Complex(0.1 * jitter * u(rng), 0.1 * jitter * u(rng))};
  std::vector<std::vector<int>> faces;
  for (int j = 0; j < k; ++j) {
    const double a = 2.0 * kPi * (j + 0.25 * jitter * u(rng)) / k;
    const double r = 1.0 + 0.2 * jitter * u(rng);
    g.push_back(std::polar(r, a));
    faces.push_back({0, 1 + j, 1 + (j + 1) % k});
  }
  return make_pattern(faces, std::move(g));
}

std::shared_ptr<const PlanarPattern> hex_disk(int rings, double jitter, std::uint64_t seed) {
  if (rings < 1) throw Error(ErrorCode::InvalidInput, "hex disk needs at least one ring");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Complex w = std::polar(1.0, kPi / 3);
  auto inside = [&](int a, int b) { return std::max({std::abs(a), std::abs(b), std::abs(a + b)}) <= rings; };
  const int side = 2 * rings + 1;
  std::vector<int> id(side * side, kNone);
  std::vector<Complex> g;
  for (int b = -rings; b <= rings; ++b)
    for (int a = -rings; a <= rings; ++a) {
      if (!inside(a, b)) continue;
      id[(b + rings) * side + a + rings] = static_cast<int>(g.size());
      g.push_back(double(a) + double(b) * w + jitter * Complex(u(rng), u(rng)));
    }
  auto at = [&](int a, int b) { return inside(a, b) ? id[(b + rings) * side + a + rings] : kNone; };
  std::vector<std::vector<int>> faces;
  for (int b = -rings; b <= rings; ++b)
    for (int a = -rings; a <= rings; ++a) {
      const int p = at(a, b), q = at(a + 1, b), r = at(a, b + 1), s = at(a + 1, b + 1);
      if (p != kNone && q != kNone && r != kNone) faces.push_back({p, q, r});
      if (q != kNone && s != kNone && r != kNone) faces.push_back({q, s, r});
    }
  return make_pattern(faces, std::move(g));
}

std::shared_ptr<const PlanarPattern> random_delaunay(int n, std::uint64_t seed) {
  if (n < 3) throw Error(ErrorCode::InvalidInput, "need at least 3 points");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> g;
  while (static_cast<int>(g.size()) < n) {
    const Complex z(u(rng), u(rng));
    if (std::norm(z) <= 1.0) g.push_back(z);
  }
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        int a = i, b = j, c = k;
        const double o = orient(g[a], g[b], g[c]);
        if (std::abs(o) < 1e-12) continue;
        if (o < 0) std::swap(b, c);
        bool empty = true;
        for (int d = 0; d < n && empty; ++d)
          if (d != a && d != b && d != c && in_circle(g[a], g[b], g[c], g[d]) > 0.0) empty = false;
        if (empty) faces.push_back({a, b, c});
      }
  return make_pattern(faces, std::move(g));
}

PolySurface cube() {
  std::vector<Vec3> f;
  for (int k = 0; k < 8; ++k) f.emplace_back((k & 1) ? 0.5 : -0.5, (k & 2) ? 0.5 : -0.5, (k & 4) ? 0.5 : -0.5);
  const std::vector<std::vector<int>> faces{{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4},
                                            {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
  return PolySurface(std::make_shared<const CellComplex>(CellComplex::build(faces)), std::move(f));
}

PolySurface tetra() {
  const double s = 1.0 / (2.0 * std::sqrt(2.0));
  std::vector<Vec3> f{s * Vec3(1, 1, 1), s * Vec3(1, -1, -1), s * Vec3(-1, 1, -1), s * Vec3(-1, -1, 1)};
  const std::vector<std::vector<int>> faces{{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return PolySurface(std::make_shared<const CellComplex>(CellComplex::build(faces)), std::move(f));
}

PolySurface random_trivalent(int n, std::uint64_t seed) {
  if (n < 4) throw Error(ErrorCode::InvalidInput, "need at least 4 planes");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> height(0.8, 1.2);
  std::vector<Vec3> p;
  std::vector<std::vector<int>> hull;
  // Retry until the hull uses every point with no near-coplanar quadruple.
  for (int attempt = 0; attempt < 100; ++attempt) {
    p.clear();
    hull.clear();
    for (int k = 0; k < n; ++k) p.push_back(Vec3(gauss(rng), gauss(rng), gauss(rng)).normalized());
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j)
        for (int k = j + 1; k < n && ok; ++k) {
          const Vec3 nrm = (p[j] - p[i]).cross(p[k] - p[i]);
          int pos = 0, neg = 0;
          for (int d = 0; d < n; ++d) {
            if (d == i || d == j || d == k) continue;
            const double s = (p[d] - p[i]).dot(nrm);
            if (std::abs(s) < 1e-6) ok = false;
            (s > 0 ? pos : neg)++;
          }
          if (pos == 0) hull.push_back({i, j, k});
          else if (neg == 0) hull.push_back({i, k, j});
        }
    if (ok && static_cast<int>(hull.size()) == 2 * n - 4) break;
  }
  const CellComplex primal = CellComplex::build(hull);
  DualResult d = dual(primal, true);
  auto mesh = std::make_shared<const CellComplex>(std::move(d.complex));
  std::vector<Vec3> normals(mesh->num_faces());
  for (int f = 0; f < mesh->num_faces(); ++f) normals[f] = p[primal.vertex_id(d.map.dual_face_to_vertex[f])];
  // Large height changes can alter the combinatorics of the plane
  // arrangement; redraw until every face polygon is convex and agrees with
  // its plane normal.
  auto convex = [&](const PolySurface& s) {
    for (int f = 0; f < s.num_faces(); ++f) {
      const auto x = s.face_positions(f);
      for (std::size_t k = 0; k < x.size(); ++k) {
        const Vec3& a = x[k];
        const Vec3& b = x[(k + 1) % x.size()];
        const Vec3& c = x[(k + 2) % x.size()];
        if ((b - a).cross(c - b).dot(normals[f]) <= 0.0) return false;
      }
    }
    return true;
  };
  std::vector<double> heights(mesh->num_faces());
  for (int attempt = 0;; ++attempt) {
    for (double& h : heights) h = attempt < 100 ? height(rng) : 1.0;
    PolySurface s = surface_from_planes(mesh, normals, heights, {});
    if (attempt >= 100 || convex(s)) return s;
  }
}

QuadNet enneper_quad(int size) {
  if (size < 2) throw Error(ErrorCode::InvalidInput, "grid size must be at least 2");
  PlanarGrid g{size, size, {}};
  for (int n = 0; n < size; ++n)
    for (int m = 0; m < size; ++m) g.g.emplace_back(m, n);
  IsoFactors fac{std::vector<double>(size - 1, 1.0), std::vector<double>(size - 1, -1.0)};
  return quad_weierstrass(g, fac);
}

nlohmann::json generate(const std::string& kind, int size, std::uint64_t seed) {
  if (kind.rfind("wheel-", 0) == 0) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(kind.substr(6), &used);
      if (used != kind.size() - 6) k = 0;
    } catch (const std::exception&) {
    }
    if (k < 3) throw Error(ErrorCode::UnknownKind, "unknown fixture kind " + kind);
    return io::pattern_to_json(*wheel(k, seed));
  }
  if (kind == "random-delaunay") return io::pattern_to_json(*random_delaunay(size > 0 ? size : 20, seed));
  if (kind == "hex-disk") return io::pattern_to_json(*hex_disk(size > 0 ? size : 2, seed == 0 ? 0.0 : 0.15, seed));
  if (kind == "cube") return io::surface_to_json(cube());
  if (kind == "tetra") return io::surface_to_json(tetra());
  if (kind == "random-trivalent") return io::surface_to_json(random_trivalent(size > 0 ? size : 12, seed));
  if (kind == "enneper-quad") return io::quadnet_to_json(enneper_quad(size > 0 ? size : 9));
  throw Error(ErrorCode::UnknownKind, "unknown fixture kind " + kind);
}

}  // namespace dmin::fixtures
