#include <doctest.h>

#include "dmin/error.hpp"
#include "dmin/fixtures.hpp"
#include "dmin/hqd.hpp"
#include "dmin/pattern.hpp"
#include "support.hpp"

using namespace dmin;
using doctest::Approx;

namespace {

std::shared_ptr<const PlanarPattern> quad_pattern(Complex gi, Complex gj, Complex gk, Complex gl) {
  // two triangles ijk and jil sharing the edge ij
  auto c = std::make_shared<const CellComplex>(
      CellComplex::build(std::vector<std::vector<int>>{{0, 1, 2}, {1, 0, 3}}));
  return std::make_shared<const PlanarPattern>(c, std::vector<Complex>{gi, gj, gk, gl});
}

int interior_edge(const CellComplex& c) {
  for (int e = 0; e < c.num_edges(); ++e)
    if (!c.is_boundary_edge(e)) return e;
  return kNone;
}

}  // namespace

TEST_CASE("cross ratio of orthogonal circles is 2i") {
  const Complex x = cross_ratio(0.0, 1.0, Complex(1, 1), Complex(0, -1));
  CHECK(std::abs(x - Complex(0, 2)) < 1e-15);
  CHECK(intersection_angle(x) == Approx(kPi / 2));
  auto p = quad_pattern(0.0, 1.0, Complex(1, 1), Complex(0, -1));
  const int e = interior_edge(p->mesh());
  CHECK(std::abs(p->cross_ratio(e) - Complex(0, 2)) < 1e-15);
  CHECK(std::abs(cross_ratio(*p, e) - Complex(0, 2)) < 1e-15);
  CHECK(delaunay_edges(*p)[e]);
}

TEST_CASE("concyclic square corners give X = -2, not Delaunay") {
  const Complex x = cross_ratio(0.0, 1.0, Complex(1, 1), Complex(0, 1));
  CHECK(std::abs(x - Complex(-2, 0)) < 1e-15);
  auto p = quad_pattern(0.0, 1.0, Complex(1, 1), Complex(0, 1));
  CHECK(p->angle(interior_edge(p->mesh())) == Approx(kPi));
  CHECK_FALSE(is_delaunay(*p));
  CHECK(intersection_angle(Complex(3.0, 0.0)) == 0.0);
}

TEST_CASE("cross ratio is symmetric in the edge orientation") {
  auto p = fixtures::random_delaunay(15, 4);
  const auto& c = p->mesh();
  for (int e = 0; e < c.num_edges(); ++e) {
    if (c.is_boundary_edge(e)) continue;
    const auto q1 = edge_quad(c, 2 * e), q2 = edge_quad(c, 2 * e + 1);
    const Complex a = cross_ratio(p->g(q1.i), p->g(q1.j), p->g(q1.k), p->g(q1.l));
    const Complex b = cross_ratio(p->g(q2.i), p->g(q2.j), p->g(q2.k), p->g(q2.l));
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
  }
}

TEST_CASE("cross ratios are Mobius invariant") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = fixtures::random_delaunay(12, 100 + trial);
    const auto m = testing::random_mobius(rng);
    std::vector<Complex> g2;
    for (const Complex& z : p->g()) g2.push_back(m(z));
    PlanarPattern q(p->mesh_ptr(), g2);
    for (int e = 0; e < p->mesh().num_edges(); ++e) {
      if (p->mesh().is_boundary_edge(e)) continue;
      CHECK(std::abs(p->cross_ratio(e) - q.cross_ratio(e)) <= 1e-10 * std::max(1.0, std::abs(p->cross_ratio(e))));
    }
  }
}

TEST_CASE("cross ratio errors") {
  auto c = std::make_shared<const CellComplex>(CellComplex::build(testing::wheel_faces(4)));
  PlanarPattern p(c, {0.0, 1.0, Complex(0, 1), -1.0, Complex(0, -1)});
  int boundary = kNone;
  for (int e = 0; e < c->num_edges(); ++e)
    if (c->is_boundary_edge(e)) boundary = e;
  CHECK_THROWS_AS(cross_ratio(p, boundary), Error);
  CHECK(std::isnan(p.cross_ratio(boundary).real()));
  CHECK_THROWS_AS(PlanarPattern(c, {0.0, 0.0, Complex(0, 1), -1.0, Complex(0, -1)}), Error);
  try {
    PlanarPattern(c, {0.0, 0.0, Complex(0, 1), -1.0, Complex(0, -1)});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateEdge);
  }
}

TEST_CASE("vertex relations on the regular hexagonal wheel") {
  auto p = fixtures::wheel(6, 0);
  const auto r = vertex_relations_residual(*p, 0);
  CHECK(std::abs(r.product) < 1e-14);
  CHECK(std::abs(r.sum) < 1e-14);
  CHECK_THROWS_AS(vertex_relations_residual(*p, 1), Error);
}

TEST_CASE("vertex relations hold on random patterns and fail after perturbation") {
  for (int seed = 0; seed < 10; ++seed) {
    auto p = fixtures::random_delaunay(20, seed);
    const auto& c = p->mesh();
    for (int v = 0; v < c.num_vertices(); ++v) {
      if (!c.is_interior_vertex(v)) continue;
      const auto r = vertex_relations_residual(*p, v);
      CHECK(std::abs(r.product) <= 1e-10 * p->scale());
      CHECK(std::abs(r.sum) <= 1e-10 * p->scale());
    }
  }
  auto p = fixtures::wheel(6, 3);
  std::vector<Complex> x = p->cross_ratios();
  const auto ring = clockwise_ring(p->mesh(), 0);
  x[CellComplex::edge_of(ring[0])] *= 1.1;
  const auto r = vertex_relations_residual(p->mesh(), x, 0);
  CHECK(std::abs(r.product) > 1e-3);
}

TEST_CASE("angle sum at interior vertices of a Delaunay triangulation is 2 pi") {
  auto p = fixtures::random_delaunay(25, 8);
  const auto& c = p->mesh();
  for (int v = 0; v < c.num_vertices(); ++v) {
    if (!c.is_interior_vertex(v)) continue;
    double s = 0.0;
    for (int h : c.outgoing_ccw(v)) s += p->angle(CellComplex::edge_of(h));
    CHECK(s == Approx(2 * kPi).epsilon(1e-10));
  }
}

TEST_CASE("reconstruction from cross ratios") {
  auto p = fixtures::random_delaunay(20, 5);
  const auto& c = p->mesh();
  const auto fv = c.face_vertices(0);
  Anchor a{0, {p->g(fv[0]), p->g(fv[1]), p->g(fv[2])}};
  const auto r = reconstruct_from_cross_ratios(p->mesh_ptr(), p->cross_ratios(), a);
  double err = 0.0;
  for (int v = 0; v < c.num_vertices(); ++v) err = std::max(err, std::abs(r.g(v) - p->g(v)));
  CHECK(err <= 1e-9 * p->scale());

  SUBCASE("Mobius-moved anchor gives the Mobius image") {
    std::mt19937_64 rng(3);
    const auto m = testing::random_mobius(rng);
    Anchor b{0, {m(a.g[0]), m(a.g[1]), m(a.g[2])}};
    const auto s = reconstruct_from_cross_ratios(p->mesh_ptr(), p->cross_ratios(), b);
    for (int v = 0; v < c.num_vertices(); ++v) CHECK(std::abs(s.g(v) - m(p->g(v))) <= 1e-8);
  }
  SUBCASE("perturbed cross ratio is inconsistent") {
    auto w = fixtures::wheel(6, 2);
    std::vector<Complex> x = w->cross_ratios();
    x[CellComplex::edge_of(clockwise_ring(w->mesh(), 0)[2])] *= Complex(1.1, 0.05);
    const auto wv = w->mesh().face_vertices(0);
    Anchor aw{0, {w->g(wv[0]), w->g(wv[1]), w->g(wv[2])}};
    try {
      reconstruct_from_cross_ratios(w->mesh_ptr(), x, aw);
      FAIL("expected InconsistentCrossRatios");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InconsistentCrossRatios);
    }
  }
  SUBCASE("degenerate anchor") {
    Anchor bad{0, {0.0, 0.0, 1.0}};
    CHECK_THROWS_AS(reconstruct_from_cross_ratios(p->mesh_ptr(), p->cross_ratios(), bad), Error);
  }
}

TEST_CASE("stereographic projection") {
  CHECK((inverse_stereographic(0.0) - Vec3(0, 0, -1)).norm() < 1e-15);
  CHECK(std::abs(inverse_stereographic(std::polar(1.0, 0.7)).z()) < 1e-15);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Complex z(u(rng), u(rng));
    if (std::abs(z) > 10.0) z *= 10.0 / std::abs(z);
    const Vec3 n = inverse_stereographic(z);
    CHECK(std::abs(n.norm() - 1.0) < 1e-12);
    worst = std::max(worst, std::abs(stereographic(n) - z));
  }
  CHECK(worst <= 1e-12);
  CHECK_THROWS_AS(stereographic(Vec3(0, 0, 1)), Error);
}

TEST_CASE("tangent residuals") {
  auto p = fixtures::wheel(7, 4);
  const auto& c = p->mesh();
  SUBCASE("zero variation") {
    const std::vector<double> q(c.num_edges(), 0.0);
    const auto r = tangent_residual(*p, q, 0);
    CHECK(r.sum == 0.0);
    CHECK(std::abs(r.weighted) == 0.0);
  }
  SUBCASE("logarithmic derivative of a one-parameter family") {
    // moving the centre; d/dt log X is complex here, so the linearised
    // relations are evaluated directly
    const double h = 1e-6;
    std::vector<Complex> gp = p->g(), gm = p->g();
    gp[0] += Complex(h, 0.3 * h);
    gm[0] -= Complex(h, 0.3 * h);
    PlanarPattern a(p->mesh_ptr(), gp), b(p->mesh_ptr(), gm);
    // complex tangent of the relations: sum of dlogX = 0 and the weighted sum
    Complex sum = 0.0, weighted = 0.0, acc = 0.0, prod = 1.0;
    for (int hh : clockwise_ring(c, 0)) {
      const int e = CellComplex::edge_of(hh);
      const Complex dq = (std::log(a.cross_ratio(e)) - std::log(b.cross_ratio(e))) / (2 * h);
      sum += dq;
      acc += dq;
      prod *= p->cross_ratio(e);
      weighted += acc * prod;
    }
    CHECK(std::abs(sum) <= 1e-5);
    CHECK(std::abs(weighted) <= 1e-5);
  }
  SUBCASE("tangent vectors of the relations are quadratic differentials") {
    // Real solutions of the linearised relations at the centre
    const auto ring = clockwise_ring(c, 0);
    const int k = static_cast<int>(ring.size());
    Eigen::MatrixXd a(3, k);
    Complex prod = 1.0;
    std::vector<Complex> prods;
    for (int h : ring) {
      prod *= p->cross_ratio(CellComplex::edge_of(h));
      prods.push_back(prod);
    }
    for (int j = 0; j < k; ++j) {
      Complex w = 0.0;
      for (int m = j; m < k; ++m) w += prods[m];
      a(0, j) = 1.0;
      a(1, j) = w.real();
      a(2, j) = w.imag();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    const Eigen::MatrixXd ns = lu.kernel();
    REQUIRE(ns.cols() == k - 3);
    for (int col = 0; col < ns.cols(); ++col) {
      std::vector<double> q(c.num_edges(), 0.0);
      for (int j = 0; j < k; ++j) q[CellComplex::edge_of(ring[j])] = ns(j, col);
      const auto t = tangent_residual(*p, q, 0);
      CHECK(std::abs(t.sum) < 1e-12);
      CHECK(std::abs(t.weighted) < 1e-12);
      CHECK(is_hqd(*p, q, 1e-9));
    }
  }
}
