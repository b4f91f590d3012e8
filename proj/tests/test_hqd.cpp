#include <doctest.h>

#include "dmin/error.hpp"
#include "dmin/fixtures.hpp"
#include "dmin/hqd.hpp"
#include "support.hpp"

using namespace dmin;

namespace {

double max_residual(const PlanarPattern& p, const std::vector<double>& q) {
  double m = 0.0;
  for (const auto& r : validate_hqd(p, q)) m = std::max({m, std::abs(r.sum), std::abs(r.weighted)});
  return m;
}

// Dense constraint matrix over every edge, built directly from the
// defining sums: rows (sum q, Re sum q/(gj-gi), Im sum q/(gj-gi)).
Eigen::MatrixXd dense_system(const PlanarPattern& p) {
  const auto& c = p.mesh();
  std::vector<int> interior;
  for (int v = 0; v < c.num_vertices(); ++v)
    if (c.is_interior_vertex(v)) interior.push_back(v);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3 * static_cast<int>(interior.size()), c.num_edges());
  for (int r = 0; r < static_cast<int>(interior.size()); ++r) {
    const int v = interior[r];
    for (int e = 0; e < c.num_edges(); ++e) {
      const int x = c.origin(2 * e), y = c.origin(2 * e + 1);
      if (x != v && y != v) continue;
      const int other = x == v ? y : x;
      const Complex w = 1.0 / (p.g(other) - p.g(v));
      a(3 * r, e) = 1.0;
      a(3 * r + 1, e) = w.real();
      a(3 * r + 2, e) = w.imag();
    }
  }
  return a;
}

}  // namespace

TEST_CASE("zero differential has zero residuals") {
  auto p = fixtures::wheel(6, 0);
  const std::vector<double> q(p->mesh().num_edges(), 0.0);
  CHECK(max_residual(*p, q) == 0.0);
  const auto form = to_one_form(*p, q);
  CHECK(form.magnitude() == 0.0);
}

TEST_CASE("q = 1 on the spokes of the regular wheel violates the sum") {
  auto p = fixtures::wheel(6, 0);
  std::vector<double> q(p->mesh().num_edges(), 0.0);
  for (int e = 0; e < p->mesh().num_edges(); ++e)
    if (!p->mesh().is_boundary_edge(e)) q[e] = 1.0;
  const auto r = hqd_residual(*p, q, 0);
  CHECK(r.sum == doctest::Approx(6.0));
  CHECK_FALSE(is_hqd(*p, q));
  CHECK_THROWS_AS(hqd_residual(*p, q, 1), Error);
}

TEST_CASE("wheel basis dimension matches a dense rank oracle") {
  for (int k = 4; k <= 9; ++k) {
    auto p = fixtures::wheel(k, k);
    const auto b = hqd_basis(*p);
    const Eigen::MatrixXd a = dense_system(*p);  // 3 x |E|
    int touching = 0;
    for (int e = 0; e < a.cols(); ++e)
      if (a.col(e).cwiseAbs().maxCoeff() > 0.0) ++touching;
    CHECK(touching == k);
    CHECK(b.dimension() == touching - testing::dense_rank(a));
    CHECK(b.rank == testing::dense_rank(a));
    if (k == 6) CHECK(b.dimension() == 3);
    for (const auto& q : b.basis) {
      double mx = 0.0;
      for (double x : q.q) mx = std::max(mx, std::abs(x));
      CHECK(mx == doctest::Approx(1.0));
      CHECK(max_residual(*p, q.q) <= 1e-10);
    }
  }
}

TEST_CASE("basis vectors are independent and span the dense nullspace") {
  auto p = fixtures::hex_disk(2, 0.15, 3);
  const auto b = hqd_basis(*p);
  const Eigen::MatrixXd a = dense_system(*p);
  const auto& c = p->mesh();
  int interior_edges = 0;
  for (int e = 0; e < c.num_edges(); ++e) interior_edges += !c.is_boundary_edge(e);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  // boundary edges are not unknowns; they sit in no row of a
  int boundary_edges = c.num_edges() - interior_edges;
  CHECK(b.dimension() == static_cast<int>(lu.dimensionOfKernel()) - boundary_edges);
  Eigen::MatrixXd m(c.num_edges(), b.dimension());
  for (int k = 0; k < b.dimension(); ++k)
    for (int e = 0; e < c.num_edges(); ++e) m(e, k) = b.basis[k].q[e];
  CHECK(testing::dense_rank(m) == b.dimension());
  CHECK((a * m).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("pattern without interior vertices: coordinate basis") {
  auto c = std::make_shared<const CellComplex>(
      CellComplex::build(std::vector<std::vector<int>>{{0, 1, 2}, {0, 2, 3}}));
  PlanarPattern p(c, {0.0, 1.0, Complex(1, 1), Complex(0, 1)});
  const auto b = hqd_basis(p);
  CHECK(b.empty_interior);
  CHECK(b.dimension() == 1);  // the single interior edge 0-2
}

TEST_CASE("two disjoint wheels: direct sum") {
  auto w1 = fixtures::wheel(5, 1), w2 = fixtures::wheel(7, 2);
  auto faces = w1->mesh().face_lists();
  for (auto f : w2->mesh().face_lists()) {
    for (int& v : f) v += 6;
    faces.push_back(f);
  }
  std::vector<Complex> g = w1->g();
  for (const Complex& z : w2->g()) g.push_back(z + 5.0);
  PlanarPattern p(std::make_shared<const CellComplex>(CellComplex::build(faces)), g);
  CHECK(hqd_basis(p).dimension() == hqd_basis(*w1).dimension() + hqd_basis(*w2).dimension());
}

TEST_CASE("residual is linear in q") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto p = fixtures::random_delaunay(18, 2);
  const int ne = p->mesh().num_edges();
  std::vector<double> q1(ne), q2(ne), q3(ne);
  for (int e = 0; e < ne; ++e) {
    q1[e] = u(rng);
    q2[e] = u(rng);
    q3[e] = 2.5 * q1[e] - 0.75 * q2[e];
  }
  const auto r1 = validate_hqd(*p, q1), r2 = validate_hqd(*p, q2), r3 = validate_hqd(*p, q3);
  for (std::size_t v = 0; v < r1.size(); ++v) {
    CHECK(std::abs(r3[v].sum - (2.5 * r1[v].sum - 0.75 * r2[v].sum)) < 1e-13);
    CHECK(std::abs(r3[v].weighted - (2.5 * r1[v].weighted - 0.75 * r2[v].weighted)) < 1e-12);
  }
}

TEST_CASE("one-form: antisymmetry and closedness of basis vectors") {
  auto p = fixtures::wheel(6, 5);
  const auto b = hqd_basis(*p);
  for (const auto& q : b.basis) {
    const auto form = to_one_form(*p, q.q);
    for (int h = 0; h < p->mesh().num_halfedges(); ++h)
      CHECK((form.at(h) + form.at(CellComplex::twin(h))).norm() == 0.0);
    CHECK(closedness_residuals(form)[0] <= 1e-10);
    CHECK(is_closed(form));
  }
}

TEST_CASE("one-form values follow the closed formula") {
  const Complex gi(0.3, -0.2), gj(1.1, 0.4);
  const Vec3c w = weierstrass_term(gi, gj, 2.0);
  const Complex s = 2.0 / (gj - gi);
  CHECK(std::abs(w(0) - s * (1.0 - gi * gj)) < 1e-15);
  CHECK(std::abs(w(1) - s * Complex(0, 1) * (1.0 + gi * gj)) < 1e-15);
  CHECK(std::abs(w(2) - s * (gi + gj)) < 1e-15);
}

TEST_CASE("Im w is orthogonal to both Gauss-map normals") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const Complex gi(u(rng), u(rng)), gj(u(rng), u(rng));
    const Vec3c w = weierstrass_term(gi, gj, 1.0);
    const Vec3 im = w.imag();
    CHECK(std::abs(im.dot(inverse_stereographic(gi))) <= 1e-12 * std::max(1.0, im.norm()));
    CHECK(std::abs(im.dot(inverse_stereographic(gj))) <= 1e-12 * std::max(1.0, im.norm()));
  }
}

TEST_CASE("hqd and closedness agree on random q") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto p = fixtures::wheel(8, 6);
  const auto b = hqd_basis(*p);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> q(p->mesh().num_edges(), 0.0);
    if (trial % 2 == 0) {
      for (const auto& bv : b.basis) {
        const double a = u(rng);
        for (std::size_t e = 0; e < q.size(); ++e) q[e] += a * bv.q[e];
      }
    } else {
      for (int e : b.unknown_edges) q[e] = u(rng);
    }
    CHECK(is_hqd(*p, q) == is_closed(to_one_form(*p, q)));
  }
}
