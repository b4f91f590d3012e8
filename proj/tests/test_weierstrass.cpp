#include <doctest.h>

#include "dmin/error.hpp"
#include "dmin/fixtures.hpp"
#include "dmin/weierstrass.hpp"
#include "support.hpp"

using namespace dmin;

namespace {

HoloCurve curve_for(const std::shared_ptr<const PlanarPattern>& p, int index) {
  const auto b = hqd_basis(*p);
  return weierstrass_curve(p, b.basis.at(index).q);
}

Vec3 im_rot(const Vec3c& z, double theta) { return (std::polar(1.0, theta) * z).imag(); }

}  // namespace

TEST_CASE("zero form integrates to a constant") {
  auto p = fixtures::wheel(6, 0);
  const std::vector<double> q(p->mesh().num_edges(), 0.0);
  const Vec3c base(Complex(1, 2), Complex(0, -1), Complex(3, 0));
  const auto curve = integrate(p, to_one_form(*p, q), 2, base);
  for (const auto& f : curve.F) CHECK((f - base).norm() == 0.0);
}

TEST_CASE("integration matches the form on every dual edge") {
  auto p = fixtures::wheel(6, 1);
  const auto b = hqd_basis(*p);
  for (const auto& q : b.basis) {
    const auto form = to_one_form(*p, q.q);
    const auto curve = integrate(p, form);
    CHECK(path_residual(curve, form) <= 1e-12 * form.magnitude());
  }
}

TEST_CASE("breadth-first and depth-first trees agree") {
  auto p = fixtures::hex_disk(2, 0.15, 7);
  const auto b = hqd_basis(*p);
  for (const auto& q : b.basis) {
    const auto form = to_one_form(*p, q.q);
    const auto a = integrate(p, form, 0, Vec3c::Zero(), TreeOrder::BreadthFirst);
    const auto d = integrate(p, form, 0, Vec3c::Zero(), TreeOrder::DepthFirst);
    double sc = 0.0, diff = 0.0;
    for (std::size_t k = 0; k < a.F.size(); ++k) {
      sc = std::max(sc, a.F[k].norm());
      diff = std::max(diff, (a.F[k] - d.F[k]).norm());
    }
    CHECK(diff <= 1e-10 * sc);
  }
}

TEST_CASE("non-closed form is rejected with the offending vertex") {
  auto p = fixtures::wheel(6, 2);
  std::vector<double> q(p->mesh().num_edges(), 0.0);
  for (int e = 0; e < p->mesh().num_edges(); ++e)
    if (!p->mesh().is_boundary_edge(e)) q[e] = 1.0;
  try {
    integrate(p, to_one_form(*p, q));
    FAIL("expected ClosednessViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ClosednessViolation);
    CHECK(std::string(e.what()).find("vertex 0") != std::string::npos);
  }
}

TEST_CASE("annulus is not simply connected") {
  std::vector<std::vector<int>> ring;
  std::vector<Complex> g;
  for (int k = 0; k < 6; ++k) {
    g.push_back(std::polar(1.0, 2 * kPi * k / 6));
  }
  for (int k = 0; k < 6; ++k) g.push_back(std::polar(2.0, 2 * kPi * (k + 0.5) / 6));
  for (int k = 0; k < 6; ++k) {
    const int a = k, b = (k + 1) % 6, A = 6 + k;
    ring.push_back({a, A, b});
    ring.push_back({b, A, 6 + (k + 1) % 6});
  }
  auto p = std::make_shared<const PlanarPattern>(std::make_shared<const CellComplex>(CellComplex::build(ring)), g);
  const std::vector<double> q(p->mesh().num_edges(), 0.0);
  try {
    integrate(p, to_one_form(*p, q));
    FAIL("expected NotSimplyConnected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSimplyConnected);
  }
}

TEST_CASE("theta = 0 surface on a wheel is minimal with the Gauss map of g") {
  for (int k = 5; k <= 8; ++k) {
    auto p = fixtures::wheel(k, 10 + k);
    const auto b = hqd_basis(*p);
    for (const auto& q : b.basis) {
      const auto curve = weierstrass_curve(p, q.q);
      const auto s = minimal_surface(curve, 0.0);
      REQUIRE(s.num_faces() == 1);
      CHECK(s.is_interior_face(0));
      CHECK(std::abs(mean_curvature(s, 0)) <= 1e-9 * s.max_edge_length());
      CHECK(s.planarity(0) <= 1e-9 * s.scale());
      // Newell normal of the realised face against sigma^-1(g_centre)
      const Vec3 n = newell_vector(s.face_positions(0)).normalized();
      const Vec3 want = inverse_stereographic(p->g(0));
      CHECK(std::min((n - want).norm(), (n + want).norm()) <= 1e-9);
    }
  }
}

TEST_CASE("theta = pi/2 surface has planar vertex stars") {
  auto p = fixtures::hex_disk(2, 0.1, 4);
  const auto curve = curve_for(p, 0);
  double sc = 0.0;
  for (const auto& f : curve.F) sc = std::max(sc, f.norm());
  for (double r : star_planarity(curve, kPi / 2)) CHECK(r <= 1e-9 * sc);
}

TEST_CASE("associated family identities") {
  auto p = fixtures::wheel(7, 3);
  const auto curve = curve_for(p, 1);
  const auto f0 = minimal_surface(curve, 0.3);
  const auto f1 = minimal_surface(curve, 0.3 + kPi);
  for (std::size_t k = 0; k < f0.positions().size(); ++k)
    CHECK((f0.position(k) + f1.position(k)).norm() <= 1e-14 * std::max(1.0, f0.position(k).norm()));

  const auto [a, b] = conjugate_pair(curve);
  for (std::size_t k = 0; k < curve.F.size(); ++k) {
    CHECK((a.position(k) - curve.F[k].imag()).norm() <= 1e-15 * std::max(1.0, curve.F[k].norm()));
    CHECK((b.position(k) - curve.F[k].real()).norm() <= 1e-14 * std::max(1.0, curve.F[k].norm()));
  }
  // |edge(f_theta)|^2 + |edge(f_theta + pi/2)|^2 = |w|^2
  const auto& c = p->mesh();
  for (int e = 0; e < c.num_edges(); ++e) {
    if (c.is_boundary_edge(e)) continue;
    const int h = CellComplex::edge_halfedge(e);
    const Vec3c w = curve.F[c.face(h)] - curve.F[c.face(CellComplex::twin(h))];
    for (int j = 0; j < 8; ++j) {
      const double t = 0.4 * j;
      const double s = im_rot(w, t).squaredNorm() + im_rot(w, t + kPi / 2).squaredNorm();
      CHECK(s == doctest::Approx(w.squaredNorm()).epsilon(1e-12));
    }
  }
}

TEST_CASE("Gauss-map sign is constant on a larger disk") {
  auto p = fixtures::hex_disk(3, 0.12, 9);
  const auto curve = curve_for(p, 2);
  const auto s = minimal_surface(curve, 0.0);
  const auto d = dual(p->mesh());
  const double sign = gauss_map_sign(curve);
  for (int f = 0; f < s.num_faces(); ++f) {
    const Vec3 n = newell_vector(s.face_positions(f)).normalized();
    const Vec3 want = sign * inverse_stereographic(p->g(d.map.dual_face_to_vertex[f]));
    CHECK(std::atan2(n.cross(want).norm(), n.dot(want)) <= 1e-8);
  }
}
