#include <doctest.h>

#include "dmin/fixtures.hpp"
#include "dmin/kernels.hpp"
#include "dmin/weierstrass.hpp"

using namespace dmin;

namespace {

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || std::abs(a - b) <= 1e-14 * std::max(1.0, std::abs(a)); }
bool same(Complex a, Complex b) { return same(a.real(), b.real()) && same(a.imag(), b.imag()); }

}  // namespace

TEST_CASE("parallel kernels match the serial references") {
  auto p = fixtures::random_delaunay(40, 12);
  const auto x1 = kernels::cross_ratios(p->mesh(), p->g()), x2 = serial::cross_ratios(p->mesh(), p->g());
  REQUIRE(x1.size() == x2.size());
  for (std::size_t k = 0; k < x1.size(); ++k) CHECK(same(x1[k], x2[k]));

  const auto r1 = kernels::vertex_relation_residuals(*p), r2 = serial::vertex_relation_residuals(*p);
  for (std::size_t k = 0; k < r1.size(); ++k) {
    CHECK(same(r1[k].product, r2[k].product));
    CHECK(same(r1[k].sum, r2[k].sum));
  }

  std::vector<double> q(p->mesh().num_edges());
  for (std::size_t e = 0; e < q.size(); ++e) q[e] = std::sin(1.0 + e);
  const auto h1 = kernels::hqd_residuals(*p, q), h2 = serial::hqd_residuals(*p, q);
  for (std::size_t k = 0; k < h1.size(); ++k) {
    CHECK(same(h1[k].sum, h2[k].sum));
    CHECK(same(h1[k].weighted, h2[k].weighted));
  }

  for (const PolySurface& s : {fixtures::random_trivalent(16, 3), fixtures::cube(),
                               minimal_surface(weierstrass_curve(fixtures::hex_disk(2, 0.1, 1),
                                                                 hqd_basis(*fixtures::hex_disk(2, 0.1, 1)).basis[0].q),
                                               0.0)}) {
    const auto a = kernels::mean_curvatures(s), b = serial::mean_curvatures(s);
    const auto ta = kernels::tube_mean_curvatures(s), tb = serial::tube_mean_curvatures(s);
    const auto aa = kernels::signed_areas(s), ab = serial::signed_areas(s);
    for (int f = 0; f < s.num_faces(); ++f) {
      CHECK(same(a[f], b[f]));
      CHECK(same(ta[f], tb[f]));
      CHECK(same(aa[f], ab[f]));
    }
  }
  CHECK(kernels::max_threads() >= 1);
}
