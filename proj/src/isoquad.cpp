#include "dmin/isoquad.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include <Eigen/Dense>

#include "dmin/error.hpp"

namespace dmin {

namespace {

using EdgeFn = std::function<Vec3(int m, int n)>;

struct LatticeIntegral {
  std::vector<Vec3> f;
  double max_quad_gap = 0.0;
  double max_edge_gap = 0.0;
};

// Integrates horizontal edge vectors h(m,n) = f(m+1,n) - f(m,n) and vertical
// v(m,n) = f(m,n+1) - f(m,n) over the present lattice points.
LatticeIntegral integrate_lattice(int rows, int cols, const std::vector<bool>& mask, const EdgeFn& horiz,
                                  const EdgeFn& vert, const Vec3& base) {
  auto present = [&](int m, int n) {
    return m >= 0 && n >= 0 && m < cols && n < rows && (mask.empty() || mask[n * cols + m]);
  };
  LatticeIntegral out;
  out.f.assign(static_cast<std::size_t>(rows) * cols, Vec3::Zero());
  std::vector<bool> reached(out.f.size(), false);
  int start = -1;
  for (int k = 0; k < rows * cols && start < 0; ++k)
    if (present(k % cols, k / cols)) start = k;
  if (start < 0) return out;

  std::queue<int> queue;
  queue.push(start);
  reached[start] = true;
  out.f[start] = base;
  while (!queue.empty()) {
    const int k = queue.front();
    queue.pop();
    const int m = k % cols, n = k / cols;
    const std::array<std::pair<int, int>, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    for (auto [dm, dn] : steps) {
      const int m2 = m + dm, n2 = n + dn;
      if (!present(m2, n2)) continue;
      const int k2 = n2 * cols + m2;
      if (reached[k2]) continue;
      Vec3 step;
      if (dm == 1) step = horiz(m, n);
      else if (dm == -1) step = -horiz(m2, n2);
      else if (dn == 1) step = vert(m, n);
      else step = -vert(m2, n2);
      out.f[k2] = out.f[k] + step;
      reached[k2] = true;
      queue.push(k2);
    }
  }

  for (int n = 0; n < rows; ++n)
    for (int m = 0; m < cols; ++m) {
      if (!present(m, n)) continue;
      const int k = n * cols + m;
      if (present(m + 1, n))
        out.max_edge_gap = std::max(out.max_edge_gap, (out.f[k + 1] - out.f[k] - horiz(m, n)).norm());
      if (present(m, n + 1))
        out.max_edge_gap = std::max(out.max_edge_gap, (out.f[k + cols] - out.f[k] - vert(m, n)).norm());
      if (present(m + 1, n) && present(m + 1, n + 1) && present(m, n + 1)) {
        const Vec3 gap = horiz(m, n) + vert(m + 1, n) - horiz(m, n + 1) - vert(m, n);
        out.max_quad_gap = std::max(out.max_quad_gap, gap.norm());
      }
    }
  return out;
}

double max_norm(const std::vector<Vec3>& f) {
  double s = 0.0;
  for (const auto& x : f) s = std::max(s, x.norm());
  return s;
}

}  // namespace

Quat Quat::inverse() const {
  const double n2 = norm2();
  return (1.0 / n2) * conj();
}

Quat quat_cross_ratio(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const double scale = std::max({(a - b).norm(), (b - c).norm(), (c - d).norm(), (d - a).norm()});
  if ((b - c).norm() <= 1e-14 * scale || (d - a).norm() <= 1e-14 * scale || scale == 0.0)
    throw Error(ErrorCode::DegeneratePair, "cross ratio needs B != C and D != A");
  return Quat::pure(a - b) * Quat::pure(b - c).inverse() * Quat::pure(c - d) * Quat::pure(d - a).inverse();
}

Complex complex_quad_cross_ratio(Complex a, Complex b, Complex c, Complex d) {
  return (a - b) / (b - c) * (c - d) / (d - a);
}

double QuadNet::scale() const {
  if (f.empty()) return 0.0;
  Vec3 lo = f[0], hi = f[0];
  for (int k = 0; k < static_cast<int>(f.size()); ++k) {
    if (!mask.empty() && !mask[k]) continue;
    lo = lo.cwiseMin(f[k]);
    hi = hi.cwiseMax(f[k]);
  }
  return (hi - lo).norm();
}

Quat quad_cross_ratio(const QuadNet& net, int m, int n) {
  return quat_cross_ratio(net.at(m, n), net.at(m + 1, n), net.at(m + 1, n + 1), net.at(m, n + 1));
}

IsoFactors factorize_isothermic(const QuadNet& net, double tol) {
  if (net.rows < 2 || net.cols < 2)
    throw Error(ErrorCode::InvalidInput, "a quad net needs at least 2 x 2 points");
  struct Sample {
    int m, n;
    double log_ratio;
  };
  std::vector<Sample> samples;
  for (int n = 0; n + 1 < net.rows; ++n)
    for (int m = 0; m + 1 < net.cols; ++m) {
      if (!net.has_quad(m, n)) continue;
      const Quat q = quad_cross_ratio(net, m, n);
      const double size = std::sqrt(q.norm2());
      if (q.v.norm() > tol * size)
        throw Error(ErrorCode::NotIsothermic, "quad (" + std::to_string(m) + "," + std::to_string(n) +
                                                  ") has a non-real cross ratio");
      if (!(q.w < 0.0))
        throw Error(ErrorCode::NotIsothermic, "quad (" + std::to_string(m) + "," + std::to_string(n) +
                                                  ") has a positive cross ratio");
      samples.push_back({m, n, std::log(-q.w)});
    }
  if (samples.empty()) throw Error(ErrorCode::NotIsothermic, "the net has no complete quad");

  // log|Q| = a_m - b_n with a_0 = 0: unknowns a_1..a_{C-2}, b_0..b_{R-2}.
  const int na = net.cols - 2, nb = net.rows - 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(samples.size()), na + nb);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(samples.size()));
  double lmax = 0.0;
  for (int r = 0; r < static_cast<int>(samples.size()); ++r) {
    const auto& s = samples[r];
    if (s.m > 0) a(r, s.m - 1) = 1.0;
    a(r, na + s.n) = -1.0;
    rhs(r) = s.log_ratio;
    lmax = std::max(lmax, std::abs(s.log_ratio));
  }
  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(rhs);
  const double residual = (a * x - rhs).cwiseAbs().maxCoeff();
  if (residual > tol * std::max(1.0, lmax))
    throw Error(ErrorCode::NotIsothermic, "cross ratios do not factor into column and row functions");

  IsoFactors out;
  out.alpha_h.assign(net.cols - 1, 1.0);
  out.alpha_v.assign(net.rows - 1, -1.0);
  for (int m = 1; m + 1 < net.cols; ++m) out.alpha_h[m] = std::exp(x(m - 1));
  for (int n = 0; n + 1 < net.rows; ++n) out.alpha_v[n] = -std::exp(x(na + n));
  return out;
}

QuadNet christoffel_dual(const QuadNet& net, const Vec3& base, double tol) {
  const IsoFactors fac = net.factors ? *net.factors : factorize_isothermic(net, tol);
  if (static_cast<int>(fac.alpha_h.size()) != net.cols - 1 ||
      static_cast<int>(fac.alpha_v.size()) != net.rows - 1)
    throw Error(ErrorCode::InvalidInput, "factor arrays do not match the net size");
  auto dual_edge = [](const Vec3& e, double alpha) -> Vec3 {
    const double l2 = e.squaredNorm();
    if (l2 == 0.0) throw Error(ErrorCode::DegenerateEdge, "net edge of zero length");
    return alpha * e / l2;
  };
  const EdgeFn horiz = [&](int m, int n) { return dual_edge(net.at(m + 1, n) - net.at(m, n), fac.alpha_h[m]); };
  const EdgeFn vert = [&](int m, int n) { return dual_edge(net.at(m, n + 1) - net.at(m, n), fac.alpha_v[n]); };
  LatticeIntegral li = integrate_lattice(net.rows, net.cols, net.mask, horiz, vert, base);
  const double sc = std::max(max_norm(li.f), 1e-300);
  if (li.max_quad_gap > tol * sc || li.max_edge_gap > tol * sc)
    throw Error(ErrorCode::QuadClosureViolation, "dual quads do not close; the net is not isothermic");
  QuadNet out{net.rows, net.cols, std::move(li.f), fac, net.mask};
  return out;
}

Vec3 quad_weierstrass_edge(Complex gi, Complex gj, double alpha) {
  const Complex i1(0.0, 1.0);
  const Complex s = 1.0 / (gj - gi);
  return 0.5 * alpha *
         Vec3((s * (1.0 - gi * gj)).real(), (s * i1 * (1.0 + gi * gj)).real(), (s * (gi + gj)).real());
}

QuadNet quad_weierstrass(const PlanarGrid& g, const IsoFactors& factors, const Vec3& base) {
  if (g.rows < 2 || g.cols < 2 || static_cast<int>(g.g.size()) != g.rows * g.cols)
    throw Error(ErrorCode::InvalidInput, "planar grid must be at least 2 x 2 with rows * cols points");
  if (static_cast<int>(factors.alpha_h.size()) != g.cols - 1 ||
      static_cast<int>(factors.alpha_v.size()) != g.rows - 1)
    throw Error(ErrorCode::InvalidInput, "factor arrays do not match the grid size");
  for (int n = 0; n < g.rows; ++n)
    for (int m = 0; m < g.cols; ++m) {
      if ((m + 1 < g.cols && g.at(m + 1, n) == g.at(m, n)) || (n + 1 < g.rows && g.at(m, n + 1) == g.at(m, n)))
        throw Error(ErrorCode::DegenerateEdge,
                    "g collapses an edge at (" + std::to_string(m) + "," + std::to_string(n) + ")");
    }
  const EdgeFn horiz = [&](int m, int n) { return quad_weierstrass_edge(g.at(m, n), g.at(m + 1, n), factors.alpha_h[m]); };
  const EdgeFn vert = [&](int m, int n) { return quad_weierstrass_edge(g.at(m, n), g.at(m, n + 1), factors.alpha_v[n]); };
  LatticeIntegral li = integrate_lattice(g.rows, g.cols, {}, horiz, vert, base);
  double edge_scale = 0.0;
  for (int n = 0; n < g.rows; ++n)
    for (int m = 0; m < g.cols; ++m) {
      if (m + 1 < g.cols) edge_scale = std::max(edge_scale, horiz(m, n).norm());
      if (n + 1 < g.rows) edge_scale = std::max(edge_scale, vert(m, n).norm());
    }
  QuadNet net{g.rows, g.cols, std::move(li.f), factors, {}};
  const double sc = std::max({net.scale(), edge_scale, 1e-300});
  if (li.max_quad_gap > 1e-10 * sc)
    throw Error(ErrorCode::ClosureViolation, "Weierstrass edges do not close; g and the factors are incompatible");
  return net;
}

PolySurface c_minimal_companion(const PlanarGrid& g, const IsoFactors& factors) {
  if (g.rows < 3 || g.cols < 3) throw Error(ErrorCode::InvalidInput, "need at least one interior lattice point");
  if (static_cast<int>(factors.alpha_h.size()) != g.cols - 1 ||
      static_cast<int>(factors.alpha_v.size()) != g.rows - 1)
    throw Error(ErrorCode::InvalidInput, "factor arrays do not match the grid size");
  auto im_term = [](Complex gi, Complex gj, double q) -> Vec3 {
    if (gi == gj) throw Error(ErrorCode::DegenerateEdge, "g collapses a lattice edge");
    const Complex s = q / (gj - gi);
    const Complex i1(0.0, 1.0);
    return {(s * (1.0 - gi * gj)).imag(), (s * i1 * (1.0 + gi * gj)).imag(), (s * (gi + gj)).imag()};
  };
  // Quad (m, n) is the dual vertex; F_left - F_right = w across each lattice edge.
  const EdgeFn horiz = [&](int m, int n) {
    return Vec3(-im_term(g.at(m + 1, n), g.at(m + 1, n + 1), factors.alpha_v[n]));
  };
  const EdgeFn vert = [&](int m, int n) { return im_term(g.at(m, n + 1), g.at(m + 1, n + 1), factors.alpha_h[m]); };
  const int qr = g.rows - 1, qc = g.cols - 1;
  LatticeIntegral li = integrate_lattice(qr, qc, {}, horiz, vert, Vec3::Zero());
  if (li.max_quad_gap > 1e-10 * std::max(max_norm(li.f), 1e-300))
    throw Error(ErrorCode::ClosureViolation, "q = alpha is not a holomorphic quadratic differential on g");

  std::vector<std::vector<int>> faces;
  for (int n = 1; n + 1 < g.rows; ++n)
    for (int m = 1; m + 1 < g.cols; ++m)
      faces.push_back({n * qc + m, n * qc + m - 1, (n - 1) * qc + m - 1, (n - 1) * qc + m});
  std::vector<int> ids(li.f.size());
  for (int k = 0; k < static_cast<int>(ids.size()); ++k) ids[k] = k;
  auto mesh = std::make_shared<const CellComplex>(CellComplex::build(ids, faces));
  return PolySurface(mesh, std::move(li.f));
}

double quad_closure_error(const QuadNet& net) {
  if (!net.factors) return 0.0;
  const auto& fac = *net.factors;
  double worst = 0.0;
  for (int n = 0; n + 1 < net.rows; ++n)
    for (int m = 0; m + 1 < net.cols; ++m) {
      if (!net.has_quad(m, n)) continue;
      auto d = [](const Vec3& e, double a) { return Vec3(a * e / e.squaredNorm()); };
      const Vec3 gap = d(net.at(m + 1, n) - net.at(m, n), fac.alpha_h[m]) +
                       d(net.at(m + 1, n + 1) - net.at(m + 1, n), fac.alpha_v[n]) -
                       d(net.at(m + 1, n + 1) - net.at(m, n + 1), fac.alpha_h[m]) -
                       d(net.at(m, n + 1) - net.at(m, n), fac.alpha_v[n]);
      worst = std::max(worst, gap.norm());
    }
  return worst;
}

PolySurface quad_net_surface(const QuadNet& net) {
  std::vector<std::vector<int>> faces;
  for (int n = 0; n + 1 < net.rows; ++n)
    for (int m = 0; m + 1 < net.cols; ++m)
      if (net.has_quad(m, n))
        faces.push_back({net.index(m, n), net.index(m + 1, n), net.index(m + 1, n + 1), net.index(m, n + 1)});
  std::vector<int> ids(net.f.size());
  for (int k = 0; k < static_cast<int>(ids.size()); ++k) ids[k] = k;
  auto mesh = std::make_shared<const CellComplex>(CellComplex::build(ids, faces));
  return PolySurface(mesh, net.f);
}

double distance_up_to_translation(const QuadNet& a, const QuadNet& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw Error(ErrorCode::InvalidInput, "nets live on different domains");
  int first = -1;
  for (int k = 0; k < static_cast<int>(a.f.size()) && first < 0; ++k)
    if (a.mask.empty() || a.mask[k]) first = k;
  if (first < 0) return 0.0;
  const Vec3 shift = b.f[first] - a.f[first];
  double d = 0.0;
  for (int k = 0; k < static_cast<int>(a.f.size()); ++k) {
    if (!a.mask.empty() && !a.mask[k]) continue;
    d = std::max(d, (a.f[k] + shift - b.f[k]).norm());
  }
  return d;
}

}  // namespace dmin
