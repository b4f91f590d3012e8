#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmin/curvature.hpp"
#include "dmin/error.hpp"
#include "dmin/fixtures.hpp"
#include "dmin/hqd.hpp"
#include "dmin/io.hpp"
#include "dmin/isoquad.hpp"
#include "dmin/kernels.hpp"
#include "dmin/pattern.hpp"
#include "dmin/weierstrass.hpp"

using namespace dmin;
using Json = nlohmann::json;

namespace {

struct RunConfig {
  std::vector<std::string> inputs;
  std::string output;
  std::string obj;
  std::string svg;
  double tol = 1e-9;
  std::vector<double> theta{0.0};
  int size = 0;
  std::uint64_t seed = 0;
  double t = 0.0;
  int index = 0;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) std::cout << text;
  else io::write_text_file(cfg.output, text);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string stem(const std::string& path) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void check_surface(const RunConfig& cfg, const PolySurface& s) {
  emit(cfg, curvature_report_csv(s));
  double worst = 0.0;
  for (int f = 0; f < s.num_faces(); ++f) {
    if (!s.is_interior_face(f)) continue;
    try {
      worst = std::max(worst, std::abs(mean_curvature(s, f)));
    } catch (const Error&) {
      worst = std::numeric_limits<double>::infinity();
    }
  }
  std::cerr << "max_abs_H " << fmt(worst) << "\nmax_edge_length " << fmt(s.max_edge_length()) << "\nminimal "
            << (is_minimal(s, cfg.tol) ? "yes" : "no") << '\n';
}

void check_pattern(const RunConfig& cfg, const PlanarPattern& p) {
  const CellComplex& c = p.mesh();
  std::ostringstream os;
  os.precision(17);
  os << "vertex,product_residual,sum_residual,degree\n";
  double worst = 0.0;
  for (int v = 0; v < c.num_vertices(); ++v) {
    if (!c.is_interior_vertex(v)) continue;
    const auto r = vertex_relations_residual(p, v);
    os << c.vertex_id(v) << ',' << std::abs(r.product) << ',' << std::abs(r.sum) << ',' << c.degree(v) << '\n';
    worst = std::max({worst, std::abs(r.product), std::abs(r.sum)});
  }
  emit(cfg, os.str());
  std::cerr << "max_relation_residual " << fmt(worst) << "\nscale " << fmt(p.scale()) << "\ndelaunay "
            << (is_delaunay(p) ? "yes" : "no") << '\n';
}

void check_quadnet(const RunConfig& cfg, const QuadNet& net) {
  const PolySurface s = quad_net_surface(net);
  const auto h = kernels::mean_curvatures(s);
  std::ostringstream os;
  os.precision(17);
  os << "m,n,Q_real,Q_imag,H\n";
  int face = 0;
  for (int n = 0; n + 1 < net.rows; ++n)
    for (int m = 0; m + 1 < net.cols; ++m) {
      if (!net.has_quad(m, n)) continue;
      const Quat q = quad_cross_ratio(net, m, n);
      os << m << ',' << n << ',' << q.w << ',' << q.v.norm() << ',' << h[face++] << '\n';
    }
  emit(cfg, os.str());
  bool iso = true;
  try {
    factorize_isothermic(net, cfg.tol);
  } catch (const Error&) {
    iso = false;
  }
  std::cerr << "isothermic " << (iso ? "yes" : "no") << "\nminimal " << (is_minimal(s, cfg.tol) ? "yes" : "no")
            << '\n';
}

PolySurface surface_for(const RunConfig& cfg, double theta) {
  auto pattern = io::pattern_from_json(io::read_json_file(cfg.inputs.at(0)));
  const auto qs = io::quaddiffs_from_json(pattern->mesh(), io::read_json_file(cfg.inputs.at(1)));
  if (cfg.index < 0 || cfg.index >= static_cast<int>(qs.size()))
    throw Error(ErrorCode::InvalidInput, "--index out of range");
  const HoloCurve curve = weierstrass_curve(pattern, qs[cfg.index], cfg.tol);
  return minimal_surface(curve, theta);
}

int run(const std::string& cmd, const RunConfig& cfg) {
  if (cmd == "generate") {
    emit(cfg, dump(fixtures::generate(cfg.inputs.at(0), cfg.size, cfg.seed)));
  } else if (cmd == "check") {
    const Json j = io::read_json_file(cfg.inputs.at(0));
    if (j.contains("dual_mesh")) check_surface(cfg, io::surface_from_json(j));
    else if (j.contains("g")) check_pattern(cfg, *io::pattern_from_json(j));
    else if (j.contains("rows")) check_quadnet(cfg, io::quadnet_from_json(j));
    else throw Error(ErrorCode::InvalidInput, "unrecognised input: expected a surface, pattern or quad net");
  } else if (cmd == "hqd-basis") {
    auto p = io::pattern_from_json(io::read_json_file(cfg.inputs.at(0)));
    const HqdBasis b = hqd_basis(*p);
    Json out = Json::array();
    for (const auto& q : b.basis) out.push_back(io::quaddiff_to_json(p->mesh(), q.q));
    emit(cfg, dump(out));
    std::cerr << "dimension " << b.dimension() << '\n';
  } else if (cmd == "weierstrass") {
    const PolySurface s = surface_for(cfg, cfg.theta.at(0));
    RunConfig out = cfg;
    if (!cfg.obj.empty()) {
      io::write_text_file(cfg.obj, io::surface_obj(s));
      if (out.output.empty()) out.output = stem(cfg.obj) + "-surface.json";
    }
    emit(out, dump(io::surface_to_json(s)));
  } else if (cmd == "family") {
    Json out = Json::array();
    for (std::size_t k = 0; k < cfg.theta.size(); ++k) {
      const PolySurface s = surface_for(cfg, cfg.theta[k]);
      out.push_back({{"theta", cfg.theta[k]}, {"surface", io::surface_to_json(s)}});
      if (!cfg.obj.empty()) io::write_text_file(stem(cfg.obj) + "-" + std::to_string(k) + ".obj", io::surface_obj(s));
    }
    emit(cfg, dump(out));
  } else if (cmd == "offset") {
    const PolySurface s = io::surface_from_json(io::read_json_file(cfg.inputs.at(0)));
    const std::vector<double> hdot(s.num_planes(), 1.0);
    const PolySurface o = offset_surface(s, hdot, cfg.t);
    if (!cfg.obj.empty()) io::write_text_file(cfg.obj, io::surface_obj(o));
    emit(cfg, dump(io::surface_to_json(o)));
  } else if (cmd == "dualize") {
    const QuadNet net = io::quadnet_from_json(io::read_json_file(cfg.inputs.at(0)));
    const QuadNet d = christoffel_dual(net, Vec3::Zero(), cfg.tol);
    if (!cfg.obj.empty()) io::write_text_file(cfg.obj, io::quadnet_obj(d));
    emit(cfg, dump(io::quadnet_to_json(d)));
  } else if (cmd == "plot-pattern") {
    auto p = io::pattern_from_json(io::read_json_file(cfg.inputs.at(0)));
    const std::string svg = io::pattern_svg(*p);
    if (!cfg.svg.empty()) io::write_text_file(cfg.svg, svg);
    else emit(cfg, svg);
  }
  return 0;
}

void error_json(const std::string& code, const std::string& message) {
  std::cerr << Json{{"error", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete minimal surfaces from circle patterns and isothermic nets"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, int inputs, const std::string& what) {
    sub->add_option("inputs", cfg.inputs, what)->required()->expected(inputs);
    sub->add_option("--tol", cfg.tol, "relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--output,-o", cfg.output, "output path (default: stdout)");
  };
  auto* gen = app.add_subcommand("generate", "write a fixture");
  common(gen, 1, "fixture kind");
  gen->add_option("--size", cfg.size, "grid size, ring count or point count")->check(CLI::Range(2, 1000));
  gen->add_option("--seed", cfg.seed, "seed for random fixtures");

  auto* check = app.add_subcommand("check", "CSV report for a surface, pattern or quad net");
  common(check, 1, "input JSON");

  auto* basis = app.add_subcommand("hqd-basis", "basis of holomorphic quadratic differentials");
  common(basis, 1, "pattern JSON");

  auto* weier = app.add_subcommand("weierstrass", "minimal surface from a pattern and a quadratic differential");
  common(weier, 2, "pattern JSON and QuadDiff JSON");
  weier->add_option("--theta", cfg.theta, "associated family angle")->expected(1);
  weier->add_option("--index", cfg.index, "which QuadDiff of an array");
  weier->add_option("--obj", cfg.obj, "OBJ export; surface JSON defaults to <obj stem>-surface.json");

  auto* fam = app.add_subcommand("family", "associated family members for a list of angles");
  common(fam, 2, "pattern JSON and QuadDiff JSON");
  fam->add_option("--theta", cfg.theta, "angles")->expected(1, -1);
  fam->add_option("--index", cfg.index, "which QuadDiff of an array");
  fam->add_option("--obj", cfg.obj, "OBJ prefix: writes <stem>-<k>.obj");

  auto* off = app.add_subcommand("offset", "offset every face by t along its normal");
  common(off, 1, "surface JSON");
  off->add_option("--t", cfg.t, "offset distance")->required();
  off->add_option("--obj", cfg.obj, "OBJ export");

  auto* dualize = app.add_subcommand("dualize", "Christoffel dual of an isothermic quad net");
  common(dualize, 1, "quad net JSON");
  dualize->add_option("--obj", cfg.obj, "OBJ export");

  auto* plot = app.add_subcommand("plot-pattern", "SVG of the circumcircles and edges");
  common(plot, 1, "pattern JSON");
  plot->add_option("--svg", cfg.svg, "SVG path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error_json("InvalidInput", e.what());
    return 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, cfg);
  } catch (const Error& e) {
    error_json(std::string(to_string(e.code())), e.what());
    return 1;
  } catch (const std::exception& e) {
    error_json("InvalidInput", e.what());
    return 1;
  }
}
