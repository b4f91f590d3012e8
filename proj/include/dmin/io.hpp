#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmin/curvature.hpp"
#include "dmin/isoquad.hpp"
#include "dmin/mesh.hpp"
#include "dmin/pattern.hpp"

namespace dmin::io {

using Json = nlohmann::json;

Json read_json_file(const std::string& path);
/// Pretty-printed with a trailing newline.
void write_json_file(const std::string& path, const Json& j);
void write_text_file(const std::string& path, const std::string& text);

/// {"vertices": [id, ...], "faces": [[id, ...], ...]}
Json mesh_to_json(const CellComplex& c);
CellComplex mesh_from_json(const Json& j);

/// {"mesh": mesh, "g": [[re, im], ...]} with g in vertex order.
Json pattern_to_json(const PlanarPattern& p);
std::shared_ptr<const PlanarPattern> pattern_from_json(const Json& j);

/// {"edges": [[i, j], ...], "q": [...]}; edges are vertex-id pairs of the
/// interior edges.
Json quaddiff_to_json(const CellComplex& c, const std::vector<double>& q);
/// Accepts one QuadDiff object or an array of them. Values land on the
/// edge index of the matching edge; edges absent from the file get 0.
std::vector<std::vector<double>> quaddiffs_from_json(const CellComplex& c, const Json& j);

/// {"dual_mesh": mesh, "f": [[x, y, z], ...]}, plus optional "normals"
/// (one per face) and "ghosts" ([{"normal": [...], "vertices": [id, ...]}]).
Json surface_to_json(const PolySurface& s);
PolySurface surface_from_json(const Json& j);

/// {"rows": R, "cols": C, "f": [...], "alpha_h": [...], "alpha_v": [...]},
/// plus an optional "mask" of 0/1 per lattice point.
Json quadnet_to_json(const QuadNet& net);
QuadNet quadnet_from_json(const Json& j);

std::string surface_obj(const PolySurface& s);
std::string quadnet_obj(const QuadNet& net);

/// Circumcircles of all triangles plus the edges, fitted to the viewport.
std::string pattern_svg(const PlanarPattern& p);

}  // namespace dmin::io
