#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <json.hpp>

#include "dmin/curvature.hpp"
#include "dmin/isoquad.hpp"
#include "dmin/pattern.hpp"

namespace dmin::fixtures {

/// Center (id 0) at the origin and k ring vertices on the unit circle.
/// Seed 0 is the regular wheel; other seeds jitter radii and angles.
std::shared_ptr<const PlanarPattern> wheel(int k, std::uint64_t seed = 0);

/// Triangulated hexagon of lattice points at hex distance <= rings, each
/// point moved by up to `jitter` times the lattice spacing.
std::shared_ptr<const PlanarPattern> hex_disk(int rings, double jitter, std::uint64_t seed);

/// Delaunay triangulation of n random points in the unit disk.
std::shared_ptr<const PlanarPattern> random_delaunay(int n, std::uint64_t seed);

/// Unit cube centred at the origin, outward faces.
PolySurface cube();
/// Regular tetrahedron with unit edges centred at the origin.
PolySurface tetra();

/// Closed trivalent polyhedron cut out by n random planes: the dual of the
/// convex hull of n random unit normals, with heights in [0.8, 1.2].
PolySurface random_trivalent(int n, std::uint64_t seed);

/// Discrete Enneper net from g(m, n) = m + i n with factors (1, -1).
QuadNet enneper_quad(int size);

/// Fixture by name: enneper-quad, wheel-<k>, random-delaunay, hex-disk,
/// random-trivalent, cube, tetra. size <= 0 picks the default for the kind.
/// Throws UnknownKind.
nlohmann::json generate(const std::string& kind, int size, std::uint64_t seed);

}  // namespace dmin::fixtures
