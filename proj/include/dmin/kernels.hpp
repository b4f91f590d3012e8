#pragma once

#include <span>
#include <vector>

#include "dmin/hqd.hpp"
#include "dmin/pattern.hpp"

namespace dmin {

class PolySurface;

/// Batch evaluations over all edges, vertices or faces. The versions in
/// `kernels` run in parallel with OpenMP when it is available; `serial`
/// holds straightforward loops over the single-item operations, kept as the
/// reference the parallel kernels are tested and benchmarked against.
/// Items where the single-item operation would throw yield NaN (or zero for
/// non-interior vertices).
namespace kernels {

std::vector<Complex> cross_ratios(const CellComplex& c, std::span<const Complex> g);
std::vector<VertexRelationResidual> vertex_relation_residuals(const PlanarPattern& p);
std::vector<HqdResidual> hqd_residuals(const PlanarPattern& p, std::span<const double> q);
std::vector<double> mean_curvatures(const PolySurface& s);
std::vector<double> tube_mean_curvatures(const PolySurface& s);
std::vector<double> signed_areas(const PolySurface& s);

int max_threads();

}  // namespace kernels

namespace serial {

std::vector<Complex> cross_ratios(const CellComplex& c, std::span<const Complex> g);
std::vector<VertexRelationResidual> vertex_relation_residuals(const PlanarPattern& p);
std::vector<HqdResidual> hqd_residuals(const PlanarPattern& p, std::span<const double> q);
std::vector<double> mean_curvatures(const PolySurface& s);
std::vector<double> tube_mean_curvatures(const PolySurface& s);
std::vector<double> signed_areas(const PolySurface& s);

}  // namespace serial

}  // namespace dmin
