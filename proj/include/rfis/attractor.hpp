#pragma once

#include <array>
#include <vector>

#include "rfis/surface.hpp"

namespace rfis {

using Point3 = std::array<double, 3>;

// One point cloud per cell, cell-major ((i-1)*ny + (j-1)).
using CellPointSets = std::vector<std::vector<Point3>>;

struct AttractorCheckResult {
    double voxel_size = 0.0;
    double voxel_diagonal = 0.0;            // sqrt(3) * voxel_size
    std::vector<double> distances;          // discrete Hausdorff after each step
    std::vector<double> z_deviation;        // Delta_n proxy: sup |f(x,y) - z|
};

// Voxel centers covering the graph of f per cell, built by column-filling
// the z-range of the level-(voxel_level+2) samples in each voxel column.
CellPointSets graph_voxel_points(const BilinearRfis& rfis, int voxel_level);

// Corner points of every cell lifted to z = 0 (the default start tuple).
CellPointSets cell_corner_start(const BilinearRfis& rfis);

// Iterates the set map (W(A))_ij = union of W_ij(A_kl) over D_kl in D'_ij
// on voxelized point clouds and measures the discrete Hausdorff distance to
// the voxelized graph after every step.
AttractorCheckResult attractor_convergence_check(const BilinearRfis& rfis,
                                                 int voxel_level, int steps);
AttractorCheckResult attractor_convergence_check(const BilinearRfis& rfis,
                                                 int voxel_level, int steps,
                                                 const CellPointSets& start);

}  // namespace rfis
