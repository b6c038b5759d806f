#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rfis/grid.hpp"

namespace rfis {

// Vertical scaling factors s_ij at the grid nodes, |s_ij| < 1.
struct ScalingFactors {
    Matrix s;
};

ScalingFactors make_scaling(Matrix s);

enum class Field { h, S };

// Corner values of the bilinear g_ij on D'_ij. c00 pairs with the
// lambda*mu weight (the x'_{i-1}, y'_{j-1} corner), c10 with (1-lambda)*mu,
// c01 with lambda*(1-mu), c11 with the rest.
struct GCorners {
    double c00 = 0, c10 = 0, c01 = 0, c11 = 0;
};

// Bilinear recurrent fractal interpolation surface: interpolation data,
// address maps and scaling factors together with the derived per-cell
// tables. Immutable after construction; all operations on it are pure.
struct BilinearRfis {
    InterpolationData data;
    AddressMaps maps;
    ScalingFactors scaling;

    std::vector<GCorners> g_corners;  // cell-major, (i-1)*ny + (j-1)
    Matrix alpha_cell;                // nx x ny Lipschitz bounds max|S| on D_ij
    double alpha = 0.0;               // max over cells, < 1
    HomogeneityCertificate cert;      // computed with K = |p_1 - p_0|

    const GCorners& g_at(int i, int j) const {
        return g_corners[static_cast<std::size_t>(i - 1) * data.ny + (j - 1)];
    }
};

BilinearRfis make_rfis(InterpolationData data, AddressMaps maps, ScalingFactors scaling);

// Copy with one g-corner value of cell (i,j) shifted by delta. Diagnostic
// hook used to demonstrate seam-check sensitivity.
BilinearRfis perturbed_g_corner(const BilinearRfis& rfis, int i, int j, int corner, double delta);

// Piecewise-bilinear interpolants through z (h) or s (S) on [0,1]^2.
double eval_field(const BilinearRfis& rfis, Field which, double x, double y);

// Bilinear g_ij on D'_ij via lambda_i(x), mu_j(y).
double eval_g(const BilinearRfis& rfis, int i, int j, double x, double y);

// F_ij(x,y,z) = S(u_i(x), v_j(y)) (z - g_ij(x,y)) + h(u_i(x), v_j(y)).
double eval_F(const BilinearRfis& rfis, int i, int j, double x, double y, double z);

// W_ij(x,y,z) = (u_i(x), v_j(y), F_ij(x,y,z)).
std::array<double, 3> eval_W(const BilinearRfis& rfis, int i, int j, std::array<double, 3> p);

struct SeamDiscrepancy {
    bool vertical = false;  // true: seam x = x_i between cells (i,j),(i+1,j)
    int i = 0, j = 0;
    double discrepancy = 0.0;
};

struct MatchableReport {
    double max_discrepancy = 0.0;
    std::vector<SeamDiscrepancy> seams;  // one entry per interior seam
};

// Samples every interior seam of the F family and reports the largest
// |F_ij - F_neighbor| over (edge samples) x (z samples). Bilinear g makes
// this vanish up to rounding.
MatchableReport check_matchable(const BilinearRfis& rfis, int samples_per_edge);

// Exact samples of f on the level-n grid of mesh 1/(K^n N).
struct SampledSurface {
    int level = 0;  // n
    int K = 1;      // refinement ratio
    int base = 0;   // N
    int side = 0;   // K^n * N
    Matrix values;  // (side+1)^2, values(k, l) = f(k/side, l/side)
};

// Recursive sampler. Level 0 is the z-matrix; each new node is one
// application of f(u_i(x), v_j(y)) = F_ij(x, y, f(x, y)) at its preimage
// node. Requires the homogeneity certificate. OpenMP-parallel across nodes.
SampledSurface sample_surface(const BilinearRfis& rfis, int n);

// Serial reference implementation; bitwise identical to sample_surface.
SampledSurface sample_surface_serial(const BilinearRfis& rfis, int n);

// One refinement step, level m -> m+1.
SampledSurface refine_surface(const BilinearRfis& rfis, const SampledSurface& parent);
SampledSurface refine_surface_serial(const BilinearRfis& rfis, const SampledSurface& parent);

// Samples h or S on the level-n grid (exact per-cell bilinear evaluation).
SampledSurface sample_field(const BilinearRfis& rfis, Field which, int n);

// Recomputes the value of level node (kk, ll) of `parent`'s refinement
// through an explicit owning cell. Used to verify that boundary nodes are
// independent of the owning-cell choice.
double refined_value_via_cell(const BilinearRfis& rfis, const SampledSurface& parent,
                              std::int64_t kk, std::int64_t ll, int ci, int cj);

// All cells whose closed x-extent contains level node index kk.
std::vector<int> containing_cells(std::int64_t kk, std::int64_t per_cell, int n_cells);

// Bilinear probe of a sampled grid at an arbitrary point of [0,1]^2.
double probe_surface(const SampledSurface& surface, double x, double y);

struct TIterationResult {
    SampledSurface surface;
    std::vector<double> sup_gaps;  // sup|T^k phi_0 - f| after each iteration
};

// Iterates the Read-Bajraktarevic operator T on the level grid starting
// from phi_0 = sampled h, recording the sup-norm gap to the recursive
// sampler after every iteration.
TIterationResult operator_T_iterate(const BilinearRfis& rfis, int level, int iterations);

}  // namespace rfis
