#pragma once

#include <compare>
#include <string>
#include <vector>

#include "rfis/errors.hpp"
#include "rfis/matrix.hpp"

namespace rfis {

// Cell (i, j) = [x_{i-1}, x_i] x [y_{j-1}, y_j], indices 1-based as in the
// index sets Sigma_N x Sigma_M.
struct Cell {
    int i = 0;
    int j = 0;
    auto operator<=>(const Cell&) const = default;
};

// Interpolation grid and heights, normalized so the domain is [0,1]^2.
struct InterpolationData {
    int nx = 0;             // N, cell count along x (>= 2)
    int ny = 0;             // M, cell count along y (>= 2)
    std::vector<double> x;  // N+1 strictly increasing nodes, x[0] = 0, x[N] = 1
    std::vector<double> y;  // M+1 nodes
    Matrix z;               // (N+1) x (M+1) heights, z(i, j)
};

// Validates shapes/monotonicity/finiteness and rescales both axes to [0,1].
InterpolationData build_data(std::vector<double> x, std::vector<double> y, Matrix z);

// Uniform grid x_i = i/N, y_j = j/M.
InterpolationData build_uniform_data(int nx, int ny, Matrix z);

// Domain-address maps u_i: I'_i -> I_i and v_j: J'_j -> J_j. The address
// sequences are stored as node indices so "x'_i is a grid node" is a
// structural fact rather than a float comparison.
struct AddressMaps {
    std::vector<int> xprime_idx;  // p_0..p_N with x'_i = x[p_i]
    std::vector<int> yprime_idx;  // q_0..q_M
    std::vector<int> sign_x;      // sign of p_i - p_{i-1}, entry i-1 for cell i
    std::vector<int> sign_y;
    Matrix zprime;                // z'_{ij} = z(p_i, q_j)
};

AddressMaps build_address_maps(const InterpolationData& data,
                               std::vector<int> xprime_idx,
                               std::vector<int> yprime_idx);

// Affine map evaluation. Exact at the interval endpoints: passing x'_{i-1}
// returns x_{i-1} bitwise and likewise for x'_i.
double map_u(const InterpolationData& data, const AddressMaps& maps, int i, double xp);
double map_v(const InterpolationData& data, const AddressMaps& maps, int j, double yp);
double map_u_inv(const InterpolationData& data, const AddressMaps& maps, int i, double x);
double map_v_inv(const InterpolationData& data, const AddressMaps& maps, int j, double y);

// Node index x' interval endpoints for cell i, as (lo, hi) node indices.
std::pair<int, int> domain_x_range(const AddressMaps& maps, int i);
std::pair<int, int> domain_y_range(const AddressMaps& maps, int j);

// Structural hypotheses for the box-dimension machinery: square uniform
// grid, |I'_i| = K |I_i|, and pairwise equal-or-disjoint cell domains.
struct HomogeneityCertificate {
    int K = 0;
    bool uniform_spacing = false;
    bool ratio = false;
    bool domain_overlap = false;
    std::vector<std::string> failures;

    bool ok() const { return uniform_spacing && ratio && domain_overlap; }
};

HomogeneityCertificate check_homogeneity(const InterpolationData& data,
                                         const AddressMaps& maps, int K);

struct CellEdge {
    Cell from;
    Cell to;
    auto operator<=>(const CellEdge&) const = default;
};

// Directed edge (i,j) -> (k,l) exactly when D_{kl} is contained in D'_{ij}.
// Decided by integer node-index arithmetic, never by float geometry.
std::vector<CellEdge> cell_dependency_edges(const AddressMaps& maps);

}  // namespace rfis
