#pragma once

#include <cstdint>
#include <vector>

#include "blaschke/fatou_classifier.hpp"
#include "blaschke/types.hpp"

namespace blaschke {

// Escape signatures sampled on a log-radial polar raster (a cylinder: the
// angular direction wraps). Row = angle bin, column = radius bin.
struct PolarGrid {
    double r_lo = 0.0, r_hi = 0.0;
    int n_theta = 0, n_r = 0;
    std::vector<double> radii;        // bin centers, log spaced
    double log_step = 0.0;            // log(r_{k+1}) - log(r_k)
    std::vector<GridCell> cells;      // n_theta * n_r

    std::size_t idx(int it, int ir) const { return static_cast<std::size_t>(it) * n_r + ir; }
    const GridCell& at(int it, int ir) const { return cells[idx(it, ir)]; }

    double theta(int it) const;
    Complex center(int it, int ir) const;
    int theta_bin(Complex z) const;   // bin of arg(z), in [0, n_theta)

    // Radial extents of a cell, half a log step each side of the center.
    double edge_lo(int ir) const;
    double edge_hi(int ir) const;
};

PolarGrid polar_escape_grid(const ParameterPair& p, double r_lo, double r_hi, int n_theta,
                            int n_r, int max_iter, double rho = kDefaultRho, int n_threads = 0);

// Connected components of mask cells, 4-connected with angular wrap.
// Returns per-cell component ids (-1 outside the mask) and the count.
std::vector<std::int32_t> cylinder_components(int n_theta, int n_r,
                                              const std::vector<std::uint8_t>& mask,
                                              int& n_components);

// True when the complement of mask (8-connected, wrapping) links the inner
// radial border to the outer one, i.e. the mask does not ring the cylinder.
bool complement_connects_borders(int n_theta, int n_r, const std::vector<std::uint8_t>& mask);

// Fills complement regions touching neither radial border into the mask.
void fill_cylinder_holes(int n_theta, int n_r, std::vector<std::uint8_t>& mask);

}  // namespace blaschke
