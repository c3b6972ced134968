#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blaschke/critical_finder.hpp"
#include "blaschke/orbit_engine.hpp"
#include "blaschke/types.hpp"

namespace blaschke {

// Outcome of the escape trichotomy for one parameter pair. CaseA/B/C are
// emitted only when c_- escapes within budget and every structural check
// passes, including stability under doubled budgets.
enum class FatouCase { CaseA, CaseB, CaseC, NotEscaping, Undetermined };

const char* to_string(FatouCase c);

struct ClassifierBudget {
    int max_iter = kClassifyMaxIter;
    int surround_n_theta = 720;
    int surround_n_radii = 256;
    int escape_index_tolerance = 0;   // +- tolerance when matching escape depths
    double rho = kDefaultRho;
    double inventory_bound = kInventoryBound;
};

struct GridCell {
    std::int32_t escape_index = -1;   // -1: not escaped within budget
    std::uint16_t route_class = 0;    // first eight route tags, packed

    bool escaped() const { return escape_index >= 0; }
    friend bool operator==(const GridCell& l, const GridCell& r) {
        return l.escape_index == r.escape_index && l.route_class == r.route_class;
    }
};

// Raster of per-pixel escape data over a rectangular window. Pixel (ix, iy)
// is row-major with row 0 at the top edge (largest imaginary part).
struct EscapeGrid {
    Window window;
    int nx = 0, ny = 0;
    std::vector<GridCell> cells;

    const GridCell& at(int ix, int iy) const { return cells[static_cast<std::size_t>(iy) * nx + ix]; }

    Complex center(int ix, int iy) const {
        const double x = window.center.real() - window.width / 2 + (ix + 0.5) * window.width / nx;
        const double y = window.center.imag() + window.height / 2 - (iy + 0.5) * window.height / ny;
        return {x, y};
    }

    // False when z falls outside the window.
    bool pixel_of(Complex z, int& ix, int& iy) const;
};

struct ComponentStats {
    int pixel_count = 0;
    int connectivity = 0;      // 1 + number of bounded holes
    bool surrounds_origin = false;
};

// Decides which case of the escape trichotomy holds at p. Follows the orbit
// of c_- to its first confirmed basin iterate n and inspects iterate n-2,
// which must sit in a preimage of the pole component: through the small
// annulus means a multiply connected critical component (CaseC if it rings
// the origin, else CaseB); next to z_0 means CaseA. The decision must
// survive doubling of max_iter and of the surround-test radial resolution,
// otherwise Undetermined.
FatouCase classify(const ParameterPair& p, const ClassifierBudget& budget = {});

// Ring test around the origin: on a polar raster bracketing |witness|, the
// cells sharing the witness's escape signature must separate the inner
// radial border from the outer one. Total; returns false for non-escaping
// witnesses.
bool surrounds_origin(const ParameterPair& p, Complex witness, const ClassifierBudget& budget = {});

// Per-pixel escape data at pixel centers; deterministic for fixed inputs
// regardless of n_threads.
EscapeGrid escape_grid(const ParameterPair& p, const Window& window, int nx, int ny, int max_iter,
                       double rho = kDefaultRho, int n_threads = 0);

// Flood-fills the maximal 4-connected pixel set sharing the seed's escape
// signature, then counts bounded holes of the complement (8-connected).
// Throws std::domain_error when the seed pixel has not escaped.
ComponentStats component_stats(const EscapeGrid& grid, int seed_ix, int seed_iy);

}  // namespace blaschke
