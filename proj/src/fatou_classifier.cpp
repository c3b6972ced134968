#include "blaschke/fatou_classifier.hpp"

#include <algorithm>
#include <cmath>

#include "blaschke/parallel.hpp"
#include "blaschke/polar_raster.hpp"
#include "blaschke/rational_map.hpp"

namespace blaschke {

const char* to_string(FatouCase c) {
    switch (c) {
        case FatouCase::CaseA: return "CaseA";
        case FatouCase::CaseB: return "CaseB";
        case FatouCase::CaseC: return "CaseC";
        case FatouCase::NotEscaping: return "NotEscaping";
        case FatouCase::Undetermined: return "Undetermined";
    }
    return "?";
}

bool EscapeGrid::pixel_of(Complex z, int& ix, int& iy) const {
    const double fx = (z.real() - (window.center.real() - window.width / 2)) / (window.width / nx);
    const double fy = ((window.center.imag() + window.height / 2) - z.imag()) / (window.height / ny);
    ix = static_cast<int>(std::floor(fx));
    iy = static_cast<int>(std::floor(fy));
    return ix >= 0 && ix < nx && iy >= 0 && iy < ny;
}

EscapeGrid escape_grid(const ParameterPair& p, const Window& window, int nx, int ny, int max_iter,
                       double rho, int n_threads) {
    require_valid(p);
    if (nx < 16 || ny < 16) throw std::domain_error("blaschke: grid resolution must be at least 16x16");
    EscapeGrid g;
    g.window = window;
    g.nx = nx;
    g.ny = ny;
    g.cells.resize(static_cast<std::size_t>(nx) * ny);
    parallel_for(ny, n_threads, [&](int iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const EscapeScan s = escape_scan(p, g.center(ix, iy), max_iter, rho);
            g.cells[static_cast<std::size_t>(iy) * nx + ix] = {s.escape_index, s.route_class};
        }
    });
    return g;
}

namespace {

// Flood fill of the seed's signature component, 4-connected. Returns the
// component bitmap plus its bounding box.
struct FloodResult {
    std::vector<std::uint8_t> member;
    int count = 0;
    int x0 = 0, x1 = -1, y0 = 0, y1 = -1;
};

FloodResult flood_signature(const EscapeGrid& g, int sx, int sy) {
    FloodResult r;
    r.member.assign(g.cells.size(), 0);
    const GridCell seed = g.at(sx, sy);
    std::vector<std::int32_t> stack;
    auto idx = [&](int x, int y) { return static_cast<std::size_t>(y) * g.nx + x; };
    r.member[idx(sx, sy)] = 1;
    stack.push_back(sy * g.nx + sx);
    r.x0 = r.x1 = sx;
    r.y0 = r.y1 = sy;
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        const int y = cur / g.nx, x = cur % g.nx;
        ++r.count;
        r.x0 = std::min(r.x0, x); r.x1 = std::max(r.x1, x);
        r.y0 = std::min(r.y0, y); r.y1 = std::max(r.y1, y);
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            const int nx2 = x + dx[k], ny2 = y + dy[k];
            if (nx2 < 0 || nx2 >= g.nx || ny2 < 0 || ny2 >= g.ny) continue;
            const std::size_t j = idx(nx2, ny2);
            if (r.member[j] || !(g.cells[j] == seed)) continue;
            r.member[j] = 1;
            stack.push_back(ny2 * g.nx + nx2);
        }
    }
    return r;
}

}  // namespace

ComponentStats component_stats(const EscapeGrid& grid, int seed_ix, int seed_iy) {
    if (seed_ix < 0 || seed_ix >= grid.nx || seed_iy < 0 || seed_iy >= grid.ny)
        throw std::domain_error("blaschke: seed pixel outside the grid");
    if (!grid.at(seed_ix, seed_iy).escaped())
        throw std::domain_error("blaschke: seed pixel has not escaped");

    const FloodResult comp = flood_signature(grid, seed_ix, seed_iy);

    // Work in the component's bounding box padded by one; complement regions
    // (8-connected) not reaching the padded frame are bounded holes.
    const int bw = comp.x1 - comp.x0 + 3;
    const int bh = comp.y1 - comp.y0 + 3;
    auto in_comp = [&](int bx, int by) {
        const int gx = bx + comp.x0 - 1, gy = by + comp.y0 - 1;
        if (gx < 0 || gx >= grid.nx || gy < 0 || gy >= grid.ny) return false;
        return comp.member[static_cast<std::size_t>(gy) * grid.nx + gx] != 0;
    };
    std::vector<std::int32_t> region(static_cast<std::size_t>(bw) * bh, -1);
    std::vector<std::int32_t> stack;
    std::vector<std::uint8_t> region_bounded;
    std::int32_t next = 0;
    for (int by = 0; by < bh; ++by) {
        for (int bx = 0; bx < bw; ++bx) {
            const std::size_t i = static_cast<std::size_t>(by) * bw + bx;
            if (in_comp(bx, by) || region[i] >= 0) continue;
            bool bounded = true;
            stack.clear();
            region[i] = next;
            stack.push_back(by * bw + bx);
            while (!stack.empty()) {
                const int cur = stack.back();
                stack.pop_back();
                const int y = cur / bw, x = cur % bw;
                if (x == 0 || x == bw - 1 || y == 0 || y == bh - 1) bounded = false;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int x2 = x + dx, y2 = y + dy;
                        if (x2 < 0 || x2 >= bw || y2 < 0 || y2 >= bh) continue;
                        const std::size_t j = static_cast<std::size_t>(y2) * bw + x2;
                        if (region[j] >= 0 || in_comp(x2, y2)) continue;
                        region[j] = next;
                        stack.push_back(y2 * bw + x2);
                    }
                }
            }
            region_bounded.push_back(bounded ? 1 : 0);
            ++next;
        }
    }

    ComponentStats out;
    out.pixel_count = comp.count;
    out.connectivity = 1 + static_cast<int>(std::count(region_bounded.begin(), region_bounded.end(), 1));

    int ox = 0, oy = 0;
    if (grid.pixel_of(Complex(0.0, 0.0), ox, oy)) {
        if (comp.member[static_cast<std::size_t>(oy) * grid.nx + ox]) {
            out.surrounds_origin = true;
        } else {
            const int bx = ox - comp.x0 + 1, by = oy - comp.y0 + 1;
            if (bx >= 0 && bx < bw && by >= 0 && by < bh) {
                const std::int32_t rid = region[static_cast<std::size_t>(by) * bw + bx];
                if (rid >= 0 && region_bounded[static_cast<std::size_t>(rid)]) out.surrounds_origin = true;
            }
        }
    }
    return out;
}

bool surrounds_origin(const ParameterPair& p, Complex witness, const ClassifierBudget& budget) {
    require_valid(p);
    const double wr = std::abs(witness);
    if (!(wr > 0.0)) return false;
    const EscapeScan ws = escape_scan(p, witness, budget.max_iter, budget.rho);
    if (!ws.escaped()) return false;

    // Window bracketing the witness radius. The inner edge stays at or above
    // the widened root annulus: preimage rings closer to the pole can share
    // the witness's signature and must stay out of the test.
    double r_lo = 0.8 * wr;
    const double small_hi = std::pow(2.0 * std::abs(p.lambda) / std::abs(p.a), 0.2) * budget.rho;
    if (small_hi > 0.0) r_lo = std::min(r_lo, small_hi);
    const double r_hi = std::max(2.0, 1.25 * wr);
    if (!(r_lo > 0.0) || !(r_hi > r_lo)) return false;

    const PolarGrid g = polar_escape_grid(p, r_lo, r_hi, budget.surround_n_theta,
                                          budget.surround_n_radii, budget.max_iter, budget.rho);
    std::vector<std::uint8_t> mask(g.cells.size(), 0);
    const int tol = budget.escape_index_tolerance;
    for (std::size_t i = 0; i < g.cells.size(); ++i) {
        const GridCell& c = g.cells[i];
        mask[i] = c.escaped() && std::abs(c.escape_index - ws.escape_index) <= tol &&
                          c.route_class == ws.route_class
                      ? 1
                      : 0;
    }
    return !complement_connects_borders(g.n_theta, g.n_r, mask);
}

namespace {

FatouCase classify_once(const ParameterPair& p, const CriticalInventory& inv,
                        const ClassifierBudget& budget) {
    const EscapeScan s = escape_scan(p, inv.c_minus, budget.max_iter, budget.rho);
    if (!s.escaped()) return FatouCase::NotEscaping;
    const int n = s.escape_index;
    if (n < 2) return FatouCase::Undetermined;

    // Iterate n is the first confirmed basin point, so iterate n-1 sits in
    // the pole component and iterate n-2 in one of its two preimages.
    const detail::MapEval f(p);
    ExtendedComplex z = inv.c_minus;
    for (int k = 0; k < n - 2; ++k) z = f(z);
    if (z.is_infinity()) return FatouCase::Undetermined;

    if (region_tag(p, z, budget.rho) == RegionTag::SmallAnnulus) {
        return surrounds_origin(p, inv.c_minus, budget) ? FatouCase::CaseC : FatouCase::CaseB;
    }
    double dmin = INFINITY;
    for (const Complex w : inv.small_zeros) dmin = std::min(dmin, std::abs(inv.z0 - w));
    if (std::abs(z.value() - inv.z0) < 0.25 * dmin) return FatouCase::CaseA;
    return FatouCase::Undetermined;
}

}  // namespace

FatouCase classify(const ParameterPair& p, const ClassifierBudget& budget) {
    require_valid(p);
    if (p.lambda == Complex(0.0)) throw std::domain_error("blaschke: classify needs lambda != 0");
    const CriticalInventory inv = full_inventory(p, budget.inventory_bound);

    const FatouCase base = classify_once(p, inv, budget);
    if (base != FatouCase::CaseA && base != FatouCase::CaseB && base != FatouCase::CaseC)
        return base;

    ClassifierBudget deeper = budget;
    deeper.max_iter *= 2;
    if (classify_once(p, inv, deeper) != base) return FatouCase::Undetermined;

    ClassifierBudget finer = budget;
    finer.surround_n_radii *= 2;
    if (classify_once(p, inv, finer) != base) return FatouCase::Undetermined;

    return base;
}

}  // namespace blaschke
