#include "blaschke/polar_raster.hpp"

#include <cmath>
#include <stdexcept>

#include "blaschke/parallel.hpp"

namespace blaschke {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

double PolarGrid::theta(int it) const { return kTwoPi * (it + 0.5) / n_theta; }

Complex PolarGrid::center(int it, int ir) const {
    const double t = theta(it);
    return radii[static_cast<std::size_t>(ir)] * Complex(std::cos(t), std::sin(t));
}

int PolarGrid::theta_bin(Complex z) const {
    double t = std::arg(z);
    if (t < 0.0) t += kTwoPi;
    int bin = static_cast<int>(t / kTwoPi * n_theta);
    if (bin >= n_theta) bin = n_theta - 1;
    if (bin < 0) bin = 0;
    return bin;
}

double PolarGrid::edge_lo(int ir) const {
    return radii[static_cast<std::size_t>(ir)] * std::exp(-0.5 * log_step);
}

double PolarGrid::edge_hi(int ir) const {
    return radii[static_cast<std::size_t>(ir)] * std::exp(0.5 * log_step);
}

PolarGrid polar_escape_grid(const ParameterPair& p, double r_lo, double r_hi, int n_theta,
                            int n_r, int max_iter, double rho, int n_threads) {
    require_valid(p);
    if (!(r_lo > 0.0) || !(r_hi > r_lo)) throw std::domain_error("blaschke: bad polar radii");
    if (n_theta < 8 || n_r < 2) throw std::domain_error("blaschke: polar raster too small");

    PolarGrid g;
    g.r_lo = r_lo;
    g.r_hi = r_hi;
    g.n_theta = n_theta;
    g.n_r = n_r;
    g.radii.resize(static_cast<std::size_t>(n_r));
    const double l0 = std::log(r_lo), l1 = std::log(r_hi);
    g.log_step = (l1 - l0) / (n_r - 1);
    for (int k = 0; k < n_r; ++k) g.radii[static_cast<std::size_t>(k)] = std::exp(l0 + k * g.log_step);
    g.cells.resize(static_cast<std::size_t>(n_theta) * n_r);

    parallel_for(n_theta, n_threads, [&](int it) {
        const double t = g.theta(it);
        const Complex e(std::cos(t), std::sin(t));
        for (int ir = 0; ir < n_r; ++ir) {
            const EscapeScan s = escape_scan(p, g.radii[static_cast<std::size_t>(ir)] * e, max_iter, rho);
            g.cells[g.idx(it, ir)] = {s.escape_index, s.route_class};
        }
    });
    return g;
}

namespace {

// Plain BFS over the cylinder; fills `out` with `id` for every mask cell
// reachable from (it0, ir0). Returns the number of cells painted.
int paint_component(int n_theta, int n_r, const std::vector<std::uint8_t>& mask,
                    std::vector<std::int32_t>& out, int it0, int ir0, std::int32_t id,
                    std::vector<std::int32_t>& stack) {
    auto idx = [n_r](int it, int ir) { return static_cast<std::size_t>(it) * n_r + ir; };
    int count = 0;
    stack.clear();
    out[idx(it0, ir0)] = id;
    stack.push_back(it0 * n_r + ir0);
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        const int it = cur / n_r, ir = cur % n_r;
        ++count;
        const int nbr_it[4] = {(it + 1) % n_theta, (it + n_theta - 1) % n_theta, it, it};
        const int nbr_ir[4] = {ir, ir, ir + 1, ir - 1};
        for (int k = 0; k < 4; ++k) {
            const int jt = nbr_it[k], jr = nbr_ir[k];
            if (jr < 0 || jr >= n_r) continue;
            const std::size_t j = idx(jt, jr);
            if (!mask[j] || out[j] >= 0) continue;
            out[j] = id;
            stack.push_back(jt * n_r + jr);
        }
    }
    return count;
}

}  // namespace

std::vector<std::int32_t> cylinder_components(int n_theta, int n_r,
                                              const std::vector<std::uint8_t>& mask,
                                              int& n_components) {
    std::vector<std::int32_t> labels(mask.size(), -1);
    std::vector<std::int32_t> stack;
    std::int32_t next = 0;
    for (int it = 0; it < n_theta; ++it) {
        for (int ir = 0; ir < n_r; ++ir) {
            const std::size_t i = static_cast<std::size_t>(it) * n_r + ir;
            if (mask[i] && labels[i] < 0) paint_component(n_theta, n_r, mask, labels, it, ir, next++, stack);
        }
    }
    n_components = next;
    return labels;
}

bool complement_connects_borders(int n_theta, int n_r, const std::vector<std::uint8_t>& mask) {
    auto idx = [n_r](int it, int ir) { return static_cast<std::size_t>(it) * n_r + ir; };
    std::vector<std::uint8_t> seen(mask.size(), 0);
    std::vector<std::int32_t> stack;
    for (int it = 0; it < n_theta; ++it) {
        if (!mask[idx(it, 0)]) {
            seen[idx(it, 0)] = 1;
            stack.push_back(it * n_r);
        }
    }
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        const int it = cur / n_r, ir = cur % n_r;
        if (ir == n_r - 1) return true;
        for (int dt = -1; dt <= 1; ++dt) {
            for (int dr = -1; dr <= 1; ++dr) {
                if (dt == 0 && dr == 0) continue;
                const int jt = (it + dt + n_theta) % n_theta;
                const int jr = ir + dr;
                if (jr < 0 || jr >= n_r) continue;
                const std::size_t j = idx(jt, jr);
                if (seen[j] || mask[j]) continue;
                seen[j] = 1;
                stack.push_back(jt * n_r + jr);
            }
        }
    }
    return false;
}

void fill_cylinder_holes(int n_theta, int n_r, std::vector<std::uint8_t>& mask) {
    auto idx = [n_r](int it, int ir) { return static_cast<std::size_t>(it) * n_r + ir; };
    // Complement cells reachable (8-connected) from either radial border.
    std::vector<std::uint8_t> outside(mask.size(), 0);
    std::vector<std::int32_t> stack;
    for (int it = 0; it < n_theta; ++it) {
        for (int ir : {0, n_r - 1}) {
            const std::size_t i = idx(it, ir);
            if (!mask[i] && !outside[i]) {
                outside[i] = 1;
                stack.push_back(it * n_r + ir);
            }
        }
    }
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        const int it = cur / n_r, ir = cur % n_r;
        for (int dt = -1; dt <= 1; ++dt) {
            for (int dr = -1; dr <= 1; ++dr) {
                if (dt == 0 && dr == 0) continue;
                const int jt = (it + dt + n_theta) % n_theta;
                const int jr = ir + dr;
                if (jr < 0 || jr >= n_r) continue;
                const std::size_t j = idx(jt, jr);
                if (mask[j] || outside[j]) continue;
                outside[j] = 1;
                stack.push_back(jt * n_r + jr);
            }
        }
    }
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (!mask[i] && !outside[i]) mask[i] = 1;
}

}  // namespace blaschke
