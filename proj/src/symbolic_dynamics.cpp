#include "blaschke/symbolic_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "blaschke/parallel.hpp"
#include "blaschke/polar_raster.hpp"
#include "blaschke/rational_map.hpp"

namespace blaschke {

LabelTable::LabelTable(std::vector<Band> bands, double w3_edge, int n_theta)
    : bands_(std::move(bands)), w3_outer_edge_(w3_edge), n_theta_(n_theta) {
    labels_.reserve(bands_.size());
    for (const Band& b : bands_) labels_.push_back(b.label);
}

Complex LabelTable::sample_point(int id, int angle_bin) const {
    if (id < 0 || id >= static_cast<int>(bands_.size())) return Complex(0.0, 0.0);
    angle_bin = ((angle_bin % n_theta_) + n_theta_) % n_theta_;
    const double r = bands_[static_cast<std::size_t>(id)].mid[static_cast<std::size_t>(angle_bin)];
    if (r < 0.0) return Complex(0.0, 0.0);
    const double t = 6.28318530717958647692 * (angle_bin + 0.5) / n_theta_;
    return std::polar(r, t);
}

int LabelTable::find_band(Complex z) const {
    const double r = std::abs(z);
    if (!std::isfinite(r)) return -1;
    double t = std::arg(z);
    if (t < 0.0) t += 6.28318530717958647692;
    int bin = static_cast<int>(t / 6.28318530717958647692 * n_theta_);
    if (bin >= n_theta_) bin = n_theta_ - 1;
    for (const Band& b : bands_) {
        const double lo = b.lo[static_cast<std::size_t>(bin)];
        if (lo >= 0.0 && r >= lo && r <= b.hi[static_cast<std::size_t>(bin)]) return b.label.id;
    }
    return -1;
}

namespace {

// Per-angle radial extents of a cell set. pad_cells widens each side beyond
// the half-cell edges; detection sees cell centers only, so the true band
// edge may sit up to a cell outside the covered cells.
LabelTable::Band band_from_mask(const PolarGrid& g, const std::vector<std::uint8_t>& mask,
                                double pad_cells) {
    LabelTable::Band b;
    b.lo.assign(static_cast<std::size_t>(g.n_theta), -1.0);
    b.hi.assign(static_cast<std::size_t>(g.n_theta), -1.0);
    b.mid.assign(static_cast<std::size_t>(g.n_theta), -1.0);
    const double pad = std::exp(pad_cells * g.log_step);
    double rmin = INFINITY, rmax = 0.0;
    std::vector<int> run;
    for (int it = 0; it < g.n_theta; ++it) {
        run.clear();
        for (int ir = 0; ir < g.n_r; ++ir)
            if (mask[g.idx(it, ir)]) run.push_back(ir);
        if (!run.empty()) {
            b.lo[static_cast<std::size_t>(it)] = g.edge_lo(run.front()) / pad;
            b.hi[static_cast<std::size_t>(it)] = g.edge_hi(run.back()) * pad;
            b.mid[static_cast<std::size_t>(it)] = g.radii[static_cast<std::size_t>(run[run.size() / 2])];
            rmin = std::min(rmin, b.lo[static_cast<std::size_t>(it)]);
            rmax = std::max(rmax, b.hi[static_cast<std::size_t>(it)]);
        }
    }
    b.label.r_min = rmin;
    b.label.r_max = rmax;
    return b;
}

// Cells of the mask that stay in it under +-2 radial shifts; falls back to
// the full mask when the band is too thin to erode.
std::vector<std::size_t> interior_cells(const PolarGrid& g, const std::vector<std::uint8_t>& mask) {
    std::vector<std::size_t> interior, all;
    for (int it = 0; it < g.n_theta; ++it) {
        for (int ir = 0; ir < g.n_r; ++ir) {
            if (!mask[g.idx(it, ir)]) continue;
            all.push_back(g.idx(it, ir));
            if (ir >= 2 && ir + 2 < g.n_r && mask[g.idx(it, ir - 1)] && mask[g.idx(it, ir - 2)] &&
                mask[g.idx(it, ir + 1)] && mask[g.idx(it, ir + 2)]) {
                interior.push_back(g.idx(it, ir));
            }
        }
    }
    return interior.size() >= 32 ? interior : all;
}

}  // namespace

LabelTable label_annuli(const ParameterPair& p, int max_depth, PolarResolution res,
                        const ClassifierBudget& budget, int n_threads) {
    require_valid(p);
    if (max_depth < 0) throw std::domain_error("blaschke: max_depth must be >= 0");
    if (classify(p, budget) != FatouCase::CaseC)
        throw std::domain_error("blaschke: label_annuli requires a CaseC parameter");

    const CriticalInventory inv = full_inventory(p, budget.inventory_bound);
    const double r_lo = std::sqrt(std::abs(p.lambda) / 3.0);
    const PolarGrid g = polar_escape_grid(p, r_lo, 2.0, res.n_theta, res.n_r, budget.max_iter,
                                          budget.rho, n_threads);

    // Seed cell for the critical component: the cell under c_-, or a close
    // neighbour whose center shares the orbit signature of c_- itself.
    const EscapeScan ws = escape_scan(p, inv.c_minus, budget.max_iter, budget.rho);
    const GridCell wsig {ws.escape_index, ws.route_class};
    const int wt = g.theta_bin(inv.c_minus);
    int wr = static_cast<int>(std::lround((std::log(std::abs(inv.c_minus)) - std::log(g.r_lo)) / g.log_step));
    wr = std::clamp(wr, 0, g.n_r - 1);
    int st = -1, sr = -1;
    for (int dt = 0; dt <= 2 && st < 0; ++dt) {
        for (int dr = -2; dr <= 2 && st < 0; ++dr) {
            for (int sgn : {1, -1}) {
                const int it = (wt + sgn * dt + g.n_theta) % g.n_theta;
                const int ir = wr + dr;
                if (ir < 0 || ir >= g.n_r) continue;
                if (g.at(it, ir) == wsig) {
                    st = it;
                    sr = ir;
                    break;
                }
            }
        }
    }
    if (st < 0) throw LabelingError("blaschke: no raster cell shares the signature of c_-");

    // Critical component plus its bounded pockets = the filled annulus,
    // label 0.
    std::vector<std::uint8_t> core(g.cells.size(), 0);
    for (std::size_t i = 0; i < g.cells.size(); ++i) core[i] = (g.cells[i] == wsig) ? 1 : 0;
    int ncomp = 0;
    const std::vector<std::int32_t> comp_ids = cylinder_components(g.n_theta, g.n_r, core, ncomp);
    const std::int32_t cid = comp_ids[g.idx(st, sr)];
    std::vector<std::uint8_t> s0(g.cells.size(), 0);
    for (std::size_t i = 0; i < g.cells.size(); ++i) s0[i] = (comp_ids[i] == cid) ? 1 : 0;
    const std::vector<std::uint8_t> s0_core = s0;
    if (complement_connects_borders(g.n_theta, g.n_r, s0))
        throw LabelingError("blaschke: the critical component does not ring the origin");
    fill_cylinder_holes(g.n_theta, g.n_r, s0);

    constexpr double kMembershipPad = 4.0;   // cells of lookup tolerance
    LabelTable::Band band0_detect = band_from_mask(g, s0, 0.0);
    LabelTable::Band band0 = band_from_mask(g, s0, kMembershipPad);
    band0.label.id = 0;
    band0.label.depth = 0;
    band0.label.image_id = -1;
    for (int it = 0; it < g.n_theta; ++it)
        if (band0.lo[static_cast<std::size_t>(it)] < 0.0)
            throw LabelingError("blaschke: filled critical annulus misses an angle bin");

    // Inner edge of the image annulus of the critical component, from the
    // unfilled core: everything a 0-symbol can legally be followed by lies
    // radially below it.
    const detail::MapEval f(p);
    double w3_edge = INFINITY;
    {
        const std::vector<std::size_t> cells = interior_cells(g, s0_core);
        const std::size_t stride = std::max<std::size_t>(1, cells.size() / 4096);
        for (std::size_t k = 0; k < cells.size(); k += stride) {
            const int it = static_cast<int>(cells[k] / static_cast<std::size_t>(g.n_r));
            const int ir = static_cast<int>(cells[k] % static_cast<std::size_t>(g.n_r));
            const double m = f(g.center(it, ir)).modulus();
            if (std::isfinite(m)) w3_edge = std::min(w3_edge, m);
        }
    }

    // Steps to reach the filled annulus, evaluated at cell centers.
    std::vector<std::int8_t> depth(g.cells.size(), -1);
    parallel_for(g.n_theta, n_threads, [&](int it) {
        for (int ir = 0; ir < g.n_r; ++ir) {
            const std::size_t i = g.idx(it, ir);
            if (s0[i]) {
                depth[i] = 0;
                continue;
            }
            ExtendedComplex w = g.center(it, ir);
            for (int j = 1; j <= max_depth; ++j) {
                w = f(w);
                const double r = w.modulus();
                if (!std::isfinite(r) || r > 2.0) break;
                const int ia = g.theta_bin(w.value());
                const double lo = band0_detect.lo[static_cast<std::size_t>(ia)];
                if (lo >= 0.0 && r >= lo && r <= band0_detect.hi[static_cast<std::size_t>(ia)]) {
                    depth[i] = static_cast<std::int8_t>(j);
                    break;
                }
            }
        }
    });

    // Bands of constant depth that ring the origin.
    struct Raw {
        LabelTable::Band band;
        std::vector<std::uint8_t> mask;
    };
    std::vector<Raw> raw;
    for (int d = 1; d <= max_depth; ++d) {
        std::vector<std::uint8_t> mask(g.cells.size(), 0);
        for (std::size_t i = 0; i < g.cells.size(); ++i) mask[i] = (depth[i] == d) ? 1 : 0;
        int nd = 0;
        const std::vector<std::int32_t> ids = cylinder_components(g.n_theta, g.n_r, mask, nd);
        std::vector<int> counts(static_cast<std::size_t>(nd), 0);
        for (const std::int32_t id : ids)
            if (id >= 0) ++counts[static_cast<std::size_t>(id)];
        for (int c = 0; c < nd; ++c) {
            if (counts[static_cast<std::size_t>(c)] < g.n_theta) continue;  // cannot wrap
            std::vector<std::uint8_t> one(g.cells.size(), 0);
            for (std::size_t i = 0; i < g.cells.size(); ++i) one[i] = (ids[i] == c) ? 1 : 0;
            if (complement_connects_borders(g.n_theta, g.n_r, one)) continue;
            Raw r;
            r.band = band_from_mask(g, one, kMembershipPad);
            r.band.label.depth = d;
            r.mask = std::move(one);
            raw.push_back(std::move(r));
        }
    }

    std::sort(raw.begin(), raw.end(), [](const Raw& l, const Raw& r) {
        if (l.band.label.depth != r.band.label.depth) return l.band.label.depth < r.band.label.depth;
        return l.band.label.r_min < r.band.label.r_min;
    });

    std::vector<LabelTable::Band> bands;
    bands.push_back(std::move(band0));
    for (std::size_t k = 0; k < raw.size(); ++k) {
        raw[k].band.label.id = static_cast<int>(k) + 1;
        bands.push_back(raw[k].band);
    }

    // The lookup pad must never bridge two bands: padded per-angle intervals
    // of distinct labels have to stay disjoint.
    for (int it = 0; it < g.n_theta; ++it) {
        std::vector<std::pair<double, double>> spans;
        for (const LabelTable::Band& b : bands) {
            const double lo = b.lo[static_cast<std::size_t>(it)];
            if (lo >= 0.0) spans.emplace_back(lo, b.hi[static_cast<std::size_t>(it)]);
        }
        std::sort(spans.begin(), spans.end());
        for (std::size_t k = 1; k < spans.size(); ++k)
            if (spans[k].first <= spans[k - 1].second)
                throw LabelingError("blaschke: bands overlap radially at this resolution");
    }

    LabelTable table(bands, w3_edge, g.n_theta);

    // Link every band to the band its points map into; one step must land
    // all interior samples in a single band one depth up.
    std::vector<int> image_of(bands.size(), -1);
    for (std::size_t k = 0; k < raw.size(); ++k) {
        const std::vector<std::size_t> cells = interior_cells(g, raw[k].mask);
        const std::size_t want = 64;
        const std::size_t stride = std::max<std::size_t>(1, cells.size() / want);
        int target = -2, landed = 0, sampled = 0;
        for (std::size_t c = 0; c < cells.size(); c += stride) {
            const int it = static_cast<int>(cells[c] / static_cast<std::size_t>(g.n_r));
            const int ir = static_cast<int>(cells[c] % static_cast<std::size_t>(g.n_r));
            const ExtendedComplex w = f(g.center(it, ir));
            ++sampled;
            if (w.is_infinity()) continue;
            const int hit = table.find_band(w.value());
            if (hit < 0) continue;
            ++landed;
            if (target == -2) target = hit;
            else if (target != hit) throw LabelingError("blaschke: band image is ambiguous");
        }
        if (target < 0 || landed * 5 < sampled * 4)
            throw LabelingError("blaschke: band image could not be identified");
        const int d_here = raw[k].band.label.depth;
        const int d_img = table.labels()[static_cast<std::size_t>(target)].depth;
        if (d_img != d_here - 1) throw LabelingError("blaschke: band image depth mismatch");
        image_of[k + 1] = target;
    }

    // Rebuild with image ids in place.
    std::vector<LabelTable::Band> final_bands;
    final_bands.push_back(bands[0]);
    for (std::size_t k = 1; k < bands.size(); ++k) {
        bands[k].label.image_id = image_of[k];
        final_bands.push_back(bands[k]);
    }
    return LabelTable(std::move(final_bands), w3_edge, g.n_theta);
}

Itinerary compute_itinerary(const ParameterPair& p, const LabelTable& labels, Complex z,
                            int max_steps, double rho) {
    require_valid(p);
    Itinerary out;
    const detail::MapEval f(p);
    ExtendedComplex w = z;
    for (int s = 0; s < max_steps; ++s) {
        const int id = w.is_infinity() ? -1 : labels.find_band(w.value());
        if (id < 0) {
            out.terminal = escape_scan(p, w, kClassifyMaxIter, rho).escaped()
                               ? ItineraryTerminal::Escaped
                               : ItineraryTerminal::LeftLabeledSet;
            return out;
        }
        out.symbols.push_back(id);
        w = f(w);
    }
    out.terminal = ItineraryTerminal::BudgetExhausted;
    return out;
}

std::vector<ItineraryViolation> check_itinerary(const LabelTable& labels, const Itinerary& it) {
    std::vector<ItineraryViolation> out;
    const auto& lab = labels.labels();
    const int n_labels = static_cast<int>(lab.size());
    for (std::size_t u = 0; u < it.symbols.size(); ++u) {
        const int s = it.symbols[u];
        if (s < 0 || s >= n_labels) {
            out.push_back({static_cast<int>(u), ViolationKind::UnknownLabel});
            continue;
        }
        if (u + 1 >= it.symbols.size()) break;
        const int t = it.symbols[u + 1];
        if (t < 0 || t >= n_labels) continue;  // flagged on the next pass
        if (s == 0) {
            if (t == 0) {
                out.push_back({static_cast<int>(u + 1), ViolationKind::ConsecutiveZeros});
            } else if (lab[static_cast<std::size_t>(t)].r_min >= labels.w3_outer_edge()) {
                out.push_back({static_cast<int>(u + 1), ViolationKind::ZeroNotFollowedIntoW3});
            }
        } else if (t != lab[static_cast<std::size_t>(s)].image_id) {
            out.push_back({static_cast<int>(u + 1), ViolationKind::ImageLinkMismatch});
        }
    }
    return out;
}

void write_labels(std::ostream& os, const LabelTable& table) {
    os << "# id r_min r_max depth image_id\n";
    for (const AnnulusLabel& l : table.labels()) {
        os << l.id << ' ' << l.r_min << ' ' << l.r_max << ' ' << l.depth << ' ' << l.image_id
           << '\n';
    }
}

}  // namespace blaschke
