#include "blaschke/orbit_engine.hpp"

#include "blaschke/rational_map.hpp"

namespace blaschke {

namespace {

// Shared scan core. Confirmation needs one iterate of lookahead after a
// FarField hit and two after a PoleThroat hit; lookaheads are reused as the
// orbit advances so each iterate is evaluated exactly once.
EscapeScan scan_core(const detail::MapEval& f, const detail::RegionGeometry& g,
                     ExtendedComplex z0, int max_iter, std::vector<RegionTag>* route) {
    ExtendedComplex zj = z0;
    ExtendedComplex zj1 = f(zj);
    ExtendedComplex zj2;
    bool have2 = false;

    EscapeScan out;
    std::uint16_t r8 = 0;
    int j = 0;
    while (j <= max_iter) {
        const RegionTag t = g.tag(zj);
        if (j < 8) r8 |= static_cast<std::uint16_t>(static_cast<unsigned>(t) << (2 * j));
        if (route) route->push_back(t);

        if (t == RegionTag::FarField) {
            if (j + 1 <= max_iter && zj1.modulus() > 2.0) {
                out.escape_index = j;
                out.route_class = r8;
                out.final_point = zj;
                return out;
            }
        } else if (t == RegionTag::PoleThroat) {
            if (j + 2 <= max_iter) {
                if (!have2) {
                    zj2 = f(zj1);
                    have2 = true;
                }
                if (zj2.modulus() > 2.0) {
                    const RegionTag t1 = g.tag(zj1);
                    if (j + 1 < 8) r8 |= static_cast<std::uint16_t>(static_cast<unsigned>(t1) << (2 * (j + 1)));
                    if (route) route->push_back(t1);
                    out.escape_index = j + 1;
                    out.route_class = r8;
                    out.final_point = zj1;
                    return out;
                }
            }
        }

        ++j;
        if (j > max_iter) break;
        zj = zj1;
        if (have2) {
            zj1 = zj2;
            have2 = false;
        } else {
            zj1 = f(zj);
        }
    }
    out.escape_index = -1;
    out.route_class = r8;
    out.final_point = zj;
    return out;
}

}  // namespace

RegionTag region_tag(const ParameterPair& p, ExtendedComplex z, double rho) {
    require_valid(p);
    return detail::RegionGeometry(p, rho).tag(z);
}

EscapeScan escape_scan(const ParameterPair& p, ExtendedComplex z0, int max_iter, double rho) {
    require_valid(p);
    if (max_iter < 1) throw std::domain_error("blaschke: max_iter must be >= 1");
    return scan_core(detail::MapEval(p), detail::RegionGeometry(p, rho), z0, max_iter, nullptr);
}

OrbitRecord iterate_orbit(const ParameterPair& p, ExtendedComplex z0, int max_iter, double rho) {
    require_valid(p);
    if (max_iter < 1) throw std::domain_error("blaschke: max_iter must be >= 1");
    OrbitRecord rec;
    EscapeScan s = scan_core(detail::MapEval(p), detail::RegionGeometry(p, rho), z0, max_iter,
                             &rec.route);
    rec.escaped = s.escaped();
    if (rec.escaped) {
        rec.escape_index = s.escape_index;
        rec.route.resize(static_cast<std::size_t>(s.escape_index) + 1);
    }
    rec.final_point = s.final_point;
    return rec;
}

std::optional<int> escape_time_at(const ParameterPair& p, Complex z0, int max_iter, double rho) {
    const EscapeScan s = escape_scan(p, z0, max_iter, rho);
    if (!s.escaped()) return std::nullopt;
    return s.escape_index;
}

}  // namespace blaschke
