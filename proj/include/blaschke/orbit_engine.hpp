#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "blaschke/types.hpp"

namespace blaschke {

// Structural regions of the dynamical plane, checked in this order:
// FarField |z| > 2, PoleThroat |z| < sqrt(|lambda|/3), SmallAnnulus the
// root-bearing annulus widened by rho, MidZone everything else.
enum class RegionTag : std::uint8_t {
    FarField = 0,
    PoleThroat = 1,
    SmallAnnulus = 2,
    MidZone = 3,
};

inline constexpr double kDefaultRho = 1.2;
inline constexpr int kDynamicalMaxIter = 500;
inline constexpr int kClassifyMaxIter = 2000;

struct OrbitRecord {
    bool escaped = false;
    std::optional<int> escape_index;   // unset when not escaped
    std::vector<RegionTag> route;      // tags of the iterates up to the escape
    ExtendedComplex final_point;
};

// Allocation-free orbit summary for raster work. route_class packs the
// first eight route tags, two bits each, low bits first.
struct EscapeScan {
    std::int32_t escape_index = -1;    // -1 when not escaped
    std::uint16_t route_class = 0;
    ExtendedComplex final_point;

    bool escaped() const { return escape_index >= 0; }
};

RegionTag region_tag(const ParameterPair& p, ExtendedComplex z, double rho = kDefaultRho);

// Escape-time iteration. An iterate in FarField escapes once the next
// iterate confirms |z| > 2; an iterate in PoleThroat sends the *next*
// iterate into the basin of infinity, confirmed one step later. escape_index
// is the first confirmed basin iterate (0 when the start already qualifies).
// Budget exhaustion is reported as escaped = false, never as an error.
OrbitRecord iterate_orbit(const ParameterPair& p, ExtendedComplex z0, int max_iter,
                          double rho = kDefaultRho);

EscapeScan escape_scan(const ParameterPair& p, ExtendedComplex z0, int max_iter,
                       double rho = kDefaultRho);

// escape_index of iterate_orbit, or nullopt when the orbit did not escape.
std::optional<int> escape_time_at(const ParameterPair& p, Complex z0, int max_iter,
                                  double rho = kDefaultRho);

namespace detail {

// Region radii precomputed for one parameter pair.
struct RegionGeometry {
    double throat_r = 0.0;
    double small_lo = 0.0;
    double small_hi = 0.0;
    bool perturbed = false;

    RegionGeometry(const ParameterPair& p, double rho) {
        const double lam = std::abs(p.lambda);
        perturbed = lam > 0.0;
        if (perturbed) {
            throat_r = std::sqrt(lam / 3.0);
            const double am = std::abs(p.a);
            small_lo = std::pow(lam / (2.0 * am), 0.2) / rho;
            small_hi = std::pow(2.0 * lam / am, 0.2) * rho;
        }
    }

    RegionTag tag(const ExtendedComplex& z) const {
        const double r = z.modulus();
        if (r > 2.0) return RegionTag::FarField;
        if (perturbed) {
            if (r < throat_r) return RegionTag::PoleThroat;
            if (r >= small_lo && r <= small_hi) return RegionTag::SmallAnnulus;
        }
        return RegionTag::MidZone;
    }
};

}  // namespace detail

}  // namespace blaschke
