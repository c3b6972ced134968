#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blaschke/critical_finder.hpp"
#include "blaschke/orbit_engine.hpp"
#include "blaschke/rational_map.hpp"
#include "test_util.hpp"

using namespace blaschke;
using testutil::Rng;

namespace {
const ParameterPair kP {Complex(0.5, 0.0), Complex(1e-5, 0.0)};
const ParameterPair kP0 {Complex(0.5, 0.0), Complex(0.0, 0.0)};
}

TEST_CASE("region tags partition the plane") {
    CHECK(region_tag(kP, Complex(3.0, 0.0)) == RegionTag::FarField);
    CHECK(region_tag(kP, Complex(0.001, 0.0)) == RegionTag::PoleThroat);
    CHECK(region_tag(kP, Complex(0.115, 0.0)) == RegionTag::SmallAnnulus);
    CHECK(region_tag(kP, Complex(0.5, 0.0)) == RegionTag::MidZone);
    CHECK(region_tag(kP, ExtendedComplex::infinity()) == RegionTag::FarField);
    // unperturbed: no throat, no annulus
    CHECK(region_tag(kP0, Complex(0.001, 0.0)) == RegionTag::MidZone);
    CHECK(region_tag(kP0, Complex(0.115, 0.0)) == RegionTag::MidZone);
}

TEST_CASE("escape from the far field is immediate") {
    const OrbitRecord rec = iterate_orbit(kP, Complex(3.0, 0.0), 100);
    CHECK(rec.escaped);
    CHECK(*rec.escape_index == 0);
    CHECK(rec.route.size() == 1);
    CHECK(rec.route[0] == RegionTag::FarField);
}

TEST_CASE("the unperturbed disk never escapes") {
    const OrbitRecord rec = iterate_orbit(kP0, Complex(0.3, 0.2), 500);
    CHECK_FALSE(rec.escaped);
    CHECK_FALSE(rec.escape_index.has_value());
    CHECK(rec.final_point.modulus() < 1.0);
}

TEST_CASE("critical orbit escapes through the small annulus") {
    const CriticalInventory inv = full_inventory(kP);
    const OrbitRecord rec = iterate_orbit(kP, inv.c_minus, kClassifyMaxIter);
    REQUIRE(rec.escaped);
    bool small_before_far = false, seen_small = false;
    for (const RegionTag t : rec.route) {
        if (t == RegionTag::SmallAnnulus) seen_small = true;
        if (t == RegionTag::FarField && seen_small) small_before_far = true;
    }
    CHECK(small_before_far);
}

TEST_CASE("escape times at the marked points") {
    CHECK(escape_time_at(kP, Complex(3.0, 0.0), 100) == 0);
    CHECK_FALSE(escape_time_at(kP0, Complex(0.9, 0.0), 500).has_value());
    // a throat point sends the next iterate into the basin
    CHECK(escape_time_at(kP, Complex(0.001, 0.0), 100) == 1);
    // the origin is a double pole once lambda != 0
    CHECK(escape_time_at(kP, Complex(0.0, 0.0), 100) == 1);
}

TEST_CASE("budget edge cases stay honest") {
    CHECK(escape_time_at(kP, Complex(3.0, 0.0), 1) == 0);
    // throat confirmation needs two lookahead iterates
    CHECK_FALSE(escape_time_at(kP, Complex(0.001, 0.0), 1).has_value());
    CHECK_THROWS_AS((void)iterate_orbit(kP, Complex(1.0, 0.0), 0), std::domain_error);
}

TEST_CASE("throat samples land past the bailout radius") {
    Rng rng(555);
    const double throat = std::sqrt(std::abs(kP.lambda) / 3.0);
    for (int i = 0; i < 1000; ++i) {
        CHECK(eval(kP, rng.disk(throat)).modulus() > 2.0);
    }
}

TEST_CASE("beyond modulus two the orbit never comes back") {
    Rng rng(556);
    int used = 0;
    for (int i = 0; used < 100 && i < 5000; ++i) {
        const Complex z0 = rng.disk(1.5);
        const OrbitRecord rec = iterate_orbit(kP, z0, kDynamicalMaxIter);
        if (!rec.escaped) continue;
        ++used;
        ExtendedComplex z = z0;
        bool above = false;
        for (int k = 0; k < *rec.escape_index + 10; ++k) {
            if (above) CHECK(z.modulus() > 2.0);
            if (z.modulus() > 2.0) above = true;
            z = eval(kP, z);
        }
    }
    CHECK(used == 100);
}

TEST_CASE("unperturbed dichotomy") {
    Rng rng(557);
    for (int i = 0; i < 1000; ++i) {
        ExtendedComplex z = rng.disk(0.99);
        bool contracted = false;
        for (int k = 0; k < kDynamicalMaxIter; ++k) {
            z = eval(kP0, z);
            if (z.modulus() < 1e-6) {
                contracted = true;
                break;
            }
        }
        CHECK(contracted);
    }
    for (int i = 0; i < 1000; ++i) {
        CHECK(escape_scan(kP0, rng.annulus(1.01, 1.6), kDynamicalMaxIter).escaped());
    }
}

TEST_CASE("orbit records are reproducible bit for bit") {
    Rng rng(558);
    for (int i = 0; i < 50; ++i) {
        const Complex z0 = rng.disk(1.4);
        const OrbitRecord r1 = iterate_orbit(kP, z0, 300);
        const OrbitRecord r2 = iterate_orbit(kP, z0, 300);
        CHECK(r1.escaped == r2.escaped);
        CHECK(r1.escape_index == r2.escape_index);
        CHECK(r1.route == r2.route);
        CHECK(r1.final_point == r2.final_point);
        const EscapeScan s = escape_scan(kP, z0, 300);
        CHECK(s.escaped() == r1.escaped);
        if (r1.escaped) CHECK(s.escape_index == *r1.escape_index);
    }
}
