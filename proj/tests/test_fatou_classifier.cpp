#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blaschke/fatou_classifier.hpp"
#include "blaschke/rational_map.hpp"
#include "test_util.hpp"

using namespace blaschke;
using testutil::Rng;

namespace {
const Complex kA {0.5, 0.0};
const ParameterPair kCaseA {kA, Complex(3.022e-5, 0.0)};
const ParameterPair kCaseB {kA, Complex(2.8e-5, 8.4e-7)};
const ParameterPair kCaseC {kA, Complex(1e-5, 0.0)};

EscapeGrid blank_grid(int n) {
    EscapeGrid g;
    g.window = {Complex(0.0, 0.0), 2.2, 2.2};
    g.nx = g.ny = n;
    g.cells.assign(static_cast<std::size_t>(n) * n, GridCell {});
    return g;
}

void paint(EscapeGrid& g, bool (*member)(Complex)) {
    for (int y = 0; y < g.ny; ++y)
        for (int x = 0; x < g.nx; ++x)
            if (member(g.center(x, y))) g.cells[static_cast<std::size_t>(y) * g.nx + x] = {1, 0};
}
}

TEST_CASE("the three reference parameters split into the three cases") {
    CHECK(classify(kCaseA) == FatouCase::CaseA);
    CHECK(classify(kCaseB) == FatouCase::CaseB);
    CHECK(classify(kCaseC) == FatouCase::CaseC);
}

TEST_CASE("a captured critical orbit reports NotEscaping") {
    // center of a capture component in the lambda plane for a = 0.5
    const ParameterPair p {kA, Complex(2.4392405063291116e-05, 1.0126582278481051e-06)};
    CHECK(classify(p) == FatouCase::NotEscaping);
}

TEST_CASE("classifier preconditions") {
    CHECK_THROWS_AS((void)classify(ParameterPair {kA, Complex(0.0, 0.0)}), std::domain_error);
    CHECK_THROWS_AS((void)classify(ParameterPair {kA, Complex(0.01, 0.0)}), std::domain_error);
}

TEST_CASE("surround test on simple witnesses") {
    // the whole circle |z| = 3 lies in the basin
    CHECK(surrounds_origin(kCaseC, Complex(3.0, 0.0)));
    CHECK(surrounds_origin(kCaseB, Complex(3.0, 0.0)));
    CHECK_FALSE(surrounds_origin(ParameterPair {kA, Complex(0.0, 0.0)}, Complex(0.5, 0.0)));

    // the critical component rings the origin exactly in the third case
    CHECK(surrounds_origin(kCaseC, full_inventory(kCaseC).c_minus));
    CHECK_FALSE(surrounds_origin(kCaseB, full_inventory(kCaseB).c_minus));
}

TEST_CASE("escape grid basics") {
    const EscapeGrid g4 = escape_grid(kCaseC, {Complex(0.0, 0.0), 4.0, 4.0}, 64, 64, 100);
    for (const auto [ix, iy] : {std::pair {0, 0}, std::pair {63, 0}, std::pair {0, 63}, std::pair {63, 63}}) {
        CHECK(g4.at(ix, iy).escaped());
        CHECK(g4.at(ix, iy).escape_index == 0);
    }

    const ParameterPair p0 {kA, Complex(0.0, 0.0)};
    const EscapeGrid g1 = escape_grid(p0, {Complex(0.0, 0.0), 1.0, 1.0}, 64, 64, 200);
    for (const GridCell& c : g1.cells) CHECK_FALSE(c.escaped());

    const EscapeGrid gt = escape_grid(kCaseC, {Complex(0.0, 0.0), 0.002, 0.002}, 64, 64, 100);
    for (const GridCell& c : gt.cells) {
        CHECK(c.escaped());
        CHECK(c.escape_index <= 1);
    }

    CHECK_THROWS_AS((void)escape_grid(kCaseC, {Complex(0.0, 0.0), 1.0, 1.0}, 8, 64, 10),
                    std::domain_error);
}

TEST_CASE("grid cells agree with direct scans at the pixel centers") {
    const Window w {Complex(0.05, -0.1), 2.4, 2.4};
    const EscapeGrid g2 = escape_grid(kCaseC, w, 64, 64, 300, kDefaultRho, 2);
    const EscapeGrid g7 = escape_grid(kCaseC, w, 64, 64, 300, kDefaultRho, 7);
    for (int iy = 0; iy < 64; ++iy) {
        for (int ix = 0; ix < 64; ++ix) {
            CHECK(g2.at(ix, iy) == g7.at(ix, iy));
            const EscapeScan s = escape_scan(kCaseC, g2.center(ix, iy), 300);
            CHECK(g2.at(ix, iy).escape_index == s.escape_index);
            CHECK(g2.at(ix, iy).route_class == s.route_class);
        }
    }
}

TEST_CASE("pixel mapping round trip") {
    const EscapeGrid g = escape_grid(kCaseC, {Complex(0.1, -0.2), 3.0, 2.0}, 32, 48, 10);
    for (int iy = 0; iy < g.ny; iy += 7) {
        for (int ix = 0; ix < g.nx; ix += 5) {
            int jx = -1, jy = -1;
            REQUIRE(g.pixel_of(g.center(ix, iy), jx, jy));
            CHECK(jx == ix);
            CHECK(jy == iy);
        }
    }
    int jx = 0, jy = 0;
    CHECK_FALSE(g.pixel_of(Complex(10.0, 0.0), jx, jy));
}

TEST_CASE("component statistics on synthetic shapes") {
    EscapeGrid disk = blank_grid(128);
    paint(disk, [](Complex z) { return std::abs(z) < 0.8; });
    const ComponentStats sd = component_stats(disk, 64, 64);
    CHECK(sd.connectivity == 1);
    CHECK(sd.surrounds_origin);

    EscapeGrid ann = blank_grid(128);
    paint(ann, [](Complex z) { return std::abs(z) > 0.4 && std::abs(z) < 0.9; });
    int ix = 0, iy = 0;
    ann.pixel_of(Complex(0.65, 0.0), ix, iy);
    const ComponentStats sa = component_stats(ann, ix, iy);
    CHECK(sa.connectivity == 2);
    CHECK(sa.surrounds_origin);
    CHECK(sa.pixel_count > 0);

    EscapeGrid off = blank_grid(128);
    paint(off, [](Complex z) { return std::abs(z - Complex(0.6, 0.0)) < 0.3; });
    off.pixel_of(Complex(0.6, 0.0), ix, iy);
    const ComponentStats so = component_stats(off, ix, iy);
    CHECK(so.connectivity == 1);
    CHECK_FALSE(so.surrounds_origin);

    // connectivity counts holes exactly
    EscapeGrid holes = blank_grid(256);
    paint(holes, [](Complex z) {
        if (std::abs(z) >= 0.9) return false;
        for (int k = 0; k < 3; ++k)
            if (std::abs(z - std::polar(0.5, testutil::kTwoPi * k / 3)) < 0.15) return false;
        return true;
    });
    holes.pixel_of(Complex(0.0, 0.0), ix, iy);
    CHECK(component_stats(holes, ix, iy).connectivity == 4);

    CHECK_THROWS_AS((void)component_stats(disk, 0, 0), std::domain_error);  // corner not painted
}

TEST_CASE("the critical component of the CaseC plane is triply connected") {
    const CriticalInventory inv = full_inventory(kCaseC);
    const EscapeGrid g = escape_grid(kCaseC, {Complex(0.0, 0.0), 2.4, 2.4}, 1024, 1024,
                                     kDynamicalMaxIter);
    int ix = 0, iy = 0;
    REQUIRE(g.pixel_of(inv.c_minus, ix, iy));
    REQUIRE(g.at(ix, iy).escaped());
    const ComponentStats st = component_stats(g, ix, iy);
    CHECK(st.connectivity == 3);
    CHECK(st.surrounds_origin);
}
