#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "blaschke/critical_finder.hpp"
#include "blaschke/rational_map.hpp"
#include "test_util.hpp"

using namespace blaschke;
using testutil::Rng;

namespace {
const ParameterPair kP {Complex(0.5, 0.0), Complex(1e-5, 0.0)};
}

TEST_CASE("closed-form critical points against the quadratic oracle") {
    const auto [cm, cp] = blaschke_crits(Complex(0.5, 0.0));
    CHECK(std::abs(cm - Complex(0.38196601125010515, 0.0)) < 1e-12);
    CHECK(std::abs(cp - Complex(2.618033988749895, 0.0)) < 1e-12);

    Rng rng(2024);
    for (int i = 0; i < 20; ++i) {
        const Complex a = std::polar(rng.uniform(0.05, 0.95), testutil::kTwoPi * rng.uniform());
        const auto [m, p] = blaschke_crits(a);
        const auto [om, op] = testutil::quadratic_crit_oracle(a);
        CHECK(std::abs(m - om) < 1e-10);
        CHECK(std::abs(p - op) < 1e-10);
        CHECK(std::abs(p - 1.0 / std::conj(m)) < 1e-12);
        CHECK(std::abs(m) < 1.0);
        CHECK(std::abs(p) > 1.0);
    }

    // the formula is a times a real scalar that depends only on |a|
    const auto [im_m, im_p] = blaschke_crits(Complex(0.0, 0.5));
    CHECK(std::abs(im_m - Complex(0.0, 0.38196601125010515)) < 1e-12);
    CHECK(std::abs(im_p - Complex(0.0, 2.618033988749895)) < 1e-12);

    CHECK_THROWS_AS((void)blaschke_crits(Complex(0.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS((void)blaschke_crits(Complex(1.0, 0.0)), std::domain_error);
}

TEST_CASE("small-root seeds") {
    const auto zs = small_zero_seeds(kP);
    const double want = std::exp(std::log(2e-5) / 5.0);   // |lambda/a|^(1/5)
    for (const Complex s : zs) CHECK(std::abs(std::abs(s) - want) < 1e-12);
    CHECK(want == doctest::Approx(0.11487).epsilon(1e-4));

    // sorted by argument, equally spaced by 2pi/5
    for (int k = 0; k + 1 < 5; ++k) {
        const double d = std::arg(zs[k + 1] / zs[k]);
        CHECK(d == doctest::Approx(testutil::kTwoPi / 5).epsilon(1e-10));
    }

    // product identity: the five seeds multiply to lambda/a
    Complex prod(1.0, 0.0);
    for (const Complex s : zs) prod *= s;
    CHECK(std::abs(prod - kP.lambda / kP.a) < 1e-18);

    const ParameterPair tiny {Complex(0.5, 0.0), Complex(1e-10, 0.0)};
    CHECK(std::abs(small_zero_seeds(tiny)[0]) == doctest::Approx(0.011487).epsilon(1e-4));

    const auto cs = small_crit_seeds(kP);
    const double wantc = std::exp(std::log(4.0 / 3.0 * 1e-5) / 5.0);
    CHECK(wantc == doctest::Approx(0.10592).epsilon(1e-3));
    for (const Complex s : cs) CHECK(std::abs(std::abs(s) - wantc) < 1e-12);

    // every seed inside the root annulus
    const double inner = std::pow(1e-5 / (2.0 * 0.5), 0.2);
    const double outer = std::pow(2.0 * 1e-5 / 0.5, 0.2);
    CHECK(inner == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(outer == doctest::Approx(0.13195).epsilon(1e-4));
    for (const Complex s : cs) {
        CHECK(std::abs(s) > inner);
        CHECK(std::abs(s) < outer);
    }

    const ParameterPair unperturbed {Complex(0.5, 0.0), Complex(0.0, 0.0)};
    CHECK_THROWS_AS((void)small_zero_seeds(unperturbed), std::domain_error);
    CHECK_THROWS_AS((void)small_crit_seeds(unperturbed), std::domain_error);
}

TEST_CASE("Newton refinement") {
    const auto seeds = small_zero_seeds(kP);
    const Complex w = refine_root(RootFunction::MapValue, kP, seeds[0]);
    CHECK(zero_residual(kP, w) < 1e-9 * std::max(1.0, std::abs(kP.lambda) / std::norm(w)));
    CHECK(std::abs(w - seeds[0]) < 0.1 * std::pow(std::abs(kP.lambda), 0.2));

    // continuation of c_- from the unperturbed value
    const ParameterPair near0 {Complex(0.5, 0.0), Complex(1e-12, 0.0)};
    const Complex cm = refine_root(RootFunction::MapDerivative, near0, Complex(0.38196601125010515, 0.0));
    CHECK(std::abs(cm - Complex(0.38196601125010515, 0.0)) < 1e-6);

    // continuation of the zero z_0 from z = a
    const Complex z0 = refine_root(RootFunction::MapValue, kP, Complex(0.5, 0.0));
    CHECK(zero_residual(kP, z0) < 1e-9);
    CHECK(std::abs(z0 - Complex(0.5, 0.0)) < 0.01);

    // seeds next to the pole at 1/conj(a) kick Newton out of the trust disk
    CHECK_THROWS_AS((void)refine_root(RootFunction::MapValue, kP, Complex(1.9, 0.0)),
                    NoConvergenceError);
    CHECK_THROWS_AS((void)refine_root(RootFunction::MapDerivative, kP, Complex(1.99, 0.0)),
                    NoConvergenceError);
}

TEST_CASE("full inventory at the reference parameter") {
    const CriticalInventory inv = full_inventory(kP);
    CHECK(inv.origin_is_pole);
    CHECK(inv.pole_z_inf == Complex(2.0, 0.0));
    CHECK(std::abs(inv.c_plus - Complex(2.618033988749895, 0.0)) < 1e-3);
    CHECK(std::abs(inv.c_minus) < 1.0);
    CHECK(std::abs(inv.c_plus) > 1.0);
    CHECK(std::abs(inv.z0 - Complex(0.5, 0.0)) < 0.01);
    for (const Complex w : inv.small_zeros) CHECK(std::abs(w) == doctest::Approx(0.115).epsilon(0.05));
    for (const Complex c : inv.small_crits) CHECK(std::abs(c) == doctest::Approx(0.106).epsilon(0.05));
    CHECK(check_annulus(kP, inv));

    // scaled residuals
    const double lam = std::abs(kP.lambda);
    for (const Complex w : inv.small_zeros)
        CHECK(zero_residual(kP, w) < 1e-9 * std::max(1.0, lam / std::norm(w)));
    for (const Complex c : inv.small_crits)
        CHECK(crit_residual(kP, c) < 1e-9 * std::max(1.0, lam / std::pow(std::abs(c), 3)));

    CHECK_THROWS_AS((void)full_inventory(ParameterPair {Complex(0.5, 0.0), Complex(0.0, 0.0)}),
                    std::domain_error);
    CHECK_THROWS_AS((void)full_inventory(ParameterPair {Complex(0.5, 0.0), Complex(0.01, 0.0)}),
                    std::domain_error);
}

TEST_CASE("annulus check rejects an artificial outlier") {
    CriticalInventory inv = full_inventory(kP);
    inv.small_zeros[2] = Complex(0.5, 0.0);
    CHECK_FALSE(check_annulus(kP, inv));
}

TEST_CASE("inventories hold up across random parameters") {
    Rng rng(9001);
    for (int k = 0; k < 100; ++k) {
        const Complex a = std::polar(rng.uniform(0.3, 0.8), testutil::kTwoPi * rng.uniform());
        const Complex lam =
            std::polar(std::pow(10.0, rng.uniform(-9.0, -6.0)), testutil::kTwoPi * rng.uniform());
        const ParameterPair p {a, lam};
        const CriticalInventory inv = full_inventory(p);
        CHECK(std::abs(inv.c_minus) < 1.0);
        CHECK(std::abs(inv.c_plus) > 1.0);
        CHECK(check_annulus(p, inv));
        CHECK(std::abs(inv.pole_z_inf - 1.0 / std::conj(a)) == 0.0);
        const double lm = std::abs(lam);
        for (const Complex w : inv.small_zeros)
            CHECK(zero_residual(p, w) < 1e-9 * std::max(1.0, lm / std::norm(w)));
        for (const Complex c : inv.small_crits)
            CHECK(crit_residual(p, c) < 1e-9 * std::max(1.0, lm / std::pow(std::abs(c), 3)));
    }
}

TEST_CASE("seed error decays faster than |lambda|^(1/5)") {
    double prev_seed = INFINITY, prev_rot = INFINITY;
    for (const double lam : {1e-5, 1e-7, 1e-9}) {
        const ParameterPair p {Complex(0.5, 0.0), Complex(lam, 0.0)};
        const CriticalInventory inv = full_inventory(p);
        const auto seeds = small_zero_seeds(p);
        double err = 0.0;
        for (int k = 0; k < 5; ++k) err = std::max(err, std::abs(inv.small_zeros[k] - seeds[k]));
        err /= std::pow(lam, 0.2);
        CHECK(err < prev_seed);
        prev_seed = err;

        // refined roots over the principal fifth root approximate the
        // fifth roots of unity, improving as lambda shrinks
        const Complex base = std::exp(std::log(p.lambda / p.a) / 5.0);
        double rot = 0.0;
        for (const Complex w : inv.small_zeros) {
            double best = INFINITY;
            for (int k = 0; k < 5; ++k)
                best = std::min(best, std::abs(w / base - std::polar(1.0, testutil::kTwoPi * k / 5)));
            rot = std::max(rot, best);
        }
        CHECK(rot < prev_rot);
        prev_rot = rot;
    }
}
