#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blaschke/rational_map.hpp"
#include "test_util.hpp"

using namespace blaschke;
using testutil::Rng;

namespace {
const ParameterPair kP {Complex(0.5, 0.0), Complex(1e-5, 0.0)};
const ParameterPair kP0 {Complex(0.5, 0.0), Complex(0.0, 0.0)};
}

TEST_CASE("map value at simple points") {
    // at z = 1 with real a the Blaschke factor is exactly 1
    const ExtendedComplex v = eval(kP, Complex(1.0, 0.0));
    CHECK(v.is_finite());
    CHECK(std::abs(v.value() - Complex(1.0 + 1e-5, 0.0)) < 1e-15);

    // superattracting fixed point of the unperturbed product
    CHECK(eval(kP0, Complex(0.0, 0.0)) == ExtendedComplex(Complex(0.0, 0.0)));

    // close to the pole the perturbation dominates: |B(z)| ~ |lambda|/|z|^2
    const ExtendedComplex w = eval(kP, Complex(0.001, 0.0));
    CHECK(w.modulus() > 2.0);
    const auto oracle = testutil::eval_long_double(kP.a, kP.lambda, Complex(0.001, 0.0));
    CHECK(std::abs(w.value() - Complex(double(oracle.real()), double(oracle.imag()))) <
          1e-12 * std::abs(oracle));
    CHECK(w.modulus() == doctest::Approx(10.0).epsilon(0.01));
}

TEST_CASE("poles and infinity carry the explicit tag") {
    CHECK(eval(kP, Complex(0.0, 0.0)).is_infinity());
    CHECK(eval(kP, Complex(2.0, 0.0)).is_infinity());          // 1/conj(a)
    CHECK(eval(kP, ExtendedComplex::infinity()).is_infinity());
    CHECK(eval(kP0, Complex(2.0, 0.0)).is_infinity());
    // overflow demotes to the tag, never NaN
    CHECK(eval(kP, Complex(1e120, 0.0)).is_infinity());
}

TEST_CASE("derivative at the free critical point and away from it") {
    const Complex c_minus(0.38196601125010515, 0.0);
    CHECK(std::abs(eval_derivative(kP0, c_minus)) < 1e-12);
    CHECK(std::abs(eval_derivative(kP0, Complex(1.0, 0.0))) > 1e-3);
}

TEST_CASE("derivative matches finite differences") {
    const Complex z(0.1, 0.0);
    const Complex fd = testutil::finite_difference(kP, z, 1e-7);
    const Complex d = eval_derivative(kP, z);
    CHECK(std::abs(d - fd) < 1e-6 * std::abs(d));

    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        const Complex w = rng.annulus(0.05, 1.8);
        if (std::abs(w - Complex(2.0, 0.0)) < 0.2) continue;
        const Complex dw = eval_derivative(kP, w);
        const Complex fdw = testutil::finite_difference(kP, w, 1e-7 * std::max(1.0, std::abs(w)));
        CHECK(std::abs(dw - fdw) <= 1e-5 * std::max(1.0, std::abs(dw)));
    }
}

TEST_CASE("derivative domain errors") {
    CHECK_THROWS_AS((void)eval_derivative(kP, Complex(0.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS((void)eval_derivative(kP, Complex(2.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS((void)eval(ParameterPair {Complex(0.0, 0.0), Complex(0.0, 0.0)}, Complex(1.0, 0.0)),
                    std::domain_error);
    CHECK_THROWS_AS((void)eval(ParameterPair {Complex(1.5, 0.0), Complex(0.0, 0.0)}, Complex(1.0, 0.0)),
                    std::domain_error);
}

TEST_CASE("Blaschke special case") {
    CHECK(eval_blaschke(Complex(0.5, 0.0), Complex(0.5, 0.0)).modulus() < 1e-15);
    CHECK(std::abs(eval_blaschke(Complex(0.5, 0.0), Complex(0.0, 1.0)).modulus() - 1.0) < 1e-12);
    CHECK(eval_blaschke(Complex(0.5, 0.0), Complex(0.9, 0.0)).modulus() < 1.0);
    // named special case agrees with lambda = 0
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const Complex z = rng.disk(1.9);
        CHECK(eval_blaschke(Complex(0.5, 0.0), z) == eval(kP0, z));
    }
}

TEST_CASE("unit circle invariance at lambda = 0") {
    Rng rng(123);
    const Complex a(0.37, -0.21);
    for (int i = 0; i < 1000; ++i) {
        const Complex z = rng.unit_circle();
        CHECK(std::abs(eval_blaschke(a, z).modulus() - 1.0) < 1e-10);
    }
}

TEST_CASE("sphere symmetry of the Blaschke product") {
    Rng rng(321);
    const Complex a(0.5, 0.0);
    int tested = 0;
    while (tested < 500) {
        const Complex z = rng.annulus(0.05, 3.0);
        if (std::abs(z) < 1e-3 || std::abs(z - Complex(2.0, 0.0)) < 1e-2) continue;
        const ExtendedComplex lhs = eval_blaschke(a, 1.0 / std::conj(z));
        const ExtendedComplex rhs_inner = eval_blaschke(a, z);
        if (lhs.is_infinity() || rhs_inner.is_infinity() || rhs_inner.modulus() < 1e-12) continue;
        const Complex rhs = 1.0 / std::conj(rhs_inner.value());
        CHECK(std::abs(lhs.value() - rhs) <= 1e-10 * std::abs(rhs));
        ++tested;
    }
}
