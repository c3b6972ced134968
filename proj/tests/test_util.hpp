#pragma once

#include <complex>
#include <random>

#include "blaschke/types.hpp"

namespace testutil {

constexpr double kTwoPi = 6.28318530717958647692;

// Portable deterministic uniforms on top of mt19937_64.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    blaschke::Complex unit_circle() { return std::polar(1.0, kTwoPi * uniform()); }
    blaschke::Complex disk(double radius) {
        return std::polar(radius * std::sqrt(uniform()), kTwoPi * uniform());
    }
    blaschke::Complex annulus(double r0, double r1) {
        const double r = std::sqrt(r0 * r0 + uniform() * (r1 * r1 - r0 * r0));
        return std::polar(r, kTwoPi * uniform());
    }
};

// Reference evaluation at extended precision, used as the independent
// arithmetic oracle for finite map values.
inline std::complex<long double> eval_long_double(blaschke::Complex a, blaschke::Complex lambda,
                                                  blaschke::Complex z) {
    using C = std::complex<long double>;
    const C al(a.real(), a.imag()), ll(lambda.real(), lambda.imag()), zl(z.real(), z.imag());
    C w = zl * zl * zl * (zl - al) / (C(1.0L) - std::conj(al) * zl);
    if (ll != C(0.0L)) w += ll / (zl * zl);
    return w;
}

// Centered finite differences of the map value; h is a real step, valid for
// holomorphic functions.
inline blaschke::Complex finite_difference(const blaschke::ParameterPair& p, blaschke::Complex z,
                                           double h) {
    const auto fp = blaschke::eval(p, z + blaschke::Complex(h, 0.0));
    const auto fm = blaschke::eval(p, z - blaschke::Complex(h, 0.0));
    return (fp.value() - fm.value()) / (2.0 * h);
}

// Roots of the quadratic numerator of the unperturbed derivative,
// -3 conj(a) z^2 + (4 + 2|a|^2) z - 3a = 0; the independent oracle for the
// closed-form critical points.
inline std::pair<blaschke::Complex, blaschke::Complex> quadratic_crit_oracle(blaschke::Complex a) {
    const double m = std::norm(a);
    const blaschke::Complex b(4.0 + 2.0 * m, 0.0);
    const blaschke::Complex disc = b * b - 36.0 * blaschke::Complex(m, 0.0);
    const blaschke::Complex s = std::sqrt(disc);
    const blaschke::Complex den = 6.0 * std::conj(a);
    blaschke::Complex r1 = (b - s) / den;
    blaschke::Complex r2 = (b + s) / den;
    if (std::abs(r1) > std::abs(r2)) std::swap(r1, r2);
    return {r1, r2};   // (inside, outside)
}

}  // namespace testutil
