#pragma once

#include "blaschke/types.hpp"

namespace blaschke {

namespace detail {

// Hot-path evaluator with the conjugate and decision flags precomputed.
// All public entry points funnel through this so that every consumer of a
// map value computes it with the identical expression, bit for bit.
struct MapEval {
    Complex a;
    Complex abar;
    Complex lambda;
    bool perturbed;

    explicit MapEval(const ParameterPair& p)
        : a(p.a), abar(std::conj(p.a)), lambda(p.lambda), perturbed(p.lambda != Complex(0.0)) {}

    ExtendedComplex operator()(const ExtendedComplex& ze) const {
        if (ze.is_infinity()) return ExtendedComplex::infinity();
        const Complex z = ze.value();
        if (z == Complex(0.0)) {
            if (!perturbed) return Complex(0.0);
            return ExtendedComplex::infinity();
        }
        const Complex den = Complex(1.0) - abar * z;
        if (den == Complex(0.0)) return ExtendedComplex::infinity();
        Complex w = z * z * z * ((z - a) / den);
        if (perturbed) w += lambda / (z * z);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) ||
            std::max(std::abs(w.real()), std::abs(w.imag())) > kInfinityThreshold) {
            return ExtendedComplex::infinity();
        }
        return w;
    }
};

}  // namespace detail

// B(z) = z^3 (z - a)/(1 - conj(a) z) + lambda / z^2 on the Riemann sphere.
// Infinity is returned exactly at z = 0 (lambda != 0), z = 1/conj(a), z = inf,
// and whenever the value overflows the finite range.
ExtendedComplex eval(const ParameterPair& p, ExtendedComplex z);

// B'(z) = 3 z^2 (z-a)/(1-conj(a)z) + z^3 (1-|a|^2)/(1-conj(a)z)^2 - 2 lambda / z^3.
// Throws std::domain_error at z = 0 and z = 1/conj(a).
Complex eval_derivative(const ParameterPair& p, Complex z);

// Second derivative; same domain restrictions as eval_derivative. Used by
// Newton refinement of critical points.
Complex eval_second_derivative(const ParameterPair& p, Complex z);

// The unperturbed Blaschke product B_a(z) = z^3 (z - a)/(1 - conj(a) z),
// i.e. eval with lambda = 0.
ExtendedComplex eval_blaschke(Complex a, ExtendedComplex z);

}  // namespace blaschke
