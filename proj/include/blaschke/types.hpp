#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace blaschke {

using Complex = std::complex<double>;

// Any finite value whose modulus exceeds this is demoted to the infinity
// tag. Far beyond every bailout radius in use, so orbits cannot see NaN.
inline constexpr double kInfinityThreshold = 1e150;

// Parameters (a, lambda) of the singularly perturbed Blaschke product
//   B(z) = z^3 (z - a)/(1 - conj(a) z) + lambda / z^2.
// a must lie in the punctured unit disk; lambda = 0 selects the plain
// Blaschke product.
struct ParameterPair {
    Complex a;
    Complex lambda;

    bool valid() const {
        const double m = std::abs(a);
        return m > 0.0 && m < 1.0;
    }
};

inline void require_valid(const ParameterPair& p) {
    if (!p.valid()) throw std::domain_error("blaschke: parameter a must satisfy 0 < |a| < 1");
}

// A point of the Riemann sphere: a finite complex number or the point at
// infinity. The tag is explicit; it is never an overflowed float.
class ExtendedComplex {
public:
    ExtendedComplex() = default;
    ExtendedComplex(Complex z) : value_(z) {}
    ExtendedComplex(double x) : value_(x, 0.0) {}

    static ExtendedComplex infinity() {
        ExtendedComplex e;
        e.inf_ = true;
        return e;
    }

    bool is_infinity() const { return inf_; }
    bool is_finite() const { return !inf_; }

    // Only meaningful when finite.
    Complex value() const { return value_; }

    double modulus() const { return inf_ ? INFINITY : std::abs(value_); }

    friend bool operator==(const ExtendedComplex& l, const ExtendedComplex& r) {
        if (l.inf_ || r.inf_) return l.inf_ && r.inf_;
        return l.value_ == r.value_;
    }
    friend bool operator!=(const ExtendedComplex& l, const ExtendedComplex& r) { return !(l == r); }

private:
    Complex value_ {0.0, 0.0};
    bool inf_ = false;
};

// Axis-aligned rectangular window in the complex plane.
struct Window {
    Complex center {0.0, 0.0};
    double width = 4.0;
    double height = 4.0;
};

struct NoConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInventoryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LabelingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace blaschke
