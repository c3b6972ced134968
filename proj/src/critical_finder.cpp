#include "blaschke/critical_finder.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "blaschke/rational_map.hpp"

namespace blaschke {

namespace {

constexpr double kPi = 3.14159265358979323846;

double arg_in_2pi(Complex w) {
    double t = std::arg(w);
    if (t < 0.0) t += 2.0 * kPi;
    return t;
}

void sort_by_argument(std::array<Complex, 5>& roots) {
    std::sort(roots.begin(), roots.end(),
              [](Complex l, Complex r) { return arg_in_2pi(l) < arg_in_2pi(r); });
}

// Principal fifth root via the principal branch of log.
Complex fifth_root(Complex w) { return std::exp(std::log(w) / 5.0); }

std::array<Complex, 5> roots_of_unity_fan(Complex base, bool negate) {
    std::array<Complex, 5> out;
    for (int k = 0; k < 5; ++k) {
        const Complex xi = std::polar(1.0, 2.0 * kPi * k / 5.0);
        out[k] = negate ? -xi * base : xi * base;
    }
    sort_by_argument(out);
    return out;
}

}  // namespace

std::pair<Complex, Complex> blaschke_crits(Complex a) {
    ParameterPair p {a, Complex(0.0)};
    require_valid(p);
    const double m = std::norm(a);
    const double s = std::sqrt((m - 4.0) * (m - 1.0));  // positive real on 0 < |a| < 1
    const Complex c_plus = a * ((2.0 + m + s) / (3.0 * m));
    // same closed form; 2 + m - s cancels badly for small |a|, so use
    // (2 + m - s)(2 + m + s) = 9m and divide instead
    const Complex c_minus = 3.0 * a / (2.0 + m + s);
    return {c_minus, c_plus};
}

std::array<Complex, 5> small_zero_seeds(const ParameterPair& p) {
    require_valid(p);
    if (p.lambda == Complex(0.0)) throw std::domain_error("blaschke: small-zero seeds need lambda != 0");
    return roots_of_unity_fan(fifth_root(p.lambda / p.a), false);
}

std::array<Complex, 5> small_crit_seeds(const ParameterPair& p) {
    require_valid(p);
    if (p.lambda == Complex(0.0)) throw std::domain_error("blaschke: small-crit seeds need lambda != 0");
    return roots_of_unity_fan(fifth_root(2.0 * p.lambda / (3.0 * p.a)), true);
}

double zero_residual(const ParameterPair& p, Complex w) {
    return eval(p, w).modulus();
}

double crit_residual(const ParameterPair& p, Complex c) {
    return std::abs(eval_derivative(p, c));
}

Complex refine_root(RootFunction f, const ParameterPair& p, Complex seed) {
    require_valid(p);
    const bool value_mode = (f == RootFunction::MapValue);
    const double lam = std::abs(p.lambda);

    auto residual_ok = [&](Complex z, Complex fz) {
        const double az = std::abs(z);
        if (az == 0.0) return false;
        const double scale = value_mode ? std::max(1.0, lam / (az * az))
                                        : std::max(1.0, lam / (az * az * az));
        return std::abs(fz) < 1e-9 * scale;
    };

    Complex z = seed;
    double trust = 0.0;
    try {
        for (int it = 0; it < 50; ++it) {
            Complex fz;
            if (value_mode) {
                const ExtendedComplex v = eval(p, z);
                if (v.is_infinity()) throw NoConvergenceError("blaschke: Newton iterate hit a pole");
                fz = v.value();
            } else {
                fz = eval_derivative(p, z);
            }
            if (residual_ok(z, fz)) return z;
            const Complex dfz = value_mode ? eval_derivative(p, z) : eval_second_derivative(p, z);
            if (dfz == Complex(0.0)) throw NoConvergenceError("blaschke: Newton derivative vanished");
            const Complex step = fz / dfz;
            z -= step;
            if (it == 0) {
                trust = 10.0 * std::abs(step);
            } else if (std::abs(z - seed) > trust) {
                throw NoConvergenceError("blaschke: Newton iterate escaped the trust disk");
            }
        }
    } catch (const std::domain_error&) {
        throw NoConvergenceError("blaschke: Newton iterate left the map domain");
    }
    throw NoConvergenceError("blaschke: Newton did not converge in 50 iterations");
}

CriticalInventory full_inventory(const ParameterPair& p, double working_bound) {
    require_valid(p);
    if (p.lambda == Complex(0.0)) throw std::domain_error("blaschke: inventory needs lambda != 0");
    if (std::abs(p.lambda) > working_bound)
        throw std::domain_error("blaschke: |lambda| exceeds the inventory working bound");

    CriticalInventory inv;
    const auto [cm_seed, cp_seed] = blaschke_crits(p.a);
    inv.c_minus = refine_root(RootFunction::MapDerivative, p, cm_seed);
    inv.c_plus = refine_root(RootFunction::MapDerivative, p, cp_seed);
    inv.z0 = refine_root(RootFunction::MapValue, p, p.a);
    inv.pole_z_inf = 1.0 / std::conj(p.a);
    inv.origin_is_pole = true;

    const auto zs = small_zero_seeds(p);
    const auto cs = small_crit_seeds(p);
    for (int k = 0; k < 5; ++k) {
        inv.small_zeros[k] = refine_root(RootFunction::MapValue, p, zs[k]);
        inv.small_crits[k] = refine_root(RootFunction::MapDerivative, p, cs[k]);
    }
    sort_by_argument(inv.small_zeros);
    sort_by_argument(inv.small_crits);

    // The true roots are separated by about 1.18 |lambda/a|^(1/5); anything
    // closer than a tenth of that means two seeds found the same root.
    const double sep = 0.1 * std::pow(std::abs(p.lambda / p.a), 0.2);
    std::array<Complex, 10> all;
    std::copy(inv.small_zeros.begin(), inv.small_zeros.end(), all.begin());
    std::copy(inv.small_crits.begin(), inv.small_crits.end(), all.begin() + 5);
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j)
            if (std::abs(all[i] - all[j]) <= sep)
                throw DegenerateInventoryError("blaschke: two refined small roots collided");

    if (!(std::abs(inv.c_minus) < 1.0 && std::abs(inv.c_plus) > 1.0))
        throw DegenerateInventoryError("blaschke: c_-/c_+ left their half of the sphere");
    return inv;
}

bool check_annulus(const ParameterPair& p, const CriticalInventory& inv) {
    const double lam = std::abs(p.lambda);
    const double am = std::abs(p.a);
    const double inner = std::pow(lam / (2.0 * am), 0.2);
    const double outer = std::pow(2.0 * lam / am, 0.2);
    auto inside = [&](Complex w) {
        const double r = std::abs(w);
        return r > inner && r < outer;
    };
    for (const Complex w : inv.small_zeros)
        if (!inside(w)) return false;
    for (const Complex c : inv.small_crits)
        if (!inside(c)) return false;
    return true;
}

void write_inventory(std::ostream& os, const ParameterPair& p, const CriticalInventory& inv) {
    auto line = [&](const char* role, Complex z, double residual) {
        os << role << ' ' << z.real() << ' ' << z.imag() << ' ' << residual << '\n';
    };
    os << "# a = " << p.a.real() << ' ' << p.a.imag()
       << "  lambda = " << p.lambda.real() << ' ' << p.lambda.imag() << '\n';
    os << "# origin_is_pole = " << (inv.origin_is_pole ? "true" : "false") << '\n';
    line("c_minus", inv.c_minus, crit_residual(p, inv.c_minus));
    line("c_plus", inv.c_plus, crit_residual(p, inv.c_plus));
    line("z0", inv.z0, zero_residual(p, inv.z0));
    line("z_inf", inv.pole_z_inf, 0.0);
    for (int k = 0; k < 5; ++k) {
        os << "small_zero_" << k << ' ' << inv.small_zeros[k].real() << ' '
           << inv.small_zeros[k].imag() << ' ' << zero_residual(p, inv.small_zeros[k]) << '\n';
    }
    for (int k = 0; k < 5; ++k) {
        os << "small_crit_" << k << ' ' << inv.small_crits[k].real() << ' '
           << inv.small_crits[k].imag() << ' ' << crit_residual(p, inv.small_crits[k]) << '\n';
    }
}

}  // namespace blaschke
