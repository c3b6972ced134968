#pragma once

#include <array>
#include <iosfwd>
#include <utility>

#include "blaschke/types.hpp"

namespace blaschke {

// Complete inventory of the critical points and finite zeros of the
// perturbed map. With lambda != 0 the map has degree 6: infinity
// (multiplicity 2), the origin (a double pole, critical of multiplicity 1),
// five roots of each kind born near the origin, and the continuations
// c_-, c_+, z_0, z_inf of the unperturbed Blaschke data.
struct CriticalInventory {
    Complex c_plus;                       // continuation of c_+, outside the closed disk
    Complex c_minus;                      // continuation of c_-, inside the disk
    Complex z0;                           // continuation of the zero z_0 (= a at lambda = 0)
    Complex pole_z_inf;                   // 1/conj(a), exact
    std::array<Complex, 5> small_zeros;   // ordered by argument in [0, 2pi)
    std::array<Complex, 5> small_crits;   // ordered by argument in [0, 2pi)
    bool origin_is_pole = false;          // true iff lambda != 0
};

enum class RootFunction { MapValue, MapDerivative };

inline constexpr double kInventoryBound = 1e-3;  // working bound on |lambda|

// Free critical points of the unperturbed Blaschke product,
//   c_{+-} = a (2 + |a|^2 +- sqrt((|a|^2-4)(|a|^2-1))) / (3|a|^2).
// The radicand is a positive real for 0 < |a| < 1. Returns (c_minus, c_plus).
std::pair<Complex, Complex> blaschke_crits(Complex a);

// First-order seeds xi (lambda/a)^(1/5) for the five zeros near the origin,
// xi running over the fifth roots of unity, ordered by argument.
std::array<Complex, 5> small_zero_seeds(const ParameterPair& p);

// First-order seeds -xi (2 lambda / 3a)^(1/5) for the five critical points
// near the origin, ordered by argument.
std::array<Complex, 5> small_crit_seeds(const ParameterPair& p);

// Newton refinement of a simple root of the map value or the map derivative.
// Converges when the residual drops below 1e-9 times the local scale
// (max(1, |lambda|/|z|^2) for values, max(1, |lambda|/|z|^3) for derivatives).
// Throws NoConvergenceError after 50 iterations or when an iterate leaves
// the trust disk around the seed (ten times the first Newton step).
Complex refine_root(RootFunction f, const ParameterPair& p, Complex seed);

// Seeds plus refinement for every field. Requires lambda != 0 and
// |lambda| <= working_bound. Throws DegenerateInventoryError when two
// refined roots collide or the c_-/c_+ split fails.
CriticalInventory full_inventory(const ParameterPair& p, double working_bound = kInventoryBound);

// True iff all ten perturbation-born roots lie strictly inside the annulus
// of inner radius (|lambda|/2|a|)^(1/5) and outer radius (2|lambda|/|a|)^(1/5).
bool check_annulus(const ParameterPair& p, const CriticalInventory& inv);

// |B(w)| and |B'(c)|, with infinities reported as +inf.
double zero_residual(const ParameterPair& p, Complex w);
double crit_residual(const ParameterPair& p, Complex c);

// Flat text export, one root per line: role, re, im, residual.
void write_inventory(std::ostream& os, const ParameterPair& p, const CriticalInventory& inv);

}  // namespace blaschke
