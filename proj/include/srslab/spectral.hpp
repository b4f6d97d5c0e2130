#pragma once

#include <complex>
#include <string>
#include <vector>

#include "srslab/core.hpp"
#include "srslab/param.hpp"

namespace srslab {

enum class RootKind { RealDistinct, RealRepeated, ComplexPair };

// Roots of the characteristic polynomial x^d + r_{d-1}x^{d-1} + ... + r0,
// ordered by nondecreasing modulus. kind_valid/disc_exact only for d = 2.
struct Spectrum {
    std::vector<std::complex<double>> roots;
    std::vector<double> moduli;  // |roots[i]|, nondecreasing
    bool kind_valid = false;
    RootKind kind = RootKind::RealDistinct;
    bool disc_exact = false;
    int disc_sign = 0;  // sign of r1^2 - 4*r0, exact when disc_exact
    Rat discriminant;   // meaningful when disc_exact

    double min_modulus() const { return moduli.front(); }
    double max_modulus() const { return moduli.back(); }
};

// Closed-form roots for d = 2 with exact discriminant-sign classification
// when the parameter carries exact rationals.
Spectrum quadratic_roots(const ParamVector& r);

// Wraps caller-supplied roots (any degree) into a Spectrum.
Spectrum spectrum_from_roots(std::vector<std::complex<double>> roots);

// Root location of x^2 + r1*x + r0 relative to the unit circle:
// Inside iff |r0| < 1 and |r1| < 1 + r0; exact for rational parameters.
enum class SchurCohn { Inside, Boundary, Outside };

SchurCohn schur_cohn_member(const ParamVector& r);

// Moduli within this distance of 1 invalidate the bounds below.
inline constexpr double kUnitModulusTolerance = 1e-9;

struct BoundValue {
    bool valid = false;
    double value = 0.0;
    std::string reason;  // set when valid is false
};

// sup bound E / prod_j |1 - |beta_j|| for a bounded solution of the almost
// linear recurrence with per-step error at most E.
BoundValue nlrs_bound(const Spectrum& spectrum, double error_sup);

// Same bound with E = 1: every element of every cycle of tau_r obeys it.
BoundValue cycle_bound(const ParamVector& r);

// Exact form of the cycle_bound comparison for rational r (d = 2): true iff
// |a| * prod_j ||beta_j| - 1| <= 1 for every entry a of the cycle.
bool cycle_elements_within_bound(const ParamVector& r, const CycleWitness& c);

// Degree 2 with roots alpha1 (smaller modulus) and alpha2: every consecutive
// cycle pair satisfies |a_{n+1} - alpha1*a_n| <= diff_root1_bound and
// |a_{n+1} - alpha2*a_n| <= diff_root2_bound.
struct PairBounds {
    bool valid = false;
    double diff_root1_bound = 0.0;  // 1 / ||alpha2| - 1|
    double diff_root2_bound = 0.0;  // 1 / ||alpha1| - 1|
    std::string reason;
};

PairBounds pair_bounds(const ParamVector& r);

// Interval containing a_{n+1} - alpha1*a_n over cycle elements, keyed on the
// other real root alpha2 (four sign cases, endpoints half-open as stated):
//   0 <= alpha2 < 1 :  [0, 1/(1-alpha2))
//   alpha2 > 1      :  (-1/(alpha2-1), 0]
//   -1 < alpha2 < 0 :  (alpha2/(1-alpha2^2), 1/(1-alpha2^2))
//   alpha2 < -1     :  (-1/(alpha2^2-1), -alpha2/(alpha2^2-1))
struct HalfOpenInterval {
    bool valid = false;
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = false;
    bool hi_closed = false;
    std::string case_tag;  // which sign case produced the endpoints
    std::string reason;    // set when valid is false

    // Outward-rounded membership test honoring endpoint openness.
    bool contains(double x, double tol = 0.0) const {
        if (!valid) return false;
        bool lo_ok = lo_closed ? x >= lo - tol : x > lo - tol;
        bool hi_ok = hi_closed ? x <= hi + tol : x < hi + tol;
        return lo_ok && hi_ok;
    }
};

HalfOpenInterval pair_difference_interval(double alpha2);

}  // namespace srslab
