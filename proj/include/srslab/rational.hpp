#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace srslab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline int sgn(const Rat& x) { return x.sign(); }

// Largest integer <= x.
inline Int rat_floor(const Rat& x) {
    Int q = numerator(x) / denominator(x);
    if (x < 0 && q * denominator(x) != numerator(x)) --q;
    return q;
}

// x - floor(x), always in [0,1).
inline Rat rat_frac(const Rat& x) { return x - Rat(rat_floor(x)); }

inline double to_double(const Rat& x) { return x.convert_to<double>(); }
inline double to_double(const Int& x) { return x.convert_to<double>(); }

inline bool fits_int64(const Int& x) {
    return x >= std::numeric_limits<std::int64_t>::min() &&
           x <= std::numeric_limits<std::int64_t>::max();
}

// Exact rational value of a finite double.
inline Rat rat_from_double(double v) { return Rat(v); }

// [lo,hi] doubles certainly bracketing x.
inline std::pair<double, double> double_bounds(const Rat& x) {
    double m = to_double(x);
    double lo = m, hi = m;
    while (Rat(lo) > x) lo = std::nextafter(lo, -INFINITY);
    while (Rat(hi) < x) hi = std::nextafter(hi, INFINITY);
    return {lo, hi};
}

inline double double_lower(const Rat& x) { return double_bounds(x).first; }
inline double double_upper(const Rat& x) { return double_bounds(x).second; }

// Nearest dyadic with about `bits` fractional bits at or above / below x.
// Values whose denominator already fits pass through unchanged, so exact
// small rationals are never disturbed.
Rat rat_round_up(const Rat& x, unsigned bits);
Rat rat_round_down(const Rat& x, unsigned bits);

// Rational bracket [lo,hi] around sqrt(x), x >= 0.  Each Newton step roughly
// doubles the number of correct digits; two steps from a double seed give a
// bracket far narrower than any tolerance used in this project.  Iterates are
// rounded outward to dyadics so bracket endpoints stay small to work with.
std::pair<Rat, Rat> rat_sqrt_bounds(const Rat& x, int newton_steps = 2);

// Sign of a + b*sqrt(D) for rational a, b and D >= 0.  Exact.
inline int qsign(const Rat& a, const Rat& b, const Rat& D) {
    int sa = sgn(a);
    if (sgn(D) == 0 || sgn(b) == 0) return sa;
    int sb = sgn(b);
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Rat lhs = a * a, rhs = b * b * D;
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sa : sb;
}

// Accepts integers ("-3"), fractions ("23/20") and decimals with an
// optional exponent ("1.25", "-4e-2").
std::optional<Rat> parse_rational(const std::string& text);

std::string rat_to_string(const Rat& x);  // "p/q" or "p"

}  // namespace srslab
