#pragma once

#include "srslab/param.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace srslab {

// Lattice state (a_n, ..., a_{n+d-1}).
using LatticePoint = std::vector<std::int64_t>;

// One application of the map: (a_0,...,a_{d-1}) -> (a_1,...,a_{d-1}, -floor(r.a)).
// Exact when r is exact; double evaluation otherwise.
LatticePoint srs_step(const ParamVector& r, const LatticePoint& a);

// d x d rational matrix, row-major.
struct RatMatrix {
    std::size_t n = 0;
    std::vector<Rat> a;

    const Rat& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    Rat& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    std::vector<Rat> apply(const LatticePoint& x) const;
};

// Shift block above a last row of negated parameters; the linear part of the map.
RatMatrix companion_matrix(const ParamVector& r);

// Fractional part {r.a} in [0,1).  The residual making the map almost linear:
// step(a) = R a + (0,...,0,{r.a}).
Rat error_term_exact(const ParamVector& r, const LatticePoint& a);
double error_term(const ParamVector& r, const LatticePoint& a);

// Cycle of scalars, canonical form: minimal period, lexicographically least
// rotation.
struct CycleWitness {
    std::vector<std::int64_t> entries;

    std::size_t period() const { return entries.size(); }
    bool trivial() const {
        for (auto v : entries)
            if (v != 0) return false;
        return true;
    }
    bool operator==(const CycleWitness& o) const { return entries == o.entries; }
    bool operator<(const CycleWitness& o) const {
        if (entries.size() != o.entries.size()) return entries.size() < o.entries.size();
        return entries < o.entries;
    }
};

CycleWitness cycle_canonicalize(const std::vector<std::int64_t>& entries);

// All length-(d+1) cyclic windows must satisfy 0 <= r.(window head) + tail < 1.
// Exact for exact r, double comparisons otherwise.
bool verify_cycle(const ParamVector& r, const std::vector<std::int64_t>& entries);
bool verify_cycle(const ParamVector& r, const CycleWitness& c);

struct EscapeOracle {
    std::function<bool(const LatticePoint&)> outside;  // certainly no return possible
    std::string tag;                                   // "norm-certificate" or "radius-heuristic"
};

// |a|_inf > max_norm; heuristic, may misjudge orbits that wander far then return.
EscapeOracle radius_escape(double max_norm = 1e6);

struct OrbitRecord {
    enum class Outcome { ReachedCycle, ReachedZero, Escaped, Undecided };

    std::vector<std::int64_t> scalars;  // compressed orbit: one integer per index
    std::vector<LatticePoint> states;   // consecutive windows, each overlapping the last
    std::vector<double> errors;         // e_n in [0,1), one per step taken
    Outcome outcome = Outcome::Undecided;
    CycleWitness cycle;     // set when outcome == ReachedCycle
    std::size_t step = 0;   // index where the outcome was established
    std::string escape_tag; // which escape oracle fired
};

// Iterates until the state repeats, reaches zero, is flagged escaped, or the
// budget runs out.  States are recorded verbatim so the record replays the
// run deterministically.
OrbitRecord iterate_orbit(const ParamVector& r, const LatticePoint& start,
                          std::size_t budget = 1000000,
                          const EscapeOracle* escape = nullptr);

}  // namespace srslab
