#pragma once

// Independent cycle search, sharing nothing with the certified decider beyond
// the element bound: every cycle element is at most cycle_bound(r), so the
// box of admissible states is finite and the in-box successor graph contains
// every cycle. Plain int64 arithmetic on a common denominator keeps it exact.

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "srslab/spectral.hpp"

namespace brute {

struct Result {
    bool conclusive = false;
    std::set<srslab::CycleWitness> cycles;  // every nontrivial cycle of tau_r

    bool has_cycle() const { return !cycles.empty(); }
};

inline Result search(const srslab::ParamVector& r) {
    using namespace srslab;
    Result out;

    BoundValue bound = cycle_bound(r);
    if (!bound.valid || !r.all_exact()) return out;
    const std::int64_t box = (std::int64_t)std::floor(bound.value);
    if (box > 2000) return out;  // feasibility guard, caller resamples

    // r0 = p0/q, r1 = p1/q with one shared denominator
    const Rat r0 = r.value(0), r1 = r.value(1);
    Int den = lcm(denominator(r0), denominator(r1));
    Int pn0 = numerator(r0) * (den / denominator(r0));
    Int pn1 = numerator(r1) * (den / denominator(r1));
    if (den > 1000000 || !fits_int64(pn0) || !fits_int64(pn1)) return out;
    const std::int64_t p0 = pn0.convert_to<std::int64_t>();
    const std::int64_t p1 = pn1.convert_to<std::int64_t>();
    const std::int64_t q = den.convert_to<std::int64_t>();

    const std::int64_t side = 2 * box + 1;
    auto index = [&](std::int64_t x0, std::int64_t x1) { return (x0 + box) * side + (x1 + box); };
    auto in_box = [&](std::int64_t x0, std::int64_t x1) {
        return x0 >= -box && x0 <= box && x1 >= -box && x1 <= box;
    };
    auto floordiv = [](std::int64_t a, std::int64_t b) {
        std::int64_t d = a / b;
        if (a % b != 0 && (a < 0) != (b < 0)) --d;
        return d;
    };

    // three-color walk over the in-box successor graph; a step leaving the box
    // ends the path (no cycle passes through it)
    std::vector<unsigned char> color((std::size_t)(side * side), 0);
    std::vector<std::int64_t> path0, path1;
    for (std::int64_t s0 = -box; s0 <= box; ++s0)
        for (std::int64_t s1 = -box; s1 <= box; ++s1) {
            if (color[(std::size_t)index(s0, s1)]) continue;
            path0.clear();
            path1.clear();
            std::int64_t x0 = s0, x1 = s1;
            for (;;) {
                const std::size_t id = (std::size_t)index(x0, x1);
                if (color[id] == 1) {  // new cycle closes at (x0,x1)
                    std::size_t k = path0.size();
                    while (k > 0 && (path0[k - 1] != x0 || path1[k - 1] != x1)) --k;
                    std::vector<std::int64_t> entries(path0.begin() + (k - 1), path0.end());
                    CycleWitness c = cycle_canonicalize(entries);
                    if (!c.trivial()) out.cycles.insert(c);
                    break;
                }
                if (color[id] == 2) break;
                color[id] = 1;
                path0.push_back(x0);
                path1.push_back(x1);
                const std::int64_t next = -floordiv(p0 * x0 + p1 * x1, q);
                x0 = x1;
                x1 = next;
                if (!in_box(x0, x1)) break;
            }
            for (std::size_t i = 0; i < path0.size(); ++i)
                color[(std::size_t)index(path0[i], path1[i])] = 2;
        }

    out.conclusive = true;
    return out;
}

}  // namespace brute
