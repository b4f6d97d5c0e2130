#include "doctest.h"

#include "srslab/certified.hpp"
#include "srslab/core.hpp"

#include <algorithm>
#include <random>

using namespace srslab;

namespace {

LatticePoint lp(std::int64_t a, std::int64_t b) { return {a, b}; }

}  // namespace

TEST_CASE("srs_step shifts and appends the negated floor") {
    const ParamVector r = param2(Rat(6, 5), Rat(-3, 2));
    CHECK(srs_step(r, lp(1, 1)) == lp(1, 1));  // 6/5 - 3/2 = -3/10, floor -1
    CHECK(srs_step(r, lp(2, 1)) == lp(1, 0));  // 12/5 - 3/2 = 9/10 floors to 0
    CHECK(srs_step(r, lp(0, 0)) == lp(0, 0));

    const ParamVector s = param2(Rat(3, 2), Rat(0));
    CHECK(srs_step(s, lp(1, 0)) == lp(0, -1));
    CHECK(srs_step(s, lp(0, -1)) == lp(-1, 0));
    CHECK(srs_step(s, lp(-1, 0)) == lp(0, 2));  // -3/2 floors to -2

    const ParamVector t = ParamVector::from_doubles({0.5, 0.5});
    CHECK(srs_step(t, lp(1, 1)) == lp(1, -1));
    CHECK(srs_step(t, lp(3, -2)) == lp(-2, 0));
}

TEST_CASE("companion matrix equals the step up to the fractional residual") {
    const ParamVector r = param2(Rat(7, 5), Rat(-11, 10));
    const RatMatrix R = companion_matrix(r);
    REQUIRE(R.n == 2);
    CHECK(R.at(0, 0) == 0);
    CHECK(R.at(0, 1) == 1);
    CHECK(R.at(1, 0) == Rat(-7, 5));
    CHECK(R.at(1, 1) == Rat(11, 10));

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> coord(-50, 50);
    for (int i = 0; i < 200; ++i) {
        const LatticePoint a = lp(coord(rng), coord(rng));
        const auto linear = R.apply(a);
        const LatticePoint next = srs_step(r, a);
        const Rat e = error_term_exact(r, a);
        CHECK(Rat(next[0]) == linear[0]);
        CHECK(Rat(next[1]) == linear[1] + e);
    }
}

TEST_CASE("error term is the fractional part of the dot product") {
    const ParamVector r = param2(Rat(6, 5), Rat(-3, 2));
    CHECK(error_term_exact(r, lp(1, 1)) == Rat(7, 10));
    CHECK(error_term_exact(r, lp(0, 0)) == 0);
    CHECK(error_term_exact(r, lp(-1, -1)) == Rat(3, 10));
    CHECK(error_term(r, lp(1, 1)) == doctest::Approx(0.7));

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> coord(-1000, 1000);
    for (int i = 0; i < 500; ++i) {
        const Rat e = error_term_exact(r, lp(coord(rng), coord(rng)));
        CHECK(e >= 0);
        CHECK(e < 1);
    }
}

TEST_CASE("cycle canonical form is the lexicographically least rotation of the minimal period") {
    CHECK(cycle_canonicalize({1, 0, -1, 0}).entries == std::vector<std::int64_t>{-1, 0, 1, 0});
    CHECK(cycle_canonicalize({1, -1}).entries == std::vector<std::int64_t>{-1, 1});
    CHECK(cycle_canonicalize({0, -1}).entries == std::vector<std::int64_t>{-1, 0});
    CHECK(cycle_canonicalize({2, 2, 2}).entries == std::vector<std::int64_t>{2});
    CHECK(cycle_canonicalize({3, 1, 3, 1}).entries == std::vector<std::int64_t>{1, 3});
    CHECK(cycle_canonicalize({5}).entries == std::vector<std::int64_t>{5});
    CHECK(cycle_canonicalize({0, 0, 0}).trivial());
    CHECK_FALSE(cycle_canonicalize({0, 1}).trivial());

    // rotation-invariant
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> entry(-4, 4);
    std::uniform_int_distribution<std::size_t> len(1, 8);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::int64_t> c(len(rng));
        for (auto& v : c) v = entry(rng);
        const CycleWitness base = cycle_canonicalize(c);
        std::rotate(c.begin(), c.begin() + (i % c.size()), c.end());
        CHECK(cycle_canonicalize(c) == base);
    }
}

TEST_CASE("verify_cycle checks every cyclic window exactly") {
    CHECK(verify_cycle(param2(Rat(6, 5), Rat(-3, 2)), {1}));
    CHECK_FALSE(verify_cycle(param2(Rat(6, 5), Rat(-3, 2)), {-1}));
    CHECK_FALSE(verify_cycle(param2(Rat(3, 2), Rat(0)), {1}));
    CHECK(verify_cycle(param2(Rat(2), Rat(3)), {1, -1}));
    CHECK(verify_cycle(param2(Rat(2), Rat(3)), {-1, 1}));  // rotations agree
    CHECK(verify_cycle(param2(Rat(-3, 2), Rat(-1, 2)), {0, -1}));
    CHECK(verify_cycle(param2(Rat(-1, 2), Rat(1, 2)), {0, 1}));
    CHECK(verify_cycle(param2(Rat(6, 5), Rat(-3, 2)), {0}));  // trivial cycle always passes

    // a verified cycle really is periodic under the map
    const ParamVector r = param2(Rat(2), Rat(3));
    LatticePoint x = lp(1, -1);
    x = srs_step(r, x);
    x = srs_step(r, x);
    CHECK(x == lp(1, -1));
}

TEST_CASE("orbits reach cycles, zero, escape or exhaust the budget") {
    SUBCASE("cycle") {
        const OrbitRecord rec = iterate_orbit(param2(Rat(1), Rat(-1)), lp(1, 0));
        CHECK(rec.outcome == OrbitRecord::Outcome::ReachedCycle);
        CHECK(rec.step == 6);
        CHECK(rec.cycle.entries == std::vector<std::int64_t>{-1, -1, 0, 1, 1, 0});
        CHECK(rec.scalars == std::vector<std::int64_t>{1, 0, -1, -1, 0, 1, 1, 0});
        CHECK(verify_cycle(param2(Rat(1), Rat(-1)), rec.cycle));
        for (double e : rec.errors) {
            CHECK(e >= 0);
            CHECK(e < 1);
        }
        // states replay the run
        for (std::size_t i = 0; i + 1 < rec.states.size(); ++i)
            CHECK(srs_step(param2(Rat(1), Rat(-1)), rec.states[i]) == rec.states[i + 1]);
    }
    SUBCASE("zero") {
        const OrbitRecord rec = iterate_orbit(ParamVector::from_doubles({0.5, 0.5}), lp(3, -2));
        CHECK(rec.outcome == OrbitRecord::Outcome::ReachedZero);
        CHECK(rec.step == 4);
    }
    SUBCASE("escape by radius") {
        const EscapeOracle esc = radius_escape(100);
        const OrbitRecord rec = iterate_orbit(param2(Rat(2), Rat(0)), lp(5, 5), 1000, &esc);
        CHECK(rec.outcome == OrbitRecord::Outcome::Escaped);
        CHECK(rec.escape_tag == "radius-heuristic");
    }
    SUBCASE("escape by certificate") {
        const NormBuild nb = build_norm(param2(Rat(6), Rat(-5)));
        REQUIRE(nb.error == CertError::None);
        const EscapeOracle esc = certificate_escape(nb.cert);
        CHECK(esc.tag == "norm-certificate");
        const OrbitRecord rec = iterate_orbit(param2(Rat(6), Rat(-5)), lp(10, 10), 1000, &esc);
        CHECK(rec.outcome == OrbitRecord::Outcome::Escaped);
        CHECK(rec.escape_tag == "norm-certificate");
    }
    SUBCASE("budget") {
        const OrbitRecord rec = iterate_orbit(param2(Rat(1), Rat(-1)), lp(1, 0), 3);
        CHECK(rec.outcome == OrbitRecord::Outcome::Undecided);
    }
}

TEST_CASE("radius escape fires strictly beyond the bound") {
    const EscapeOracle esc = radius_escape(100);
    CHECK(esc.outside(lp(101, 0)));
    CHECK(esc.outside(lp(0, -101)));
    CHECK_FALSE(esc.outside(lp(100, -100)));
    CHECK(esc.tag == "radius-heuristic");
}
