#include "doctest.h"

#include "srslab/certified.hpp"
#include "srslab/region.hpp"

#include <random>
#include <stdexcept>

using namespace srslab;

namespace {

Rat rand_rat(std::mt19937_64& rng, const Rat& lo, const Rat& hi, int den = 64) {
    std::uniform_int_distribution<int> num(0, den);
    return lo + (hi - lo) * Rat(num(rng), den);
}

}  // namespace

TEST_CASE("classification of representative parameters") {
    struct Case {
        Rat r0, r1;
        Status status;
        RuleTag rule;
        std::vector<std::int64_t> cycle;
    };
    const Case cases[] = {
        {Rat(6, 5), Rat(-3, 2), Status::NotInDStar, RuleTag::SameSignCycle, {1}},
        {Rat(-3, 2), Rat(1, 4), Status::NotInDStar, RuleTag::SameSignCycle, {-1}},
        {Rat(2), Rat(3), Status::NotInDStar, RuleTag::AlternatingCycle, {-1, 1}},
        {Rat(-3, 2), Rat(-1, 2), Status::NotInDStar, RuleTag::ZeroOneCycle, {-1, 0}},
        {Rat(-1, 2), Rat(1, 2), Status::NotInDStar, RuleTag::ZeroOneCycle, {0, 1}},
        {Rat(1, 2), Rat(1, 2), Status::Contractive, RuleTag::Contractive, {}},
        {Rat(4), Rat(-4), Status::InDStar, RuleTag::MonotoneRealI, {}},
        {Rat(-3), Rat(1), Status::InDStar, RuleTag::MonotoneRealII, {}},
        {Rat(-1), Rat(2), Status::InDStar, RuleTag::MonotoneRealIII, {}},
        {Rat(2), Rat(7, 2), Status::InDStar, RuleTag::SectorGraph, {}},
        {Rat(3), Rat(-29, 10), Status::InDStar, RuleTag::LargeModulusBand, {}},
        {Rat(4), Rat(23, 5), Status::InDStar, RuleTag::AlternatingBand, {}},
        {Rat(3, 2), Rat(0), Status::InDStar, RuleTag::WitnessRegion, {}},
        {Rat(6, 5), Rat(1, 10), Status::UnknownBounded, RuleTag::UnresolvedBand, {}},
    };
    for (const auto& c : cases) {
        CAPTURE(to_double(c.r0));
        CAPTURE(to_double(c.r1));
        const Verdict v = classify(param2(c.r0, c.r1));
        CHECK(v.status == c.status);
        CHECK(v.rule == c.rule);
        if (c.cycle.empty()) {
            CHECK_FALSE(v.cycle.has_value());
        } else {
            REQUIRE(v.cycle.has_value());
            CHECK(v.cycle->entries == c.cycle);
        }
    }
}

TEST_CASE("every NotInDStar verdict carries a cycle that verifies exactly") {
    std::mt19937_64 rng(41);
    int found = 0;
    for (int i = 0; i < 2000; ++i) {
        const Rat r0 = rand_rat(rng, Rat(-4), Rat(4));
        const Rat r1 = rand_rat(rng, Rat(-4), Rat(4));
        const ParamVector r = param2(r0, r1);
        const Verdict v = classify(r);
        if (v.status == Status::NotInDStar) {
            ++found;
            REQUIRE(v.cycle.has_value());
            CHECK(verify_cycle(r, *v.cycle));
        } else {
            CHECK_FALSE(v.cycle.has_value());
        }
    }
    CHECK(found > 200);
}

TEST_CASE("the constant-sign strips carry their cycles across the whole range") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 300; ++i) {
        // -1 <= r0+r1 < 0 carries (1)
        Rat sum = rand_rat(rng, Rat(-1), Rat(-1, 64));
        Rat r0 = rand_rat(rng, Rat(-5), Rat(5));
        Verdict v = classify(param2(r0, sum - r0));
        CHECK(v.status == Status::NotInDStar);
        REQUIRE(v.cycle.has_value());
        CHECK(v.cycle->entries == std::vector<std::int64_t>{1});

        // -2 < r0+r1 < -1 carries (-1)
        sum = rand_rat(rng, Rat(-127, 64), Rat(-65, 64));
        v = classify(param2(r0, sum - r0));
        CHECK(v.status == Status::NotInDStar);
        REQUIRE(v.cycle.has_value());
        CHECK(v.cycle->entries == std::vector<std::int64_t>{-1});
    }
}

TEST_CASE("strip endpoints follow the half-open conventions") {
    // sum = -1 belongs to the (1) strip, sum = 0 and sum = -2 do not
    Verdict v = classify(param2(Rat(3), Rat(-4)));
    CHECK(v.cycle->entries == std::vector<std::int64_t>{1});
    CHECK(classify(param2(Rat(3), Rat(-3))).status == Status::InDStar);
    CHECK(classify(param2(Rat(-3), Rat(1))).status == Status::InDStar);
    // just inside the lower strip
    v = classify(param2(Rat(-3), Rat(65, 64)));
    CHECK(v.cycle->entries == std::vector<std::int64_t>{-1});
}

TEST_CASE("inexact input near a deciding boundary degrades to undecidable") {
    CHECK(classify(param2(Rat(2), Rat(-2))).status == Status::InDStar);
    const Verdict v = classify(ParamVector::from_doubles({2.0, -2.0}));
    CHECK(v.status == Status::BoundaryUndecidable);
    CHECK(v.rule == RuleTag::BoundaryBand);

    // far from every boundary the float path agrees with the exact one
    CHECK(classify(ParamVector::from_doubles({0.5, 0.5})).status == Status::Contractive);
    CHECK(classify(ParamVector::from_doubles({1.2, -1.5})).status == Status::NotInDStar);
    CHECK(classify(ParamVector::from_doubles({6.0, -5.0})).status == Status::InDStar);

    // exact input on the boundary keeps its closed-form verdict, float input
    // straddles it
    CHECK(classify(param2(Rat(4), Rat(-4))).status == Status::InDStar);
    CHECK(classify(ParamVector::from_doubles({4.0, -4.0})).status ==
          Status::BoundaryUndecidable);

    // widening the tolerance pulls more points onto the boundary
    CHECK(classify(ParamVector::from_doubles({1.2, -1.2001}), 1e-3).status ==
          Status::BoundaryUndecidable);
    CHECK(classify(ParamVector::from_doubles({1.2, -1.2001}), 1e-6).status == Status::NotInDStar);
}

TEST_CASE("classification is stable under re-evaluation") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 500; ++i) {
        const Rat r0 = rand_rat(rng, Rat(-5), Rat(5), 37);
        const Rat r1 = rand_rat(rng, Rat(-5), Rat(5), 37);
        const ParamVector r = param2(r0, r1);
        const Verdict a = classify(r);
        const Verdict b = classify(r);
        CHECK(a.status == b.status);
        CHECK(a.rule == b.rule);
    }
}

TEST_CASE("unknown region is exactly the residual band") {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 3000; ++i) {
        const Rat r0 = rand_rat(rng, Rat(-4), Rat(4), 53);
        const Rat r1 = rand_rat(rng, Rat(-4), Rat(4), 53);
        const Verdict v = classify(param2(r0, r1));
        const bool in_band = r0 > 1 && r0 < Rat(4, 3) && r1 >= -r0 && r1 < r0 - 1;
        if (v.status == Status::UnknownBounded) CHECK(in_band);
        if (in_band) CHECK(v.status == Status::UnknownBounded);
    }
}

TEST_CASE("names render as stable strings") {
    CHECK(std::string(status_name(Status::InDStar)) == "InDStar");
    CHECK(std::string(status_name(Status::NotInDStar)) == "NotInDStar");
    CHECK(std::string(status_name(Status::Contractive)) == "Contractive");
    CHECK(std::string(status_name(Status::UnknownBounded)) == "UnknownBounded");
    CHECK(std::string(status_name(Status::BoundaryUndecidable)) == "BoundaryUndecidable");
    CHECK(std::string(rule_name(RuleTag::SameSignCycle)) == "same-sign-cycle");
    CHECK(std::string(rule_name(RuleTag::WitnessSearch)) == "witness-search");
    CHECK(std::string(rule_name(RuleTag::UnresolvedBand)) == "unresolved-band");
    CHECK(std::string(sector_name(Sector::S4)) == "S4");
}

TEST_CASE("sector labels match the displayed set definitions") {
    CHECK(sector({0, 0}) == Sector::S0);
    CHECK(sector({2, -3}) == Sector::S1);
    CHECK(sector({0, -1}) == Sector::S1);
    CHECK(sector({1, -1}) == Sector::S1);
    CHECK(sector({-1, 2}) == Sector::S2);
    CHECK(sector({0, 1}) == Sector::S2);
    CHECK(sector({1, 1}) == Sector::S3);
    CHECK(sector({1, 0}) == Sector::S3);
    CHECK(sector({-1, -1}) == Sector::S4);
    CHECK(sector({-1, 0}) == Sector::S4);
    CHECK(sector({2, -1}) == Sector::S5);
    CHECK(sector({-2, 1}) == Sector::S6);
}

TEST_CASE("transition graph membership") {
    // S1 -> S2
    CHECK(check_sector_transition(param2(Rat(0), Rat(2)), {1, -1}) == TransitionCheck::Ok);
    // S3 -> S0 | S1
    CHECK(check_sector_transition(param2(Rat(1), Rat(5, 2)), {1, 0}) == TransitionCheck::Ok);
    // preconditions
    CHECK(check_sector_transition(param2(Rat(1, 2), Rat(2)), {0, 0}) ==
          TransitionCheck::PreconditionViolation);
    CHECK(check_sector_transition(param2(Rat(1), Rat(1)), {1, 0}) ==
          TransitionCheck::PreconditionViolation);
    CHECK(check_sector_transition(param2(Rat(-1), Rat(2)), {1, 0}) ==
          TransitionCheck::PreconditionViolation);
    CHECK(sector_transition_ok(param2(Rat(0), Rat(2)), {1, -1}));
    CHECK_THROWS_AS((void)sector_transition_ok(param2(Rat(1), Rat(1)), {1, 0}), std::domain_error);
    CHECK_THROWS_AS((void)sector_transition_ok(param2(Rat(0), Rat(2)), {0, 0}), std::domain_error);
}

TEST_CASE("transition fuzz holds on random admissible pairs") {
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<std::int64_t> coord(-40, 40);
    for (int i = 0; i < 2000; ++i) {
        const Rat r0 = rand_rat(rng, Rat(0), Rat(4), 41);
        const Rat r1 = r0 + 1 + rand_rat(rng, Rat(1, 41), Rat(3), 41);
        std::int64_t x0 = coord(rng), x1 = coord(rng);
        if (x0 == 0 && x1 == 0) x1 = 1;
        CAPTURE(to_double(r0));
        CAPTURE(to_double(r1));
        CAPTURE(x0);
        CAPTURE(x1);
        CHECK(check_sector_transition(param2(r0, r1), {x0, x1}) == TransitionCheck::Ok);
    }
}

TEST_CASE("closed-form verdicts agree with the certified decider where both decide") {
    std::mt19937_64 rng(61);
    int compared = 0;
    for (int i = 0; i < 120 && compared < 30; ++i) {
        const Rat r0 = rand_rat(rng, Rat(-3), Rat(3), 29);
        const Rat r1 = rand_rat(rng, Rat(-3), Rat(3), 29);
        const ParamVector r = param2(r0, r1);
        const Verdict cf = classify(r);
        if (cf.status != Status::InDStar && cf.status != Status::NotInDStar) continue;
        const DecideOutcome d = decide_point(r);
        if (d.error != CertError::None) continue;
        ++compared;
        CAPTURE(to_double(r0));
        CAPTURE(to_double(r1));
        CHECK(d.verdict.status == cf.status);
    }
    CHECK(compared >= 20);
}
