#include "doctest.h"

#include "srslab/certified.hpp"

#include <random>
#include <stdexcept>

using namespace srslab;

namespace {

LatticePoint lp(std::int64_t a, std::int64_t b) { return {a, b}; }

ParamVector rand_expanding(std::mt19937_64& rng, double min_margin) {
    std::uniform_int_distribution<int> num(-96, 96);
    for (;;) {
        const ParamVector r = param2(Rat(num(rng), 32), Rat(num(rng), 32));
        const ExpandingMargin em = expanding_margin(r);
        if (em.error == CertError::None && em.value > min_margin) return r;
    }
}

}  // namespace

TEST_CASE("expanding margin certifies min root modulus minus one") {
    SUBCASE("real distinct") {
        const ExpandingMargin em = expanding_margin(param2(Rat(6), Rat(-5)));
        REQUIRE(em.error == CertError::None);
        CHECK(em.lower == 1);
        CHECK(em.value == doctest::Approx(1.0));
    }
    SUBCASE("complex pair") {
        const ExpandingMargin em = expanding_margin(param2(Rat(3, 2), Rat(0)));
        REQUIRE(em.error == CertError::None);
        const double exact = std::sqrt(1.5) - 1;
        CHECK(em.value == doctest::Approx(exact).epsilon(1e-9));
        // lower <= sqrt(3/2) - 1, compared without rounding
        CHECK((1 + em.lower) * (1 + em.lower) <= Rat(3, 2));
        CHECK(em.value > 0.22);
    }
    SUBCASE("rejections") {
        CHECK(expanding_margin(param2(Rat(1), Rat(0))).error == CertError::NotExpanding);
        CHECK(expanding_margin(param2(Rat(1, 2), Rat(0))).error == CertError::NotExpanding);
        CHECK(expanding_margin(param2(Rat(1), Rat(-2))).error == CertError::NotExpanding);
        // expanding, but by less than the rejection gate
        CHECK(expanding_margin(param2(Rat(1000000001, 1000000000), Rat(0))).error ==
              CertError::MarginTooSmall);
    }
}

TEST_CASE("adapted norm certificate for distinct real roots") {
    const NormBuild nb = build_norm(param2(Rat(6), Rat(-5)));
    REQUIRE(nb.error == CertError::None);
    const NormCertificate& c = nb.cert;
    CHECK(c.kind == RootKind::RealDistinct);
    CHECK(c.D == 1);
    CHECK(c.rho_d == doctest::Approx(1.5));
    CHECK(c.margin_d == doctest::Approx(0.5));
    CHECK(c.unit_last_norm_d == doctest::Approx(1.0));
    CHECK(c.threshold_d == doctest::Approx(2.0));

    CHECK(c.norm(1, -1) == doctest::Approx(4.0));
    CHECK(c.norm(1, 1) == doctest::Approx(2.0));
    CHECK(c.inside_ball(lp(1, 1)));  // the ball is closed
    CHECK(c.inside_ball(lp(0, 0)));
    CHECK_FALSE(c.inside_ball(lp(1, -1)));
    CHECK_FALSE(c.inside_ball(lp(2, 2)));
    CHECK(c.norm_compare(lp(1, -1), lp(1, 1)) > 0);
    CHECK(c.norm_compare(lp(1, 1), lp(1, -1)) < 0);
    CHECK(c.norm_compare(lp(1, 1), lp(-1, -1)) == 0);
}

TEST_CASE("adapted norm certificate for a repeated real root") {
    const NormBuild nb = build_norm(param2(Rat(4), Rat(-4)));
    REQUIRE(nb.error == CertError::None);
    const NormCertificate& c = nb.cert;
    CHECK(c.kind == RootKind::RealRepeated);
    CHECK(c.lambda == 2);
    CHECK(c.eps == Rat(1, 4));
    CHECK(c.rho_d == doctest::Approx(1.5));
    CHECK(c.thresh_rep == 8);

    CHECK(c.inside_ball(lp(8, 18)));   // |x1 - 2*x0| = 2 = eps*thresh exactly
    CHECK_FALSE(c.inside_ball(lp(8, 19)));
    CHECK_FALSE(c.inside_ball(lp(9, 18)));

    const WitnessBuild wb = witness_set(c);
    REQUIRE(wb.error == CertError::None);
    CHECK(wb.witnesses.points.size() == 85);
    CHECK(wb.witnesses.box0 == 8);
    CHECK(wb.witnesses.box1 == 18);
}

TEST_CASE("adapted norm certificate for a complex pair") {
    const NormBuild nb = build_norm(param2(Rat(3, 2), Rat(0)));
    REQUIRE(nb.error == CertError::None);
    const NormCertificate& c = nb.cert;
    CHECK(c.kind == RootKind::ComplexPair);
    CHECK(c.D == Rat(3, 2));
    CHECK(c.p_half == 0);
    CHECK(c.q2 == Rat(3, 2));
    CHECK(c.rho_d == doctest::Approx(1.1123724356957945));
    CHECK(c.threshold_d == doctest::Approx(7.265986).epsilon(1e-5));
    CHECK(c.unit_last_norm_d == doctest::Approx(std::sqrt(2.0 / 3.0)));

    // enumeration is complete: exactly the box lattice points inside the ball
    const WitnessBuild wb = witness_set(c);
    REQUIRE(wb.error == CertError::None);
    CHECK(wb.witnesses.points.size() == 207);
    std::size_t direct = 0;
    for (std::int64_t x0 = -wb.witnesses.box0; x0 <= wb.witnesses.box0; ++x0)
        for (std::int64_t x1 = -wb.witnesses.box1; x1 <= wb.witnesses.box1; ++x1)
            if (c.inside_ball(lp(x0, x1))) ++direct;
    CHECK(direct == wb.witnesses.points.size());
    for (const auto& w : wb.witnesses.points) CHECK(c.inside_ball(w));
}

TEST_CASE("rho overrides are validated against the root modulus") {
    const ParamVector r = param2(Rat(6), Rat(-5));
    const NormBuild nb = build_norm(r, Rat(7, 4));
    REQUIRE(nb.error == CertError::None);
    CHECK(nb.cert.rho_d == doctest::Approx(1.75));
    CHECK(nb.cert.threshold_d == doctest::Approx(4.0 / 3.0));

    CHECK(build_norm(r, Rat(1)).error == CertError::BadRho);
    CHECK(build_norm(r, Rat(2)).error == CertError::BadRho);  // rho must stay below the modulus
    CHECK(build_norm(r, Rat(5)).error == CertError::BadRho);
    CHECK(build_norm(r, Rat(1, 2)).error == CertError::BadRho);
}

TEST_CASE("witness enumeration refuses to explode") {
    const NormBuild nb = build_norm(param2(Rat(10001, 10000), Rat(0)));
    REQUIRE(nb.error == CertError::None);
    CHECK(witness_set(nb.cert).error == CertError::WitnessExplosion);
}

TEST_CASE("norm strictly grows along steps outside the ball") {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<std::int64_t> coord(-60, 60);
    int outside_checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const ParamVector r = rand_expanding(rng, 0.05);
        const NormBuild nb = build_norm(r);
        if (nb.error != CertError::None) continue;
        for (int i = 0; i < 40; ++i) {
            const LatticePoint x = lp(coord(rng), coord(rng));
            if (nb.cert.inside_ball(x)) continue;
            ++outside_checked;
            CAPTURE(to_double(r.value(0)));
            CAPTURE(to_double(r.value(1)));
            CAPTURE(x[0]);
            CAPTURE(x[1]);
            CHECK(nb.cert.norm_compare(srs_step(r, x), x) > 0);
        }
    }
    CHECK(outside_checked > 400);
}

TEST_CASE("certified point decisions on pinned parameters") {
    struct Case {
        Rat r0, r1;
        Status status;
        std::size_t witnesses;
        std::vector<std::int64_t> cycle;
    };
    const Case cases[] = {
        {Rat(3, 2), Rat(0), Status::InDStar, 207, {}},
        {Rat(7, 5), Rat(1, 5), Status::InDStar, 315, {}},
        {Rat(4, 3), Rat(-1, 3), Status::InDStar, 457, {}},
        {Rat(6, 5), Rat(-3, 2), Status::NotInDStar, 1719, {1}},
        {Rat(6), Rat(-5), Status::InDStar, 25, {}},
        {Rat(4), Rat(-4), Status::InDStar, 85, {}},
    };
    for (const auto& c : cases) {
        CAPTURE(to_double(c.r0));
        CAPTURE(to_double(c.r1));
        const DecideOutcome d = decide_point(param2(c.r0, c.r1));
        REQUIRE(d.error == CertError::None);
        CHECK(d.verdict.status == c.status);
        CHECK(d.verdict.rule == RuleTag::WitnessSearch);
        CHECK(d.witness_count == c.witnesses);
        CHECK(d.margin > 0);
        CHECK(d.rho > 1);
        if (c.cycle.empty()) {
            CHECK_FALSE(d.verdict.cycle.has_value());
        } else {
            REQUIRE(d.verdict.cycle.has_value());
            CHECK(d.verdict.cycle->entries == c.cycle);
            CHECK(verify_cycle(param2(c.r0, c.r1), *d.verdict.cycle));
        }
    }
}

TEST_CASE("decision errors surface instead of guessing") {
    CHECK(decide_point(param2(Rat(1), Rat(0))).error == CertError::NotExpanding);
    CHECK(decide_point(param2(Rat(1, 2), Rat(1, 2))).error == CertError::NotExpanding);
    CHECK(decide_point(param2(Rat(6), Rat(-5)), Rat(3)).error == CertError::BadRho);
    CHECK_THROWS_AS((void)decide_point(ParamVector::from_doubles({1.5, 0.0})),
                    std::invalid_argument);
}

TEST_CASE("the verdict does not depend on the choice of rho") {
    const ParamVector r = param2(Rat(6, 5), Rat(-3, 2));
    const DecideOutcome a = decide_point(r);
    const DecideOutcome b = decide_point(r, Rat(107, 100));  // (107/100)^2 < 6/5
    REQUIRE(a.error == CertError::None);
    REQUIRE(b.error == CertError::None);
    CHECK(a.verdict.status == b.verdict.status);
    CHECK(a.verdict.cycle->entries == b.verdict.cycle->entries);
    CHECK(a.witness_count != b.witness_count);  // the ball changed, the answer did not

    const DecideOutcome c = decide_point(param2(Rat(3, 2), Rat(0)), Rat(21, 20));
    REQUIRE(c.error == CertError::None);
    CHECK(c.verdict.status == Status::InDStar);
}

TEST_CASE("all cycles are found, verified and confined to the ball") {
    const ParamVector r = param2(Rat(6, 5), Rat(-3, 2));
    const CyclesResult res = find_all_cycles(r);
    REQUIRE(res.error == CertError::None);
    CHECK(res.witness_count == 1719);
    REQUIRE(res.cycles.size() == 1);
    CHECK(res.cycles[0].entries == std::vector<std::int64_t>{1});

    const NormBuild nb = build_norm(r);
    for (const auto& c : res.cycles) {
        CHECK(verify_cycle(r, c));
        // walk the cycle through consecutive states
        const auto& e = c.entries;
        for (std::size_t i = 0; i < e.size(); ++i) {
            const LatticePoint state = lp(e[i], e[(i + 1) % e.size()]);
            CHECK(nb.cert.inside_ball(state));
            CHECK(srs_step(r, state) == lp(e[(i + 1) % e.size()], e[(i + 2) % e.size()]));
        }
    }

    CHECK(find_all_cycles(param2(Rat(3, 2), Rat(0))).cycles.empty());
}

TEST_CASE("region certificates stay valid across their parameter box") {
    const ParamVector r = param2(Rat(6), Rat(-5));
    const NormBuild nb = build_norm_region(r, Rat(1, 100));
    REQUIRE(nb.error == CertError::None);
    CHECK(nb.cert.delta_inf == Rat(1, 100));
    CHECK(nb.cert.pert_coeff > 0);

    // degraded expansion still clears 1, by less than the point certificate
    const NormBuild point = build_norm(r);
    CHECK(nb.cert.margin_d > 0);
    CHECK(nb.cert.margin_d < point.cert.margin_d);

    const RationalRect inside{Rat(599, 100), Rat(601, 100), Rat(-501, 100), Rat(-499, 100)};
    CHECK(verify_uniformity(nb.cert, inside));
    const RationalRect outside{Rat(5), Rat(7), Rat(-6), Rat(-4)};
    CHECK_FALSE(verify_uniformity(nb.cert, outside));

    CHECK_THROWS_AS((void)build_norm_region(r, Rat(1, 100), Rat(0)), std::invalid_argument);
    CHECK_THROWS_AS((void)build_norm_region(r, Rat(1, 100), Rat(1)), std::invalid_argument);
    CHECK_THROWS_AS((void)build_norm_region(r, Rat(-1)), std::invalid_argument);
}
