#include "srslab/region.hpp"

#include <cmath>
#include <stdexcept>

namespace srslab {

const char* rule_name(RuleTag tag) {
    switch (tag) {
        case RuleTag::SameSignCycle: return "same-sign-cycle";
        case RuleTag::ZeroOneCycle: return "zero-one-cycle";
        case RuleTag::AlternatingCycle: return "alternating-cycle";
        case RuleTag::Contractive: return "contractive";
        case RuleTag::MonotoneRealI: return "monotone-real-i";
        case RuleTag::MonotoneRealII: return "monotone-real-ii";
        case RuleTag::MonotoneRealIII: return "monotone-real-iii";
        case RuleTag::SectorGraph: return "sector-graph";
        case RuleTag::LargeModulusBand: return "large-modulus-band";
        case RuleTag::AlternatingBand: return "alternating-band";
        case RuleTag::WitnessRegion: return "witness-region";
        case RuleTag::UnresolvedBand: return "unresolved-band";
        case RuleTag::BoundaryBand: return "boundary-band";
        case RuleTag::WitnessSearch: return "witness-search";
        case RuleTag::DepthGuard: return "depth-guard";
    }
    return "?";
}

const char* status_name(Status status) {
    switch (status) {
        case Status::InDStar: return "InDStar";
        case Status::NotInDStar: return "NotInDStar";
        case Status::Contractive: return "Contractive";
        case Status::UnknownBounded: return "UnknownBounded";
        case Status::BoundaryUndecidable: return "BoundaryUndecidable";
    }
    return "?";
}

namespace {

Verdict make(Status st, RuleTag rule) { return Verdict{st, rule, std::nullopt}; }

Verdict make_cycle(RuleTag rule, std::vector<std::int64_t> c) {
    return Verdict{Status::NotInDStar, rule, cycle_canonicalize(c)};
}

// Every branch below compares rationals only; square-root boundaries are
// rewritten as sign conditions plus squared inequalities, so the outcome is
// exact for exact input.
Verdict classify_exact(const Rat& r0, const Rat& r1) {
    const Rat sum = r0 + r1;
    const Rat diff = r0 - r1;

    // constant-sign fixed points on the strip -2 < r0+r1 < 0
    if (sum >= -1 && sgn(sum) < 0) return make_cycle(RuleTag::SameSignCycle, {1});
    if (sum > -2 && sum < -1) return make_cycle(RuleTag::SameSignCycle, {-1});

    // the two boxes carrying (0,-1) resp. (0,1)
    if (r0 > -2 && r0 <= -1 && r1 > -1 && sgn(r1) <= 0) return make_cycle(RuleTag::ZeroOneCycle, {0, -1});
    if (r0 >= -1 && sgn(r0) < 0 && sgn(r1) >= 0 && r1 < 1) return make_cycle(RuleTag::ZeroOneCycle, {0, 1});

    // alternating pair on the line r0 - r1 = -1
    if (diff == -1) return make_cycle(RuleTag::AlternatingCycle, {1, -1});

    const Rat a0 = sgn(r0) < 0 ? Rat(-r0) : r0;
    const Rat a1 = sgn(r1) < 0 ? Rat(-r1) : r1;
    if (a0 <= 1 && a1 <= 1 + r0) return make(Status::Contractive, RuleTag::Contractive);

    // r1 <= -2*sqrt(r0) below, r1 >= -2*sqrt(r0) further down: squared forms
    if (sgn(r0) > 0 && sgn(r1) <= 0 && r1 * r1 >= 4 * r0 && sgn(sum) >= 0)
        return make(Status::InDStar, RuleTag::MonotoneRealI);

    if (sum <= -2 && diff != -1 && !(r0 > -2 && r1 > -1))
        return make(Status::InDStar, RuleTag::MonotoneRealII);

    if (sgn(sum) >= 0 && sgn(r0) < 0 && r1 >= 1)
        return make(Status::InDStar, RuleTag::MonotoneRealIII);

    if (diff < -1 && sgn(r0) >= 0)
        return make(Status::InDStar, RuleTag::SectorGraph);

    // r0 > 3/2 + sqrt(2) band; r1 >= max(-2*sqrt(r0), -r0)
    if (2 * diff > -1 && r1 >= -r0 && (sgn(r1) >= 0 || r1 * r1 <= 4 * r0) && 2 * r0 > 3 &&
        (2 * r0 - 3) * (2 * r0 - 3) > 8)
        return make(Status::InDStar, RuleTag::LargeModulusBand);

    // -1 < r0-r1 <= -1/2 band with r1 >= 1 + sqrt(5) and real roots
    if (diff > -1 && 2 * diff <= -1 && r1 >= 1 && (r1 - 1) * (r1 - 1) >= 5 && r1 * r1 >= 4 * r0)
        return make(Status::InDStar, RuleTag::AlternatingBand);

    // residual expanding band settled by witness search; what is left after
    // this is exactly the closure-bounded unknown rectangle
    if (r0 >= Rat(4, 3) || r1 >= r0 - 1)
        return make(Status::InDStar, RuleTag::WitnessRegion);

    return make(Status::UnknownBounded, RuleTag::UnresolvedBand);
}

}  // namespace

Verdict classify(const ParamVector& r, double tolerance) {
    if (r.dim() != 2) throw std::invalid_argument("classify requires dimension 2");
    if (r.all_exact()) return classify_exact(r.value(0), r.value(1));

    const Rat c0 = rat_from_double(r.shadow(0));
    const Rat c1 = rat_from_double(r.shadow(1));
    Verdict center = classify_exact(c0, c1);
    if (!(tolerance > 0)) return center;

    const Rat t = rat_from_double(tolerance);
    for (int s0 : {-1, 1}) {
        for (int s1 : {-1, 1}) {
            Verdict corner = classify_exact(c0 + s0 * t, c1 + s1 * t);
            if (corner.status != center.status)
                return make(Status::BoundaryUndecidable, RuleTag::BoundaryBand);
        }
    }
    return center;
}

const char* sector_name(Sector s) {
    switch (s) {
        case Sector::S0: return "S0";
        case Sector::S1: return "S1";
        case Sector::S2: return "S2";
        case Sector::S3: return "S3";
        case Sector::S4: return "S4";
        case Sector::S5: return "S5";
        case Sector::S6: return "S6";
    }
    return "?";
}

Sector sector(const LatticePoint& x) {
    if (x.size() != 2) throw std::invalid_argument("sector requires dimension 2");
    const std::int64_t a1 = x[0], a2 = x[1];
    if (a1 == 0 && a2 == 0) return Sector::S0;
    if (a1 >= 0 && a2 <= -a1) return Sector::S1;
    if (a1 <= 0 && a2 >= -a1) return Sector::S2;
    if (a1 > 0 && a2 >= 0) return Sector::S3;
    if (a1 < 0 && a2 <= 0) return Sector::S4;
    if (a1 >= 0) return Sector::S5;  // -a1 < a2 < 0
    return Sector::S6;               // 0 < a2 < -a1
}

TransitionCheck check_sector_transition(const ParamVector& r, const LatticePoint& x) {
    if (r.dim() != 2) throw std::invalid_argument("transition check requires dimension 2");
    if (x.size() != 2) throw std::invalid_argument("state dimension does not match parameter dimension");

    bool pre;
    if (r.all_exact())
        pre = r.value(0) - r.value(1) < -1 && sgn(r.value(0)) >= 0;
    else
        pre = r.shadow(0) - r.shadow(1) < -1.0 && r.shadow(0) >= 0.0;
    if (!pre || (x[0] == 0 && x[1] == 0)) return TransitionCheck::PreconditionViolation;

    const Sector from = sector(x);
    const Sector to = sector(srs_step(r, x));
    auto in = [to](std::initializer_list<Sector> allowed) {
        for (Sector s : allowed)
            if (s == to) return true;
        return false;
    };
    bool ok = false;
    switch (from) {
        case Sector::S0: ok = to == Sector::S0; break;
        case Sector::S1: ok = in({Sector::S2}); break;
        case Sector::S2: ok = in({Sector::S1}); break;
        case Sector::S3: ok = in({Sector::S0, Sector::S1}); break;
        case Sector::S4: ok = in({Sector::S0, Sector::S2}); break;
        case Sector::S5: ok = in({Sector::S2, Sector::S4, Sector::S6}); break;
        case Sector::S6: ok = in({Sector::S1, Sector::S3, Sector::S5}); break;
    }
    return ok ? TransitionCheck::Ok : TransitionCheck::Violation;
}

bool sector_transition_ok(const ParamVector& r, const LatticePoint& x) {
    TransitionCheck c = check_sector_transition(r, x);
    if (c == TransitionCheck::PreconditionViolation)
        throw std::domain_error("transition check requires r0-r1 < -1, r0 >= 0 and x != 0");
    return c == TransitionCheck::Ok;
}

}  // namespace srslab
