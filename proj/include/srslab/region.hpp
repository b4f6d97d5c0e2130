#pragma once

#include <optional>
#include <string>

#include "srslab/core.hpp"
#include "srslab/param.hpp"

namespace srslab {

enum class Status { InDStar, NotInDStar, Contractive, UnknownBounded, BoundaryUndecidable };

enum class RuleTag {
    SameSignCycle,     // constant-sign cycle strips  -2 < r0+r1 < 0
    ZeroOneCycle,      // the two boxes carrying (0,-1) resp. (0,1)
    AlternatingCycle,  // the line r0 - r1 = -1 with cycle (1,-1)
    Contractive,       // closure of the Schur-Cohn triangle
    MonotoneRealI,     // r0 > 0, r1 <= -2*sqrt(r0), r0+r1 >= 0
    MonotoneRealII,    // r0+r1 <= -2 minus the excluded corner square
    MonotoneRealIII,   // r0+r1 >= 0, r0 < 0, r1 >= 1
    SectorGraph,       // r0-r1 < -1, r0 >= 0 (transition-graph argument)
    LargeModulusBand,  // r0-r1 > -1/2, r1 >= max(-2*sqrt(r0),-r0), r0 > 3/2+sqrt(2)
    AlternatingBand,   // -1 < r0-r1 <= -1/2, r1 >= 1+sqrt(5), r1^2 >= 4*r0
    WitnessRegion,     // residual expanding band settled by witness search
    UnresolvedBand,    // 1 < r0 < 4/3, -r0 <= r1 < r0-1: not classified here
    BoundaryBand,      // inexact input within tolerance of a deciding boundary
    WitnessSearch,     // certified decision from an exhaustive witness search
    DepthGuard         // subdivision gave up before certifying
};

const char* rule_name(RuleTag tag);
const char* status_name(Status status);

struct Verdict {
    Status status;
    RuleTag rule;
    std::optional<CycleWitness> cycle;  // present exactly when status == NotInDStar
};

// Closed-form classification of a d=2 parameter against D2*. Exact for
// rational input; for inexact input the point is reclassified at the corners
// of a tolerance box and disagreements degrade to BoundaryUndecidable.
Verdict classify(const ParamVector& r, double tolerance = 1e-12);

// The seven-sector partition of Z^2 used by the transition-graph argument.
enum class Sector { S0, S1, S2, S3, S4, S5, S6 };

const char* sector_name(Sector s);

Sector sector(const LatticePoint& x);

enum class TransitionCheck { Ok, Violation, PreconditionViolation };

// Requires r0 - r1 < -1, r0 >= 0 and x != 0; checks that tau_r(x) lands in
// the sector set prescribed by the transition graph
//   S1->S2, S2->S1, S3->S0|S1, S4->S0|S2, S5->S2|S4|S6, S6->S1|S3|S5.
TransitionCheck check_sector_transition(const ParamVector& r, const LatticePoint& x);

// Same check; throws std::domain_error on precondition violation.
bool sector_transition_ok(const ParamVector& r, const LatticePoint& x);

}  // namespace srslab
