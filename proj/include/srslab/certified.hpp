#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "srslab/core.hpp"
#include "srslab/param.hpp"
#include "srslab/region.hpp"
#include "srslab/spectral.hpp"

namespace srslab {

enum class CertError { None, NotExpanding, MarginTooSmall, BadRho, WitnessExplosion };

const char* cert_error_name(CertError e);

// Rejection gate: certified margins at or below this are refused.
inline constexpr double kMarginGate = 1e-9;

// p + q*sqrt(D); the radicand D lives in the owning certificate.
struct QuadElem {
    Rat p, q;
};

struct ExpandingMargin {
    CertError error = CertError::NotExpanding;
    Rat lower;           // certified rational lower bound on min|root| - 1
    double value = 0.0;  // double shadow of lower
};

// Exact discriminant-sign case analysis; rejects when the certified margin
// does not exceed kMarginGate.
ExpandingMargin expanding_margin(const ParamVector& r);

// Expansion-adapted norm for the companion matrix, one construction per root
// kind. All membership and comparison predicates are exact; QuadElem values
// live in Q(sqrt(D)).
//   RealDistinct  roots a=(-r1+sqrt(D))/2, b=(-r1-sqrt(D))/2, D=r1^2-4*r0;
//                 norm(x) = max(|x1-b*x0|, |a*x0-x1|)/sqrt(D),
//                 ball: |x1-b*x0| <= tau and |a*x0-x1| <= tau
//   ComplexPair   D=r0; p_half=-r1/2, q2=r0-r1^2/4;
//                 norm(x)^2 = x0^2 + (x1-p_half*x0)^2/q2,
//                 ball: norm^2 <= threshold_sq
//   RealRepeated  lambda=-r1/2, eps=(|lambda|-rho)/2, all rational;
//                 norm(x) = max(|x0|, |x1-lambda*x0|/eps),
//                 ball: |x0| <= thresh_rep and |x1-lambda*x0| <= eps*thresh_rep
struct NormCertificate {
    ParamVector r;
    RootKind kind = RootKind::RealDistinct;
    Rat D;

    QuadElem rho;        // threshold parameter, 1 < rho <= expansion
    QuadElem expansion;  // certified growth factor of R(r) in this norm
    Rat pert_coeff;      // norm drop per unit |s - r|_inf (upper bound)
    Rat delta_inf;       // parameter box half-width this certificate covers

    QuadElem tau;        // RealDistinct ball bound
    Rat p_half, q2;      // ComplexPair data
    QuadElem threshold_sq;
    Rat lambda, eps, thresh_rep;  // RealRepeated data

    double rho_d = 0.0;
    double margin_d = 0.0;           // expansion - rho
    double unit_last_norm_d = 0.0;   // ||(0,1)||
    double threshold_d = 0.0;        // ball radius ||(0,1)||/(rho-1)
    double basis_condition = 0.0;    // condition estimate of the basis change

    bool inside_ball(const LatticePoint& x) const;  // closed ball, exact
    // sign of ||a|| - ||b||, exact
    int norm_compare(const LatticePoint& a, const LatticePoint& b) const;
    double norm(double x0, double x1) const;  // float evaluation, diagnostics
};

struct NormBuild {
    CertError error = CertError::NotExpanding;
    NormCertificate cert;
};

// Default rho is (1 + min root modulus)/2; a supplied rho must satisfy
// 1 < rho < min modulus (else BadRho).
NormBuild build_norm(const ParamVector& r, std::optional<Rat> rho = std::nullopt);

// Certificate whose expansion is degraded by delta_inf * pert_coeff so that
// it provably holds for every parameter within |s - r|_inf <= delta_inf.
// rho_scale in (0,1) places rho at 1 + rho_scale*(degraded expansion - 1).
NormBuild build_norm_region(const ParamVector& r, const Rat& delta_inf,
                            const Rat& rho_scale = Rat(7, 8));

struct WitnessSet {
    NormCertificate cert;
    double threshold = 0.0;            // ball radius
    std::int64_t box0 = 0, box1 = 0;   // enclosing box |x0|<=box0, |x1|<=box1
    std::vector<LatticePoint> points;  // every lattice point of the closed ball
};

struct WitnessBuild {
    CertError error = CertError::NotExpanding;
    WitnessSet witnesses;
};

// Enumerates the closed norm ball; WitnessExplosion if the enclosing box
// exceeds max_box_points.
WitnessBuild witness_set(const NormCertificate& cert,
                         std::int64_t max_box_points = 100000000);

// Escape oracle for iterate_orbit: fires outside the witness ball, where the
// norm provably increases forever. Tag "norm-certificate".
EscapeOracle certificate_escape(const NormCertificate& cert);

struct DecideOutcome {
    CertError error = CertError::NotExpanding;
    Verdict verdict{Status::UnknownBounded, RuleTag::WitnessSearch, std::nullopt};
    std::size_t witness_count = 0;
    double rho = 0.0;
    double margin = 0.0;
};

// Exhaustive certified search over the witness ball. Requires exact rational
// entries. NotInDStar carries the minimal nontrivial cycle found (ordered by
// period, then lexicographically).
DecideOutcome decide_point(const ParamVector& r, std::optional<Rat> rho = std::nullopt);

struct CyclesResult {
    CertError error = CertError::NotExpanding;
    std::vector<CycleWitness> cycles;  // all nontrivial cycles, sorted
    std::size_t witness_count = 0;
};

CyclesResult find_all_cycles(const ParamVector& r, std::optional<Rat> rho = std::nullopt);

struct RationalRect {
    Rat r0_lo, r0_hi, r1_lo, r1_hi;
};

using PolyPoint = std::pair<Rat, Rat>;
using Polygon = std::vector<PolyPoint>;  // convex, counterclockwise

Rat polygon_area2(const Polygon& poly);  // twice the signed area
PolyPoint polygon_centroid(const Polygon& poly);

// Cells of K cut by every line x0*s0 + x1*s1 = k with x a witness and k an
// integer strictly inside the form's range over K. Pure geometry; on each
// returned cell every floor value floor(x . s) is constant.
std::vector<Polygon> cut_cells(const RationalRect& K, const std::vector<LatticePoint>& witnesses);

// True when the certificate's degraded expansion stays above 1 for every
// parameter of K (exact comparison against the recorded perturbation rate).
bool verify_uniformity(const NormCertificate& cert, const RationalRect& K);

struct SubdivideResult {
    bool uniform = false;  // false: certificate invalid somewhere on K, split K and retry
    Rat expansion_slack;   // certified lower bound on (expansion over K) - 1
    std::vector<Polygon> cells;
};

SubdivideResult subdivide_region(const RationalRect& K, const NormCertificate& cert,
                                 const WitnessSet& witnesses);

struct CellDecision {
    Polygon cell;
    PolyPoint sample;  // centroid, the parameter the verdict was computed at
    Verdict verdict;
    // witness -> image, constant across the cell; empty when elided for size
    std::vector<std::pair<LatticePoint, LatticePoint>> symbolic_map;
};

struct RegionOptions {
    std::optional<Rat> rho_scale;         // override for build_norm_region
    int max_depth = 20;                   // bisection levels before giving up
    bool collect_cells = true;            // false: tallies only, no stored cells
    std::size_t symbolic_map_limit = 20000;  // elide maps when more cells than this
};

struct RegionDecision {
    CertError error = CertError::None;  // NotExpanding: no expanding part found
    std::vector<CellDecision> cells;
    std::vector<RationalRect> undecided;  // depth guard exhausted
    std::size_t cell_count = 0;
    std::size_t in_dstar_cells = 0;
    std::size_t not_in_dstar_cells = 0;
    // distinct cycles over NotInDStar cells with multiplicities
    std::vector<std::pair<CycleWitness, std::size_t>> cycle_tally;
};

// Splits K until one norm certificate is uniformly valid per piece, cuts each
// piece into cells acting identically on all witnesses, and decides every
// cell. Deterministic regardless of thread schedule.
RegionDecision decide_region(const RationalRect& K, const RegionOptions& opt = {});

}  // namespace srslab
