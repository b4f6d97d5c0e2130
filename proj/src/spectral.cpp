#include "srslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srslab {

namespace {

void require_d2(const ParamVector& r) {
    if (r.dim() != 2) throw std::invalid_argument("operation requires dimension 2");
}

}  // namespace

Spectrum spectrum_from_roots(std::vector<std::complex<double>> roots) {
    if (roots.empty()) throw std::invalid_argument("empty root list");
    Spectrum s;
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    s.roots = std::move(roots);
    s.moduli.reserve(s.roots.size());
    for (const auto& z : s.roots) s.moduli.push_back(std::abs(z));
    return s;
}

Spectrum quadratic_roots(const ParamVector& r) {
    require_d2(r);
    double r0 = r.shadow(0), r1 = r.shadow(1);
    Spectrum s;
    s.kind_valid = true;

    double disc_d = r1 * r1 - 4.0 * r0;
    if (r.all_exact()) {
        s.disc_exact = true;
        s.discriminant = r.value(1) * r.value(1) - 4 * r.value(0);
        s.disc_sign = sgn(s.discriminant);
        disc_d = to_double(s.discriminant);
    } else {
        s.disc_sign = disc_d > 0 ? 1 : disc_d < 0 ? -1 : 0;
    }

    if (s.disc_sign < 0) {
        s.kind = RootKind::ComplexPair;
        double re = -r1 / 2.0, im = std::sqrt(-disc_d) / 2.0;
        s.roots = {{re, -im}, {re, im}};
    } else if (s.disc_sign == 0) {
        s.kind = RootKind::RealRepeated;
        double root = -r1 / 2.0;
        s.roots = {{root, 0.0}, {root, 0.0}};
    } else {
        s.kind = RootKind::RealDistinct;
        double sq = std::sqrt(disc_d);
        // evaluate the large-magnitude root first to avoid cancellation
        double q = -(r1 + (r1 >= 0 ? sq : -sq)) / 2.0;
        double root_big = q;
        double root_small = q != 0.0 ? r0 / q : (-r1 - (r1 >= 0 ? -sq : sq)) / 2.0;
        s.roots = {{root_small, 0.0}, {root_big, 0.0}};
        if (std::abs(s.roots[0]) > std::abs(s.roots[1])) std::swap(s.roots[0], s.roots[1]);
    }
    for (const auto& z : s.roots) s.moduli.push_back(std::abs(z));
    if (s.moduli[0] > s.moduli[1]) {
        std::swap(s.moduli[0], s.moduli[1]);
        std::swap(s.roots[0], s.roots[1]);
    }
    return s;
}

SchurCohn schur_cohn_member(const ParamVector& r) {
    require_d2(r);
    if (r.all_exact()) {
        const Rat &r0 = r.value(0), &r1 = r.value(1);
        Rat a0 = sgn(r0) < 0 ? Rat(-r0) : r0;
        Rat a1 = sgn(r1) < 0 ? Rat(-r1) : r1;
        if (a0 < 1 && a1 < 1 + r0) return SchurCohn::Inside;
        if (a0 <= 1 && a1 <= 1 + r0) return SchurCohn::Boundary;
        return SchurCohn::Outside;
    }
    double a0 = std::abs(r.shadow(0)), a1 = std::abs(r.shadow(1));
    if (a0 < 1 && a1 < 1 + r.shadow(0)) return SchurCohn::Inside;
    if (a0 <= 1 && a1 <= 1 + r.shadow(0)) return SchurCohn::Boundary;
    return SchurCohn::Outside;
}

BoundValue nlrs_bound(const Spectrum& spectrum, double error_sup) {
    BoundValue b;
    if (!(error_sup > 0)) {
        b.reason = "error bound must be positive";
        return b;
    }
    double prod = 1.0;
    for (double m : spectrum.moduli) {
        double gap = std::abs(m - 1.0);
        if (gap <= kUnitModulusTolerance) {
            b.reason = "root modulus within tolerance of 1, bound diverges";
            return b;
        }
        prod *= gap;
    }
    b.valid = true;
    b.value = error_sup / prod;
    return b;
}

BoundValue cycle_bound(const ParamVector& r) {
    require_d2(r);
    return nlrs_bound(quadratic_roots(r), 1.0);
}

bool cycle_elements_within_bound(const ParamVector& r, const CycleWitness& c) {
    require_d2(r);
    const Rat r0 = r.value(0), r1 = r.value(1);
    Int max_abs = 0;
    for (auto e : c.entries) {
        Int a = e < 0 ? Int(-e) : Int(e);
        if (a > max_abs) max_abs = a;
    }
    const Rat A(max_abs);

    Rat disc = r1 * r1 - 4 * r0;
    int ds = sgn(disc);
    if (ds < 0) {
        // both moduli sqrt(r0): need A*(sqrt(r0)-1)^2 <= 1,
        // i.e. A*(r0+1) - 1 <= 2*A*sqrt(r0)
        return qsign(A * (r0 + 1) - 1, -2 * A, r0) <= 0;
    }
    if (ds == 0) {
        Rat lam = -r1 / 2;
        if (sgn(lam) < 0) lam = -lam;
        Rat gap = lam - 1;
        if (sgn(gap) < 0) gap = -gap;
        return A * gap * gap <= 1;
    }
    // real distinct roots (-r1 +- sqrt(disc))/2: work in Q(sqrt(disc)) as
    // pairs (p, q) = p + q*sqrt(disc)
    auto mul = [&disc](const std::pair<Rat, Rat>& x, const std::pair<Rat, Rat>& y) {
        return std::pair<Rat, Rat>{x.first * y.first + x.second * y.second * disc,
                                   x.first * y.second + x.second * y.first};
    };
    auto abs_of = [&disc](std::pair<Rat, Rat> x) {
        if (qsign(x.first, x.second, disc) < 0) {
            x.first = -x.first;
            x.second = -x.second;
        }
        return x;
    };
    std::pair<Rat, Rat> prod{1, 0};
    for (int side : {1, -1}) {
        std::pair<Rat, Rat> root{-r1 / 2, Rat(side) / 2};
        auto mod = abs_of(root);
        mod.first -= 1;  // |alpha| - 1
        prod = mul(prod, abs_of(mod));
    }
    // A * prod <= 1
    return qsign(A * prod.first - 1, A * prod.second, disc) <= 0;
}

PairBounds pair_bounds(const ParamVector& r) {
    require_d2(r);
    PairBounds pb;
    Spectrum s = quadratic_roots(r);
    double g1 = std::abs(s.moduli[0] - 1.0), g2 = std::abs(s.moduli[1] - 1.0);
    if (g1 <= kUnitModulusTolerance || g2 <= kUnitModulusTolerance) {
        pb.reason = "root modulus within tolerance of 1, bounds diverge";
        return pb;
    }
    pb.valid = true;
    pb.diff_root1_bound = 1.0 / g2;
    pb.diff_root2_bound = 1.0 / g1;
    return pb;
}

HalfOpenInterval pair_difference_interval(double alpha2) {
    HalfOpenInterval iv;
    if (!std::isfinite(alpha2) || alpha2 == 1.0 || alpha2 == -1.0) {
        iv.reason = "alpha2 must be a real number distinct from +1 and -1";
        return iv;
    }
    iv.valid = true;
    if (alpha2 >= 0.0 && alpha2 < 1.0) {
        iv.lo = 0.0;
        iv.hi = 1.0 / (1.0 - alpha2);
        iv.lo_closed = true;
        iv.hi_closed = false;
        iv.case_tag = "0<=alpha2<1";
    } else if (alpha2 > 1.0) {
        iv.lo = -1.0 / (alpha2 - 1.0);
        iv.hi = 0.0;
        iv.lo_closed = false;
        iv.hi_closed = true;
        iv.case_tag = "alpha2>1";
    } else if (alpha2 > -1.0) {
        iv.lo = alpha2 / (1.0 - alpha2 * alpha2);
        iv.hi = 1.0 / (1.0 - alpha2 * alpha2);
        iv.lo_closed = false;
        iv.hi_closed = false;
        iv.case_tag = "-1<alpha2<0";
    } else {
        iv.lo = -1.0 / (alpha2 * alpha2 - 1.0);
        iv.hi = -alpha2 / (alpha2 * alpha2 - 1.0);
        iv.lo_closed = false;
        iv.hi_closed = false;
        iv.case_tag = "alpha2<-1";
    }
    return iv;
}

}  // namespace srslab
