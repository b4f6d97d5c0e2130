#include "srslab/certified.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

namespace srslab {

namespace {

void require_d2(const ParamVector& r) {
    if (r.dim() != 2) throw std::invalid_argument("operation requires dimension 2");
}

// Certified margins must exceed this rational gate.
const Rat kGate(1, 1000000000);

// Arithmetic in Q(sqrt(D)) with a cached rational bracket around sqrt(D).
// When D is a rational square the bracket is exact and inverses fold to
// rationals, so no formula below ever divides by a vanishing conjugate.
struct QCtx {
    Rat D;
    bool square = false;
    Rat root;     // exact sqrt(D) when square
    Rat lo, hi;   // lo <= sqrt(D) <= hi

    explicit QCtx(const Rat& d) : D(d) {
        if (sgn(D) < 0) throw std::domain_error("negative radicand");
        Int num = numerator(D), den = denominator(D);
        Int ns = boost::multiprecision::sqrt(num);
        Int dsq = boost::multiprecision::sqrt(den);
        if (ns * ns == num && dsq * dsq == den) {
            square = true;
            root = Rat(ns, dsq);
            lo = hi = root;
        } else {
            auto b = rat_sqrt_bounds(D, 3);
            lo = b.first;
            hi = b.second;
        }
    }

    int sign(const QuadElem& x) const { return qsign(x.p, x.q, D); }
    QuadElem add(const QuadElem& x, const QuadElem& y) const { return {x.p + y.p, x.q + y.q}; }
    QuadElem sub(const QuadElem& x, const QuadElem& y) const { return {x.p - y.p, x.q - y.q}; }
    QuadElem neg(const QuadElem& x) const { return {-x.p, -x.q}; }
    QuadElem mul(const QuadElem& x, const QuadElem& y) const {
        return {x.p * y.p + x.q * y.q * D, x.p * y.q + x.q * y.p};
    }
    QuadElem inv(const QuadElem& x) const {
        if (square) return {Rat(1) / (x.p + x.q * root), Rat(0)};
        Rat n = x.p * x.p - x.q * x.q * D;  // nonzero for nonzero x when sqrt(D) is irrational
        return {x.p / n, -x.q / n};
    }
    QuadElem abs(const QuadElem& x) const { return sign(x) >= 0 ? x : neg(x); }
    Rat upper(const QuadElem& x) const { return x.p + x.q * (sgn(x.q) >= 0 ? hi : lo); }
    Rat lower(const QuadElem& x) const { return x.p + x.q * (sgn(x.q) >= 0 ? lo : hi); }
    double to_d(const QuadElem& x) const {
        return to_double(x.p) + to_double(x.q) * std::sqrt(to_double(D));
    }
};

// min(|a|, |b|) for the two real roots a = (-r1 + sqrt(D))/2, b = (-r1 - sqrt(D))/2.
QuadElem min_abs_root(const QCtx& F, const Rat& r1) {
    QuadElem a{-r1 / 2, Rat(1, 2)}, b{-r1 / 2, Rat(-1, 2)};
    QuadElem aa = F.abs(a), ab = F.abs(b);
    return F.sign(F.sub(aa, ab)) <= 0 ? aa : ab;
}

// Upper bound on (|x0| + |x1|)/||x||: the error row of a perturbed companion
// matrix moves the image by at most pert_coeff * |s - r|_inf per unit norm.
Rat pert_real_distinct(const QCtx& F, const Rat& r1, const Rat& disc) {
    // |a| + |b| = max(|r1|, sqrt(D)); C1 = 2 + that, unit last norm <= 1/lo.
    Rat c1 = 2;
    if (r1 * r1 >= disc)
        c1 += boost::multiprecision::abs(r1);
    else
        c1 += F.hi;
    return c1 / F.lo;
}

Rat pert_complex(const QCtx& F, const Rat& q2) {
    Rat c1 = 1 + F.hi;  // (|x0| + |x1|) <= (1 + sqrt(r0)) * N(x)^{1/2}
    Rat lo = rat_sqrt_bounds(q2, 3).first;
    return c1 / lo;
}

Rat pert_repeated(const Rat& alam, const Rat& eps) {
    return (1 + alam + eps) / eps;
}

double cond_inf_2x2(double a, double b, double c, double d) {
    double det = a * d - b * c;
    if (det == 0.0 || !std::isfinite(det)) return std::numeric_limits<double>::infinity();
    double n1 = std::max(std::abs(a) + std::abs(b), std::abs(c) + std::abs(d));
    double n2 = std::max(std::abs(d) + std::abs(b), std::abs(c) + std::abs(a)) / std::abs(det);
    return n1 * n2;
}

// Ball thresholds and float diagnostics; rho, expansion and kind data must
// already be in place.
void finish_cert(NormCertificate& c, const QCtx& F) {
    QuadElem rhom1{c.rho.p - 1, c.rho.q};
    double Dd = to_double(c.D);
    switch (c.kind) {
    case RootKind::RealDistinct: {
        // thresholds only ever need to be large enough; rounding them up to
        // dyadics keeps later exact arithmetic on them cheap
        QuadElem t = F.inv(rhom1);
        c.tau = {rat_round_up(t.p, 256), rat_round_up(t.q, 256)};
        c.unit_last_norm_d = 1.0 / std::sqrt(Dd);
        double r1d = to_double(c.r.value(1));
        double ad = (-r1d + std::sqrt(Dd)) / 2, bd = (-r1d - std::sqrt(Dd)) / 2;
        c.basis_condition = cond_inf_2x2(-bd, 1.0, ad, -1.0);
        break;
    }
    case RootKind::ComplexPair: {
        QuadElem s = F.mul(rhom1, rhom1);
        QuadElem i = F.inv(s);
        c.threshold_sq = {rat_round_up(i.p / c.q2, 256), rat_round_up(i.q / c.q2, 256)};
        double qd = std::sqrt(to_double(c.q2));
        c.unit_last_norm_d = 1.0 / qd;
        c.basis_condition = cond_inf_2x2(1.0, 0.0, -to_double(c.p_half) / qd, 1.0 / qd);
        break;
    }
    case RootKind::RealRepeated: {
        c.thresh_rep = rat_round_up(Rat(1) / (c.eps * rhom1.p), 256);
        double ed = to_double(c.eps);
        c.unit_last_norm_d = 1.0 / ed;
        c.basis_condition = cond_inf_2x2(1.0, 0.0, -to_double(c.lambda) / ed, 1.0 / ed);
        break;
    }
    }
    c.rho_d = F.to_d(c.rho);
    c.margin_d = F.to_d(c.expansion) - c.rho_d;
    c.threshold_d = c.unit_last_norm_d / (c.rho_d - 1.0);
}

}  // namespace

const char* cert_error_name(CertError e) {
    switch (e) {
    case CertError::None: return "none";
    case CertError::NotExpanding: return "not-expanding";
    case CertError::MarginTooSmall: return "margin-too-small";
    case CertError::BadRho: return "bad-rho";
    case CertError::WitnessExplosion: return "witness-explosion";
    }
    return "unknown";
}

ExpandingMargin expanding_margin(const ParamVector& r) {
    require_d2(r);
    ExpandingMargin out;
    const Rat r0 = r.value(0), r1 = r.value(1);
    const Rat disc = r1 * r1 - 4 * r0;
    const int ds = sgn(disc);

    if (ds < 0) {
        if (r0 <= 1) return out;
        out.lower = rat_sqrt_bounds(r0, 3).first - 1;
    } else if (ds == 0) {
        Rat alam = boost::multiprecision::abs(r1) / 2;
        if (alam <= 1) return out;
        out.lower = alam - 1;
    } else {
        // real roots straddle the unit circle unless |r0| > 1 and the
        // characteristic polynomial has the same sign at 1 and -1
        Rat p1 = 1 + r1 + r0, pm1 = 1 - r1 + r0;
        if (boost::multiprecision::abs(r0) <= 1 || sgn(p1) * sgn(pm1) <= 0) return out;
        QCtx F(disc);
        out.lower = F.lower(min_abs_root(F, r1)) - 1;
    }

    out.value = to_double(out.lower);
    out.error = out.lower > kGate ? CertError::None : CertError::MarginTooSmall;
    return out;
}

NormBuild build_norm(const ParamVector& r, std::optional<Rat> rho) {
    require_d2(r);
    NormBuild out;
    ExpandingMargin em = expanding_margin(r);
    if (em.error != CertError::None) {
        out.error = em.error;
        return out;
    }

    const Rat r0 = r.value(0), r1 = r.value(1);
    const Rat disc = r1 * r1 - 4 * r0;
    const int ds = sgn(disc);

    NormCertificate c;
    c.r = r;

    if (ds > 0) {
        c.kind = RootKind::RealDistinct;
        c.D = disc;
        QCtx F(c.D);
        QuadElem m = min_abs_root(F, r1);
        c.expansion = m;
        if (rho) {
            if (!(*rho > 1) || F.sign(F.sub(m, QuadElem{*rho, Rat(0)})) <= 0) {
                out.error = CertError::BadRho;
                return out;
            }
            c.rho = {*rho, Rat(0)};
        } else {
            c.rho = {(1 + m.p) / 2, m.q / 2};
        }
        c.pert_coeff = pert_real_distinct(F, r1, disc);
        finish_cert(c, F);
    } else if (ds < 0) {
        c.kind = RootKind::ComplexPair;
        c.D = r0;
        QCtx F(c.D);
        QuadElem m{Rat(0), Rat(1)};  // sqrt(r0)
        c.expansion = m;
        if (rho) {
            if (!(*rho > 1) || qsign(-*rho, 1, r0) <= 0) {
                out.error = CertError::BadRho;
                return out;
            }
            c.rho = {*rho, Rat(0)};
        } else {
            c.rho = {Rat(1, 2), Rat(1, 2)};
        }
        c.p_half = -r1 / 2;
        c.q2 = r0 - r1 * r1 / 4;
        c.pert_coeff = pert_complex(F, c.q2);
        finish_cert(c, F);
    } else {
        c.kind = RootKind::RealRepeated;
        c.D = 0;
        QCtx F(c.D);
        c.lambda = -r1 / 2;
        Rat alam = boost::multiprecision::abs(c.lambda);
        Rat rv;
        if (rho) {
            if (!(*rho > 1) || !(*rho < alam)) {
                out.error = CertError::BadRho;
                return out;
            }
            rv = *rho;
        } else {
            rv = (1 + alam) / 2;
        }
        c.rho = {rv, Rat(0)};
        c.eps = (alam - rv) / 2;
        c.expansion = {alam - c.eps, Rat(0)};
        c.pert_coeff = pert_repeated(alam, c.eps);
        finish_cert(c, F);
    }

    out.error = CertError::None;
    out.cert = std::move(c);
    return out;
}

NormBuild build_norm_region(const ParamVector& r, const Rat& delta_inf, const Rat& rho_scale) {
    require_d2(r);
    if (!(rho_scale > 0 && rho_scale < 1))
        throw std::invalid_argument("rho_scale must lie in (0,1)");
    if (delta_inf < 0) throw std::invalid_argument("delta_inf must be nonnegative");

    NormBuild out;
    ExpandingMargin em = expanding_margin(r);
    if (em.error != CertError::None) {
        out.error = em.error;
        return out;
    }

    const Rat r0 = r.value(0), r1 = r.value(1);
    const Rat disc = r1 * r1 - 4 * r0;
    const int ds = sgn(disc);

    NormCertificate c;
    c.r = r;
    c.delta_inf = delta_inf;

    // rounding rho toward 1 must never reach it
    auto shrink = [](const QCtx& F, QuadElem rho) {
        QuadElem rounded{rat_round_down(rho.p, 128), rat_round_down(rho.q, 128)};
        return F.sign(QuadElem{rounded.p - 1, rounded.q}) > 0 ? rounded : rho;
    };

    QuadElem m;
    if (ds > 0) {
        c.kind = RootKind::RealDistinct;
        c.D = disc;
        QCtx F(c.D);
        m = min_abs_root(F, r1);
        // pert rounds up and rho rounds toward 1: both directions weaken the
        // certificate slightly, keeping it valid with small numbers
        c.pert_coeff = rat_round_up(pert_real_distinct(F, r1, disc), 128);
        QuadElem mk{m.p - delta_inf * c.pert_coeff, m.q};
        if (F.sign(QuadElem{mk.p - 1 - kGate, mk.q}) <= 0) {
            out.error = CertError::MarginTooSmall;
            return out;
        }
        c.expansion = mk;
        c.rho = shrink(F, {1 + rho_scale * (mk.p - 1), rho_scale * mk.q});
        finish_cert(c, F);
    } else if (ds < 0) {
        c.kind = RootKind::ComplexPair;
        c.D = r0;
        QCtx F(c.D);
        c.p_half = -r1 / 2;
        c.q2 = r0 - r1 * r1 / 4;
        c.pert_coeff = rat_round_up(pert_complex(F, c.q2), 128);
        QuadElem mk{-delta_inf * c.pert_coeff, Rat(1)};
        if (F.sign(QuadElem{mk.p - 1 - kGate, mk.q}) <= 0) {
            out.error = CertError::MarginTooSmall;
            return out;
        }
        c.expansion = mk;
        c.rho = shrink(F, {1 + rho_scale * (mk.p - 1), rho_scale * mk.q});
        finish_cert(c, F);
    } else {
        c.kind = RootKind::RealRepeated;
        c.D = 0;
        QCtx F(c.D);
        c.lambda = -r1 / 2;
        Rat alam = boost::multiprecision::abs(c.lambda);
        // eps fixed from the point margin so the norm does not move with rho
        c.eps = (alam - 1) / 4;
        c.pert_coeff = rat_round_up(pert_repeated(alam, c.eps), 128);
        Rat mk = alam - c.eps - delta_inf * c.pert_coeff;
        if (mk - 1 <= kGate) {
            out.error = CertError::MarginTooSmall;
            return out;
        }
        c.expansion = {mk, Rat(0)};
        c.rho = shrink(F, {1 + rho_scale * (mk - 1), Rat(0)});
        finish_cert(c, F);
    }

    out.error = CertError::None;
    out.cert = std::move(c);
    return out;
}

bool NormCertificate::inside_ball(const LatticePoint& x) const {
    const Rat x0(x[0]), x1(x[1]);
    switch (kind) {
    case RootKind::RealDistinct: {
        const Rat r1 = r.value(1);
        // x1 - b*x0 and a*x0 - x1 share the irrational part x0/2
        Rat eq = x0 / 2;
        Rat e1p = x1 + r1 * x0 / 2;
        Rat e2p = -r1 * x0 / 2 - x1;
        auto within = [&](const Rat& ep) {
            return qsign(ep - tau.p, eq - tau.q, D) <= 0 &&
                   qsign(ep + tau.p, eq + tau.q, D) >= 0;
        };
        return within(e1p) && within(e2p);
    }
    case RootKind::ComplexPair: {
        Rat w = x1 - p_half * x0;
        Rat N = x0 * x0 + w * w / q2;
        return qsign(N - threshold_sq.p, -threshold_sq.q, D) <= 0;
    }
    case RootKind::RealRepeated: {
        Rat ax0 = boost::multiprecision::abs(x0);
        if (ax0 > thresh_rep) return false;
        Rat w = boost::multiprecision::abs(x1 - lambda * x0);
        return w <= eps * thresh_rep;
    }
    }
    return false;
}

int NormCertificate::norm_compare(const LatticePoint& a, const LatticePoint& b) const {
    switch (kind) {
    case RootKind::RealDistinct: {
        const Rat r1 = r.value(1);
        auto parts = [&](const LatticePoint& x) {
            Rat x0(x[0]), x1(x[1]);
            return std::pair<QuadElem, QuadElem>{{x1 + r1 * x0 / 2, x0 / 2},
                                                 {-r1 * x0 / 2 - x1, x0 / 2}};
        };
        auto qabs = [&](const QuadElem& e) {
            return qsign(e.p, e.q, D) >= 0 ? e : QuadElem{-e.p, -e.q};
        };
        auto qmax = [&](const QuadElem& u, const QuadElem& v) {
            return qsign(u.p - v.p, u.q - v.q, D) >= 0 ? u : v;
        };
        auto [a1, a2] = parts(a);
        auto [b1, b2] = parts(b);
        QuadElem na = qmax(qabs(a1), qabs(a2));
        QuadElem nb = qmax(qabs(b1), qabs(b2));
        return qsign(na.p - nb.p, na.q - nb.q, D);
    }
    case RootKind::ComplexPair: {
        auto nsq = [&](const LatticePoint& x) -> Rat {
            Rat x0(x[0]), x1(x[1]);
            Rat w = x1 - p_half * x0;
            return x0 * x0 + w * w / q2;
        };
        return sgn(nsq(a) - nsq(b));
    }
    case RootKind::RealRepeated: {
        auto nv = [&](const LatticePoint& x) {
            Rat x0(x[0]), x1(x[1]);
            Rat u = boost::multiprecision::abs(x0);
            Rat v = boost::multiprecision::abs(x1 - lambda * x0) / eps;
            return u >= v ? u : v;
        };
        Rat d = nv(a) - nv(b);
        return sgn(d);
    }
    }
    return 0;
}

double NormCertificate::norm(double x0, double x1) const {
    switch (kind) {
    case RootKind::RealDistinct: {
        double Dd = to_double(D), r1d = to_double(r.value(1));
        double sq = std::sqrt(Dd);
        double ad = (-r1d + sq) / 2, bd = (-r1d - sq) / 2;
        return std::max(std::abs(x1 - bd * x0), std::abs(ad * x0 - x1)) / sq;
    }
    case RootKind::ComplexPair: {
        double w = x1 - to_double(p_half) * x0;
        return std::sqrt(x0 * x0 + w * w / to_double(q2));
    }
    case RootKind::RealRepeated: {
        double w = std::abs(x1 - to_double(lambda) * x0);
        return std::max(std::abs(x0), w / to_double(eps));
    }
    }
    return 0.0;
}

WitnessBuild witness_set(const NormCertificate& cert, std::int64_t max_box_points) {
    WitnessBuild out;
    Rat x0_ub, x1_ub;

    switch (cert.kind) {
    case RootKind::RealDistinct: {
        QCtx F(cert.D);
        // x0 = (sum of the two eigencoordinates), each at most tau/sqrt(D)
        QuadElem x0rad{2 * cert.tau.q, 2 * cert.tau.p / cert.D};
        x0_ub = F.upper(x0rad);
        QuadElem mm = min_abs_root(F, cert.r.value(1));
        x1_ub = F.upper(F.add(F.mul(mm, x0rad), cert.tau));
        break;
    }
    case RootKind::ComplexPair: {
        QCtx F(cert.D);
        Rat t0 = F.upper(cert.threshold_sq);
        if (sgn(t0) < 0) t0 = 0;
        x0_ub = rat_sqrt_bounds(t0, 3).second;
        Rat t1 = t0 * cert.q2;
        x1_ub = boost::multiprecision::abs(cert.p_half) * x0_ub + rat_sqrt_bounds(t1, 3).second;
        break;
    }
    case RootKind::RealRepeated: {
        x0_ub = cert.thresh_rep;
        x1_ub = boost::multiprecision::abs(cert.lambda) * cert.thresh_rep +
                cert.eps * cert.thresh_rep;
        break;
    }
    }

    Int b0 = rat_floor(x0_ub), b1 = rat_floor(x1_ub);
    if (b0 < 0) b0 = 0;
    if (b1 < 0) b1 = 0;
    if ((2 * b0 + 1) * (2 * b1 + 1) > max_box_points) {
        out.error = CertError::WitnessExplosion;
        return out;
    }
    const auto B0 = b0.convert_to<std::int64_t>();
    const auto B1 = b1.convert_to<std::int64_t>();

    WitnessSet ws;
    ws.cert = cert;
    ws.threshold = cert.threshold_d;
    ws.box0 = B0;
    ws.box1 = B1;

    if (cert.kind == RootKind::ComplexPair) {
        // integerized membership: q2*x0^2 + (x1 - p_half*x0)^2 <= threshold_sq*q2,
        // all scaled by qd*pd^2 to clear denominators
        const Int pn = numerator(cert.p_half), pd = denominator(cert.p_half);
        const Int qn = numerator(cert.q2), qd = denominator(cert.q2);
        const Rat tp = cert.threshold_sq.p * cert.q2, tq = cert.threshold_sq.q * cert.q2;
        const Rat scale = Rat(qd * pd * pd);
        const Rat tps = tp * scale, tqs = tq * scale;
        const Int an = numerator(tps), ad = denominator(tps);
        const Int bn = numerator(tqs), bd = denominator(tqs);
        const Int Dn = numerator(cert.D), Dd = denominator(cert.D);
        const Int qnpd2 = qn * pd * pd;
        for (std::int64_t x0 = -B0; x0 <= B0; ++x0) {
            const Int w0 = pn * x0;
            const Int f0 = qnpd2 * x0 * x0;
            for (std::int64_t x1 = -B1; x1 <= B1; ++x1) {
                Int w = pd * x1 - w0;
                Int fn = f0 + qd * w * w;
                // sign of (fn/1 - an/ad) + (-bn/bd) sqrt(D) over common denom ad*bd
                Int A = fn * ad - an;
                A *= bd;
                Int B = -bn * ad;
                int sa = A.sign(), sb = B.sign();
                int s;
                if (sb == 0 || Dn == 0) s = sa;
                else if (sa == 0) s = sb;
                else if (sa == sb) s = sa;
                else {
                    Int lhs = A * A * Dd, rhs = B * B * Dn;
                    s = lhs == rhs ? 0 : (lhs > rhs ? sa : sb);
                }
                if (s <= 0) ws.points.push_back({x0, x1});
            }
        }
    } else {
        for (std::int64_t x0 = -B0; x0 <= B0; ++x0)
            for (std::int64_t x1 = -B1; x1 <= B1; ++x1)
                if (cert.inside_ball({x0, x1})) ws.points.push_back({x0, x1});
    }

    out.error = CertError::None;
    out.witnesses = std::move(ws);
    return out;
}

EscapeOracle certificate_escape(const NormCertificate& cert) {
    EscapeOracle o;
    o.tag = "norm-certificate";
    o.outside = [cert](const LatticePoint& x) { return !cert.inside_ball(x); };
    return o;
}

namespace {

// Image index of each witness under one exact map step; -1 when the image
// leaves the ball (it then grows forever and meets no cycle).
std::vector<std::int32_t> successor_indices(const ParamVector& r,
                                            const std::vector<LatticePoint>& W) {
    const Rat r0 = r.value(0), r1 = r.value(1);
    std::vector<std::int32_t> succ(W.size(), -1);
    for (std::size_t i = 0; i < W.size(); ++i) {
        Int f = -rat_floor(r0 * W[i][0] + r1 * W[i][1]);
        if (!fits_int64(f)) continue;
        LatticePoint img{W[i][1], f.convert_to<std::int64_t>()};
        auto it = std::lower_bound(W.begin(), W.end(), img);
        if (it != W.end() && *it == img)
            succ[i] = static_cast<std::int32_t>(it - W.begin());
    }
    return succ;
}

std::set<CycleWitness> cycles_of(const std::vector<LatticePoint>& W,
                                 const std::vector<std::int32_t>& succ) {
    const auto n = static_cast<std::int32_t>(succ.size());
    std::vector<std::uint8_t> color(n, 0);  // 0 new, 1 on current path, 2 done
    std::vector<std::int32_t> pathpos(n, -1), path;
    std::set<CycleWitness> out;
    for (std::int32_t i = 0; i < n; ++i) {
        if (color[i]) continue;
        path.clear();
        std::int32_t cur = i;
        while (cur >= 0 && color[cur] == 0) {
            color[cur] = 1;
            pathpos[cur] = static_cast<std::int32_t>(path.size());
            path.push_back(cur);
            cur = succ[cur];
        }
        if (cur >= 0 && color[cur] == 1) {
            std::vector<std::int64_t> entries;
            for (std::size_t j = pathpos[cur]; j < path.size(); ++j)
                entries.push_back(W[path[j]][0]);
            CycleWitness c = cycle_canonicalize(entries);
            if (!c.trivial()) out.insert(c);
        }
        for (std::int32_t v : path) color[v] = 2;
    }
    return out;
}

}  // namespace

DecideOutcome decide_point(const ParamVector& r, std::optional<Rat> rho) {
    require_d2(r);
    if (!r.all_exact())
        throw std::invalid_argument("certified decision requires exact rational parameters");

    DecideOutcome out;
    NormBuild nb = build_norm(r, std::move(rho));
    if (nb.error != CertError::None) {
        out.error = nb.error;
        return out;
    }
    out.rho = nb.cert.rho_d;
    out.margin = nb.cert.margin_d;

    WitnessBuild wb = witness_set(nb.cert);
    if (wb.error != CertError::None) {
        out.error = wb.error;
        return out;
    }
    out.witness_count = wb.witnesses.points.size();

    auto succ = successor_indices(r, wb.witnesses.points);
    auto cycles = cycles_of(wb.witnesses.points, succ);

    out.error = CertError::None;
    if (cycles.empty())
        out.verdict = {Status::InDStar, RuleTag::WitnessSearch, std::nullopt};
    else
        out.verdict = {Status::NotInDStar, RuleTag::WitnessSearch, *cycles.begin()};
    return out;
}

CyclesResult find_all_cycles(const ParamVector& r, std::optional<Rat> rho) {
    require_d2(r);
    if (!r.all_exact())
        throw std::invalid_argument("certified decision requires exact rational parameters");

    CyclesResult out;
    NormBuild nb = build_norm(r, std::move(rho));
    if (nb.error != CertError::None) {
        out.error = nb.error;
        return out;
    }
    WitnessBuild wb = witness_set(nb.cert);
    if (wb.error != CertError::None) {
        out.error = wb.error;
        return out;
    }
    out.witness_count = wb.witnesses.points.size();

    auto succ = successor_indices(r, wb.witnesses.points);
    auto cycles = cycles_of(wb.witnesses.points, succ);
    out.cycles.assign(cycles.begin(), cycles.end());
    out.error = CertError::None;
    return out;
}

}  // namespace srslab
