#include "srslab/certified.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace srslab {

namespace {

using I128 = __int128;

// per-piece budgets; anything bigger goes back to the splitter so the depth
// guard bounds work, not just depth
constexpr std::int64_t kCellWitnessBoxCap = 100000;
constexpr std::size_t kCellCutCap = 2000;
constexpr std::size_t kCellLeafCap = 100000;

Int floordiv(const Int& a, const Int& b) {  // b > 0
    Int q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

Int to_cpp(I128 v) {
    bool neg = v < 0;
    auto u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Int r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? Int(-r) : r;
}
const Int& to_cpp(const Int& v) { return v; }

template <class I>
I from_cpp(const Int& v);

template <>
I128 from_cpp<I128>(const Int& v) {
    Int a = v < 0 ? Int(-v) : v;
    auto lo = static_cast<std::uint64_t>(a & Int(0xFFFFFFFFFFFFFFFFull));
    auto hi = static_cast<std::uint64_t>(Int(a >> 64));
    auto u = (static_cast<unsigned __int128>(hi) << 64) | lo;
    auto r = static_cast<I128>(u);
    return v < 0 ? -r : r;
}

template <>
Int from_cpp<Int>(const Int& v) {
    return v;
}

// ---- exact cut geometry over the scaled integer parameter plane ----
//
// Parameters are mapped to t = M*s and translated so the piece rectangle
// starts at the origin.  Cut lines a*t0 + b*t1 = c keep integer coefficients;
// vertices are intersections of two original lines, stored projectively as
// (x/d, y/d) with d > 0, so coordinate growth never compounds.

template <class I>
struct FPt {
    I x, y, d;
};

template <class I>
struct CutLine {
    I a, b, c;
};

template <class I>
struct Vtx {
    FPt<I> p;
    CutLine<I> e;  // boundary line from this vertex to the next
};

template <class I>
int side(const CutLine<I>& L, const FPt<I>& P) {
    I v = L.a * P.x + L.b * P.y - L.c * P.d;
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

template <class I>
FPt<I> meet(const CutLine<I>& e, const CutLine<I>& L) {
    I det = e.a * L.b - L.a * e.b;
    I x = e.c * L.b - L.c * e.b;
    I y = e.a * L.c - L.a * e.c;
    if (det < 0) {
        det = -det;
        x = -x;
        y = -y;
    }
    return {x, y, det};
}

// One Sutherland-Hodgman pass reusing precomputed vertex signs.  On-line
// vertices stay on both sides; crossings are strict, so no duplicates arise.
template <class I>
std::vector<Vtx<I>> take_side(const std::vector<Vtx<I>>& P, const std::vector<int>& raw,
                              const CutLine<I>& L, int keep) {
    std::vector<Vtx<I>> out;
    const std::size_t n = P.size();
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + 1 == n ? 0 : i + 1;
        const int si = raw[i] * keep, sj = raw[j] * keep;
        if (si >= 0) out.push_back({P[i].p, si == 0 && sj < 0 ? L : P[i].e});
        if ((si > 0 && sj < 0) || (si < 0 && sj > 0))
            out.push_back({meet(P[i].e, L), si > 0 ? L : P[i].e});
    }
    return out;
}

// Cut lines of one witness inside one piece, precomputed exactly.
struct GroupSetup {
    std::int32_t wi = 0;   // witness index
    std::int64_t a = 0, b = 0;
    Int base_floor;        // floor(x . s) below the first cut
    std::vector<Int> cs;   // line constants, ascending with k
};

struct PieceSetup {
    Int M, t0_lo, t1_lo, W0, W1;
    std::vector<GroupSetup> groups;
    std::vector<Int> base_floor_all;  // per witness
    Int max_abs;                      // largest |c| over cuts and rectangle edges
    Int max_coord;                    // largest |witness coordinate|, at least 1
};

PieceSetup build_piece(const RationalRect& K, const std::vector<LatticePoint>& witnesses) {
    PieceSetup ps;
    Int d = boost::multiprecision::lcm(
        boost::multiprecision::lcm(denominator(K.r0_lo), denominator(K.r0_hi)),
        boost::multiprecision::lcm(denominator(K.r1_lo), denominator(K.r1_hi)));
    ps.M = d;
    ps.t0_lo = numerator(K.r0_lo) * (d / denominator(K.r0_lo));
    ps.t1_lo = numerator(K.r1_lo) * (d / denominator(K.r1_lo));
    ps.W0 = numerator(K.r0_hi) * (d / denominator(K.r0_hi)) - ps.t0_lo;
    ps.W1 = numerator(K.r1_hi) * (d / denominator(K.r1_hi)) - ps.t1_lo;
    ps.max_abs = ps.W0 > ps.W1 ? ps.W0 : ps.W1;
    if (ps.max_abs < ps.M) ps.max_abs = ps.M;
    ps.max_coord = 1;

    ps.base_floor_all.reserve(witnesses.size());
    for (std::size_t i = 0; i < witnesses.size(); ++i) {
        const std::int64_t x0 = witnesses[i][0], x1 = witnesses[i][1];
        const Int g = x0 * ps.t0_lo + x1 * ps.t1_lo;
        Int fmin = 0, fmax = 0;
        (x0 < 0 ? fmin : fmax) += x0 * ps.W0;
        (x1 < 0 ? fmin : fmax) += x1 * ps.W1;
        const Int base = floordiv(fmin + g, ps.M);
        ps.base_floor_all.push_back(base);

        const Int klo = base + 1;
        const Int khi = floordiv(fmax + g - 1, ps.M);
        if (klo <= khi) {
            GroupSetup gs;
            gs.wi = static_cast<std::int32_t>(i);
            gs.a = x0;
            gs.b = x1;
            gs.base_floor = base;
            for (Int k = klo; k <= khi; ++k) {
                Int c = k * ps.M - g;
                Int ac = c < 0 ? Int(-c) : c;
                if (ac > ps.max_abs) ps.max_abs = ac;
                gs.cs.push_back(std::move(c));
            }
            ps.groups.push_back(std::move(gs));
        }
        const std::int64_t a0 = x0 < 0 ? -x0 : x0, a1 = x1 < 0 ? -x1 : x1;
        if (Int m = a0 > a1 ? a0 : a1; m > ps.max_coord) ps.max_coord = m;
    }
    return ps;
}

// Sign evaluations stay within ~6*B^2*maxc; below this bound __int128 is safe.
bool fits_i128(const PieceSetup& ps) {
    Int bound = 6 * ps.max_coord * ps.max_coord * ps.max_abs + 16;
    return bound < (Int(1) << 126);
}

template <class I, class LeafFn>
struct CutRunner {
    const std::vector<std::pair<I, I>>& gab;
    const std::vector<std::vector<I>>& gcs;
    std::vector<std::int32_t>& rank;
    LeafFn& leaf;

    bool dfs(std::vector<Vtx<I>> P, std::size_t gi, std::size_t ci) {
        std::vector<int> signs;
        for (;;) {
            if (gi == gcs.size()) return leaf(P);
            const auto& cs = gcs[gi];
            if (ci == cs.size()) {
                rank[gi] = static_cast<std::int32_t>(ci);
                ++gi;
                ci = 0;
                continue;
            }
            const CutLine<I> L{gab[gi].first, gab[gi].second, cs[ci]};
            signs.resize(P.size());
            bool neg = false, pos = false;
            for (std::size_t i = 0; i < P.size(); ++i) {
                signs[i] = side(L, P[i].p);
                neg |= signs[i] < 0;
                pos |= signs[i] > 0;
            }
            if (!neg) {  // entirely at or above this cut: floor rises
                ++ci;
                continue;
            }
            if (!pos) {  // entirely at or below: later cuts of this witness cannot hit
                rank[gi] = static_cast<std::int32_t>(ci);
                ++gi;
                ci = 0;
                continue;
            }
            auto PL = take_side(P, signs, L, -1);
            if (PL.size() >= 3) {
                rank[gi] = static_cast<std::int32_t>(ci);
                if (!dfs(std::move(PL), gi + 1, 0)) return false;
            }
            auto PG = take_side(P, signs, L, +1);
            if (PG.size() < 3) return true;
            P = std::move(PG);
            ++ci;
        }
    }
};

template <class I, class LeafFn>
bool run_cuts(const PieceSetup& ps, std::vector<std::int32_t>& rank, LeafFn&& leaf) {
    const std::size_t nG = ps.groups.size();
    std::vector<std::pair<I, I>> gab(nG);
    std::vector<std::vector<I>> gcs(nG);
    for (std::size_t g = 0; g < nG; ++g) {
        gab[g] = {I(ps.groups[g].a), I(ps.groups[g].b)};
        gcs[g].reserve(ps.groups[g].cs.size());
        for (const Int& c : ps.groups[g].cs) gcs[g].push_back(from_cpp<I>(c));
    }
    const I W0 = from_cpp<I>(ps.W0), W1 = from_cpp<I>(ps.W1);
    const CutLine<I> bottom{0, 1, 0}, right{1, 0, W0}, top{0, 1, W1}, left{1, 0, 0};
    std::vector<Vtx<I>> rect{{{I(0), I(0), I(1)}, bottom},
                             {{W0, I(0), I(1)}, right},
                             {{W0, W1, I(1)}, top},
                             {{I(0), W1, I(1)}, left}};
    CutRunner<I, LeafFn> runner{gab, gcs, rank, leaf};
    return runner.dfs(std::move(rect), 0, 0);
}

template <class I>
Polygon to_rational_polygon(const std::vector<Vtx<I>>& P, const PieceSetup& ps) {
    Polygon poly;
    poly.reserve(P.size());
    const Int dm = ps.M;
    for (const auto& v : P) {
        Int d = to_cpp(v.p.d);
        Int den = d * dm;
        poly.emplace_back(Rat(to_cpp(v.p.x) + d * ps.t0_lo, den),
                          Rat(to_cpp(v.p.y) + d * ps.t1_lo, den));
    }
    return poly;
}

void check_rect(const RationalRect& K) {
    if (!(K.r0_lo < K.r0_hi) || !(K.r1_lo < K.r1_hi))
        throw std::invalid_argument("rectangle must have positive area");
}

// True when every parameter of the closed rectangle has both roots strictly
// outside the unit circle; corner checks suffice because the characteristic
// polynomial values at +-1 are affine in the parameters.
bool rect_all_expanding(const RationalRect& K) {
    if (K.r0_lo > 1 && 1 + K.r1_lo + K.r0_lo > 0 && 1 - K.r1_hi + K.r0_lo > 0) return true;
    if (K.r0_hi < -1 && 1 + K.r1_hi + K.r0_hi < 0 && 1 - K.r1_lo + K.r0_hi < 0) return true;
    return false;
}

// Everything one leaf visit needs to turn floor ranks into a verdict.
struct PieceDynamics {
    const std::vector<LatticePoint>* W = nullptr;
    std::vector<std::int32_t> fixed_next;           // image index per fixed witness, -1 escape
    std::vector<std::int32_t> reach;                // fixed node -> -1 escape, -2 fixed cycle, >=0 active group
    std::vector<std::int32_t> group_of;             // witness -> group index or -1
    std::vector<std::vector<std::int32_t>> next_tab;  // per group, per rank
    std::optional<CycleWitness> min_fixed;

    // per-leaf scratch
    std::vector<std::int32_t> seen_ep, path;
    std::vector<std::uint8_t> color;
    std::int32_t epoch = 0;

    std::int32_t raw_next(std::int32_t w, const std::vector<std::int32_t>& rank) const {
        const std::int32_t g = group_of[w];
        return g >= 0 ? next_tab[g][rank[g]] : fixed_next[w];
    }

    // Minimal nontrivial cycle of the map all parameters of this cell share.
    std::optional<CycleWitness> leaf_min_cycle(const std::vector<std::int32_t>& rank) {
        std::optional<CycleWitness> best = min_fixed;
        const auto nG = static_cast<std::int32_t>(next_tab.size());
        ++epoch;
        for (std::int32_t g0 = 0; g0 < nG; ++g0) {
            if (seen_ep[g0] == epoch && color[g0] == 2) continue;
            path.clear();
            std::int32_t cur = g0;
            while (cur >= 0) {
                if (seen_ep[cur] == epoch) {
                    if (color[cur] == 1) {  // cycle through active witnesses
                        std::vector<std::int64_t> ent;
                        const std::int32_t start = (*this).group_start(cur);
                        std::int32_t w = start;
                        do {
                            ent.push_back((*W)[w][0]);
                            w = raw_next(w, rank);
                        } while (w != start);
                        CycleWitness c = cycle_canonicalize(ent);
                        if (!c.trivial() && (!best || c < *best)) best = std::move(c);
                    }
                    break;
                }
                seen_ep[cur] = epoch;
                color[cur] = 1;
                path.push_back(cur);
                const std::int32_t wnext = next_tab[cur][rank[cur]];
                if (wnext < 0) break;
                const std::int32_t g2 = group_of[wnext];
                cur = g2 >= 0 ? g2 : reach[wnext];
                if (cur == -2) break;  // drains into a fixed cycle, already tallied
            }
            for (std::int32_t p : path) color[p] = 2;
        }
        return best;
    }

    std::vector<std::int32_t> group_wi;
    std::int32_t group_start(std::int32_t g) const { return group_wi[g]; }
};

PieceDynamics build_dynamics(const PieceSetup& ps, const WitnessSet& ws) {
    PieceDynamics dyn;
    const auto& W = ws.points;
    dyn.W = &W;
    const auto n = static_cast<std::int32_t>(W.size());

    auto image_index = [&](std::int64_t w1, const Int& floor_val) -> std::int32_t {
        if (w1 < -ws.box0 || w1 > ws.box0) return -1;
        if (floor_val < -Int(ws.box1) || floor_val > Int(ws.box1)) return -1;
        const LatticePoint img{w1, -floor_val.convert_to<std::int64_t>()};
        auto it = std::lower_bound(W.begin(), W.end(), img);
        if (it != W.end() && *it == img) return static_cast<std::int32_t>(it - W.begin());
        return -1;
    };

    dyn.group_of.assign(n, -1);
    for (std::size_t g = 0; g < ps.groups.size(); ++g) {
        dyn.group_of[ps.groups[g].wi] = static_cast<std::int32_t>(g);
        dyn.group_wi.push_back(ps.groups[g].wi);
    }

    dyn.fixed_next.assign(n, -1);
    for (std::int32_t i = 0; i < n; ++i)
        if (dyn.group_of[i] < 0)
            dyn.fixed_next[i] = image_index(W[i][1], ps.base_floor_all[i]);

    dyn.next_tab.resize(ps.groups.size());
    for (std::size_t g = 0; g < ps.groups.size(); ++g) {
        const auto& gs = ps.groups[g];
        auto& tab = dyn.next_tab[g];
        tab.resize(gs.cs.size() + 1);
        for (std::size_t rank = 0; rank < tab.size(); ++rank)
            tab[rank] = image_index(W[gs.wi][1], gs.base_floor + static_cast<std::int64_t>(rank));
    }

    // collapse chains through witnesses whose floor is constant on the piece,
    // harvesting the cycles those chains close on the way
    dyn.reach.assign(n, -3);
    std::vector<std::uint8_t> col(n, 0);
    std::vector<std::int32_t> pos(n, -1), pathv;
    for (std::int32_t i = 0; i < n; ++i) {
        if (dyn.group_of[i] >= 0 || col[i]) continue;
        pathv.clear();
        std::int32_t cur = i, term = -1;
        for (;;) {
            if (cur < 0) {
                term = -1;
                break;
            }
            if (dyn.group_of[cur] >= 0) {
                term = dyn.group_of[cur];
                break;
            }
            if (col[cur] == 1) {
                std::vector<std::int64_t> ent;
                for (std::size_t j = pos[cur]; j < pathv.size(); ++j)
                    ent.push_back(W[pathv[j]][0]);
                CycleWitness c = cycle_canonicalize(ent);
                if (!c.trivial() && (!dyn.min_fixed || c < *dyn.min_fixed))
                    dyn.min_fixed = std::move(c);
                term = -2;
                break;
            }
            if (col[cur] == 2) {
                term = dyn.reach[cur];
                break;
            }
            col[cur] = 1;
            pos[cur] = static_cast<std::int32_t>(pathv.size());
            pathv.push_back(cur);
            cur = dyn.fixed_next[cur];
        }
        for (std::int32_t v : pathv) {
            col[v] = 2;
            dyn.reach[v] = term;
        }
    }

    dyn.seen_ep.assign(ps.groups.size(), 0);
    dyn.color.assign(ps.groups.size(), 0);
    return dyn;
}

struct RegionAccum {
    RegionDecision* R = nullptr;
    std::map<CycleWitness, std::size_t>* tally = nullptr;
    const RegionOptions* opt = nullptr;
    bool nonexpanding_seen = false;
};

bool run_piece(const RationalRect& rect, const WitnessSet& ws, RegionAccum& acc) {
    PieceSetup ps = build_piece(rect, ws.points);
    std::size_t total_cuts = 0;
    for (const auto& g : ps.groups) total_cuts += g.cs.size();
    if (total_cuts > kCellCutCap) return false;

    PieceDynamics dyn = build_dynamics(ps, ws);
    std::vector<std::int32_t> rank(ps.groups.size(), 0);
    RegionDecision& R = *acc.R;
    const std::size_t cells0 = R.cells.size();
    const std::size_t count0 = R.cell_count, in0 = R.in_dstar_cells,
                      out0 = R.not_in_dstar_cells;
    const auto tally0 = *acc.tally;
    std::size_t emitted = 0;

    auto leaf = [&](const auto& P) {
        if (++emitted > kCellLeafCap) return false;
        ++R.cell_count;
        auto best = dyn.leaf_min_cycle(rank);
        if (best) {
            ++R.not_in_dstar_cells;
            ++(*acc.tally)[*best];
        } else {
            ++R.in_dstar_cells;
        }
        if (!acc.opt->collect_cells) return true;

        CellDecision cd;
        cd.cell = to_rational_polygon(P, ps);
        cd.sample = polygon_centroid(cd.cell);
        if (best)
            cd.verdict = {Status::NotInDStar, RuleTag::WitnessSearch, *best};
        else
            cd.verdict = {Status::InDStar, RuleTag::WitnessSearch, std::nullopt};
        if (R.cells.size() < acc.opt->symbolic_map_limit) {
            const auto& W = ws.points;
            cd.symbolic_map.reserve(W.size());
            for (std::size_t i = 0; i < W.size(); ++i) {
                const std::int32_t g = dyn.group_of[i];
                Int fl = ps.base_floor_all[i];
                if (g >= 0) fl += rank[g];
                Int img1 = -fl;
                if (!fits_int64(img1)) continue;
                cd.symbolic_map.push_back(
                    {W[i], LatticePoint{W[i][1], img1.convert_to<std::int64_t>()}});
            }
        }
        R.cells.push_back(std::move(cd));
        return true;
    };

    const bool done = fits_i128(ps) ? run_cuts<I128>(ps, rank, leaf)
                                    : run_cuts<Int>(ps, rank, leaf);
    if (!done) {  // over budget: roll the piece back so the splitter can retry
        R.cells.resize(cells0);
        R.cell_count = count0;
        R.in_dstar_cells = in0;
        R.not_in_dstar_cells = out0;
        *acc.tally = tally0;
    }
    return done;
}

void region_rec(const RationalRect& K, int depth, const Rat& rho_scale, RegionAccum& acc) {
    // no expanding parameters at all when |r0| never exceeds 1
    if (K.r0_lo >= -1 && K.r0_hi <= 1) {
        acc.nonexpanding_seen = true;
        acc.R->undecided.push_back(K);
        return;
    }
    const bool can_split = depth < acc.opt->max_depth;

    if (rect_all_expanding(K)) {
        const Rat c0 = (K.r0_lo + K.r0_hi) / 2, c1 = (K.r1_lo + K.r1_hi) / 2;
        const Rat h0 = (K.r0_hi - K.r0_lo) / 2, h1 = (K.r1_hi - K.r1_lo) / 2;
        const Rat delta = h0 >= h1 ? h0 : h1;
        const ParamVector center = param2(c0, c1);
        const ExpandingMargin em = expanding_margin(center);
        if (em.error == CertError::None) {
            NormBuild nb = build_norm_region(center, delta, rho_scale);
            if (nb.error == CertError::None) {
                // splitting while the perturbation eats a real fraction of the
                // margin keeps witness sets small
                const Rat drop = delta * nb.cert.pert_coeff;
                const bool prefer_split = can_split && 20 * drop > 3 * em.lower;
                if (!prefer_split) {
                    WitnessBuild wb = witness_set(nb.cert, kCellWitnessBoxCap);
                    if (wb.error == CertError::None && run_piece(K, wb.witnesses, acc)) return;
                }
            }
        }
    }

    if (!can_split) {
        acc.R->undecided.push_back(K);
        return;
    }
    if (K.r0_hi - K.r0_lo >= K.r1_hi - K.r1_lo) {
        const Rat mid = (K.r0_lo + K.r0_hi) / 2;
        region_rec({K.r0_lo, mid, K.r1_lo, K.r1_hi}, depth + 1, rho_scale, acc);
        region_rec({mid, K.r0_hi, K.r1_lo, K.r1_hi}, depth + 1, rho_scale, acc);
    } else {
        const Rat mid = (K.r1_lo + K.r1_hi) / 2;
        region_rec({K.r0_lo, K.r0_hi, K.r1_lo, mid}, depth + 1, rho_scale, acc);
        region_rec({K.r0_lo, K.r0_hi, mid, K.r1_hi}, depth + 1, rho_scale, acc);
    }
}

}  // namespace

Rat polygon_area2(const Polygon& poly) {
    Rat s = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + 1 == n ? 0 : i + 1;
        s += poly[i].first * poly[j].second - poly[j].first * poly[i].second;
    }
    return s;
}

PolyPoint polygon_centroid(const Polygon& poly) {
    if (poly.empty()) throw std::invalid_argument("empty polygon");
    Rat a2 = 0, cx = 0, cy = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + 1 == n ? 0 : i + 1;
        const Rat cross = poly[i].first * poly[j].second - poly[j].first * poly[i].second;
        a2 += cross;
        cx += (poly[i].first + poly[j].first) * cross;
        cy += (poly[i].second + poly[j].second) * cross;
    }
    if (sgn(a2) == 0) return poly.front();
    return {cx / (3 * a2), cy / (3 * a2)};
}

std::vector<Polygon> cut_cells(const RationalRect& K, const std::vector<LatticePoint>& witnesses) {
    check_rect(K);
    PieceSetup ps = build_piece(K, witnesses);
    std::vector<std::int32_t> rank(ps.groups.size(), 0);
    std::vector<Polygon> cells;
    if (fits_i128(ps)) {
        auto leaf = [&](const std::vector<Vtx<I128>>& P) {
            cells.push_back(to_rational_polygon(P, ps));
            return true;
        };
        run_cuts<I128>(ps, rank, leaf);
    } else {
        auto leaf = [&](const std::vector<Vtx<Int>>& P) {
            cells.push_back(to_rational_polygon(P, ps));
            return true;
        };
        run_cuts<Int>(ps, rank, leaf);
    }
    return cells;
}

bool verify_uniformity(const NormCertificate& cert, const RationalRect& K) {
    if (!(K.r0_lo <= K.r0_hi) || !(K.r1_lo <= K.r1_hi)) return false;
    const Rat c0 = cert.r.value(0), c1 = cert.r.value(1);
    if (K.r0_lo < c0 - cert.delta_inf || K.r0_hi > c0 + cert.delta_inf) return false;
    if (K.r1_lo < c1 - cert.delta_inf || K.r1_hi > c1 + cert.delta_inf) return false;
    return qsign(cert.expansion.p - 1, cert.expansion.q, cert.D) > 0;
}

SubdivideResult subdivide_region(const RationalRect& K, const NormCertificate& cert,
                                 const WitnessSet& witnesses) {
    check_rect(K);
    SubdivideResult out;
    Rat lo = 0, hi = 0;
    if (sgn(cert.D) > 0) {
        auto b = rat_sqrt_bounds(cert.D, 3);
        lo = b.first;
        hi = b.second;
    }
    const Rat root = sgn(cert.expansion.q) >= 0 ? lo : hi;
    out.expansion_slack = cert.expansion.p + cert.expansion.q * root - 1;
    out.uniform = verify_uniformity(cert, K);
    if (out.uniform) out.cells = cut_cells(K, witnesses.points);
    return out;
}

RegionDecision decide_region(const RationalRect& K, const RegionOptions& opt) {
    check_rect(K);
    const Rat rho_scale = opt.rho_scale ? *opt.rho_scale : Rat(7, 8);
    if (!(rho_scale > 0 && rho_scale < 1))
        throw std::invalid_argument("rho_scale must lie in (0,1)");

    RegionDecision R;
    std::map<CycleWitness, std::size_t> tally;
    RegionAccum acc;
    acc.R = &R;
    acc.tally = &tally;
    acc.opt = &opt;
    region_rec(K, 0, rho_scale, acc);
    R.cycle_tally.assign(tally.begin(), tally.end());
    R.error = (R.cell_count == 0 && acc.nonexpanding_seen) ? CertError::NotExpanding
                                                           : CertError::None;
    return R;
}

}  // namespace srslab
