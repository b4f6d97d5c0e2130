#include "srslab/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace srslab {

namespace {

Rat dyadic_round(const Rat& x, unsigned bits, bool up) {
    const Int den = denominator(x);
    const Int scale = Int(1) << bits;
    if (den <= scale) return x;
    Int num = numerator(x) * scale;
    Int q = num / den;
    if (num % den != 0) {
        if (num < 0) --q;  // make q the floor
        if (up) ++q;
    }
    return Rat(q, scale);
}

}  // namespace

Rat rat_round_up(const Rat& x, unsigned bits) { return dyadic_round(x, bits, true); }
Rat rat_round_down(const Rat& x, unsigned bits) { return dyadic_round(x, bits, false); }

std::pair<Rat, Rat> rat_sqrt_bounds(const Rat& x, int newton_steps) {
    if (sgn(x) < 0) throw std::domain_error("sqrt of negative rational");
    if (sgn(x) == 0) return {Rat(0), Rat(0)};
    double seed = std::sqrt(to_double(x));
    Rat hi = (std::isfinite(seed) && seed > 0) ? rat_from_double(seed) : Rat(1);
    if (sgn(hi) <= 0) hi = 1;
    // (h + x/h)/2 >= sqrt(x) for any h > 0, so every iterate past the first is
    // an upper bound, and rounding it up keeps it one while stopping the
    // iterates' denominators from squaring in size each step
    for (int i = 0; i <= newton_steps; ++i) hi = rat_round_up((hi + x / hi) / 2, 192);
    return {rat_round_down(x / hi, 192), hi};
}

std::optional<Rat> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    if (i >= text.size()) return std::nullopt;

    auto digits = [&](std::string& out) {
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') out.push_back(text[i++]);
    };

    std::string ipart, fpart, epart;
    digits(ipart);
    bool has_dot = false, has_exp = false, has_slash = false;
    if (i < text.size() && text[i] == '/') {
        has_slash = true;
        ++i;
        std::string den;
        digits(den);
        if (i != text.size() || ipart.empty() || den.empty()) return std::nullopt;
        Int num(ipart), d(den);
        if (d == 0) return std::nullopt;
        Rat v(num, d);
        return neg ? Rat(-v) : v;
    }
    if (i < text.size() && text[i] == '.') {
        has_dot = true;
        ++i;
        digits(fpart);
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        has_exp = true;
        ++i;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) epart.push_back(text[i++]);
        std::string ed;
        digits(ed);
        if (ed.empty()) return std::nullopt;
        epart += ed;
    }
    if (i != text.size()) return std::nullopt;
    if (ipart.empty() && fpart.empty()) return std::nullopt;
    (void)has_slash;
    (void)has_dot;

    Int num(ipart.empty() ? "0" : ipart);
    Int den = 1;
    for (char c : fpart) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    Rat v(num, den);
    if (has_exp) {
        long e = std::stol(epart);
        Int p10 = 1;
        for (long k = 0; k < std::labs(e); ++k) p10 *= 10;
        if (e >= 0)
            v *= Rat(p10);
        else
            v /= Rat(p10);
    }
    return neg ? Rat(-v) : v;
}

std::string rat_to_string(const Rat& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

namespace {

Rat dot_exact(const ParamVector& r, const LatticePoint& a) {
    Rat s = 0;
    for (std::size_t j = 0; j < r.dim(); ++j) s += r.value(j) * Rat(a[j]);
    return s;
}

void check_dims(const ParamVector& r, const LatticePoint& a) {
    if (a.size() != r.dim()) throw std::invalid_argument("state dimension does not match parameter dimension");
}

std::int64_t next_entry(const ParamVector& r, const LatticePoint& a) {
    if (r.all_exact()) {
        Int f = rat_floor(dot_exact(r, a));
        if (!fits_int64(-f)) throw std::overflow_error("orbit entry exceeds 64-bit range");
        return (-f).convert_to<std::int64_t>();
    }
    double s = 0;
    for (std::size_t j = 0; j < r.dim(); ++j) s += r.shadow(j) * static_cast<double>(a[j]);
    double f = std::floor(s);
    if (!(f >= -9.0e18 && f <= 9.0e18)) throw std::overflow_error("orbit entry exceeds 64-bit range");
    return -static_cast<std::int64_t>(f);
}

struct PointHash {
    std::size_t operator()(const LatticePoint& p) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto v : p) {
            std::uint64_t x = static_cast<std::uint64_t>(v);
            x ^= x >> 30;
            x *= 0xbf58476d1ce4e5b9ull;
            x ^= x >> 27;
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

LatticePoint srs_step(const ParamVector& r, const LatticePoint& a) {
    check_dims(r, a);
    LatticePoint out(a.begin() + 1, a.end());
    out.push_back(next_entry(r, a));
    return out;
}

std::vector<Rat> RatMatrix::apply(const LatticePoint& x) const {
    std::vector<Rat> out(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i] += at(i, j) * Rat(x[j]);
    return out;
}

RatMatrix companion_matrix(const ParamVector& r) {
    std::size_t d = r.dim();
    RatMatrix m;
    m.n = d;
    m.a.assign(d * d, Rat(0));
    for (std::size_t i = 0; i + 1 < d; ++i) m.at(i, i + 1) = 1;
    for (std::size_t j = 0; j < d; ++j) m.at(d - 1, j) = -r.value(j);
    return m;
}

Rat error_term_exact(const ParamVector& r, const LatticePoint& a) {
    check_dims(r, a);
    return rat_frac(dot_exact(r, a));
}

double error_term(const ParamVector& r, const LatticePoint& a) {
    check_dims(r, a);
    if (r.all_exact()) return to_double(error_term_exact(r, a));
    double s = 0;
    for (std::size_t j = 0; j < r.dim(); ++j) s += r.shadow(j) * static_cast<double>(a[j]);
    return s - std::floor(s);
}

CycleWitness cycle_canonicalize(const std::vector<std::int64_t>& entries) {
    if (entries.empty()) throw std::invalid_argument("empty cycle");
    std::size_t n = entries.size();
    std::size_t p = n;
    for (std::size_t q = 1; q < n; ++q) {
        if (n % q != 0) continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = entries[i] == entries[(i + q) % n];
        if (ok) {
            p = q;
            break;
        }
    }
    std::vector<std::int64_t> core(entries.begin(), entries.begin() + p);
    std::vector<std::int64_t> best = core;
    for (std::size_t s = 1; s < p; ++s) {
        std::vector<std::int64_t> rot(p);
        for (std::size_t k = 0; k < p; ++k) rot[k] = core[(s + k) % p];
        if (rot < best) best = rot;
    }
    return CycleWitness{std::move(best)};
}

bool verify_cycle(const ParamVector& r, const std::vector<std::int64_t>& entries) {
    if (entries.empty()) return false;
    std::size_t d = r.dim(), p = entries.size();
    if (r.all_exact()) {
        for (std::size_t i = 0; i < p; ++i) {
            Rat e = Rat(entries[(i + d) % p]);
            for (std::size_t j = 0; j < d; ++j) e += r.value(j) * Rat(entries[(i + j) % p]);
            if (sgn(e) < 0 || e >= 1) return false;
        }
        return true;
    }
    for (std::size_t i = 0; i < p; ++i) {
        double e = static_cast<double>(entries[(i + d) % p]);
        for (std::size_t j = 0; j < d; ++j) e += r.shadow(j) * static_cast<double>(entries[(i + j) % p]);
        if (!(e >= 0.0 && e < 1.0)) return false;
    }
    return true;
}

bool verify_cycle(const ParamVector& r, const CycleWitness& c) { return verify_cycle(r, c.entries); }

EscapeOracle radius_escape(double max_norm) {
    return EscapeOracle{
        [max_norm](const LatticePoint& a) {
            for (auto v : a)
                if (std::abs(static_cast<double>(v)) > max_norm) return true;
            return false;
        },
        "radius-heuristic"};
}

OrbitRecord iterate_orbit(const ParamVector& r, const LatticePoint& start, std::size_t budget,
                          const EscapeOracle* escape) {
    check_dims(r, start);
    static const EscapeOracle default_escape = radius_escape();
    if (!escape) escape = &default_escape;
    OrbitRecord rec;
    std::size_t d = r.dim();
    rec.scalars.assign(start.begin(), start.end());

    std::unordered_map<LatticePoint, std::size_t, PointHash> seen;
    LatticePoint a = start;
    auto is_zero = [](const LatticePoint& p) {
        return std::all_of(p.begin(), p.end(), [](std::int64_t v) { return v == 0; });
    };

    for (std::size_t n = 0;; ++n) {
        if (is_zero(a)) {
            rec.states.push_back(a);
            rec.outcome = OrbitRecord::Outcome::ReachedZero;
            rec.step = n;
            return rec;
        }
        if (escape->outside(a)) {
            rec.states.push_back(a);
            rec.outcome = OrbitRecord::Outcome::Escaped;
            rec.step = n;
            rec.escape_tag = escape->tag;
            return rec;
        }
        auto it = seen.find(a);
        if (it != seen.end()) {
            std::size_t j = it->second;
            std::vector<std::int64_t> cyc(rec.scalars.begin() + j, rec.scalars.begin() + n);
            rec.outcome = OrbitRecord::Outcome::ReachedCycle;
            rec.cycle = cycle_canonicalize(cyc);
            rec.step = n;
            return rec;
        }
        if (n == budget) {
            rec.outcome = OrbitRecord::Outcome::Undecided;
            rec.step = n;
            return rec;
        }
        seen.emplace(a, n);
        rec.states.push_back(a);
        rec.errors.push_back(error_term(r, a));
        a = srs_step(r, a);
        rec.scalars.push_back(a[d - 1]);
    }
}

}  // namespace srslab
