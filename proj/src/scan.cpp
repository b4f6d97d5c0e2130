#include "srslab/scan.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "json.hpp"

#include "srslab/spectral.hpp"

namespace srslab {

namespace {

std::optional<Status> status_from_name(const std::string& s) {
    for (Status st : {Status::InDStar, Status::NotInDStar, Status::Contractive,
                      Status::UnknownBounded, Status::BoundaryUndecidable})
        if (s == status_name(st)) return st;
    return std::nullopt;
}

std::optional<RuleTag> rule_from_name(const std::string& s) {
    for (RuleTag t :
         {RuleTag::SameSignCycle, RuleTag::ZeroOneCycle, RuleTag::AlternatingCycle,
          RuleTag::Contractive, RuleTag::MonotoneRealI, RuleTag::MonotoneRealII,
          RuleTag::MonotoneRealIII, RuleTag::SectorGraph, RuleTag::LargeModulusBand,
          RuleTag::AlternatingBand, RuleTag::WitnessRegion, RuleTag::UnresolvedBand,
          RuleTag::BoundaryBand, RuleTag::WitnessSearch, RuleTag::DepthGuard})
        if (s == rule_name(t)) return t;
    return std::nullopt;
}

PixelVerdict closed_form_pixel(const Rat& r0, const Rat& r1, double tolerance) {
    const Verdict v = classify(param2(r0, r1), tolerance);
    PixelVerdict out;
    out.status = v.status;
    out.rule = v.rule;
    if (v.cycle) out.cycle = v.cycle->entries;
    return out;
}

// Certified decision with fallbacks for the errors the decider can report.
// Second member tells whether the verdict is a decision rather than a shrug.
std::pair<PixelVerdict, bool> certified_pixel(const Rat& r0, const Rat& r1,
                                              const std::optional<Rat>& rho) {
    const ParamVector p = param2(r0, r1);
    const DecideOutcome d = decide_point(p, rho);
    PixelVerdict out;
    if (d.error == CertError::None) {
        out.status = d.verdict.status;
        out.rule = d.verdict.rule;
        if (d.verdict.cycle) out.cycle = d.verdict.cycle->entries;
        return {out, true};
    }
    if (d.error == CertError::NotExpanding) {
        if (schur_cohn_member(p) != SchurCohn::Outside) {
            out.status = Status::Contractive;
            out.rule = RuleTag::Contractive;
            return {out, true};
        }
        out.status = Status::UnknownBounded;
        out.rule = RuleTag::UnresolvedBand;
        return {out, false};
    }
    out.status = Status::UnknownBounded;
    out.rule = RuleTag::BoundaryBand;
    return {out, false};
}

std::string cache_key(const Rat& r0, const Rat& r1) {
    return rat_to_string(r0) + "|" + rat_to_string(r1);
}

struct NewEntry {
    std::size_t idx;
    Rat r0, r1;
    PixelVerdict v;
};

}  // namespace

const char* scan_mode_name(ScanMode m) {
    switch (m) {
        case ScanMode::ClosedForm: return "closed-form";
        case ScanMode::Certified: return "certified";
        case ScanMode::Hybrid: return "hybrid";
    }
    return "?";
}

std::optional<ScanMode> parse_scan_mode(const std::string& s) {
    for (ScanMode m : {ScanMode::ClosedForm, ScanMode::Certified, ScanMode::Hybrid})
        if (s == scan_mode_name(m)) return m;
    return std::nullopt;
}

Rat ScanResult::pixel_r0(int col) const {
    return config.r0_lo + (config.r0_hi - config.r0_lo) * Rat(2 * col + 1, 2 * config.res);
}

Rat ScanResult::pixel_r1(int row) const {
    return config.r1_hi - (config.r1_hi - config.r1_lo) * Rat(2 * row + 1, 2 * config.res);
}

ScanResult run_scan(const ScanConfig& config) {
    if (config.res < 1) throw std::invalid_argument("resolution must be at least 1");
    if (!(config.r0_lo < config.r0_hi) || !(config.r1_lo < config.r1_hi))
        throw std::invalid_argument("scan rectangle must have positive area");

    const auto t0 = std::chrono::steady_clock::now();
    ScanResult R;
    R.config = config;
    const int res = config.res;
    R.grid.assign(static_cast<std::size_t>(res) * res, PixelVerdict{});

    std::optional<DecisionCache> cache;
    if (!config.cache_path.empty()) cache.emplace(config.cache_path);

    std::vector<Rat> xs(res), ys(res);
    for (int c = 0; c < res; ++c) xs[c] = R.pixel_r0(c);
    for (int r = 0; r < res; ++r) ys[r] = R.pixel_r1(r);

    const int jobs = std::max(1, config.jobs);
    std::vector<std::size_t> hits(jobs, 0), misses(jobs, 0);
    std::vector<std::vector<NewEntry>> fresh(jobs);

    auto work = [&](int w, int row_lo, int row_hi) {
        for (int row = row_lo; row < row_hi; ++row) {
            for (int col = 0; col < res; ++col) {
                const std::size_t idx = static_cast<std::size_t>(row) * res + col;
                const Rat& r0 = xs[col];
                const Rat& r1 = ys[row];
                PixelVerdict v;
                bool settled = false;
                if (config.mode != ScanMode::Certified) {
                    v = closed_form_pixel(r0, r1, config.tolerance);
                    settled = config.mode == ScanMode::ClosedForm ||
                              (v.status != Status::UnknownBounded &&
                               v.status != Status::BoundaryUndecidable);
                }
                if (!settled) {
                    std::optional<PixelVerdict> hit;
                    if (cache) {
                        hit = cache->lookup(r0, r1);
                        ++(hit ? hits : misses)[w];
                    }
                    if (hit) {
                        v = *hit;
                    } else {
                        auto [cv, decided] = certified_pixel(r0, r1, config.rho);
                        if (decided || config.mode == ScanMode::Certified) v = cv;
                        if (decided && cv.rule == RuleTag::WitnessSearch && cache)
                            fresh[w].push_back({idx, r0, r1, cv});
                    }
                }
                R.grid[idx] = std::move(v);
            }
        }
    };

    if (jobs == 1) {
        work(0, 0, res);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) {
            const int lo = static_cast<int>(static_cast<std::int64_t>(res) * w / jobs);
            const int hi = static_cast<int>(static_cast<std::int64_t>(res) * (w + 1) / jobs);
            pool.emplace_back(work, w, lo, hi);
        }
        for (auto& t : pool) t.join();
    }

    for (int w = 0; w < jobs; ++w) {
        R.cache_hits += hits[w];
        R.cache_misses += misses[w];
        if (cache)
            for (const NewEntry& e : fresh[w]) cache->store(e.r0, e.r1, e.v);
    }
    for (const PixelVerdict& v : R.grid) ++R.status_counts[status_name(v.status)];
    R.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return R;
}

void write_pgm(const ScanResult& result, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    const int res = result.config.res;
    f << "P2\n" << res << " " << res << "\n255\n";
    const std::size_t total = result.grid.size();
    for (std::size_t i = 0; i < total; ++i) {
        const Status s = result.grid[i].status;
        f << (s == Status::InDStar ? 0 : s == Status::NotInDStar ? 255 : 128);
        f << ((i + 1) % 17 == 0 || i + 1 == total ? '\n' : ' ');
    }
    if (!f) throw std::runtime_error("cannot write " + path);
}

void write_csv(const ScanResult& result, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << "r0,r1,status,rule,cycle\n";
    const int res = result.config.res;
    char num[40];
    for (int row = 0; row < res; ++row) {
        for (int col = 0; col < res; ++col) {
            const PixelVerdict& v = result.grid[static_cast<std::size_t>(row) * res + col];
            std::snprintf(num, sizeof num, "%.17g", to_double(result.pixel_r0(col)));
            f << num << ',';
            std::snprintf(num, sizeof num, "%.17g", to_double(result.pixel_r1(row)));
            f << num << ',' << status_name(v.status) << ',' << rule_name(v.rule) << ',';
            for (std::size_t i = 0; i < v.cycle.size(); ++i) {
                if (i) f << ';';
                f << v.cycle[i];
            }
            f << '\n';
        }
    }
    if (!f) throw std::runtime_error("cannot write " + path);
}

void write_json(const ScanResult& result, const std::string& path) {
    nlohmann::json j;
    j["algo_version"] = kAlgoVersion;
    auto& c = j["config"];
    c["r0_lo"] = rat_to_string(result.config.r0_lo);
    c["r0_hi"] = rat_to_string(result.config.r0_hi);
    c["r1_lo"] = rat_to_string(result.config.r1_lo);
    c["r1_hi"] = rat_to_string(result.config.r1_hi);
    c["res"] = result.config.res;
    c["mode"] = scan_mode_name(result.config.mode);
    c["tolerance"] = result.config.tolerance;
    if (result.config.rho) c["rho"] = rat_to_string(*result.config.rho);
    c["budget"] = result.config.budget;
    c["jobs"] = result.config.jobs;
    c["cache"] = result.config.cache_path;
    j["status_counts"] = result.status_counts;
    j["cache_hits"] = result.cache_hits;
    j["cache_misses"] = result.cache_misses;
    j["seconds"] = result.seconds;
    j["pixels"] = result.grid.size();

    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << j.dump(2) << '\n';
    if (!f) throw std::runtime_error("cannot write " + path);
}

DecisionCache::DecisionCache(std::string path) : path_(std::move(path)) {
    std::ifstream f(path_);
    if (!f) return;  // fresh cache
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        bool ok = !j.is_discarded() && j.is_object() && j.contains("v") && j["v"].is_string() &&
                  j.contains("r0") && j["r0"].is_string() && j.contains("r1") &&
                  j["r1"].is_string() && j.contains("status") && j["status"].is_string() &&
                  j.contains("rule") && j["rule"].is_string();
        std::optional<Rat> r0, r1;
        std::optional<Status> st;
        std::optional<RuleTag> rt;
        if (ok) {
            r0 = parse_rational(j["r0"].get<std::string>());
            r1 = parse_rational(j["r1"].get<std::string>());
            st = status_from_name(j["status"].get<std::string>());
            rt = rule_from_name(j["rule"].get<std::string>());
            ok = r0 && r1 && st && rt && (!j.contains("cycle") || j["cycle"].is_array());
        }
        if (!ok) {
            std::cerr << "cache: skipping corrupt line " << lineno << " of " << path_ << "\n";
            continue;
        }
        if (j["v"].get<std::string>() != kAlgoVersion) continue;  // stale version, not corrupt
        PixelVerdict v;
        v.status = *st;
        v.rule = *rt;
        if (j.contains("cycle"))
            for (const auto& e : j["cycle"]) {
                if (!e.is_number_integer()) {
                    v.cycle.clear();
                    break;
                }
                v.cycle.push_back(e.get<std::int64_t>());
            }
        entries_[cache_key(*r0, *r1)] = std::move(v);
    }
}

std::optional<PixelVerdict> DecisionCache::lookup(const Rat& r0, const Rat& r1) const {
    auto it = entries_.find(cache_key(r0, r1));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void DecisionCache::store(const Rat& r0, const Rat& r1, const PixelVerdict& v) {
    entries_[cache_key(r0, r1)] = v;
    nlohmann::json j;
    j["v"] = kAlgoVersion;
    j["r0"] = rat_to_string(r0);
    j["r1"] = rat_to_string(r1);
    j["status"] = status_name(v.status);
    j["rule"] = rule_name(v.rule);
    j["cycle"] = v.cycle;
    std::ofstream f(path_, std::ios::app);
    if (!f) {
        std::cerr << "cache: cannot append to " << path_ << "\n";
        return;
    }
    f << j.dump() << '\n';
}

}  // namespace srslab
