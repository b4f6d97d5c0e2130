#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "srslab/scan.hpp"

namespace {

using namespace srslab;

constexpr int kExitUsage = 64;
constexpr int kExitCantWrite = 73;
constexpr int kExitFailure = 70;

std::string cycle_str(const std::vector<std::int64_t>& entries) {
    std::string s = "(";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(entries[i]);
    }
    return s + ")";
}

std::string verdict_str(Status status, RuleTag rule, const std::vector<std::int64_t>& cycle) {
    std::string s = status_name(status);
    if (!cycle.empty()) s += " cycle=" + cycle_str(cycle);
    s += std::string(" rule=") + rule_name(rule);
    return s;
}

int exit_for_status(Status s) {
    if (s == Status::InDStar) return 0;
    if (s == Status::NotInDStar) return 1;
    return 2;
}

Rat parse_or_die(const std::string& text) {
    auto v = parse_rational(text);
    if (!v) {
        std::fprintf(stderr, "cannot parse number: %s\n", text.c_str());
        std::exit(kExitUsage);
    }
    return *v;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

RationalRect parse_rect(const std::string& text) {
    auto parts = split_commas(text);
    if (parts.size() != 4) {
        std::fprintf(stderr, "--rect wants r0_lo,r0_hi,r1_lo,r1_hi\n");
        std::exit(kExitUsage);
    }
    return {parse_or_die(parts[0]), parse_or_die(parts[1]), parse_or_die(parts[2]),
            parse_or_die(parts[3])};
}

int cmd_classify(const std::string& a0, const std::string& a1, double tolerance) {
    const Verdict v = classify(param2(parse_or_die(a0), parse_or_die(a1)), tolerance);
    std::printf("%s\n",
                verdict_str(v.status, v.rule, v.cycle ? v.cycle->entries : std::vector<std::int64_t>{})
                    .c_str());
    return exit_for_status(v.status);
}

int cmd_orbit(const std::string& a0, const std::string& a1, const std::string& start_spec,
              std::size_t budget, double radius) {
    const ParamVector r = param2(parse_or_die(a0), parse_or_die(a1));
    auto parts = split_commas(start_spec);
    if (parts.size() != 2) {
        std::fprintf(stderr, "--start wants x0,x1\n");
        return kExitUsage;
    }
    LatticePoint start;
    for (const auto& p : parts) {
        try {
            start.push_back(std::stoll(p));
        } catch (const std::exception&) {
            std::fprintf(stderr, "cannot parse start entry: %s\n", p.c_str());
            return kExitUsage;
        }
    }

    NormBuild nb = build_norm(r);
    const EscapeOracle oracle =
        nb.error == CertError::None ? certificate_escape(nb.cert) : radius_escape(radius);
    const OrbitRecord rec = iterate_orbit(r, start, budget, &oracle);

    const std::size_t shown = std::min<std::size_t>(rec.scalars.size(), 40);
    std::printf("scalars:");
    for (std::size_t i = 0; i < shown; ++i) std::printf(" %lld", (long long)rec.scalars[i]);
    if (shown < rec.scalars.size())
        std::printf(" ... (+%zu more)", rec.scalars.size() - shown);
    std::printf("\nerrors:");
    for (std::size_t i = 0; i < std::min<std::size_t>(rec.errors.size(), 40); ++i)
        std::printf(" %.6g", rec.errors[i]);
    if (rec.errors.size() > 40) std::printf(" ...");
    std::printf("\n");

    switch (rec.outcome) {
        case OrbitRecord::Outcome::ReachedCycle:
            std::printf("outcome: ReachedCycle period=%zu cycle=%s at step=%zu\n",
                        rec.cycle.period(), cycle_str(rec.cycle.entries).c_str(), rec.step);
            break;
        case OrbitRecord::Outcome::ReachedZero:
            std::printf("outcome: ReachedZero at step=%zu\n", rec.step);
            break;
        case OrbitRecord::Outcome::Escaped:
            std::printf("outcome: Escaped at step=%zu via %s\n", rec.step, rec.escape_tag.c_str());
            break;
        case OrbitRecord::Outcome::Undecided:
            std::printf("outcome: Undecided after %zu steps\n", rec.step);
            break;
    }
    return 0;
}

int cmd_decide(const std::string& a0, const std::string& a1, const std::string& rho_spec) {
    std::optional<Rat> rho;
    if (!rho_spec.empty()) rho = parse_or_die(rho_spec);
    const DecideOutcome d = decide_point(param2(parse_or_die(a0), parse_or_die(a1)), rho);
    switch (d.error) {
        case CertError::None: break;
        case CertError::NotExpanding:
            std::printf("error: %s\n", cert_error_name(d.error));
            return 3;
        case CertError::MarginTooSmall:
            std::printf("error: %s\n", cert_error_name(d.error));
            return 4;
        case CertError::WitnessExplosion:
            std::printf("error: %s\n", cert_error_name(d.error));
            return 2;
        case CertError::BadRho:
            std::fprintf(stderr, "error: %s\n", cert_error_name(d.error));
            return kExitUsage;
    }
    std::printf("%s witnesses=%zu rho=%.6g margin=%.6g\n",
                verdict_str(d.verdict.status, d.verdict.rule,
                            d.verdict.cycle ? d.verdict.cycle->entries : std::vector<std::int64_t>{})
                    .c_str(),
                d.witness_count, d.rho, d.margin);
    return exit_for_status(d.verdict.status);
}

int cmd_scan(const ScanConfig& config, const std::string& out, const std::string& csv,
             const std::string& json) {
    ScanResult R;
    try {
        R = run_scan(config);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "scan: %s\n", e.what());
        return kExitUsage;
    }
    try {
        if (!out.empty()) write_pgm(R, out);
        if (!csv.empty()) write_csv(R, csv);
        if (!json.empty()) write_json(R, json);
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "scan: %s\n", e.what());
        return kExitCantWrite;
    }
    std::printf("%dx%d %s:", config.res, config.res, scan_mode_name(config.mode));
    for (const auto& [name, count] : R.status_counts) std::printf(" %s=%zu", name.c_str(), count);
    if (R.cache_hits + R.cache_misses)
        std::printf(" cache_hits=%zu cache_misses=%zu", R.cache_hits, R.cache_misses);
    std::printf(" seconds=%.3f\n", R.seconds);
    return 0;
}

int cmd_region(const std::string& rect_spec, const std::string& rho_spec, int depth) {
    RegionOptions opt;
    opt.collect_cells = false;
    opt.max_depth = depth;
    if (!rho_spec.empty()) opt.rho_scale = parse_or_die(rho_spec);
    RegionDecision R;
    try {
        R = decide_region(parse_rect(rect_spec), opt);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "region: %s\n", e.what());
        return kExitUsage;
    }
    if (R.error == CertError::NotExpanding) {
        std::printf("rejected: no expanding parameters in the rectangle\n");
        return 3;
    }
    std::printf("cells=%zu in_dstar=%zu not_in_dstar=%zu undecided=%zu\n", R.cell_count,
                R.in_dstar_cells, R.not_in_dstar_cells, R.undecided.size());
    for (const auto& [cycle, count] : R.cycle_tally)
        std::printf("cycle=%s cells=%zu\n", cycle_str(cycle.entries).c_str(), count);
    return R.undecided.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shift radix system laboratory"};
    app.require_subcommand(1);

    std::string a0, a1;
    double tolerance = 1e-12;
    auto* classify_cmd = app.add_subcommand("classify", "closed-form classification of one parameter");
    classify_cmd->add_option("r0", a0, "first parameter entry")->required();
    classify_cmd->add_option("r1", a1, "second parameter entry")->required();
    classify_cmd->add_option("--tolerance", tolerance, "boundary tolerance for inexact input");

    std::string start_spec;
    std::size_t budget = 1000000;
    double radius = 1e6;
    auto* orbit_cmd = app.add_subcommand("orbit", "iterate one orbit to cycle, zero or escape");
    orbit_cmd->add_option("r0", a0, "first parameter entry")->required();
    orbit_cmd->add_option("r1", a1, "second parameter entry")->required();
    orbit_cmd->add_option("--start", start_spec, "starting state x0,x1")->required();
    orbit_cmd->add_option("--budget", budget, "iteration limit");
    orbit_cmd->add_option("--radius", radius, "escape radius when no certificate applies");

    std::string rho_spec;
    auto* decide_cmd = app.add_subcommand("decide", "certified witness-set decision for a rational point");
    decide_cmd->add_option("r0", a0, "first parameter entry")->required();
    decide_cmd->add_option("r1", a1, "second parameter entry")->required();
    decide_cmd->add_option("--rho", rho_spec, "expansion factor override");

    std::string rect_spec, mode_spec = "closed-form", out, csv, json, cache;
    int res = 600, jobs = 1;
    auto* scan_cmd = app.add_subcommand("scan", "raster a parameter rectangle");
    scan_cmd->add_option("--rect", rect_spec, "r0_lo,r0_hi,r1_lo,r1_hi")->required();
    scan_cmd->add_option("--res", res, "pixels per axis");
    scan_cmd->add_option("--mode", mode_spec, "closed-form | certified | hybrid");
    scan_cmd->add_option("--out", out, "PGM raster path");
    scan_cmd->add_option("--csv", csv, "per-pixel CSV path");
    scan_cmd->add_option("--json", json, "JSON summary path");
    scan_cmd->add_option("--cache", cache, "decision cache path (default $SRS_LAB_CACHE)");
    scan_cmd->add_option("--jobs", jobs, "worker threads");
    scan_cmd->add_option("--tolerance", tolerance, "boundary tolerance");
    scan_cmd->add_option("--budget", budget, "orbit step limit (reports only)");
    scan_cmd->add_option("--rho", rho_spec, "expansion factor override");

    int depth = 20;
    auto* region_cmd = app.add_subcommand("region", "certify a whole rational rectangle cell by cell");
    region_cmd->add_option("--rect", rect_spec, "r0_lo,r0_hi,r1_lo,r1_hi")->required();
    region_cmd->add_option("--rho", rho_spec, "rho_scale override in (0,1)");
    region_cmd->add_option("--depth", depth, "bisection depth limit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*classify_cmd) return cmd_classify(a0, a1, tolerance);
        if (*orbit_cmd) return cmd_orbit(a0, a1, start_spec, budget, radius);
        if (*decide_cmd) return cmd_decide(a0, a1, rho_spec);
        if (*scan_cmd) {
            auto rect = parse_rect(rect_spec);
            ScanConfig config;
            config.r0_lo = rect.r0_lo;
            config.r0_hi = rect.r0_hi;
            config.r1_lo = rect.r1_lo;
            config.r1_hi = rect.r1_hi;
            config.res = res;
            auto mode = parse_scan_mode(mode_spec);
            if (!mode) {
                std::fprintf(stderr, "unknown mode: %s\n", mode_spec.c_str());
                return kExitUsage;
            }
            config.mode = *mode;
            config.tolerance = tolerance;
            if (!rho_spec.empty()) config.rho = parse_or_die(rho_spec);
            config.budget = budget;
            config.jobs = jobs;
            if (!cache.empty()) {
                config.cache_path = cache;
            } else if (const char* env = std::getenv("SRS_LAB_CACHE")) {
                config.cache_path = env;
            }
            return cmd_scan(config, out, csv, json);
        }
        if (*region_cmd) return cmd_region(rect_spec, rho_spec, depth);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitFailure;
    }
    return kExitUsage;
}
