#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srslab/certified.hpp"
#include "srslab/region.hpp"

namespace srslab {

// Bumped whenever any decision procedure changes; cache entries from other
// versions are ignored.
inline constexpr const char* kAlgoVersion = "srslab-1";

enum class ScanMode { ClosedForm, Certified, Hybrid };

const char* scan_mode_name(ScanMode m);
std::optional<ScanMode> parse_scan_mode(const std::string& s);

struct ScanConfig {
    Rat r0_lo, r0_hi, r1_lo, r1_hi;
    int res = 600;  // grid is res x res, sampled at pixel centers
    ScanMode mode = ScanMode::ClosedForm;
    double tolerance = 1e-12;
    std::optional<Rat> rho;
    std::size_t budget = 1000000;  // orbit step limit; raster modes decide without iterating
    int jobs = 1;
    std::string cache_path;  // empty: no cache
};

struct PixelVerdict {
    Status status = Status::UnknownBounded;
    RuleTag rule = RuleTag::UnresolvedBand;
    std::vector<std::int64_t> cycle;  // empty unless NotInDStar
};

struct ScanResult {
    ScanConfig config;
    // row-major; row 0 is the top of the raster (largest r1), column 0 the
    // smallest r0; pixel centers offset half a cell from the bounds
    std::vector<PixelVerdict> grid;
    std::map<std::string, std::size_t> status_counts;
    std::size_t cache_hits = 0;
    std::size_t cache_misses = 0;
    double seconds = 0.0;

    Rat pixel_r0(int col) const;
    Rat pixel_r1(int row) const;
};

ScanResult run_scan(const ScanConfig& config);

// P2 grayscale raster: 0 = InDStar, 255 = NotInDStar, 128 = everything else.
void write_pgm(const ScanResult& result, const std::string& path);

// Header r0,r1,status,rule,cycle; one row per pixel in grid order; cycle
// entries joined by ';'.
void write_csv(const ScanResult& result, const std::string& path);

// Config echo, per-status counts, cache statistics, wall time.
void write_json(const ScanResult& result, const std::string& path);

// Append-only JSONL store of certified point decisions keyed by the exact
// rational coordinates plus kAlgoVersion. Corrupt lines are skipped with a
// warning, never trusted.
class DecisionCache {
  public:
    explicit DecisionCache(std::string path);

    std::optional<PixelVerdict> lookup(const Rat& r0, const Rat& r1) const;
    void store(const Rat& r0, const Rat& r1, const PixelVerdict& v);
    std::size_t size() const { return entries_.size(); }

  private:
    std::string path_;
    std::map<std::string, PixelVerdict> entries_;
};

}  // namespace srslab
