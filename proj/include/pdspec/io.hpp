#pragma once

#include "pdspec/bands.hpp"
#include "pdspec/covering.hpp"
#include "pdspec/dimension.hpp"
#include "pdspec/dynamics.hpp"
#include "pdspec/spectral_coding.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace pdspec {

constexpr int kCacheFormatVersion = 1;
constexpr const char* kSchema = "pdspec-export/1";

enum class Format { json, csv };
// Accepts "json" and "csv"; throws std::invalid_argument.
Format parse_format(std::string_view text);

// Cache file for one model: lambda text, width and format version are part
// of the name, so a changed key never reuses another file.
std::filesystem::path cache_path(const std::filesystem::path& dir, const ModelParams& params);

// Directory from PDSPEC_CACHE when set, else the fallback.
std::filesystem::path cache_dir_from_env(const std::filesystem::path& fallback);

// Tables up to the given level from the cache, or nullopt on a miss. A file
// that cannot be read or does not match the key is reported through warn.
std::optional<BandTables> cache_load(const std::filesystem::path& dir, const ModelParams& params, int level,
                                     const std::function<void(const std::string&)>& warn);
void cache_store(const std::filesystem::path& dir, const BandTables& tables);

// Cached tables extended to the level; the cache is rewritten when extended.
BandTables load_or_build(const ModelParams& params, int level, const std::optional<std::filesystem::path>& dir,
                         unsigned threads, const std::function<void(const std::string&)>& warn);

// Deterministic exports. Reals appear as decimal for display and as
// hexadecimal floats for exact reuse; rationals in lowest terms.
std::string export_bands(const BandTables& tables, int level, Format format);
std::string export_covering(const OptimalCovering& covering, const ModelParams& params, Format format);
std::string export_gaps(const GapScan& scan, const ModelParams& params, int depth, Format format);
std::string export_orbit(const OrbitRecord& orbit, const ModelParams& params, Format format);
std::string export_sns(const std::vector<SnsLevel>& levels, const ModelParams& params, Format format);
// Fixed points of f with their residuals, box diameters and check counts.
std::string export_dynamics(const ContractionResult& result, mpfr_prec_t bits, Format format);

// Named reports, one per section, with per-check counts and first failures.
struct ReportSection {
    std::string name;
    Report report;
};
std::string export_report(const std::vector<ReportSection>& sections, Format format);

}  // namespace pdspec
