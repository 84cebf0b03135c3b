#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ntcodes/curve.hpp"
#include "ntcodes/families.hpp"
#include "ntcodes/theorem_lab.hpp"

namespace ntc {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kLibraryVersion = "0.1.0";

/// Everything needed to reproduce one run.
///
/// An empty `checks` list means a weight analysis of the code (or of its dual
/// when `dual` is set); otherwise the named theorem checks run with d, a, b,
/// s, E and trials as parameters.
struct RunConfig {
    std::uint64_t q = 2;
    std::uint32_t r = 3;
    CodeFamilySpec code;
    bool dual = true;
    std::vector<std::string> checks;
    int trials = 1000;
    std::size_t w_max = 4;
    /// auto, exhaustive or support_search.
    std::string engine = "auto";
    unsigned workers = 0;
    std::uint64_t seed = 0;
    std::string cache_dir;
    /// json, csv or table.
    std::string format = "json";

    /// Throws ntc::Error(InvalidArgument) on the first bad field.
    void validate() const;
    /// q{q}r{r}-{family}-{params}-w{w_max}-v{schema}
    std::string key() const;

    bool operator==(const RunConfig& other) const;
};

nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

struct SupportEntry {
    std::vector<std::array<std::uint32_t, 2>> points;
    std::optional<std::string> line;
    std::string cls;

    bool operator==(const SupportEntry&) const = default;
};

struct Report {
    RunConfig config;
    std::string key;
    std::size_t n = 0;
    std::size_t k = 0;
    std::string engine;
    std::optional<std::size_t> distance;
    std::map<std::size_t, std::uint64_t> counts;
    std::size_t searched_up_to = 0;
    std::uint64_t subsets_visited = 0;
    std::vector<SupportEntry> supports;
    std::vector<CheckOutcome> checks;
    double elapsed_ms = 0;
    std::uint64_t seed = 0;
    std::string version = kLibraryVersion;
    std::string timestamp;

    bool any_fail() const;
    bool operator==(const Report&) const = default;
};

nlohmann::json report_to_json(const Report& report);
/// Throws on missing or mistyped fields.
Report report_from_json(const nlohmann::json& j);

/// The curve for the config's (q, r); q must be a prime power.
CurvePtr make_curve(std::uint64_t q, std::uint32_t r);

using ProgressFn = std::function<void(std::uint64_t)>;

/// Builds the code and runs the weight analysis the config asks for.
Report run_analyze(const RunConfig& cfg, const ProgressFn& progress = {});
/// Runs the config's checks.
Report run_verify(const RunConfig& cfg, const ProgressFn& progress = {});
/// run_verify when checks are listed, run_analyze otherwise.
Report run_config(const RunConfig& cfg, const ProgressFn& progress = {});

/// Directory of serialized reports, one file per config key.
class ReportCache {
public:
    explicit ReportCache(std::filesystem::path dir);

    std::filesystem::path path_for(const std::string& key) const;
    /// nullopt on a miss. A file that does not parse as a report for `key`
    /// counts as a miss and is reported through `warn`.
    std::optional<Report> load(const std::string& key, const std::function<void(const std::string&)>& warn) const;
    /// Writes to a temporary file and renames it into place.
    void store(const Report& report) const;

private:
    std::filesystem::path dir_;
};

/// Parses the flat sweep grammar into one config per grid point, starting
/// from `base` for unset keys. Throws on syntax errors or unknown keys.
std::vector<RunConfig> parse_sweep(const std::string& text, const RunConfig& base);

/// Points written as x.y index pairs joined by '_' (for example 0.0_0.1).
std::vector<Point> parse_points(const std::string& text);
std::string format_points(const std::vector<Point>& points);

/// Flattens a JSON value into path,value rows (header included).
std::string json_to_csv(const nlohmann::json& j);

}  // namespace ntc
