#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntcodes/curve.hpp"
#include "ntcodes/linear_code.hpp"
#include "ntcodes/matrix.hpp"

namespace ntc {

enum class Engine { Exhaustive, SupportSearch };

std::string to_string(Engine engine);

/// Weight statistics of a code.
///
/// `counts` holds the number of codewords of each weight for every weight
/// that was searched (zero counts omitted). Supports are the distinct
/// minimum-weight supports as sorted column-index lists, in lexicographic order.
struct WeightReport {
    Engine engine = Engine::SupportSearch;
    std::size_t length = 0;
    std::optional<std::size_t> min_distance;
    std::map<std::size_t, std::uint64_t> counts;
    /// Every weight in [1, searched_up_to] has an exact count.
    std::size_t searched_up_to = 0;
    std::vector<std::vector<std::size_t>> supports;
    std::uint64_t subsets_visited = 0;
    double elapsed_ms = 0;

    std::uint64_t count(std::size_t weight) const
    {
        const auto it = counts.find(weight);
        return it == counts.end() ? 0 : it->second;
    }
    /// No nonzero codeword of weight <= searched_up_to exists.
    bool distance_exceeds_search() const noexcept { return !min_distance.has_value(); }
};

/// Enumerates all Q^k codewords. Throws ntc::Error(SizeGuard) when
/// k * log2(Q) > 24.
WeightReport min_distance_exhaustive(const LinearCode& code, unsigned workers = 0, bool collect_supports = true);

struct SearchOptions {
    std::size_t w_max = 0;
    /// First weight to scan; weights below it are assumed empty.
    std::size_t w_min = 1;
    /// Stop after the first weight that has codewords.
    bool stop_at_min = false;
    bool collect_supports = true;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;
    /// Called with the running subset count roughly every `progress_interval` subsets.
    std::function<void(std::uint64_t)> progress;
    std::uint64_t progress_interval = 1'000'000;
};

/// Weights of the code {v : check v = 0}, found by scanning column subsets of
/// `check` in increasing size. Codewords with support exactly S are counted by
/// inclusion-exclusion over the nullities of the sub-subsets of S.
WeightReport dual_weight_search(const FMatrix& check, const SearchOptions& options);

/// Codeword count with support exactly the given columns of `check`.
std::uint64_t exact_support_count(const FMatrix& check, std::span<const std::size_t> columns);

struct ClassifiedSupport {
    std::vector<std::size_t> columns;
    std::vector<Point> points;
    std::optional<ProjLine> line;

    std::string class_name() const { return line ? to_string(line->line_class()) : "none"; }
};

/// Attaches evaluation points and the common line (if any) to each support.
std::vector<ClassifiedSupport> classify_supports(const Curve& curve, std::span<const Point> labels,
                                                 const std::vector<std::vector<std::size_t>>& supports);

/// All supports of weight-w words of {v : check v = 0}, classified.
std::vector<ClassifiedSupport> min_weight_supports(const Curve& curve, const FMatrix& check,
                                                   std::span<const Point> labels, std::size_t w, unsigned workers = 0);

}  // namespace ntc
