#include "ntcodes/weight_search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <set>
#include <thread>

#include "ntcodes/error.hpp"

namespace ntc {

std::string to_string(Engine engine)
{
    return engine == Engine::Exhaustive ? "exhaustive" : "support_search";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

unsigned resolve_workers(unsigned requested)
{
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs task(i) for i in [0, tasks) on a pool of workers pulling indices from
// a shared counter. Results are written into per-task slots by the caller, so
// the merged output does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t tasks, unsigned workers, Fn&& task)
{
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(tasks, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < tasks; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < tasks; i = next++) task(i);
        });
    for (auto& t : pool) t.join();
}

// Incremental semi-echelon basis of column vectors. Earlier rows have been
// used to clear later rows' pivot entries, so a single sequential sweep
// reduces a new vector.
class Eliminator {
public:
    Eliminator(const Field& field, std::size_t dim, std::size_t capacity)
        : field_(field), dim_(dim), basis_((capacity + 1) * dim), pivots_(capacity + 1)
    {
    }

    std::size_t rank() const noexcept { return rank_; }
    void truncate(std::size_t r) noexcept { rank_ = r; }

    bool push(const Felt* v)
    {
        Felt* slot = basis_.data() + rank_ * dim_;
        std::copy(v, v + dim_, slot);
        for (std::size_t b = 0; b < rank_; ++b) {
            const Felt coef = slot[pivots_[b]];
            if (coef.is_zero()) continue;
            const Felt* row = basis_.data() + b * dim_;
            for (std::size_t t = 0; t < dim_; ++t)
                if (!row[t].is_zero()) slot[t] = field_.sub(slot[t], field_.mul(coef, row[t]));
        }
        std::size_t p = 0;
        while (p < dim_ && slot[p].is_zero()) ++p;
        if (p == dim_) return false;
        const Felt inv = field_.inv(slot[p]);
        for (std::size_t t = p; t < dim_; ++t) slot[t] = field_.mul(slot[t], inv);
        pivots_[rank_++] = p;
        return true;
    }

private:
    const Field& field_;
    std::size_t dim_;
    std::vector<Felt> basis_;
    std::vector<std::size_t> pivots_;
    std::size_t rank_ = 0;
};

// Columns of a check matrix stored contiguously.
struct ColumnStore {
    std::size_t dim = 0;
    std::vector<Felt> data;

    explicit ColumnStore(const FMatrix& m) : dim(m.rows()), data(m.rows() * m.cols())
    {
        for (std::size_t c = 0; c < m.cols(); ++c)
            for (std::size_t r = 0; r < m.rows(); ++r) data[c * dim + r] = m.at(r, c);
    }
    const Felt* column(std::size_t c) const noexcept { return data.data() + c * dim; }
};

using Wide = __int128;

std::uint64_t exact_count(const Field& field, const ColumnStore& cols, std::span<const std::size_t> support)
{
    const std::size_t w = support.size();
    const Wide Q = static_cast<Wide>(field.order());
    Eliminator elim(field, cols.dim, w);
    Wide total = 0;
    for (std::uint32_t removed = 0; removed < (1u << w); ++removed) {
        elim.truncate(0);
        std::size_t kept = 0;
        for (std::size_t i = 0; i < w; ++i) {
            if (removed & (1u << i)) continue;
            ++kept;
            elim.push(cols.column(support[i]));
        }
        const std::size_t nullity = kept - elim.rank();
        Wide term = 1;
        for (std::size_t i = 0; i < nullity; ++i) term *= Q;
        total += (std::popcount(removed) % 2 == 0) ? term : -term;
    }
    if (total < 0) throw Error(ErrorKind::InvalidArgument, "exact_support_count: negative count");
    return static_cast<std::uint64_t>(total);
}

struct TaskResult {
    Wide count = 0;
    std::uint64_t visited = 0;
    std::vector<std::vector<std::size_t>> supports;
};

class ProgressTracker {
public:
    explicit ProgressTracker(const SearchOptions& opts) : opts_(opts) {}

    void add(std::uint64_t n)
    {
        if (!opts_.progress || opts_.progress_interval == 0) return;
        const std::uint64_t before = total_.fetch_add(n);
        const std::uint64_t after = before + n;
        if (before / opts_.progress_interval != after / opts_.progress_interval) {
            std::lock_guard<std::mutex> lock(mutex_);
            opts_.progress(after);
        }
    }

private:
    const SearchOptions& opts_;
    std::atomic<std::uint64_t> total_{0};
    std::mutex mutex_;
};

}  // namespace

std::uint64_t exact_support_count(const FMatrix& check, std::span<const std::size_t> columns)
{
    if (columns.size() > 20) throw Error(ErrorKind::SizeGuard, "exact_support_count: support too large");
    const ColumnStore cols(rref(check).reduced);
    return exact_count(*check.field(), cols, columns);
}

WeightReport dual_weight_search(const FMatrix& check_in, const SearchOptions& opts)
{
    const auto start = Clock::now();
    const std::size_t n = check_in.cols();
    if (opts.w_max > n) throw Error(ErrorKind::OutOfRange, "w_max exceeds code length");
    if (opts.w_min == 0) throw Error(ErrorKind::OutOfRange, "w_min must be positive");
    const Field& field = *check_in.field();
    const FMatrix check = rref(check_in).reduced;
    const ColumnStore cols(check);
    const unsigned workers = resolve_workers(opts.workers);
    ProgressTracker progress(opts);

    WeightReport report;
    report.engine = Engine::SupportSearch;
    report.length = n;

    for (std::size_t w = opts.w_min; w <= opts.w_max; ++w) {
        const bool want_supports = opts.collect_supports && !report.min_distance;
        std::vector<TaskResult> results(n);
        parallel_for(n - w + 1, workers, [&](std::size_t first) {
            TaskResult& out = results[first];
            Eliminator elim(field, cols.dim, w);
            std::vector<std::size_t> chosen(w);
            std::vector<std::size_t> rank_at(w + 1, 0);
            std::uint64_t pending = 0;
            chosen[0] = first;
            elim.push(cols.column(first));
            rank_at[1] = elim.rank();

            // Depth-first over increasing index tuples; the basis for the
            // shared prefix is kept and only the newest column is reduced.
            auto visit_leaf = [&] {
                ++out.visited;
                if (++pending == 65536) {
                    progress.add(pending);
                    pending = 0;
                }
                if (elim.rank() == w) return;
                const std::uint64_t cnt = exact_count(field, cols, chosen);
                if (cnt == 0) return;
                out.count += cnt;
                if (want_supports) out.supports.push_back(chosen);
            };
            if (w == 1) {
                visit_leaf();
            } else {
                std::size_t depth = 1;
                chosen[1] = first;
                while (depth >= 1) {
                    std::size_t& idx = chosen[depth];
                    ++idx;
                    if (idx > n - (w - depth)) {
                        --depth;
                        continue;
                    }
                    elim.truncate(rank_at[depth]);
                    elim.push(cols.column(idx));
                    rank_at[depth + 1] = elim.rank();
                    if (depth + 1 == w) {
                        visit_leaf();
                    } else {
                        ++depth;
                        chosen[depth] = idx;
                    }
                }
            }
            progress.add(pending);
        });

        Wide total = 0;
        for (auto& r : results) {
            total += r.count;
            report.subsets_visited += r.visited;
            if (want_supports)
                for (auto& s : r.supports) report.supports.push_back(std::move(s));
        }
        if (total > static_cast<Wide>(UINT64_MAX)) throw Error(ErrorKind::SizeGuard, "codeword count overflows 64 bits");
        report.searched_up_to = w;
        if (total > 0) {
            report.counts[w] = static_cast<std::uint64_t>(total);
            if (!report.min_distance) report.min_distance = w;
            if (opts.stop_at_min) break;
        }
    }
    report.elapsed_ms = ms_since(start);
    return report;
}

WeightReport min_distance_exhaustive(const LinearCode& code, unsigned workers, bool collect_supports)
{
    const auto start = Clock::now();
    const Field& field = *code.field();
    const std::size_t k = code.dimension(), n = code.length();
    const std::uint64_t Q = field.order();
    if (static_cast<double>(k) * std::log2(static_cast<double>(Q)) > 24.0 + 1e-9)
        throw Error(ErrorKind::SizeGuard, "exhaustive enumeration limited to Q^k <= 2^24 (k=" + std::to_string(k) +
                                              ", Q=" + std::to_string(Q) + ")");

    WeightReport report;
    report.engine = Engine::Exhaustive;
    report.length = n;
    report.searched_up_to = n;
    if (k == 0) {
        report.elapsed_ms = ms_since(start);
        return report;
    }

    // multiples[(r * Q + c) * n + j] = c * g_r[j]
    std::vector<Felt> multiples(k * Q * n);
    for (std::size_t r = 0; r < k; ++r)
        for (std::uint64_t c = 0; c < Q; ++c)
            for (std::size_t j = 0; j < n; ++j)
                multiples[(r * Q + c) * n + j] = field.mul(Felt{static_cast<std::uint32_t>(c)}, code.generator().at(r, j));

    struct Partial {
        std::vector<std::uint64_t> counts;
        std::size_t best = SIZE_MAX;
        std::set<std::vector<std::size_t>> supports;
    };
    std::vector<Partial> parts(Q);

    parallel_for(Q, resolve_workers(workers), [&](std::size_t lead) {
        Partial& out = parts[lead];
        out.counts.assign(n + 1, 0);
        std::vector<Felt> words((k + 1) * n);  // words[level] = sum of the first `level` terms
        std::vector<std::uint32_t> digit(k, 0);
        digit[0] = static_cast<std::uint32_t>(lead);
        std::copy_n(multiples.begin() + static_cast<std::ptrdiff_t>(lead * n), n, words.begin() + static_cast<std::ptrdiff_t>(n));

        auto add_level = [&](std::size_t level) {
            const Felt* prev = words.data() + level * n;
            const Felt* term = multiples.data() + (level * Q + digit[level]) * n;
            Felt* cur = words.data() + (level + 1) * n;
            for (std::size_t j = 0; j < n; ++j) cur[j] = field.add(prev[j], term[j]);
        };
        for (std::size_t level = 1; level < k; ++level) add_level(level);

        while (true) {
            const Felt* w = words.data() + k * n;
            std::size_t weight = 0;
            for (std::size_t j = 0; j < n; ++j) weight += !w[j].is_zero();
            if (weight > 0) {
                ++out.counts[weight];
                if (collect_supports && weight <= out.best) {
                    std::size_t first_nz = 0;
                    while (w[first_nz].is_zero()) ++first_nz;
                    if (w[first_nz] == field.one()) {
                        if (weight < out.best) {
                            out.best = weight;
                            out.supports.clear();
                        }
                        std::vector<std::size_t> s;
                        for (std::size_t j = 0; j < n; ++j)
                            if (!w[j].is_zero()) s.push_back(j);
                        out.supports.insert(std::move(s));
                    }
                }
            }
            // Odometer over digits 1..k-1, recomputing suffix sums.
            std::size_t level = k;
            while (level > 1) {
                --level;
                if (++digit[level] < Q) break;
                digit[level] = 0;
                if (level == 1) {
                    level = 0;
                    break;
                }
            }
            if (level == 0 || k == 1) break;
            for (std::size_t l = level; l < k; ++l) add_level(l);
        }
    });

    std::vector<std::uint64_t> totals(n + 1, 0);
    std::size_t best = SIZE_MAX;
    for (const auto& p : parts) {
        for (std::size_t w = 1; w <= n; ++w) totals[w] += p.counts[w];
        best = std::min(best, p.best);
    }
    for (std::size_t w = 1; w <= n; ++w)
        if (totals[w]) {
            report.counts[w] = totals[w];
            if (!report.min_distance) report.min_distance = w;
        }
    if (collect_supports && report.min_distance) {
        std::set<std::vector<std::size_t>> merged;
        for (auto& p : parts)
            if (p.best == *report.min_distance) merged.insert(p.supports.begin(), p.supports.end());
        report.supports.assign(merged.begin(), merged.end());
    }
    report.subsets_visited = 1;
    for (std::size_t i = 0; i < k; ++i) report.subsets_visited *= Q;
    report.elapsed_ms = ms_since(start);
    return report;
}

std::vector<ClassifiedSupport> classify_supports(const Curve& curve, std::span<const Point> labels,
                                                 const std::vector<std::vector<std::size_t>>& supports)
{
    std::vector<ClassifiedSupport> out;
    out.reserve(supports.size());
    for (const auto& s : supports) {
        ClassifiedSupport cs;
        cs.columns = s;
        for (auto c : s) cs.points.push_back(labels[c]);
        if (cs.points.size() >= 2) cs.line = curve.collinear(cs.points);
        out.push_back(std::move(cs));
    }
    return out;
}

std::vector<ClassifiedSupport> min_weight_supports(const Curve& curve, const FMatrix& check,
                                                   std::span<const Point> labels, std::size_t w, unsigned workers)
{
    SearchOptions opts;
    opts.w_min = w;
    opts.w_max = w;
    opts.workers = workers;
    const auto report = dual_weight_search(check, opts);
    return classify_supports(curve, labels, report.supports);
}

}  // namespace ntc
