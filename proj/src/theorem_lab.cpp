#include "ntcodes/theorem_lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "ntcodes/error.hpp"
#include "ntcodes/families.hpp"
#include "ntcodes/function_space.hpp"
#include "ntcodes/linear_code.hpp"
#include "ntcodes/matrix.hpp"
#include "ntcodes/weight_search.hpp"

namespace ntc {

std::string to_string(Verdict verdict)
{
    switch (verdict) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Unsupported: return "unsupported";
    }
    return "unknown";
}

Verdict verdict_from_string(const std::string& name)
{
    for (auto v : {Verdict::Pass, Verdict::Fail, Verdict::Unsupported})
        if (to_string(v) == name) return v;
    throw Error(ErrorKind::InvalidArgument, "unknown verdict '" + name + "'");
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return static_cast<std::uint64_t>(acc);
}

PlanePoint normalize_plane_point(const Field& field, PlanePoint p)
{
    for (const Felt v : p)
        if (!v.is_zero()) {
            const Felt inv = field.inv(v);
            for (auto& e : p) e = field.mul(e, inv);
            return p;
        }
    throw Error(ErrorKind::InvalidArgument, "plane point with all coordinates zero");
}

int h1_of_points(const FieldPtr& field, std::span<const PlanePoint> Z, int d)
{
    if (d <= 0) throw Error(ErrorKind::InvalidArgument, "h1_of_points: d must be positive");
    if (Z.empty()) return 0;
    const Field& f = *field;
    FMatrix eval(field, 0, Z.size());
    std::vector<Felt> row(Z.size());
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j) {
            for (std::size_t c = 0; c < Z.size(); ++c) {
                const auto& p = Z[c];
                row[c] = f.mul(f.mul(f.pow(p[0], i), f.pow(p[1], j)), f.pow(p[2], d - i - j));
            }
            eval.append_row(row);
        }
    return static_cast<int>(Z.size() - rank(eval));
}

namespace {

bool on_line(const Field& f, const ProjLine& line, const PlanePoint& p)
{
    const Felt s = f.add(f.add(f.mul(line.a, p[0]), f.mul(line.b, p[1])), f.mul(line.c, p[2]));
    return s.is_zero();
}

}  // namespace

std::size_t max_collinear(const Field& field, std::span<const PlanePoint> Z)
{
    std::size_t best = 0;
    for (const auto& line : plane_lines(field)) {
        std::size_t hits = 0;
        for (const auto& p : Z) hits += on_line(field, line, p);
        best = std::max(best, hits);
    }
    return best;
}

namespace {

using Clock = std::chrono::steady_clock;

std::string num(std::uint64_t v) { return std::to_string(v); }

std::string point_str(const Point& p)
{
    if (!p.is_affine()) return "(inf)";
    return "(" + num(p.x.index) + "," + num(p.y.index) + ")";
}

std::string plane_str(const PlanePoint& p)
{
    return "(" + num(p[0].index) + ":" + num(p[1].index) + ":" + num(p[2].index) + ")";
}

std::string support_str(const ClassifiedSupport& s)
{
    std::string out = "support {";
    for (std::size_t i = 0; i < s.points.size(); ++i) out += (i ? " " : "") + point_str(s.points[i]);
    out += "}";
    if (s.line) out += " on " + s.class_name() + " line " + s.line->to_string();
    else out += " not collinear";
    return out;
}

struct Ctx {
    CheckOutcome& out;

    void claim(std::string name, std::string value, std::string formula)
    {
        out.claimed.push_back(Claim{std::move(name), std::move(value), std::move(formula)});
    }
    void computed(const std::string& key, std::string value) { out.computed[key] = std::move(value); }
    void note(std::string text) { out.notes.push_back(std::move(text)); }
    /// Records a failure with its witness when the condition does not hold.
    void expect(bool cond, std::string witness)
    {
        if (cond) return;
        out.verdict = Verdict::Fail;
        out.witnesses.push_back(witness.empty() ? "unspecified" : std::move(witness));
    }
};

[[noreturn]] void unsupported(const std::string& why) { throw Error(ErrorKind::Unsupported, why); }

template <typename Fn>
CheckOutcome timed(const Curve& curve, std::string id, std::map<std::string, std::int64_t> params,
                   const LabOptions& opts, Fn&& body)
{
    CheckOutcome out;
    out.id = std::move(id);
    out.params = std::move(params);
    out.params["q"] = static_cast<std::int64_t>(curve.q());
    out.params["r"] = curve.r();
    out.seed = opts.seed;
    const auto start = Clock::now();
    try {
        Ctx ctx{out};
        body(ctx);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Unsupported) throw;
        out.verdict = Verdict::Unsupported;
        out.notes.push_back(e.what());
    }
    out.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return out;
}

void require_degree_range(const Curve& curve, int d)
{
    const auto top = static_cast<int>(curve.q_pow_r_minus_1()) - 1;
    if (d <= 0 || d >= top)
        unsupported("d=" + std::to_string(d) + " outside 0 < d < q^(r-1)-1 = " + std::to_string(top));
}

SearchOptions search_opts(const LabOptions& opts, std::size_t w_max, bool stop_at_min, bool supports = true)
{
    SearchOptions s;
    s.w_max = w_max;
    s.stop_at_min = stop_at_min;
    s.collect_supports = supports;
    s.workers = opts.workers;
    s.progress = opts.progress;
    return s;
}

std::string distance_str(const WeightReport& rep)
{
    return rep.min_distance ? num(*rep.min_distance) : ">" + num(rep.searched_up_to);
}

/// Witness text for a distance mismatch: the first low-weight support, or the
/// empty search range.
std::string distance_witness(const Curve& curve, const LinearCode& code, const WeightReport& rep)
{
    if (rep.min_distance && !rep.supports.empty()) {
        const auto cls = classify_supports(curve, code.labels(), {rep.supports.front()});
        return "weight " + num(*rep.min_distance) + " " + support_str(cls.front());
    }
    return "no dual codeword of weight <= " + num(rep.searched_up_to);
}

std::map<std::string, std::uint64_t> class_histogram(const std::vector<ClassifiedSupport>& supports)
{
    std::map<std::string, std::uint64_t> h;
    for (const auto& s : supports) ++h[s.class_name()];
    return h;
}

void record_classes(Ctx& ctx, const std::string& prefix, const std::vector<ClassifiedSupport>& supports)
{
    for (const auto& [cls, count] : class_histogram(supports)) ctx.computed(prefix + cls, num(count));
}

std::string witness_str(std::span<const Felt> x)
{
    std::string out = "x = [";
    for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + num(x[i].index);
    return out + "]";
}

}  // namespace

CheckOutcome check_lemma_h1(const Curve& curve, int d, int trials, const LabOptions& opts)
{
    return timed(curve, "h1", {{"d", d}, {"trials", trials}}, opts, [&](Ctx& ctx) {
        if (d < 1) unsupported("d must be at least 1");
        if (trials < 0) unsupported("trials must be non-negative");
        const Field& f = curve.field();
        const std::uint32_t Q = static_cast<std::uint32_t>(f.order());
        ctx.claim("part_a", "h1 = 0 when |Z| <= d+1", "independent conditions for small Z");
        ctx.claim("part_b", "h1 > 0 iff some line meets Z in >= d+2 points", "line criterion for d+2 <= |Z| <= 2d+1");

        std::vector<PlanePoint> plane;
        for (std::uint32_t x = 0; x < Q; ++x)
            for (std::uint32_t y = 0; y < Q; ++y) plane.push_back({Felt{x}, Felt{y}, f.one()});
        for (std::uint32_t x = 0; x < Q; ++x) plane.push_back({f.one(), Felt{x}, Felt{}});
        plane.push_back({Felt{}, f.one(), Felt{}});
        const auto lines = plane_lines(f);

        std::mt19937_64 rng(opts.seed);
        auto pick = [&](std::size_t lo, std::size_t hi) {
            return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
        };
        auto fill_random = [&](std::vector<PlanePoint>& Z, std::size_t size) {
            std::set<PlanePoint> seen(Z.begin(), Z.end());
            while (Z.size() < size) {
                const auto& p = plane[pick(0, plane.size() - 1)];
                if (seen.insert(p).second) Z.push_back(p);
            }
        };
        auto set_str = [](const std::vector<PlanePoint>& Z) {
            std::string s = "Z = {";
            for (std::size_t i = 0; i < Z.size(); ++i) s += (i ? " " : "") + plane_str(Z[i]);
            return s + "}";
        };

        const std::size_t dd = static_cast<std::size_t>(d);
        std::uint64_t positive = 0, planted = 0, part_a_sets = 0;
        for (int t = 0; t < trials; ++t) {
            std::vector<PlanePoint> small;
            fill_random(small, pick(0, dd + 1));
            ++part_a_sets;
            const int h_small = h1_of_points(curve.field_ptr(), small, d);
            ctx.expect(h_small == 0, "part (a): h1=" + std::to_string(h_small) + " for " + set_str(small));

            std::vector<PlanePoint> Z;
            const std::size_t size = pick(dd + 2, 2 * dd + 1);
            if (t % 2 == 1) {
                const auto& line = lines[pick(0, lines.size() - 1)];
                std::vector<PlanePoint> on;
                for (const auto& p : plane)
                    if (on_line(f, line, p)) on.push_back(p);
                std::shuffle(on.begin(), on.end(), rng);
                Z.assign(on.begin(), on.begin() + static_cast<std::ptrdiff_t>(std::min(on.size(), dd + 2)));
                ++planted;
            }
            fill_random(Z, size);
            const int h = h1_of_points(curve.field_ptr(), Z, d);
            const bool line_hit = max_collinear(f, Z) >= dd + 2;
            positive += h > 0;
            ctx.expect((h > 0) == line_hit, "part (b): h1=" + std::to_string(h) + ", line with >= d+2 points: " +
                                                (line_hit ? "yes" : "no") + " for " + set_str(Z));
        }
        ctx.computed("trials", num(static_cast<std::uint64_t>(trials)));
        ctx.computed("part_a_sets", num(part_a_sets));
        ctx.computed("planted_sets", num(planted));
        ctx.computed("h1_positive_sets", num(positive));
    });
}

CheckOutcome check_te1(const Curve& curve, int d, const LabOptions& opts)
{
    return timed(curve, "te1", {{"d", d}}, opts, [&](Ctx& ctx) {
        require_degree_range(curve, d);
        const std::size_t w = static_cast<std::size_t>(d) + 2;
        const LinearCode C = build_Cd(curve, d);
        const WeightReport rep = dual_weight_search(C.generator(), search_opts(opts, w, true));
        ctx.claim("distance", num(w), "d+2");
        ctx.claim("supports", "collinear", "minimum-weight supports lie on a line");
        ctx.computed("n", num(C.length()));
        ctx.computed("k", num(C.dimension()));
        ctx.computed("distance", distance_str(rep));
        ctx.expect(rep.min_distance == w, distance_witness(curve, C, rep));
        if (!rep.min_distance) return;
        ctx.computed("count", num(rep.count(*rep.min_distance)));

        const auto classified = classify_supports(curve, C.labels(), rep.supports);
        record_classes(ctx, "supports_", classified);
        for (const auto& s : classified)
            if (!s.line) {
                ctx.expect(false, support_str(s));
                break;
            }

        if (curve.q() <= static_cast<std::uint64_t>(d)) {
            // The no-horizontal-line argument concerns L(dc P_inf); check it there.
            const std::int64_t s = static_cast<std::int64_t>(d) * static_cast<std::int64_t>(curve.c());
            ctx.claim("onepoint_horizontal", "0", "no minimum-weight support of C_{dc}^perp on a horizontal line");
            const LinearCode Cs = one_point_goppa(curve, s);
            const WeightReport one = dual_weight_search(Cs.generator(), search_opts(opts, w, true));
            ctx.computed("onepoint_s", std::to_string(s));
            ctx.computed("onepoint_distance", distance_str(one));
            const auto one_cls = classify_supports(curve, Cs.labels(), one.supports);
            const auto horizontal = std::count_if(one_cls.begin(), one_cls.end(), [](const ClassifiedSupport& c) {
                return c.line && c.line->line_class() == LineClass::Horizontal;
            });
            ctx.computed("onepoint_horizontal", num(static_cast<std::uint64_t>(horizontal)));
            for (const auto& c : one_cls)
                if (c.line && c.line->line_class() == LineClass::Horizontal) {
                    ctx.expect(false, "C_" + std::to_string(s) + "^perp " + support_str(c));
                    break;
                }
            const auto hist = class_histogram(classified);
            const auto it = hist.find("horizontal");
            if (it != hist.end())
                ctx.note("C(d)^perp has " + num(it->second) +
                         " horizontal minimum-weight supports; degree-d forms cannot separate d+2 points on any line");
        }
    });
}

CheckOutcome check_te2(const Curve& curve, int d, const LabOptions& opts)
{
    return timed(curve, "te2", {{"d", d}}, opts, [&](Ctx& ctx) {
        require_degree_range(curve, d);
        const std::uint64_t Q = curve.order(), qr1 = curve.q_pow_r_minus_1(), c = curve.c();
        const std::size_t w = static_cast<std::size_t>(d) + 2;
        const LinearCode C = build_Cd(curve, d);
        const WeightReport rep = dual_weight_search(C.generator(), search_opts(opts, w, true));
        ctx.computed("distance", distance_str(rep));
        ctx.expect(rep.min_distance == w, distance_witness(curve, C, rep));
        if (rep.min_distance != w) return;

        const std::uint64_t truth = rep.count(w);
        const std::uint64_t vertical = (Q - 1) * Q * binomial(qr1, w);
        const std::uint64_t printed = (Q - 1) * (Q * binomial(qr1, w) + (Q - 1) * binomial(c, w));
        const std::uint64_t certified = (Q - 1) * (Q * binomial(qr1, w) + (Q - qr1) * binomial(c, w));
        ctx.claim("printed_bound", num(printed), "(Q-1)[Q binom(q^(r-1), d+2) + (Q-1) binom(c, d+2)]");
        ctx.claim("certified_bound", num(certified), "(Q-1)[Q binom(q^(r-1), d+2) + (Q-q^(r-1)) binom(c, d+2)]");
        ctx.claim("vertical_words", num(vertical), "(Q-1) Q binom(q^(r-1), d+2)");
        ctx.computed("count", num(truth));
        ctx.computed("printed_bound_holds", printed <= truth ? "yes" : "no");
        ctx.expect(certified <= truth, "enumerated count " + num(truth) + " below certified bound " + num(certified));

        const FMatrix& H = C.generator();
        const auto classified = classify_supports(curve, C.labels(), rep.supports);
        record_classes(ctx, "supports_", classified);
        std::uint64_t vertical_words = 0;
        for (const auto& s : classified)
            if (s.line && s.line->line_class() == LineClass::Vertical) vertical_words += exact_support_count(H, s.columns);
        ctx.computed("vertical_words", num(vertical_words));
        ctx.expect(vertical_words == vertical,
                   "vertical-support words " + num(vertical_words) + " != " + num(vertical));

        std::uint64_t per_line = 0;
        for (const auto& line : curve.all_lines()) per_line += binomial(curve.line_curve_points(line).size(), w);
        per_line *= Q - 1;
        ctx.claim("per_line_count", num(per_line), "(Q-1) sum over lines L of binom(|L cap Y|, d+2)");
        ctx.expect(per_line == truth, "enumerated count " + num(truth) + " != per-line count " + num(per_line));
        if (printed > truth) ctx.note("printed bound exceeds the enumerated count");
        ctx.note("lines y=alpha with Tr(alpha)=0 carry a single rational point");
    });
}

CheckOutcome check_teo_a(const Curve& curve, int d, const LabOptions& opts)
{
    return timed(curve, "teo_a", {{"d", d}, {"a", 1}}, opts, [&](Ctx& ctx) {
        require_degree_range(curve, d);
        const std::uint64_t Q = curve.order();
        const std::size_t w = static_cast<std::size_t>(d) + 1;
        const LinearCode C = build_Cda(curve, d, 1);
        const WeightReport rep = dual_weight_search(C.generator(), search_opts(opts, w, true));
        const std::uint64_t expected = (Q - 1) * Q * binomial(curve.q_pow_r_minus_1(), w);
        ctx.claim("distance", num(w), "d+1");
        ctx.claim("count", num(expected), "(Q-1) Q binom(q^(r-1), d+1)");
        ctx.claim("supports", "vertical", "d+1 points on a vertical line");
        ctx.computed("n", num(C.length()));
        ctx.computed("k", num(C.dimension()));
        ctx.computed("distance", distance_str(rep));
        ctx.expect(rep.min_distance == w, distance_witness(curve, C, rep));
        if (rep.min_distance != w) return;
        ctx.computed("count", num(rep.count(w)));
        ctx.expect(rep.count(w) == expected, "enumerated count " + num(rep.count(w)) + " != " + num(expected));
        const auto classified = classify_supports(curve, C.labels(), rep.supports);
        record_classes(ctx, "supports_", classified);
        for (const auto& s : classified)
            if (!s.line || s.line->line_class() != LineClass::Vertical) {
                ctx.expect(false, support_str(s));
                break;
            }
    });
}

CheckOutcome check_cor_one(const Curve& curve, std::int64_t s, const LabOptions& opts)
{
    return timed(curve, "cor_one", {{"s", s}}, opts, [&](Ctx& ctx) {
        const auto c = static_cast<std::int64_t>(curve.c());
        if (s <= 0) unsupported("s must be positive");
        const int d = static_cast<int>((s + c - 1) / c);
        const int a = static_cast<int>(d * c - s);
        ctx.out.params["d"] = d;
        ctx.out.params["a"] = a;
        require_degree_range(curve, d);
        if (a > d) unsupported("a=" + std::to_string(a) + " exceeds d=" + std::to_string(d));
        const LinearCode C = one_point_goppa(curve, s);
        const std::size_t w = static_cast<std::size_t>(d) + 2;
        const WeightReport rep = dual_weight_search(C.generator(), search_opts(opts, w, true, false));
        ctx.computed("distance", distance_str(rep));
        if (rep.min_distance) ctx.computed("count", num(rep.count(*rep.min_distance)));
        std::size_t lo = w, hi = w;
        std::string formula = "d+2 (a=0)";
        if (a == 1) {
            lo = hi = static_cast<std::size_t>(d) + 1;
            formula = "d+1 (a=1)";
        } else if (a > 1) {
            lo = static_cast<std::size_t>(d + 2 - a);
            hi = static_cast<std::size_t>(d) + 1;
            formula = "[d+2-a, d+1] (1<a<=d)";
        }
        ctx.claim("distance", lo == hi ? num(lo) : "[" + num(lo) + "," + num(hi) + "]", formula);
        const bool ok = rep.min_distance && *rep.min_distance >= lo && *rep.min_distance <= hi;
        ctx.expect(ok, rep.min_distance ? "dual distance " + num(*rep.min_distance) + " outside claim"
                                        : "no dual codeword of weight <= " + num(w));
    });
}

namespace {

/// Largest weight <= want whose subset count stays below the budget.
std::size_t affordable_band(std::size_t n, std::size_t want)
{
    constexpr std::uint64_t budget = 20'000'000;
    std::size_t w = 1;
    while (w < want && binomial(n, w + 1) <= budget) ++w;
    return w;
}

}  // namespace

CheckOutcome check_reduc(const Curve& curve, int d, int a, int b, const LabOptions& opts)
{
    return timed(curve, "reduc", {{"d", d}, {"a", a}, {"b", b}}, opts, [&](Ctx& ctx) {
        if (d <= 1 || b <= d) unsupported("reduction needs b > d > 1");
        require_degree_range(curve, d);
        if (a < 0) unsupported("a must be non-negative");
        const LinearCode C = build_Cdab(curve, d, a, b);
        const LinearCode D = build_Cdab(curve, d - 1, a, 0);
        ctx.claim("isometry", "witness", "C(d,a,b) = x C(d-1,a,0) with x nowhere zero");
        ctx.computed("k", num(C.dimension()));
        ctx.computed("k_reduced", num(D.dimension()));
        const IsometryResult iso = strong_isometry_witness(C, D, ctx.out.seed);
        ctx.computed("isometry", to_string(iso.status));
        ctx.computed("solution_dim", num(iso.solution_dim));
        ctx.expect(iso.status == IsometryResult::Status::Found,
                   "solution space of dimension " + num(iso.solution_dim) + " has no nowhere-zero vector" +
                       (iso.exhaustive ? "" : " among sampled vectors"));
        if (iso.status == IsometryResult::Status::Found) ctx.computed("witness", witness_str(iso.witness));

        const std::size_t want = static_cast<std::size_t>(d) + 2;
        const std::size_t band = affordable_band(C.length(), want);
        if (band < want) ctx.note("weight comparison limited to weights <= " + num(band));
        const auto rc = dual_weight_search(C.generator(), search_opts(opts, band, false, false));
        const auto rd = dual_weight_search(D.generator(), search_opts(opts, band, false, false));
        ctx.claim("dual_distance", distance_str(rd), "dual distance of C(d-1,a,0)");
        ctx.computed("dual_distance", distance_str(rc));
        ctx.computed("band", num(band));
        for (std::size_t w = 1; w <= band; ++w)
            if (rc.count(w) != rd.count(w)) {
                ctx.expect(false, "weight " + num(w) + ": " + num(rc.count(w)) + " vs " + num(rd.count(w)));
                break;
            }
        ctx.expect(rc.min_distance == rd.min_distance,
                   "dual distances " + distance_str(rc) + " vs " + distance_str(rd));
    });
}

CheckOutcome check_teo_ab(const Curve& curve, int d, int a, int b, const LabOptions& opts)
{
    return timed(curve, "teo_ab", {{"d", d}, {"a", a}, {"b", b}}, opts, [&](Ctx& ctx) {
        require_degree_range(curve, d);
        if (a < 0 || b < 0) unsupported("a and b must be non-negative");
        int dr = d, ar = a, br = b;
        if (b > d) {
            dr = d - 1;
            br = 0;
        }
        ctx.out.params["d_reduced"] = dr;
        ctx.out.params["a_reduced"] = ar;
        ctx.out.params["b_reduced"] = br;
        if (ar > 1) unsupported("reduced a=" + std::to_string(ar) + " is not 0 or 1");
        if (ar == 0 && br == 0) unsupported("reduced (a,b) = (0,0) is covered by no case");
        if (dr < 1) unsupported("reduced d=0");

        const std::uint64_t Q = curve.order(), qr1 = curve.q_pow_r_minus_1();
        const auto ud = static_cast<std::uint64_t>(dr);
        std::size_t distance = 0;
        if (ar == 0) {
            const std::uint64_t bound = (Q - 1) * binomial(qr1 - 1, ud + 1);
            distance = dr + 1;
            ctx.computed("case", "1");
            ctx.claim("distance", num(distance), "d'+1");
            ctx.claim("count_lower_bound", num(bound), "(Q-1) binom(q^(r-1)-1, d'+1)");
        } else if (br == 0) {
            distance = dr + 1;
            ctx.computed("case", "2");
            ctx.claim("distance", num(distance), "d'+1");
            ctx.claim("count", num((Q - 1) * ((Q - 1) * binomial(qr1, ud + 1) + binomial(qr1 - 1, ud + 1))),
                      "(Q-1)[(Q-1) binom(q^(r-1), d'+1) + binom(q^(r-1)-1, d'+1)]");
        } else {
            distance = dr;
            ctx.computed("case", "3");
            ctx.claim("distance", num(distance), "d'");
            ctx.claim("count", num((Q - 1) * binomial(qr1 - 1, ud)), "(Q-1) binom(q^(r-1)-1, d')");
        }

        const LinearCode C = build_Cdab(curve, d, a, b);
        const WeightReport rep = dual_weight_search(C.generator(), search_opts(opts, distance, true, false));
        ctx.computed("n", num(C.length()));
        ctx.computed("k", num(C.dimension()));
        ctx.computed("distance", distance_str(rep));
        ctx.expect(rep.min_distance == distance, distance_witness(curve, C, rep));
        if (rep.min_distance != distance) return;
        const std::uint64_t count = rep.count(distance);
        ctx.computed("count", num(count));
        for (const auto& cl : ctx.out.claimed) {
            if (cl.name == "count")
                ctx.expect(num(count) == cl.value, "enumerated count " + num(count) + " != " + cl.value);
            if (cl.name == "count_lower_bound")
                ctx.expect(count >= std::stoull(cl.value), "enumerated count " + num(count) + " < " + cl.value);
        }
    });
}

CheckOutcome check_cdE(const Curve& curve, int d, const std::vector<Point>& E, const LabOptions& opts)
{
    return timed(curve, "cde", {{"d", d}, {"deg_E", static_cast<std::int64_t>(E.size())}}, opts, [&](Ctx& ctx) {
        require_degree_range(curve, d);
        CurveDivisor div;
        try {
            div = CurveDivisor::reduced(curve, E);
        } catch (const Error& e) {
            unsupported(std::string("E: ") + e.what());
        }
        if (div.degree() > static_cast<unsigned>(d)) unsupported("deg(E) exceeds d");
        const unsigned m = m_of_E(curve, div), mV = mV_of_E(curve, div);
        ctx.computed("m", num(m));
        ctx.computed("m_V", num(mV));
        const std::size_t lower = static_cast<std::size_t>(d) + 2 - m;
        ctx.claim("distance_lower_bound", num(lower), "d+2-m(E)");
        if (m == mV) ctx.claim("distance", num(static_cast<std::size_t>(d) + 2 - mV), "d+2-m_V(E) when m(E)=m_V(E)");

        const LinearCode C = build_CdE(curve, d, div);
        const std::size_t w = static_cast<std::size_t>(d) + 2;
        const WeightReport rep = dual_weight_search(C.generator(), search_opts(opts, w, true));
        ctx.computed("n", num(C.length()));
        ctx.computed("k", num(C.dimension()));
        ctx.computed("distance", distance_str(rep));
        if (rep.min_distance) {
            ctx.computed("count", num(rep.count(*rep.min_distance)));
            ctx.expect(*rep.min_distance >= lower, distance_witness(curve, C, rep));
        }
        if (m == mV) ctx.expect(rep.min_distance == w - mV, distance_witness(curve, C, rep));

        const std::uint64_t Q = curve.order(), qr1 = curve.q_pow_r_minus_1();
        const std::uint64_t printed = (Q - 1) * ((Q - 1) * binomial(qr1, mV) + binomial(qr1 - 1, mV));
        ctx.computed("printed_count_bound", num(printed));
        ctx.note("printed count bound (Q-1)[(Q-1) binom(q^(r-1), m_V) + binom(q^(r-1)-1, m_V)] is reported, not asserted");
    });
}

CheckOutcome check_dims(const Curve& curve, int d, int a, int b, const LabOptions& opts)
{
    return timed(curve, "dims", {{"d", d}, {"a", a}, {"b", b}}, opts, [&](Ctx& ctx) {
        const auto c = static_cast<std::int64_t>(curve.c());
        if (d <= 0 || static_cast<std::uint64_t>(d) >= curve.q()) unsupported("needs 0 < d < q");
        if (a < 0 || a > c - 1) unsupported("needs 0 <= a <= c-1");
        if (b <= 0) unsupported("needs b > 0");
        require_degree_range(curve, d);
        const std::int64_t s = d * c - a;
        std::int64_t expected = 0;
        if (b <= d) {
            expected = static_cast<std::int64_t>(riemann_roch_dim_or_zero(curve, s)) - b;
            ctx.claim("dimension", std::to_string(expected), "N(dc-a) - b");
        } else {
            expected = static_cast<std::int64_t>(riemann_roch_dim_or_zero(curve, s - c));
            ctx.claim("dimension", std::to_string(expected), "N(dc-a-c)");
        }
        const auto basis = basis_twisted(curve, d, a, b);
        const std::size_t k = basis.empty() ? 0 : build_Cdab(curve, d, a, b).dimension();
        ctx.computed("monomials", num(basis.size()));
        ctx.computed("k", num(k));
        ctx.expect(static_cast<std::int64_t>(k) == expected,
                   "rank " + num(k) + " != " + std::to_string(expected));
    });
}

CheckOutcome check_castle(const Curve& curve, std::int64_t s, const LabOptions& opts)
{
    return timed(curve, "castle", {{"s", s}}, opts, [&](Ctx& ctx) {
        const auto q = curve.q();
        std::uint64_t n = 1;
        for (std::uint32_t i = 0; i < 2 * curve.r() - 1; ++i) n *= q;
        const auto two_g_minus_2 = static_cast<std::int64_t>((curve.q_pow_r_minus_1() - 1) * (curve.c() - 1)) - 2;
        const std::int64_t t = static_cast<std::int64_t>(n) + two_g_minus_2 - s;
        const auto top = static_cast<std::int64_t>(curve.c() * curve.order());
        ctx.out.params["t"] = t;
        if (s < 0 || s > top || t < 0 || t > top)
            unsupported("s=" + std::to_string(s) + " and t=" + std::to_string(t) + " must lie in [0," +
                        std::to_string(top) + "]");
        ctx.claim("isometry", "witness", "C_s^perp = x C_t with t = n + 2g - 2 - s");
        const LinearCode Cs_perp = dual(one_point_goppa(curve, s));
        const LinearCode Ct = one_point_goppa(curve, t);
        ctx.computed("k_dual", num(Cs_perp.dimension()));
        ctx.computed("k_t", num(Ct.dimension()));
        ctx.expect(Cs_perp.dimension() == Ct.dimension(),
                   "dim C_s^perp = " + num(Cs_perp.dimension()) + " but dim C_t = " + num(Ct.dimension()));
        const IsometryResult iso = strong_isometry_witness(Cs_perp, Ct, ctx.out.seed);
        ctx.computed("isometry", to_string(iso.status));
        ctx.computed("solution_dim", num(iso.solution_dim));
        ctx.expect(iso.status == IsometryResult::Status::Found,
                   "solution space of dimension " + num(iso.solution_dim) + " has no nowhere-zero vector" +
                       (iso.exhaustive ? "" : " among sampled vectors"));
        if (iso.status == IsometryResult::Status::Found) ctx.computed("witness", witness_str(iso.witness));
    });
}

const std::vector<std::string>& check_ids()
{
    static const std::vector<std::string> ids = {"h1",     "te1",    "te2", "teo_a", "cor_one",
                                                 "reduc",  "teo_ab", "cde", "dims",  "castle"};
    return ids;
}

namespace {

std::int64_t param(const CheckRequest& req, const std::string& key)
{
    const auto it = req.params.find(key);
    if (it == req.params.end())
        throw Error(ErrorKind::InvalidArgument, "check " + req.id + " needs parameter " + key);
    return it->second;
}

int iparam(const CheckRequest& req, const std::string& key)
{
    const auto v = param(req, key);
    if (v < -1'000'000 || v > 1'000'000) throw Error(ErrorKind::OutOfRange, "parameter " + key + " out of range");
    return static_cast<int>(v);
}

}  // namespace

CheckOutcome run_check(const Curve& curve, const CheckRequest& req, const LabOptions& opts)
{
    const auto& id = req.id;
    if (id == "h1") {
        const auto it = req.params.find("trials");
        const int trials = it == req.params.end() ? 1000 : iparam(req, "trials");
        return check_lemma_h1(curve, iparam(req, "d"), trials, opts);
    }
    if (id == "te1") return check_te1(curve, iparam(req, "d"), opts);
    if (id == "te2") return check_te2(curve, iparam(req, "d"), opts);
    if (id == "teo_a") return check_teo_a(curve, iparam(req, "d"), opts);
    if (id == "cor_one") return check_cor_one(curve, param(req, "s"), opts);
    if (id == "reduc") return check_reduc(curve, iparam(req, "d"), iparam(req, "a"), iparam(req, "b"), opts);
    if (id == "teo_ab") return check_teo_ab(curve, iparam(req, "d"), iparam(req, "a"), iparam(req, "b"), opts);
    if (id == "cde") return check_cdE(curve, iparam(req, "d"), req.E, opts);
    if (id == "dims") return check_dims(curve, iparam(req, "d"), iparam(req, "a"), iparam(req, "b"), opts);
    if (id == "castle") return check_castle(curve, param(req, "s"), opts);
    throw Error(ErrorKind::InvalidArgument, "unknown check '" + id + "'");
}

std::vector<CheckOutcome> run_checks(const Curve& curve, const std::vector<CheckRequest>& requests,
                                     const LabOptions& opts)
{
    std::vector<CheckOutcome> results(requests.size());
    if (requests.empty()) return results;
    unsigned total = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
    const unsigned outer = std::min<unsigned>(total, static_cast<unsigned>(requests.size()));
    LabOptions inner = opts;
    inner.workers = std::max(1u, total / outer);

    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < outer; ++w)
        jobs.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next++; i < requests.size(); i = next++) results[i] = run_check(curve, requests[i], inner);
        }));
    for (auto& j : jobs) j.get();
    return results;
}

}  // namespace ntc
