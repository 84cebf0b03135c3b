// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. Pass --extended to run criterion 10.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ntcodes/families.hpp"
#include "ntcodes/function_space.hpp"
#include "ntcodes/matrix.hpp"
#include "ntcodes/theorem_lab.hpp"
#include "ntcodes/weight_search.hpp"

using namespace ntc;

namespace {

/// Collects sub-check failures for one criterion.
struct Tally {
    std::vector<std::string> failures;
    std::string summary;

    void expect(bool ok, const std::string& what)
    {
        if (!ok) failures.push_back(what);
    }
};

struct Criterion {
    int id;
    std::string title;
    double budget_s;
    std::function<void(Tally&)> body;
};

std::string str(std::uint64_t v) { return std::to_string(v); }

WeightReport dual_weights(const LinearCode& code, std::size_t w_max, bool supports = false)
{
    SearchOptions o;
    o.w_max = w_max;
    o.collect_supports = supports;
    return dual_weight_search(code.generator(), o);
}

std::string distance_str(const WeightReport& r) { return r.min_distance ? str(*r.min_distance) : "none"; }

const Curve& curve_q2()
{
    static const auto C = Curve::build(Field::build(2, 1, 3));
    return *C;
}

const Curve& curve_q3()
{
    static const auto C = Curve::build(Field::build(3, 1, 3));
    return *C;
}

void example_one(Tally& t)
{
    const auto& C = curve_q2();
    const auto two = dual_weights(build_Cd(C, 2), 4);
    t.expect(two.min_distance == 4u, "C(2) dual distance " + distance_str(two) + ", expected 4");
    const auto one = dual_weights(build_Cd(C, 1), 3);
    t.expect(one.min_distance == 3u, "C(1) dual distance " + distance_str(one) + ", expected 3");
    t.expect(one.count(3) == 3360, "C(1) dual weight-3 count " + str(one.count(3)) + ", expected 3360");
    t.summary = "d(C(2)^) = " + distance_str(two) + ", d(C(1)^) = " + distance_str(one) + " with " + str(one.count(3)) +
                " words";
}

void example_two(Tally& t)
{
    const auto& C = curve_q3();
    const auto basis = basis_twisted(C, 2, 1, 2);
    std::set<std::pair<unsigned, unsigned>> got;
    for (const auto& m : basis) got.insert({m.i, m.j});
    t.expect(got == std::set<std::pair<unsigned, unsigned>>{{0, 1}, {1, 1}, {2, 0}}, "basis is not {y, xy, x^2}");
    const auto code = build_Cdab(C, 2, 1, 2);
    t.expect(code.length() == 241, "n = " + str(code.length()) + ", expected 241");
    t.expect(code.dimension() == 3, "k = " + str(code.dimension()) + ", expected 3");
    const auto w = dual_weights(code, 2);
    t.expect(w.min_distance == 2u, "dual distance " + distance_str(w) + ", expected 2");
    t.expect(w.count(2) == 728, "weight-2 count " + str(w.count(2)) + ", expected 728");
    t.summary = "n = " + str(code.length()) + ", k = " + str(code.dimension()) + ", dual distance " + distance_str(w) +
                " with " + str(w.count(2)) + " words";
}

void vanishing_at_infinity(Tally& t)
{
    const auto& C = curve_q2();
    const std::uint64_t Q = 8, qr1 = 4;
    for (int d = 1; d <= 2; ++d) {
        const auto w = dual_weights(build_Cda(C, d, 1), static_cast<std::size_t>(d + 1));
        const std::uint64_t want = (Q - 1) * Q * binomial(qr1, static_cast<std::uint64_t>(d + 1));
        t.expect(w.min_distance == static_cast<std::size_t>(d + 1), "d=" + std::to_string(d) + " distance " + distance_str(w));
        t.expect(w.count(d + 1) == want, "d=" + std::to_string(d) + " count " + str(w.count(d + 1)) + ", expected " + str(want));
        t.summary += (d == 1 ? "" : ", ") + std::string("d=") + std::to_string(d) + ": " + str(w.count(d + 1));
    }
}

std::string verdict_note(const CheckOutcome& o)
{
    std::ostringstream os;
    os << o.id << "(d=" << o.params.at("d") << ",a=" << o.params.at("a") << ",b=" << o.params.at("b") << ")";
    if (!o.witnesses.empty()) os << ": " << o.witnesses.front();
    return os.str();
}

void two_point_cases(Tally& t)
{
    const auto& C = curve_q2();
    std::vector<CheckRequest> reqs;
    for (std::int64_t d = 1; d <= 2; ++d)
        for (std::int64_t a = 0; a <= 1; ++a)
            for (std::int64_t b = 0; b <= 6; ++b) reqs.push_back({"teo_ab", {{"d", d}, {"a", a}, {"b", b}}, {}});
    const auto out = run_checks(C, reqs);
    std::size_t pass = 0, unsupported = 0;
    for (const auto& o : out) {
        pass += o.verdict == Verdict::Pass;
        unsupported += o.verdict == Verdict::Unsupported;
        t.expect(o.verdict != Verdict::Fail, verdict_note(o));
    }
    // Out of scope: a = 0 with b = 0 or b > d (reduces to (0, 0)), and d = 1, b > 1 (reduces to degree 0).
    t.expect(unsupported == 16, str(unsupported) + " grid points out of scope, expected 16");
    t.summary = str(pass) + " pass, " + str(unsupported) + " out of scope";
}

void dimension_law(Tally& t)
{
    std::size_t total = 0;
    for (const Curve* C : {&curve_q2(), &curve_q3()}) {
        const int q = static_cast<int>(C->q()), c = static_cast<int>(C->c());
        std::vector<CheckRequest> reqs;
        for (std::int64_t d = 1; d < q; ++d)
            for (std::int64_t a = 0; a <= c - 1; ++a)
                for (std::int64_t b = 1; b <= c - 1; ++b) reqs.push_back({"dims", {{"d", d}, {"a", a}, {"b", b}}, {}});
        for (const auto& o : run_checks(*C, reqs)) t.expect(o.verdict == Verdict::Pass, "q=" + std::to_string(q) + " " + verdict_note(o));
        total += reqs.size();
    }
    t.summary = str(total) + " (q,d,a,b) cases";
}

void reduction(Tally& t)
{
    std::vector<CheckRequest> reqs;
    for (std::int64_t a = 0; a <= 1; ++a)
        for (std::int64_t b = 3; b <= 6; ++b) reqs.push_back({"reduc", {{"d", 2}, {"a", a}, {"b", b}}, {}});
    for (const auto& o : run_checks(curve_q2(), reqs)) t.expect(o.verdict == Verdict::Pass, verdict_note(o));
    t.summary = str(reqs.size()) + " cases with b > d > 1";
}

void h1_lemma(Tally& t)
{
    LabOptions o;
    o.seed = 20240601;
    for (int d = 1; d <= 3; ++d) {
        const auto out = check_lemma_h1(curve_q2(), d, 1000, o);
        t.expect(out.verdict == Verdict::Pass,
                 "d=" + std::to_string(d) + (out.witnesses.empty() ? "" : ": " + out.witnesses.front()));
    }
    t.summary = "3000 part-(a) and 3000 part-(b) sets, seed " + str(o.seed);
}

void engine_cross_validation(Tally& t)
{
    const auto& C = curve_q2();
    const auto F = C.field_ptr();
    const auto op = one_point_goppa(C, 20);
    const auto& big = op.generator();
    std::mt19937_64 rng(8);
    std::size_t discrepancies = 0;
    for (int trial = 0; trial < 20; ++trial) {
        // A random k-dimensional subcode of a one-point code, punctured to n columns.
        const std::size_t n = 12 + rng() % 9;
        std::vector<std::size_t> cols(big.cols());
        for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
        std::shuffle(cols.begin(), cols.end(), rng);
        cols.resize(n);
        std::sort(cols.begin(), cols.end());
        const FMatrix punct = big.select_columns(cols);
        const std::size_t k = 2 + rng() % 7;
        FMatrix mix(F, k, punct.rows());
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < punct.rows(); ++j) mix.at(i, j) = Felt{static_cast<std::uint32_t>(rng() % 8)};
        const FMatrix G = rref(mix.multiply(punct)).reduced;
        if (G.rows() == 0) {
            --trial;
            continue;
        }
        std::vector<Point> labels;
        for (auto i : cols) labels.push_back(op.labels()[i]);
        const LinearCode code(G, labels);
        const auto ex = min_distance_exhaustive(code, 0, false);
        SearchOptions so;
        so.w_max = 5;
        so.collect_supports = false;
        const auto ss = dual_weight_search(nullspace(G), so);
        bool same = true;
        for (std::size_t w = 1; w <= 5; ++w) same = same && ex.count(w) == ss.count(w);
        const auto ex_d = ex.min_distance && *ex.min_distance <= 5 ? ex.min_distance : std::nullopt;
        same = same && ex_d == ss.min_distance;
        if (!same) {
            ++discrepancies;
            t.expect(false, "trial " + std::to_string(trial) + " (n=" + str(n) + ", k=" + str(G.rows()) + ")");
        }
    }
    t.summary = "20 subcodes, " + str(discrepancies) + " discrepancies";
}

void support_geometry(Tally& t)
{
    const auto& C = curve_q2();
    const auto& pts = C.affine_points();
    std::size_t seen = 0;
    for (int d = 1; d <= 2; ++d) {
        const auto code = build_Cd(C, d);
        for (const auto& s : min_weight_supports(C, code.generator(), pts, static_cast<std::size_t>(d + 2))) {
            ++seen;
            t.expect(s.line.has_value(), "C(" + std::to_string(d) + ") support not collinear");
            if (d == 2 && s.line)
                t.expect(s.line->line_class() != LineClass::Horizontal, "C(2) dual has a horizontal support");
        }
        const auto cda = build_Cda(C, d, 1);
        for (const auto& s : min_weight_supports(C, cda.generator(), pts, static_cast<std::size_t>(d + 1))) {
            ++seen;
            t.expect(s.line && s.line->line_class() == LineClass::Vertical,
                     "C(" + std::to_string(d) + ",1) support not vertical");
        }
    }
    // Repeated messages collapse to one line each.
    std::vector<std::string> unique;
    std::size_t horizontal = 0;
    for (const auto& f : t.failures) {
        horizontal += f == "C(2) dual has a horizontal support";
        if (std::find(unique.begin(), unique.end(), f) == unique.end()) unique.push_back(f);
    }
    t.failures = unique;
    t.summary = str(seen) + " supports, " + str(horizontal) + " horizontal in C(2) dual";
}

void extended_run(Tally& t)
{
    const auto& C = curve_q3();
    const std::uint64_t Q = C.field().order();
    std::uint64_t want = 0;
    for (const auto& L : C.all_lines()) want += (Q - 1) * binomial(C.line_curve_points(L).size(), 4);
    const auto w = dual_weights(build_Cd(C, 2), 4);
    t.expect(w.searched_up_to == 4, "search stopped at weight " + str(w.searched_up_to));
    t.expect(w.count(4) == want, "weight-4 count " + str(w.count(4)) + ", per-line count " + str(want));
    t.summary = str(w.subsets_visited) + " subsets, weight-4 count " + str(w.count(4));
}

}  // namespace

int main(int argc, char** argv)
{
    bool extended = false;
    for (int i = 1; i < argc; ++i) extended = extended || std::string(argv[i]) == "--extended";

    const std::vector<Criterion> criteria{
        {1, "example q=2: C(2) and C(1) dual distances", 10, example_one},
        {2, "example q=3: twisted code (2,1,2)", 60, example_two},
        {3, "exact count for vanishing at infinity", 10, vanishing_at_infinity},
        {4, "two-point cases over the grid", 120, two_point_cases},
        {5, "dimension law", 30, dimension_law},
        {6, "strong-isometry reduction", 60, reduction},
        {7, "h1 biconditional", 30, h1_lemma},
        {8, "engine cross-validation", 60, engine_cross_validation},
        {9, "geometric support laws", 10, support_geometry},
        {10, "extended q=3 weight-4 consistency [optional]", 1800, extended_run},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        if (c.id == 10 && !extended) {
            std::printf("SKIPPED criterion 10: %s (run with --extended)\n", c.title.c_str());
            continue;
        }
        Tally t;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(t);
        } catch (const std::exception& e) {
            t.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) t.failures.push_back("took " + std::to_string(secs) + " s, budget " + std::to_string(c.budget_s) + " s");
        const bool ok = t.failures.empty();
        failed += !ok;
        std::printf("%s criterion %d: %s (%.2f s) %s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs, t.summary.c_str());
        for (const auto& f : t.failures) std::printf("    %s\n", f.c_str());
        std::fflush(stdout);
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
