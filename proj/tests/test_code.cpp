#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ntcodes/error.hpp"
#include "ntcodes/families.hpp"
#include "ntcodes/weight_search.hpp"

using namespace ntc;

namespace {

CurvePtr curve(std::uint32_t p) { return Curve::build(Field::build(p, 1, 3)); }

LinearCode random_code(const FieldPtr& F, std::size_t k, std::size_t n, std::mt19937_64& rng)
{
    FMatrix g(F, k, n);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < n; ++c) g.at(r, c) = Felt{static_cast<std::uint32_t>(rng() % F->order())};
    return LinearCode(g, {});
}

// Every codeword, by expanding all coefficient vectors.
std::map<std::size_t, std::uint64_t> brute_weights(const LinearCode& code)
{
    const Field& F = *code.field();
    const std::uint64_t Q = F.order();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < code.dimension(); ++i) total *= Q;
    std::map<std::size_t, std::uint64_t> out;
    for (std::uint64_t m = 1; m < total; ++m) {
        std::vector<Felt> v(code.length());
        std::uint64_t rest = m;
        for (std::size_t r = 0; r < code.dimension(); ++r, rest /= Q) {
            const Felt c{static_cast<std::uint32_t>(rest % Q)};
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = F.add(v[j], F.mul(c, code.generator().at(r, j)));
        }
        ++out[static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Felt e) { return !e.is_zero(); }))];
    }
    return out;
}

}  // namespace

TEST(LinearCode, DualIsOrthogonalComplement)
{
    const auto F = Field::build(2, 1, 3);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        const auto C = random_code(F, 1 + rng() % 5, 6 + rng() % 6, rng);
        const auto D = dual(C);
        EXPECT_EQ(C.dimension() + D.dimension(), C.length());
        EXPECT_TRUE(C.generator().multiply(D.generator().transpose()).is_zero());
        EXPECT_EQ(dual(D), C);
    }
}

TEST(LinearCode, StrongIsometryRecoversScaling)
{
    const auto F = Field::build(3, 1, 2);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 15; ++t) {
        const auto C = random_code(F, 2 + rng() % 3, 8, rng);
        std::vector<Felt> x(C.length());
        for (auto& v : x) v = Felt{static_cast<std::uint32_t>(1 + rng() % (F->order() - 1))};
        const auto D = scale_code(C, x);
        const auto res = strong_isometry_witness(D, C, 5);
        ASSERT_EQ(res.status, IsometryResult::Status::Found);
        EXPECT_EQ(scale_code(C, res.witness), D);
    }
    // A weight-changing pair cannot be strongly isometric.
    const FMatrix a = FMatrix::from_rows(F, {{Felt{1}, Felt{1}, Felt{0}}}, 3);
    const FMatrix b = FMatrix::from_rows(F, {{Felt{1}, Felt{1}, Felt{1}}}, 3);
    EXPECT_NE(strong_isometry_witness(LinearCode(a, {}), LinearCode(b, {})).status, IsometryResult::Status::Found);
    const std::vector<Felt> zero_entry{Felt{1}, Felt{0}, Felt{1}};
    EXPECT_THROW(scale_code(LinearCode(a, {}), zero_entry), Error);
}

TEST(LinearCode, EvalCodeValidation)
{
    const auto C = curve(2);
    const auto space = FunctionSpace::from_monomials(C->field_ptr(), {{0, 0}, {1, 0}}, {Point::origin()});
    const std::vector<Point> bad_inf{Point::at_infinity()};
    EXPECT_THROW(eval_code(*C, space, bad_inf), Error);
    const std::vector<Point> off{Point::affine(Felt{1}, Felt{0})};
    EXPECT_THROW(eval_code(*C, space, off), Error);
    const std::vector<Point> twist{Point::origin()};
    EXPECT_THROW(eval_code(*C, space, twist), Error);
    const auto empty = FunctionSpace::from_monomials(C->field_ptr(), {});
    EXPECT_THROW(eval_code(*C, empty, C->affine_points()), Error);

    const auto code = build_Cd(*C, 1);
    const auto shorter = drop_column(code, C->affine_points()[3]);
    EXPECT_EQ(shorter.length(), 31u);
    EXPECT_EQ(std::count(shorter.labels().begin(), shorter.labels().end(), C->affine_points()[3]), 0);
    EXPECT_THROW(drop_column(shorter, C->affine_points()[3]), Error);
}

TEST(WeightSearch, EnginesAgreeWithBruteForce)
{
    std::mt19937_64 rng(3);
    for (auto [p, r] : {std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{2u, 2u}}) {
        const auto F = Field::build(p, 1, r);
        for (int t = 0; t < 8; ++t) {
            const std::size_t n = 5 + rng() % 5, k = 1 + rng() % 3;
            const auto C = random_code(F, k, n, rng);
            const auto brute = brute_weights(C);
            const auto ex = min_distance_exhaustive(C, 2);
            SearchOptions opts;
            opts.w_max = n;
            opts.workers = 2;
            const auto ss = dual_weight_search(nullspace(C.generator()), opts);
            EXPECT_EQ(ex.counts, brute);
            EXPECT_EQ(ss.counts, brute);
            EXPECT_EQ(ex.min_distance, ss.min_distance);
            EXPECT_EQ(ex.supports, ss.supports);
        }
    }
}

TEST(WeightSearch, ExactSupportCountMatchesBrute)
{
    const auto F = Field::build(2, 1, 3);
    std::mt19937_64 rng(4);
    const auto C = random_code(F, 3, 7, rng);
    const auto H = nullspace(C.generator());
    // Words of C with support exactly S, by brute force.
    const std::uint64_t Q = 8;
    for (std::uint32_t mask = 1; mask < (1u << 7); mask += 5) {
        std::vector<std::size_t> S;
        for (std::size_t i = 0; i < 7; ++i)
            if (mask >> i & 1) S.push_back(i);
        std::uint64_t brute = 0;
        for (std::uint64_t m = 1; m < Q * Q * Q; ++m) {
            std::vector<Felt> v(7);
            std::uint64_t rest = m;
            for (std::size_t r = 0; r < 3; ++r, rest /= Q)
                for (std::size_t j = 0; j < 7; ++j)
                    v[j] = F->add(v[j], F->mul(Felt{static_cast<std::uint32_t>(rest % Q)}, C.generator().at(r, j)));
            bool ok = true;
            for (std::size_t j = 0; j < 7; ++j) ok = ok && ((mask >> j & 1) != 0) == !v[j].is_zero();
            brute += ok;
        }
        EXPECT_EQ(exact_support_count(H, S), brute) << mask;
    }
}

TEST(WeightSearch, DeterministicAcrossWorkers)
{
    const auto C = curve(2);
    const auto code = build_Cd(*C, 1);
    SearchOptions one;
    one.w_max = 4;
    one.workers = 1;
    SearchOptions many = one;
    many.workers = 4;
    auto a = dual_weight_search(code.generator(), one);
    auto b = dual_weight_search(code.generator(), many);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(a.supports, b.supports);
    EXPECT_EQ(a.subsets_visited, b.subsets_visited);
    EXPECT_EQ(a.min_distance, 3u);
    EXPECT_EQ(a.count(3), 3360u);
}

TEST(WeightSearch, ProgressAndGuards)
{
    const auto C = curve(2);
    const auto code = build_Cd(*C, 2);
    SearchOptions opts;
    opts.w_max = 4;
    opts.workers = 1;
    opts.progress_interval = 1000;
    std::uint64_t last = 0;
    int calls = 0;
    opts.progress = [&](std::uint64_t n) {
        ++calls;
        EXPECT_GE(n, last);
        last = n;
    };
    const auto rep = dual_weight_search(code.generator(), opts);
    EXPECT_GT(calls, 0);
    EXPECT_EQ(rep.min_distance, 4u);
    // Q^k = 8^26 is far beyond the exhaustive guard.
    try {
        min_distance_exhaustive(dual(code));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SizeGuard);
    }
}

TEST(WeightSearch, MinimumWeightCountsEqualPerLineSums)
{
    // A dependency of d+2 columns of C(d) is supported on a line, and each
    // such support carries Q-1 words; sum those over all lines.
    const auto C = curve(2);
    for (int d = 1; d <= 2; ++d) {
        std::uint64_t expect = 0;
        for (const auto& L : C->all_lines()) {
            const std::uint64_t m = C->line_curve_points(L).size();
            std::uint64_t b = 1;
            for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(d + 2); ++i) b = b * (m - i) / (i + 1);
            if (m >= static_cast<std::uint64_t>(d + 2)) expect += b;
        }
        expect *= 7;
        const auto code = build_Cd(*C, d);
        SearchOptions opts;
        opts.w_max = d + 2;
        opts.stop_at_min = true;
        const auto rep = dual_weight_search(code.generator(), opts);
        EXPECT_EQ(rep.count(d + 2), expect);
        for (const auto& s : classify_supports(*C, code.labels(), rep.supports)) EXPECT_TRUE(s.line.has_value());
    }
}

TEST(Families, Dimensions)
{
    const auto C = curve(2);
    EXPECT_EQ(build_Cd(*C, 1).dimension(), 3u);
    EXPECT_EQ(build_Cd(*C, 2).dimension(), 6u);
    EXPECT_EQ(build_Cd(*C, 2).length(), 32u);
    EXPECT_EQ(build_Cda(*C, 2, 1).dimension(), 5u);
    EXPECT_EQ(build_Cdab(*C, 2, 1, 2).length(), 31u);
    for (std::int64_t s = 0; s < 32; ++s) EXPECT_EQ(one_point_goppa(*C, s).dimension(), riemann_roch_dim(*C, s));

    const auto C3 = curve(3);
    const auto ex2 = build_Cdab(*C3, 2, 1, 2);
    EXPECT_EQ(ex2.dimension(), 3u);
    EXPECT_EQ(ex2.length(), 242u);
    EXPECT_EQ(std::count(ex2.labels().begin(), ex2.labels().end(), Point::origin()), 0);
}

TEST(Families, CdInsideOnePointCode)
{
    const auto C = curve(2);
    for (int d = 1; d <= 2; ++d) {
        const auto cd = build_Cd(*C, d);
        const auto onept = one_point_goppa(*C, d * 7);
        for (std::size_t r = 0; r < cd.dimension(); ++r) EXPECT_TRUE(in_row_space(onept.generator(), cd.generator().row(r)));
    }
}

TEST(Families, TwoPointCodeMatchesMonomialSpan)
{
    const auto C = curve(3);
    const Field& F = C->field();
    const auto c = static_cast<std::int64_t>(C->c()), qr1 = static_cast<std::int64_t>(C->q_pow_r_minus_1());
    for (auto [m, n] : {std::pair<std::int64_t, std::int64_t>{12, 11}, {13, 13}, {5, 1}, {20, 0}}) {
        const auto tp = two_point_goppa(*C, m, n);
        const auto& labels = tp.code.labels();
        // x^i y^l lies in L(m P_inf + n P_0) when its orders allow it.
        FMatrix g(C->field_ptr(), 0, labels.size());
        for (std::int64_t l = -3; l < qr1; ++l)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(C->order()); ++i) {
                if (i + l * c < -n || i * qr1 + l * c > m) continue;
                std::vector<Felt> row;
                for (const auto& P : labels) {
                    const Felt yl = l >= 0 ? F.pow(P.y, static_cast<std::uint64_t>(l))
                                           : F.inv(F.pow(P.y, static_cast<std::uint64_t>(-l)));
                    row.push_back(F.mul(F.pow(P.x, static_cast<std::uint64_t>(i)), yl));
                }
                g.append_row(row);
            }
        EXPECT_EQ(LinearCode(g, labels), tp.code) << m << "," << n;
    }
    EXPECT_THROW(two_point_goppa(*curve(2), 12, 11), Error);
}

TEST(Families, FamilyNames)
{
    for (auto f : {Family::Cd, Family::Cda, Family::Cdab, Family::CdE, Family::OnePoint, Family::TwoPoint})
        EXPECT_EQ(family_from_string(to_string(f)), f);
    EXPECT_THROW(family_from_string("hermitian"), Error);
    CodeFamilySpec spec;
    spec.family = Family::Cdab;
    spec.d = 2;
    spec.a = 1;
    spec.b = 2;
    EXPECT_EQ(spec.params_tag(), "d2a1b2");
    spec.family = Family::TwoPoint;
    spec.m = 12;
    spec.n = 11;
    EXPECT_EQ(spec.params_tag(), "m12n11");
}
