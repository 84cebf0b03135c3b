#include "ntcodes/function_space.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ntcodes/error.hpp"

namespace ntc {

std::uint64_t pole_order(const Curve& curve, Monomial m) noexcept
{
    return m.i * curve.q_pow_r_minus_1() + m.j * curve.c();
}

std::uint64_t origin_order(const Curve& curve, Monomial m) noexcept { return m.i + m.j * curve.c(); }

CurveDivisor::CurveDivisor(const Curve& curve, std::vector<std::pair<Point, unsigned>> parts) : parts_(std::move(parts))
{
    std::set<Point> seen;
    for (const auto& [p, mult] : parts_) {
        if (!p.is_affine()) throw Error(ErrorKind::Unsupported, "divisor: point at infinity is not supported");
        if (!curve.on_curve(p)) throw Error(ErrorKind::InvalidArgument, "divisor: point not on curve");
        if (mult == 0) throw Error(ErrorKind::InvalidArgument, "divisor: zero multiplicity");
        if (!seen.insert(p).second) throw Error(ErrorKind::InvalidArgument, "divisor: repeated support point");
    }
    std::sort(parts_.begin(), parts_.end());
}

CurveDivisor CurveDivisor::reduced(const Curve& curve, std::span<const Point> points)
{
    std::vector<std::pair<Point, unsigned>> parts;
    for (const auto& p : points) parts.emplace_back(p, 1u);
    return CurveDivisor(curve, std::move(parts));
}

unsigned CurveDivisor::degree() const noexcept
{
    unsigned d = 0;
    for (const auto& [_, m] : parts_) d += m;
    return d;
}

bool CurveDivisor::is_reduced() const noexcept
{
    return std::all_of(parts_.begin(), parts_.end(), [](const auto& pm) { return pm.second == 1; });
}

std::vector<Point> CurveDivisor::support() const
{
    std::vector<Point> out;
    for (const auto& [p, _] : parts_) out.push_back(p);
    return out;
}

bool FunctionSpace::monomially_spanned() const
{
    return coefficients.rows() == coefficients.cols() &&
           coefficients == FMatrix::identity(coefficients.field(), coefficients.rows());
}

FunctionSpace FunctionSpace::from_monomials(FieldPtr field, std::vector<Monomial> monomials,
                                            std::vector<Point> twist_support)
{
    FunctionSpace space;
    space.coefficients = FMatrix::identity(std::move(field), monomials.size());
    space.monomials = std::move(monomials);
    space.twist_support = std::move(twist_support);
    return space;
}

namespace {

void sort_by_pole(const Curve& curve, std::vector<Monomial>& ms)
{
    std::sort(ms.begin(), ms.end(),
              [&](Monomial a, Monomial b) { return pole_order(curve, a) < pole_order(curve, b); });
}

void check_s_range(const Curve& curve, std::int64_t s)
{
    const auto limit = static_cast<std::int64_t>(curve.c() * curve.order());
    if (s < 0 || s > limit)
        throw Error(ErrorKind::OutOfRange,
                    "s=" + std::to_string(s) + " outside [0, " + std::to_string(limit) + "]");
}

void check_d_range(const Curve& curve, int d)
{
    const auto bound = static_cast<std::int64_t>(curve.q_pow_r_minus_1()) - 1;
    if (d <= 0 || d >= bound)
        throw Error(ErrorKind::OutOfRange, "d=" + std::to_string(d) + " outside 0 < d < " + std::to_string(bound));
}

}  // namespace

std::vector<Monomial> basis_L_infinity(const Curve& curve, std::int64_t s)
{
    check_s_range(curve, s);
    std::vector<Monomial> out;
    const std::uint64_t qr1 = curve.q_pow_r_minus_1();
    for (std::uint64_t j = 0; j < qr1; ++j)
        for (std::uint64_t i = 0; i < curve.order(); ++i) {
            const Monomial m{static_cast<unsigned>(i), static_cast<unsigned>(j)};
            if (pole_order(curve, m) > static_cast<std::uint64_t>(s)) break;
            out.push_back(m);
        }
    sort_by_pole(curve, out);
    return out;
}

std::size_t riemann_roch_dim(const Curve& curve, std::int64_t s) { return basis_L_infinity(curve, s).size(); }

std::size_t riemann_roch_dim_or_zero(const Curve& curve, std::int64_t s)
{
    return s < 0 ? 0 : riemann_roch_dim(curve, s);
}

std::vector<Monomial> degree_monomials(const Curve& curve, int d)
{
    std::vector<Monomial> out;
    for (int j = 0; j <= d; ++j)
        for (int i = 0; i + j <= d; ++i) out.push_back(Monomial{static_cast<unsigned>(i), static_cast<unsigned>(j)});
    sort_by_pole(curve, out);
    return out;
}

std::vector<Monomial> basis_twisted(const Curve& curve, int d, int a, int b)
{
    check_d_range(curve, d);
    if (a < 0 || b < 0) throw Error(ErrorKind::OutOfRange, "twist orders must be non-negative");
    const auto top = static_cast<std::int64_t>(d) * static_cast<std::int64_t>(curve.c()) - a;
    std::vector<Monomial> out;
    for (const auto m : degree_monomials(curve, d))
        if (static_cast<std::int64_t>(pole_order(curve, m)) <= top &&
            static_cast<std::int64_t>(origin_order(curve, m)) >= b)
            out.push_back(m);
    return out;
}

FunctionSpace basis_minus_divisor(const Curve& curve, int d, const CurveDivisor& E)
{
    check_d_range(curve, d);
    if (E.degree() > static_cast<unsigned>(d))
        throw Error(ErrorKind::OutOfRange, "deg(E)=" + std::to_string(E.degree()) + " exceeds d=" + std::to_string(d));
    const Field& f = curve.field();
    const auto monomials = degree_monomials(curve, d);

    FMatrix constraints(curve.field_ptr(), 0, monomials.size());
    std::vector<Felt> row(monomials.size());
    for (const auto& [p, mult] : E.parts()) {
        const PowerSeries xs = curve.local_x(p, mult);
        const PowerSeries ys = curve.local_expansion(p, mult);
        std::vector<PowerSeries> expansions;
        for (const auto m : monomials)
            expansions.push_back(series_mul(f, series_pow(f, xs, m.i), series_pow(f, ys, m.j)));
        for (unsigned k = 0; k < mult; ++k) {
            for (std::size_t t = 0; t < monomials.size(); ++t) row[t] = expansions[t].coeffs[k];
            constraints.append_row(row);
        }
    }

    FunctionSpace space;
    space.monomials = monomials;
    space.coefficients = E.empty() ? FMatrix::identity(curve.field_ptr(), monomials.size()) : nullspace(constraints);
    space.twist_support = E.support();
    return space;
}

TwoPointReduction two_point_reduce(const Curve& curve, std::int64_t m, std::int64_t n)
{
    if (m < 0 || n < 0) throw Error(ErrorKind::Unsupported, "two-point divisors need m, n >= 0");
    if (m + n <= 0) throw Error(ErrorKind::InvalidArgument, "two-point divisor needs m + n > 0");
    const auto c = static_cast<std::int64_t>(curve.c());
    TwoPointReduction red;
    red.d1 = static_cast<int>((m + c - 1) / c);
    red.a = static_cast<int>(red.d1 * c - m);
    red.d2 = static_cast<int>((n + c - 1) / c);
    red.b = static_cast<int>(red.d2 * c - n);
    red.d = red.d1 + red.d2;
    return red;
}

namespace {

void require_reduced(const CurveDivisor& E)
{
    if (!E.is_reduced()) throw Error(ErrorKind::Unsupported, "m(E) is only defined here for reduced E");
}

}  // namespace

unsigned m_of_E(const Curve& curve, const CurveDivisor& E)
{
    require_reduced(E);
    const auto pts = E.support();
    if (pts.empty()) return 0;
    // Every affine point lies on a vertical line, which belongs to the family.
    unsigned best = 1;
    const Field& f = curve.field();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const ProjLine line = curve.line_through(pts[i], pts[j]);
            const bool excluded = (line.a.is_zero() && line.c.is_zero()) ||  // y = 0
                                  line.line_class() == LineClass::AtInfinity;
            if (excluded) continue;
            const auto count = std::count_if(pts.begin(), pts.end(), [&](const Point& p) { return line.contains(f, p); });
            best = std::max(best, static_cast<unsigned>(count));
        }
    return best;
}

unsigned mV_of_E(const Curve& /*curve*/, const CurveDivisor& E)
{
    require_reduced(E);
    std::map<Felt, unsigned> per_x;
    unsigned best = 0;
    for (const auto& p : E.support()) best = std::max(best, ++per_x[p.x]);
    return best;
}

}  // namespace ntc
