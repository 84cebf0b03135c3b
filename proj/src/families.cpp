#include "ntcodes/families.hpp"

#include <algorithm>
#include <sstream>

#include "ntcodes/error.hpp"

namespace ntc {

std::string to_string(Family family)
{
    switch (family) {
        case Family::Cd: return "cd";
        case Family::Cda: return "cda";
        case Family::Cdab: return "cdab";
        case Family::CdE: return "cde";
        case Family::OnePoint: return "onepoint";
        case Family::TwoPoint: return "twopoint";
    }
    return "unknown";
}

Family family_from_string(const std::string& name)
{
    for (auto f : {Family::Cd, Family::Cda, Family::Cdab, Family::CdE, Family::OnePoint, Family::TwoPoint})
        if (to_string(f) == name) return f;
    throw Error(ErrorKind::InvalidArgument, "unknown code family '" + name + "'");
}

std::string CodeFamilySpec::params_tag() const
{
    std::ostringstream os;
    switch (family) {
        case Family::Cd: os << 'd' << d; break;
        case Family::Cda: os << 'd' << d << 'a' << a; break;
        case Family::Cdab: os << 'd' << d << 'a' << a << 'b' << b; break;
        case Family::CdE:
            os << 'd' << d << 'E';
            for (std::size_t i = 0; i < E.size(); ++i) os << (i ? "_" : "") << E[i].x.index << '.' << E[i].y.index;
            break;
        case Family::OnePoint: os << 's' << s; break;
        case Family::TwoPoint: os << 'm' << m << 'n' << n; break;
    }
    return os.str();
}

std::vector<Point> points_without(const Curve& curve, std::span<const Point> removed)
{
    std::vector<Point> out;
    out.reserve(curve.affine_points().size());
    for (const auto& p : curve.affine_points())
        if (std::find(removed.begin(), removed.end(), p) == removed.end()) out.push_back(p);
    return out;
}

namespace {

LinearCode eval_monomials(const Curve& curve, std::vector<Monomial> basis, std::span<const Point> points,
                          std::vector<Point> twist_support = {})
{
    const auto space = FunctionSpace::from_monomials(curve.field_ptr(), std::move(basis), std::move(twist_support));
    return eval_code(curve, space, points);
}

}  // namespace

LinearCode build_Cd(const Curve& curve, int d) { return build_Cda(curve, d, 0); }

LinearCode build_Cda(const Curve& curve, int d, int a)
{
    return eval_monomials(curve, basis_twisted(curve, d, a, 0), curve.affine_points());
}

LinearCode build_Cdab(const Curve& curve, int d, int a, int b)
{
    const Point origin = Point::origin();
    const auto points = points_without(curve, std::span<const Point>(&origin, 1));
    std::vector<Point> support;
    if (b > 0) support.push_back(origin);
    return eval_monomials(curve, basis_twisted(curve, d, a, b), points, std::move(support));
}

LinearCode build_CdE(const Curve& curve, int d, const CurveDivisor& E)
{
    const auto support = E.support();
    return eval_code(curve, basis_minus_divisor(curve, d, E), points_without(curve, support));
}

LinearCode one_point_goppa(const Curve& curve, std::int64_t s)
{
    return eval_monomials(curve, basis_L_infinity(curve, s), curve.affine_points());
}

TwoPointCode two_point_goppa(const Curve& curve, std::int64_t m, std::int64_t n)
{
    const TwoPointReduction red = two_point_reduce(curve, m, n);
    if (red.d >= static_cast<int>(curve.q()))
        throw Error(ErrorKind::Unsupported, "two-point code with reduced d=" + std::to_string(red.d) +
                                                " >= q is outside the validated regime");
    const LinearCode base = build_Cdab(curve, red.d, red.a, red.b);
    const Field& f = curve.field();
    TwoPointCode out;
    out.reduction = red;
    out.witness.reserve(base.length());
    for (const auto& p : base.labels()) out.witness.push_back(f.inv(f.pow(p.y, static_cast<std::uint64_t>(red.d2))));
    out.code = scale_code(base, out.witness);
    return out;
}

LinearCode build_code(const Curve& curve, const CodeFamilySpec& spec)
{
    switch (spec.family) {
        case Family::Cd: return build_Cd(curve, spec.d);
        case Family::Cda: return build_Cda(curve, spec.d, spec.a);
        case Family::Cdab: return build_Cdab(curve, spec.d, spec.a, spec.b);
        case Family::CdE: return build_CdE(curve, spec.d, CurveDivisor::reduced(curve, spec.E));
        case Family::OnePoint: return one_point_goppa(curve, spec.s);
        case Family::TwoPoint: return two_point_goppa(curve, spec.m, spec.n).code;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown family");
}

}  // namespace ntc
