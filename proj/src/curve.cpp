#include "ntcodes/curve.hpp"

#include <algorithm>
#include <sstream>

#include "ntcodes/error.hpp"

namespace ntc {

std::string to_string(LineClass cls)
{
    switch (cls) {
        case LineClass::Vertical: return "vertical";
        case LineClass::Horizontal: return "horizontal";
        case LineClass::AtInfinity: return "infinity";
        case LineClass::Slanted: return "slanted";
    }
    return "unknown";
}

ProjLine ProjLine::normalized(const Field& field, Felt a, Felt b, Felt c)
{
    Felt lead{};
    if (!a.is_zero())
        lead = a;
    else if (!b.is_zero())
        lead = b;
    else if (!c.is_zero())
        lead = c;
    else
        throw Error(ErrorKind::InvalidArgument, "line coefficients are all zero");
    const Felt inv = field.inv(lead);
    return ProjLine{field.mul(a, inv), field.mul(b, inv), field.mul(c, inv)};
}

bool ProjLine::contains(const Field& field, const Point& p) const noexcept
{
    const auto h = p.homogeneous();
    const Felt s = field.add(field.add(field.mul(a, h[0]), field.mul(b, h[1])), field.mul(c, h[2]));
    return s.is_zero();
}

std::string ProjLine::to_string() const
{
    std::ostringstream os;
    os << a.index << ',' << b.index << ',' << c.index;
    return os.str();
}

std::optional<std::size_t> PowerSeries::order() const noexcept
{
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (!coeffs[i].is_zero()) return i;
    return std::nullopt;
}

PowerSeries series_mul(const Field& field, const PowerSeries& a, const PowerSeries& b)
{
    const std::size_t k = std::min(a.precision(), b.precision());
    PowerSeries out{std::vector<Felt>(k)};
    for (std::size_t i = 0; i < k; ++i) {
        if (a.coeffs[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < k; ++j)
            out.coeffs[i + j] = field.add(out.coeffs[i + j], field.mul(a.coeffs[i], b.coeffs[j]));
    }
    return out;
}

PowerSeries series_add(const Field& field, const PowerSeries& a, const PowerSeries& b)
{
    const std::size_t k = std::min(a.precision(), b.precision());
    PowerSeries out{std::vector<Felt>(k)};
    for (std::size_t i = 0; i < k; ++i) out.coeffs[i] = field.add(a.coeffs[i], b.coeffs[i]);
    return out;
}

PowerSeries series_pow(const Field& field, const PowerSeries& a, std::uint64_t k)
{
    PowerSeries result{std::vector<Felt>(a.precision())};
    if (!result.coeffs.empty()) result.coeffs[0] = field.one();
    PowerSeries base = a;
    while (k) {
        if (k & 1) result = series_mul(field, result, base);
        k >>= 1;
        if (k) base = series_mul(field, base, base);
    }
    return result;
}

BivariatePoly BivariatePoly::monomial(unsigned i, unsigned j, Felt coeff)
{
    BivariatePoly f;
    if (!coeff.is_zero()) f.terms[{i, j}] = coeff;
    return f;
}

bool BivariatePoly::is_zero() const noexcept
{
    for (const auto& [_, v] : terms)
        if (!v.is_zero()) return false;
    return true;
}

Felt BivariatePoly::evaluate(const Field& field, Felt x, Felt y) const
{
    Felt sum{};
    for (const auto& [ij, coef] : terms)
        sum = field.add(sum, field.mul(coef, field.mul(field.pow(x, ij.first), field.pow(y, ij.second))));
    return sum;
}

BivariatePoly poly_mul(const Field& field, const BivariatePoly& f, const BivariatePoly& g)
{
    BivariatePoly out;
    for (const auto& [a, ca] : f.terms)
        for (const auto& [b, cb] : g.terms) {
            auto& slot = out.terms[{a.first + b.first, a.second + b.second}];
            slot = field.add(slot, field.mul(ca, cb));
        }
    std::erase_if(out.terms, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

std::shared_ptr<const Curve> Curve::build(FieldPtr field)
{
    if (!field) throw Error(ErrorKind::InvalidArgument, "curve_build: null field");
    std::shared_ptr<Curve> curve(new Curve());
    curve->field_ = std::move(field);
    const Field& f = *curve->field_;
    curve->points_.reserve(f.order() * curve->q_pow_r_minus_1());
    for (std::uint64_t xi = 0; xi < f.order(); ++xi) {
        const Felt x{static_cast<std::uint32_t>(xi)};
        for (Felt y : f.trace_fiber(f.norm(x))) curve->points_.push_back(Point::affine(x, y));
    }
    return curve;
}

std::optional<std::size_t> Curve::index_of(const Point& p) const
{
    if (!p.is_affine()) return std::nullopt;
    const auto it = std::lower_bound(points_.begin(), points_.end(), p);
    if (it == points_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
}

bool Curve::on_curve(const Point& p) const noexcept
{
    if (!p.is_affine()) return true;
    return field_->norm(p.x) == field_->trace(p.y);
}

ProjLine Curve::tangent_line(const Point& p) const
{
    if (!p.is_affine()) throw Error(ErrorKind::InvalidArgument, "tangent_line: point at infinity is singular");
    const Field& f = *field_;
    // F(x,y,z) = x^c - sum_i y^(q^i) z^(c - q^i); gradient at (x0 : y0 : 1),
    // with integer multipliers reduced mod p.
    const std::uint64_t cc = c();
    const Felt fx = f.mul(f.from_int(static_cast<std::int64_t>(cc % f.characteristic())), f.pow(p.x, cc - 1));
    Felt fy{}, fz{};
    std::uint64_t qi = 1;
    for (std::uint32_t i = 0; i < r(); ++i) {
        const Felt mult_y = f.from_int(static_cast<std::int64_t>(qi % f.characteristic()));
        const Felt mult_z = f.from_int(static_cast<std::int64_t>((cc - qi) % f.characteristic()));
        fy = f.sub(fy, f.mul(mult_y, f.pow(p.y, qi - 1)));
        fz = f.sub(fz, f.mul(mult_z, f.pow(p.y, qi)));
        qi *= q();
    }
    return ProjLine::normalized(f, fx, fy, fz);
}

ProjLine Curve::line_through(const Point& p, const Point& q) const
{
    if (p == q) throw Error(ErrorKind::InvalidArgument, "line_through: identical points");
    const Field& f = *field_;
    const auto u = p.homogeneous(), v = q.homogeneous();
    const Felt a = f.sub(f.mul(u[1], v[2]), f.mul(u[2], v[1]));
    const Felt b = f.sub(f.mul(u[2], v[0]), f.mul(u[0], v[2]));
    const Felt c = f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0]));
    return ProjLine::normalized(f, a, b, c);
}

std::optional<ProjLine> Curve::collinear(std::span<const Point> pts) const
{
    if (pts.size() < 2) throw Error(ErrorKind::InvalidArgument, "collinear: need at least two points");
    std::size_t other = 1;
    while (other < pts.size() && pts[other] == pts[0]) ++other;
    if (other == pts.size()) throw Error(ErrorKind::InvalidArgument, "collinear: all points coincide");
    const ProjLine line = line_through(pts[0], pts[other]);
    for (const auto& p : pts)
        if (!line.contains(*field_, p)) return std::nullopt;
    return line;
}

std::vector<Point> Curve::line_curve_points(const ProjLine& line) const
{
    const Field& f = *field_;
    std::vector<Point> out;
    switch (line.line_class()) {
        case LineClass::AtInfinity: return out;
        case LineClass::Vertical: {
            const Felt x = f.neg(line.c);
            for (Felt y : f.trace_fiber(f.norm(x))) out.push_back(Point::affine(x, y));
            return out;
        }
        default: {
            const Felt binv = f.inv(line.b);
            for (std::uint64_t xi = 0; xi < f.order(); ++xi) {
                const Felt x{static_cast<std::uint32_t>(xi)};
                const Felt y = f.neg(f.mul(f.add(f.mul(line.a, x), line.c), binv));
                const Point p = Point::affine(x, y);
                if (on_curve(p)) out.push_back(p);
            }
            return out;
        }
    }
}

std::vector<ProjLine> Curve::all_lines() const { return plane_lines(*field_); }

std::vector<ProjLine> plane_lines(const Field& f)
{
    const std::uint64_t n = f.order();
    std::vector<ProjLine> out;
    out.reserve(n * n + n + 1);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(ProjLine{f.one(), Felt{}, Felt{static_cast<std::uint32_t>(i)}});
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(ProjLine{Felt{}, f.one(), Felt{static_cast<std::uint32_t>(i)}});
    for (std::uint64_t b = 1; b < n; ++b)
        for (std::uint64_t c = 0; c < n; ++c)
            out.push_back(ProjLine{f.one(), Felt{static_cast<std::uint32_t>(b)}, Felt{static_cast<std::uint32_t>(c)}});
    out.push_back(ProjLine{Felt{}, Felt{}, f.one()});
    return out;
}

PowerSeries Curve::local_x(const Point& p, std::size_t k) const
{
    if (!p.is_affine()) throw Error(ErrorKind::InvalidArgument, "local_x: point at infinity");
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "local_x: precision must be positive");
    PowerSeries x{std::vector<Felt>(k)};
    x.coeffs[0] = p.x;
    if (k > 1) x.coeffs[1] = field_->one();
    return x;
}

PowerSeries Curve::local_expansion(const Point& p, std::size_t k) const
{
    if (!p.is_affine()) throw Error(ErrorKind::InvalidArgument, "local_expansion: point at infinity");
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "local_expansion: precision must be positive");
    if (!on_curve(p)) throw Error(ErrorKind::InvalidArgument, "local_expansion: point not on curve");
    const Field& f = *field_;
    const PowerSeries norm = series_pow(f, local_x(p, k), c());

    // Tr(y0 + u) = Tr(y0) + sum_i u^(q^i) and u^(q^i) = sum_l u_l^(q^i) t^(l q^i),
    // so the t^m coefficient is u_m plus Frobenius images of earlier terms.
    PowerSeries y{std::vector<Felt>(k)};
    y.coeffs[0] = p.y;
    for (std::size_t m = 1; m < k; ++m) {
        Felt s = norm.coeffs[m];
        std::uint64_t qi = q();
        for (std::uint32_t i = 1; i < r() && qi <= m; ++i, qi *= q())
            if (m % qi == 0) s = f.sub(s, f.pow(y.coeffs[m / qi], qi));
        y.coeffs[m] = s;
    }
    return y;
}

VanishingOrder Curve::vanishing_order(const BivariatePoly& f, const Point& p, std::size_t cap) const
{
    if (f.is_zero()) throw Error(ErrorKind::InvalidArgument, "vanishing_order: zero polynomial");
    if (cap == 0) throw Error(ErrorKind::InvalidArgument, "vanishing_order: cap must be positive");
    const Field& fld = *field_;
    const PowerSeries xs = local_x(p, cap);
    const PowerSeries ys = local_expansion(p, cap);
    PowerSeries total{std::vector<Felt>(cap)};
    for (const auto& [ij, coef] : f.terms) {
        PowerSeries term = series_mul(fld, series_pow(fld, xs, ij.first), series_pow(fld, ys, ij.second));
        for (auto& v : term.coeffs) v = fld.mul(v, coef);
        total = series_add(fld, total, term);
    }
    if (const auto ord = total.order()) return VanishingOrder{*ord, false};
    return VanishingOrder{cap, true};
}

}  // namespace ntc
