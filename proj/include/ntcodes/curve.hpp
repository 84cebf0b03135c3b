#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ntcodes/field.hpp"

namespace ntc {

/// Rational point of the plane curve: either affine (x, y) or the point at
/// infinity (0:1:0).
struct Point {
    bool infinity = false;
    Felt x{};
    Felt y{};

    static constexpr Point affine(Felt x, Felt y) noexcept { return Point{false, x, y}; }
    static constexpr Point at_infinity() noexcept { return Point{true, Felt{}, Felt{}}; }
    static constexpr Point origin() noexcept { return Point{false, Felt{0}, Felt{0}}; }

    constexpr bool is_affine() const noexcept { return !infinity; }
    /// Homogeneous coordinates (x : y : z).
    std::array<Felt, 3> homogeneous() const noexcept
    {
        if (infinity) return {Felt{0}, Felt{1}, Felt{0}};
        return {x, y, Felt{1}};
    }

    constexpr auto operator<=>(const Point&) const = default;
};

enum class LineClass { Vertical, Horizontal, AtInfinity, Slanted };

std::string to_string(LineClass cls);

/// Projective line a x + b y + c z = 0, normalized so that the first nonzero
/// coefficient is 1.
struct ProjLine {
    Felt a{};
    Felt b{};
    Felt c{};

    /// Throws if all three coefficients vanish.
    static ProjLine normalized(const Field& field, Felt a, Felt b, Felt c);

    LineClass line_class() const noexcept
    {
        if (a.is_zero() && b.is_zero()) return LineClass::AtInfinity;
        if (b.is_zero()) return LineClass::Vertical;
        if (a.is_zero()) return LineClass::Horizontal;
        return LineClass::Slanted;
    }
    bool contains(const Field& field, const Point& p) const noexcept;
    /// Coefficient indices as "a,b,c".
    std::string to_string() const;

    constexpr auto operator<=>(const ProjLine&) const = default;
};

/// Every line of P^2 over the field: vertical, horizontal, slanted, then z = 0.
std::vector<ProjLine> plane_lines(const Field& field);

/// Truncated power series in a local parameter t; coeffs[k] multiplies t^k.
struct PowerSeries {
    std::vector<Felt> coeffs;

    std::size_t precision() const noexcept { return coeffs.size(); }
    /// Index of the first nonzero coefficient, or nullopt if all vanish.
    std::optional<std::size_t> order() const noexcept;
};

PowerSeries series_mul(const Field& field, const PowerSeries& a, const PowerSeries& b);
PowerSeries series_add(const Field& field, const PowerSeries& a, const PowerSeries& b);
PowerSeries series_pow(const Field& field, const PowerSeries& a, std::uint64_t k);

/// Polynomial in x and y; key (i, j) holds the coefficient of x^i y^j.
struct BivariatePoly {
    std::map<std::pair<unsigned, unsigned>, Felt> terms;

    static BivariatePoly monomial(unsigned i, unsigned j, Felt coeff = Felt{1});
    bool is_zero() const noexcept;
    Felt evaluate(const Field& field, Felt x, Felt y) const;
};

BivariatePoly poly_mul(const Field& field, const BivariatePoly& f, const BivariatePoly& g);

/// Result of an order-of-vanishing query. When `at_least` is set, the true
/// order is >= value (the truncation cap was reached).
struct VanishingOrder {
    std::size_t value = 0;
    bool at_least = false;

    constexpr auto operator<=>(const VanishingOrder&) const = default;
};

/// The norm-trace curve N(x) = Tr(y) over GF(q^r).
///
/// Affine points are enumerated once at build time, ordered by
/// (index(x), index(y)). The point at infinity is kept out of that list.
class Curve {
public:
    static std::shared_ptr<const Curve> build(FieldPtr field);

    const FieldPtr& field_ptr() const noexcept { return field_; }
    const Field& field() const noexcept { return *field_; }
    std::uint64_t q() const noexcept { return field_->q(); }
    std::uint32_t r() const noexcept { return field_->r(); }
    std::uint64_t order() const noexcept { return field_->order(); }
    /// Degree of the curve, (q^r - 1)/(q - 1).
    std::uint64_t c() const noexcept { return field_->norm_exponent(); }
    /// q^(r-1): the x-generator of the Weierstrass semigroup at infinity.
    std::uint64_t q_pow_r_minus_1() const noexcept { return field_->order() / field_->q(); }
    std::uint64_t genus() const noexcept { return (q_pow_r_minus_1() - 1) * (c() - 1) / 2; }

    const std::vector<Point>& affine_points() const noexcept { return points_; }
    /// Position of an affine point in affine_points(), or nullopt.
    std::optional<std::size_t> index_of(const Point& p) const;

    bool on_curve(const Point& p) const noexcept;
    /// Throws for the point at infinity.
    ProjLine tangent_line(const Point& p) const;
    /// Throws if p == q.
    ProjLine line_through(const Point& p, const Point& q) const;
    /// The common line of the points, or nullopt if they are not collinear.
    /// Throws if fewer than two points are given or all coincide.
    std::optional<ProjLine> collinear(std::span<const Point> pts) const;
    /// Affine rational points of the curve on the line (z = 0 gives none).
    std::vector<Point> line_curve_points(const ProjLine& line) const;
    /// Every line of P^2(GF(q^r)): vertical, horizontal, slanted, then z = 0.
    std::vector<ProjLine> all_lines() const;

    /// y(t) with x = x0 + t, solving Tr(y(t)) = N(x0 + t) to precision k.
    /// Throws for the point at infinity or k == 0.
    PowerSeries local_expansion(const Point& p, std::size_t k) const;
    /// x(t) = x0 + t truncated to precision k.
    PowerSeries local_x(const Point& p, std::size_t k) const;
    /// Order in t of f(x0 + t, y(t)), capped at `cap`.
    VanishingOrder vanishing_order(const BivariatePoly& f, const Point& p, std::size_t cap) const;

private:
    Curve() = default;

    FieldPtr field_;
    std::vector<Point> points_;
};

using CurvePtr = std::shared_ptr<const Curve>;

}  // namespace ntc
