#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ntcodes/curve.hpp"
#include "ntcodes/matrix.hpp"

namespace ntc {

/// x^i y^j as a function on the curve.
struct Monomial {
    unsigned i = 0;
    unsigned j = 0;

    constexpr auto operator<=>(const Monomial&) const = default;
};

/// Pole order at the place over infinity: i q^(r-1) + j c.
std::uint64_t pole_order(const Curve& curve, Monomial m) noexcept;
/// Vanishing order at the origin: i + j c.
std::uint64_t origin_order(const Curve& curve, Monomial m) noexcept;

/// Effective divisor supported at affine rational points.
class CurveDivisor {
public:
    CurveDivisor() = default;
    /// Throws if a point is repeated, off the curve, at infinity, or has
    /// multiplicity zero.
    CurveDivisor(const Curve& curve, std::vector<std::pair<Point, unsigned>> parts);
    /// Reduced divisor: each point with multiplicity 1.
    static CurveDivisor reduced(const Curve& curve, std::span<const Point> points);

    const std::vector<std::pair<Point, unsigned>>& parts() const noexcept { return parts_; }
    unsigned degree() const noexcept;
    bool is_reduced() const noexcept;
    bool empty() const noexcept { return parts_.empty(); }
    std::vector<Point> support() const;

private:
    std::vector<std::pair<Point, unsigned>> parts_;
};

/// A space of functions expressed in monomial coordinates: row t of
/// `coefficients` is the t-th basis function sum_m coefficients(t, m) * monomials[m].
/// Monomially spanned spaces use the identity matrix.
struct FunctionSpace {
    std::vector<Monomial> monomials;
    FMatrix coefficients;
    /// Points where the space carries a twist; codes may not evaluate there.
    std::vector<Point> twist_support;

    std::size_t dimension() const noexcept { return coefficients.rows(); }
    bool monomially_spanned() const;

    static FunctionSpace from_monomials(FieldPtr field, std::vector<Monomial> monomials,
                                        std::vector<Point> twist_support = {});
};

/// Monomial basis of L(s Q_inf): i < q^r, j < q^(r-1), pole order <= s,
/// sorted by pole order. Throws unless 0 <= s <= c q^r.
std::vector<Monomial> basis_L_infinity(const Curve& curve, std::int64_t s);
/// dim L(s Q_inf); same range as basis_L_infinity.
std::size_t riemann_roch_dim(const Curve& curve, std::int64_t s);
/// dim L(s Q_inf) extended by 0 for s < 0.
std::size_t riemann_roch_dim_or_zero(const Curve& curve, std::int64_t s);

/// Monomials of the degree-d forms vanishing to order a at infinity and b at
/// the origin: i + j <= d, i q^(r-1) + j c <= d c - a, i + j c >= b.
/// Throws unless 0 < d < q^(r-1) - 1 and a, b >= 0.
std::vector<Monomial> basis_twisted(const Curve& curve, int d, int a, int b);

/// Degree-d forms vanishing on E, from the kernel of local-expansion
/// constraints. Throws on the d range or deg(E) > d.
FunctionSpace basis_minus_divisor(const Curve& curve, int d, const CurveDivisor& E);

/// All (i, j) with i + j <= d, sorted by pole order.
std::vector<Monomial> degree_monomials(const Curve& curve, int d);

/// m P_inf + n P_0 ~ d c P_inf - a P_inf - b P_0 with d = d1 + d2.
struct TwoPointReduction {
    int d = 0;
    int a = 0;
    int b = 0;
    int d1 = 0;
    int d2 = 0;

    constexpr bool operator==(const TwoPointReduction&) const = default;
};

/// Throws for negative m or n, or m + n == 0.
TwoPointReduction two_point_reduce(const Curve& curve, std::int64_t m, std::int64_t n);

/// max over lines other than y = 0 and z = 0 of |E ∩ L|. E must be reduced.
unsigned m_of_E(const Curve& curve, const CurveDivisor& E);
/// max over vertical lines of |E ∩ L|. E must be reduced.
unsigned mV_of_E(const Curve& curve, const CurveDivisor& E);

}  // namespace ntc
