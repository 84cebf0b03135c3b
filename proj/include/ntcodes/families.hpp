#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntcodes/curve.hpp"
#include "ntcodes/function_space.hpp"
#include "ntcodes/linear_code.hpp"

namespace ntc {

enum class Family { Cd, Cda, Cdab, CdE, OnePoint, TwoPoint };

std::string to_string(Family family);
/// Accepts cd, cda, cdab, cde, onepoint, twopoint. Throws otherwise.
Family family_from_string(const std::string& name);

/// Which code to build and with which parameters; unused fields stay zero.
struct CodeFamilySpec {
    Family family = Family::Cd;
    int d = 0;
    int a = 0;
    int b = 0;
    std::int64_t s = 0;
    std::int64_t m = 0;
    std::int64_t n = 0;
    std::vector<Point> E;

    /// Compact parameter tag such as "d2a1b2" or "s7".
    std::string params_tag() const;
};

/// Affine points with the listed points removed, in curve order.
std::vector<Point> points_without(const Curve& curve, std::span<const Point> removed);

/// Degree-d forms at every affine point.
LinearCode build_Cd(const Curve& curve, int d);
/// Degree-d forms vanishing to order a at infinity, at every affine point.
LinearCode build_Cda(const Curve& curve, int d, int a);
/// Degree-d forms vanishing to order a at infinity and b at the origin,
/// evaluated away from the origin.
LinearCode build_Cdab(const Curve& curve, int d, int a, int b);
/// Degree-d forms vanishing on E, evaluated away from E.
LinearCode build_CdE(const Curve& curve, int d, const CurveDivisor& E);
/// L(s P_inf) at every affine point. Throws unless 0 <= s <= c q^r.
LinearCode one_point_goppa(const Curve& curve, std::int64_t s);

struct TwoPointCode {
    LinearCode code;
    /// y(P)^(-d2) per column: code = diag(witness) * C(d, a, b).
    std::vector<Felt> witness;
    TwoPointReduction reduction;
};

/// L(m P_inf + n P_0) on the affine points other than the origin, realized
/// through the equivalent C(d, a, b). Throws when the reduced d >= q.
TwoPointCode two_point_goppa(const Curve& curve, std::int64_t m, std::int64_t n);

LinearCode build_code(const Curve& curve, const CodeFamilySpec& spec);

}  // namespace ntc
