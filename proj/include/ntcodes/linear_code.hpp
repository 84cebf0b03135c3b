#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ntcodes/curve.hpp"
#include "ntcodes/function_space.hpp"
#include "ntcodes/matrix.hpp"

namespace ntc {

/// Linear code given by a generator in reduced row echelon form.
///
/// Column labels record the evaluation point behind each coordinate; they may
/// be empty for codes with no geometric origin.
class LinearCode {
public:
    LinearCode() = default;
    /// Reduces the generator and drops dependent rows. Throws if labels are
    /// neither empty nor one distinct point per column.
    LinearCode(const FMatrix& generator, std::vector<Point> labels);

    const FMatrix& generator() const noexcept { return generator_; }
    const FieldPtr& field() const noexcept { return generator_.field(); }
    std::size_t length() const noexcept { return generator_.cols(); }
    std::size_t dimension() const noexcept { return generator_.rows(); }
    const std::vector<Point>& labels() const noexcept { return labels_; }

    /// Same coordinates (labels) and same row space.
    bool operator==(const LinearCode& other) const;

private:
    FMatrix generator_;
    std::vector<Point> labels_;
};

/// Evaluates each basis function of `space` at each point. Throws on an empty
/// space, off-curve points, or a point in the twist support.
LinearCode eval_code(const Curve& curve, const FunctionSpace& space, std::span<const Point> points);
/// Evaluation matrix: one row per monomial, one column per point.
FMatrix monomial_evaluations(const Curve& curve, std::span<const Monomial> monomials, std::span<const Point> points);

LinearCode dual(const LinearCode& code);
/// Coordinatewise product x * C. Throws on a zero entry or length mismatch.
LinearCode scale_code(const LinearCode& code, std::span<const Felt> x);
/// Puncture at the column labelled `label`. Throws if absent.
LinearCode drop_column(const LinearCode& code, const Point& label);

struct IsometryResult {
    enum class Status { Found, None, Unknown };

    Status status = Status::None;
    /// Full-support x with C = x D when status == Found.
    std::vector<Felt> witness;
    /// Dimension of {x : x D is contained in C}.
    std::size_t solution_dim = 0;
    bool exhaustive = true;
};

std::string to_string(IsometryResult::Status status);

/// Searches for a full-support x with C = x D. Exhaustive when the solution
/// space has at most 2^20 vectors, otherwise 2^16 seeded random samples
/// (reporting Unknown if none hits). Throws on length or field mismatch.
IsometryResult strong_isometry_witness(const LinearCode& C, const LinearCode& D, std::uint64_t seed = 0);

}  // namespace ntc
