#include "ntcodes/linear_code.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "ntcodes/error.hpp"

namespace ntc {

LinearCode::LinearCode(const FMatrix& generator, std::vector<Point> labels) : labels_(std::move(labels))
{
    if (!labels_.empty()) {
        if (labels_.size() != generator.cols())
            throw Error(ErrorKind::InvalidArgument, "code labels: expected " + std::to_string(generator.cols()) +
                                                        " labels, got " + std::to_string(labels_.size()));
        std::set<Point> distinct(labels_.begin(), labels_.end());
        if (distinct.size() != labels_.size()) throw Error(ErrorKind::InvalidArgument, "code labels must be distinct");
    }
    generator_ = rref(generator).reduced;
}

bool LinearCode::operator==(const LinearCode& other) const
{
    return labels_ == other.labels_ && generator_ == other.generator_;
}

FMatrix monomial_evaluations(const Curve& curve, std::span<const Monomial> monomials, std::span<const Point> points)
{
    const Field& f = curve.field();
    unsigned max_i = 0, max_j = 0;
    for (const auto m : monomials) {
        max_i = std::max(max_i, m.i);
        max_j = std::max(max_j, m.j);
    }
    FMatrix out(curve.field_ptr(), monomials.size(), points.size());
    std::vector<Felt> xp(max_i + 1), yp(max_j + 1);
    for (std::size_t col = 0; col < points.size(); ++col) {
        const Point& p = points[col];
        xp[0] = yp[0] = f.one();
        for (unsigned e = 1; e <= max_i; ++e) xp[e] = f.mul(xp[e - 1], p.x);
        for (unsigned e = 1; e <= max_j; ++e) yp[e] = f.mul(yp[e - 1], p.y);
        for (std::size_t row = 0; row < monomials.size(); ++row)
            out.at(row, col) = f.mul(xp[monomials[row].i], yp[monomials[row].j]);
    }
    return out;
}

LinearCode eval_code(const Curve& curve, const FunctionSpace& space, std::span<const Point> points)
{
    if (space.dimension() == 0) throw Error(ErrorKind::InvalidArgument, "eval_code: empty function space");
    for (const auto& p : points) {
        if (!p.is_affine()) throw Error(ErrorKind::InvalidArgument, "eval_code: cannot evaluate at infinity");
        if (!curve.on_curve(p)) throw Error(ErrorKind::InvalidArgument, "eval_code: point not on curve");
        if (std::find(space.twist_support.begin(), space.twist_support.end(), p) != space.twist_support.end())
            throw Error(ErrorKind::InvalidArgument, "eval_code: evaluation point lies in the twist support");
    }
    const FMatrix evals = monomial_evaluations(curve, space.monomials, points);
    return LinearCode(space.coefficients.multiply(evals), std::vector<Point>(points.begin(), points.end()));
}

LinearCode dual(const LinearCode& code) { return LinearCode(nullspace(code.generator()), code.labels()); }

LinearCode scale_code(const LinearCode& code, std::span<const Felt> x)
{
    if (x.size() != code.length()) throw Error(ErrorKind::InvalidArgument, "scale_code: length mismatch");
    if (std::any_of(x.begin(), x.end(), [](Felt v) { return v.is_zero(); }))
        throw Error(ErrorKind::InvalidArgument, "scale_code: scaling vector has a zero entry");
    const Field& f = *code.field();
    FMatrix g = code.generator();
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) g.at(r, c) = f.mul(g.at(r, c), x[c]);
    return LinearCode(g, code.labels());
}

LinearCode drop_column(const LinearCode& code, const Point& label)
{
    const auto& labels = code.labels();
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw Error(ErrorKind::InvalidArgument, "drop_column: label not present");
    const auto drop = static_cast<std::size_t>(it - labels.begin());
    std::vector<std::size_t> keep;
    std::vector<Point> kept_labels;
    for (std::size_t c = 0; c < code.length(); ++c)
        if (c != drop) {
            keep.push_back(c);
            kept_labels.push_back(labels[c]);
        }
    return LinearCode(code.generator().select_columns(keep), std::move(kept_labels));
}

std::string to_string(IsometryResult::Status status)
{
    switch (status) {
        case IsometryResult::Status::Found: return "found";
        case IsometryResult::Status::None: return "none";
        case IsometryResult::Status::Unknown: return "unknown";
    }
    return "unknown";
}

IsometryResult strong_isometry_witness(const LinearCode& C, const LinearCode& D, std::uint64_t seed)
{
    if (C.length() != D.length()) throw Error(ErrorKind::InvalidArgument, "isometry: codes have different lengths");
    if (C.field() != D.field() && C.field()->order() != D.field()->order())
        throw Error(ErrorKind::InvalidArgument, "isometry: codes over different fields");
    IsometryResult res;
    if (C.dimension() != D.dimension()) return res;
    const Field& f = *C.field();
    const std::size_t n = C.length();

    // x D inside C  <=>  H_C diag(d) x = 0 for every generator row d of D.
    const FMatrix check = nullspace(C.generator());
    FMatrix system(C.field(), 0, n);
    std::vector<Felt> row(n);
    for (std::size_t i = 0; i < D.dimension(); ++i) {
        const auto d = D.generator().row(i);
        for (std::size_t h = 0; h < check.rows(); ++h) {
            for (std::size_t c = 0; c < n; ++c) row[c] = f.mul(check.at(h, c), d[c]);
            system.append_row(row);
        }
    }
    const FMatrix solutions = system.rows() == 0 ? FMatrix::identity(C.field(), n) : nullspace(system);
    const std::size_t dim = solutions.rows();
    res.solution_dim = dim;
    if (dim == 0) return res;

    // A coordinate on which every solution vanishes rules out a witness.
    for (std::size_t c = 0; c < n; ++c) {
        bool any = false;
        for (std::size_t r = 0; r < dim && !any; ++r) any = !solutions.at(r, c).is_zero();
        if (!any) return res;
    }

    const std::uint64_t Q = f.order();
    auto full_support = [](const std::vector<Felt>& v) {
        return std::none_of(v.begin(), v.end(), [](Felt e) { return e.is_zero(); });
    };
    std::vector<Felt> coeffs(dim), x(n);
    auto combine = [&] {
        std::fill(x.begin(), x.end(), Felt{});
        for (std::size_t r = 0; r < dim; ++r) {
            if (coeffs[r].is_zero()) continue;
            for (std::size_t c = 0; c < n; ++c) x[c] = f.add(x[c], f.mul(coeffs[r], solutions.at(r, c)));
        }
    };

    long double space_size = 1;
    for (std::size_t i = 0; i < dim; ++i) space_size *= static_cast<long double>(Q);
    if (space_size <= static_cast<long double>(1u << 20)) {
        const auto total = static_cast<std::uint64_t>(space_size);
        for (std::uint64_t code = 1; code < total; ++code) {
            std::uint64_t rest = code;
            for (std::size_t r = 0; r < dim; ++r) {
                coeffs[r] = Felt{static_cast<std::uint32_t>(rest % Q)};
                rest /= Q;
            }
            combine();
            if (full_support(x)) {
                res.status = IsometryResult::Status::Found;
                res.witness = x;
                return res;
            }
        }
        return res;
    }

    res.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, Q - 1);
    for (int trial = 0; trial < (1 << 16); ++trial) {
        for (auto& cf : coeffs) cf = Felt{static_cast<std::uint32_t>(pick(rng))};
        combine();
        if (full_support(x)) {
            res.status = IsometryResult::Status::Found;
            res.witness = x;
            return res;
        }
    }
    res.status = IsometryResult::Status::Unknown;
    return res;
}

}  // namespace ntc
