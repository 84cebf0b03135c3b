#include "ntcodes/matrix.hpp"

#include "ntcodes/error.hpp"

namespace ntc {

FMatrix FMatrix::identity(FieldPtr field, std::size_t n)
{
    FMatrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Felt{1};
    return m;
}

FMatrix FMatrix::from_rows(FieldPtr field, const std::vector<std::vector<Felt>>& rows, std::size_t cols)
{
    FMatrix m(std::move(field), 0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

void FMatrix::append_row(std::span<const Felt> values)
{
    if (values.size() != cols_)
        throw Error(ErrorKind::InvalidArgument, "append_row: expected " + std::to_string(cols_) + " entries, got " +
                                                    std::to_string(values.size()));
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

FMatrix FMatrix::transpose() const
{
    FMatrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

FMatrix FMatrix::select_columns(std::span<const std::size_t> cols) const
{
    FMatrix out(field_, rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j) out.at(r, j) = at(r, cols[j]);
    return out;
}

FMatrix FMatrix::multiply(const FMatrix& rhs) const
{
    if (cols_ != rhs.rows_) throw Error(ErrorKind::InvalidArgument, "multiply: dimension mismatch");
    const Field& f = *field_;
    FMatrix out(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Felt a = at(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) = f.add(out.at(i, j), f.mul(a, rhs.at(k, j)));
        }
    return out;
}

bool FMatrix::is_zero() const noexcept
{
    for (auto v : data_)
        if (!v.is_zero()) return false;
    return true;
}

RrefResult rref(const FMatrix& m)
{
    RrefResult res;
    FMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    if (rows == 0) {
        res.reduced = FMatrix(m.field(), 0, cols);
        return res;
    }
    const Field& f = *a.field();
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
        std::size_t sel = pivot_row;
        while (sel < rows && a.at(sel, c).is_zero()) ++sel;
        if (sel == rows) continue;
        if (sel != pivot_row)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(sel, j), a.at(pivot_row, j));
        const Felt inv = f.inv(a.at(pivot_row, c));
        for (std::size_t j = c; j < cols; ++j) a.at(pivot_row, j) = f.mul(a.at(pivot_row, j), inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pivot_row) continue;
            const Felt factor = a.at(i, c);
            if (factor.is_zero()) continue;
            for (std::size_t j = c; j < cols; ++j)
                a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, a.at(pivot_row, j)));
        }
        res.pivots.push_back(c);
        ++pivot_row;
    }
    res.rank = pivot_row;
    res.reduced = FMatrix(m.field(), 0, cols);
    for (std::size_t i = 0; i < res.rank; ++i) res.reduced.append_row(a.row(i));
    return res;
}

std::size_t rank(const FMatrix& m) { return rref(m).rank; }

FMatrix nullspace(const FMatrix& m)
{
    const auto red = rref(m);
    const Field& f = *m.field();
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : red.pivots) is_pivot[p] = true;
    FMatrix out(m.field(), 0, cols);
    std::vector<Felt> v(cols);
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::fill(v.begin(), v.end(), Felt{0});
        v[free] = f.one();
        for (std::size_t i = 0; i < red.rank; ++i) v[red.pivots[i]] = f.neg(red.reduced.at(i, free));
        out.append_row(v);
    }
    return out;
}

bool same_row_space(const FMatrix& a, const FMatrix& b)
{
    if (a.cols() != b.cols()) return false;
    const auto ra = rref(a), rb = rref(b);
    return ra.rank == rb.rank && ra.reduced == rb.reduced;
}

bool in_row_space(const FMatrix& m, std::span<const Felt> v)
{
    FMatrix ext = m;
    ext.append_row(v);
    return rank(ext) == rank(m);
}

}  // namespace ntc
