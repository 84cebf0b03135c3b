#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ntcodes/field.hpp"

namespace ntc {

/// Dense row-major matrix over a finite field.
class FMatrix {
public:
    FMatrix() = default;
    FMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols)
    {
    }

    static FMatrix identity(FieldPtr field, std::size_t n);
    /// Throws if rows have different lengths.
    static FMatrix from_rows(FieldPtr field, const std::vector<std::vector<Felt>>& rows, std::size_t cols);

    const FieldPtr& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0; }

    Felt& at(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    Felt at(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    std::span<Felt> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const Felt> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    void append_row(std::span<const Felt> values);
    FMatrix transpose() const;
    /// Sub-matrix keeping the listed columns in the given order.
    FMatrix select_columns(std::span<const std::size_t> cols) const;
    FMatrix multiply(const FMatrix& rhs) const;
    bool is_zero() const noexcept;

    bool operator==(const FMatrix& other) const noexcept
    {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    FieldPtr field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Felt> data_;
};

struct RrefResult {
    FMatrix reduced;  // zero rows dropped; pivots are 1 and columns cleared
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Exact Gauss-Jordan elimination.
RrefResult rref(const FMatrix& m);
std::size_t rank(const FMatrix& m);
/// Rows form a basis of {v : m v = 0}; 0 x cols when m has full column rank.
FMatrix nullspace(const FMatrix& m);
/// True if the two matrices have the same row space.
bool same_row_space(const FMatrix& a, const FMatrix& b);
/// True if v lies in the row space of m.
bool in_row_space(const FMatrix& m, std::span<const Felt> v);

}  // namespace ntc
