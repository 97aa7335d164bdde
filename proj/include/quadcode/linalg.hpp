#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "quadcode/gf.hpp"

namespace quadcode {

using Vector = std::vector<Element>;

/// Dense row-major matrix over a finite field.
class Matrix {
public:
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Element> entries);

    static Matrix from_rows(FieldPtr field, const std::vector<Vector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }

    Element operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Element>& entries() const { return data_; }

    Vector apply(std::span<const Element> v) const;

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    FieldPtr field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Element> data_;
};

/// Reduced row echelon form with the pivot columns, first-nonzero pivot rule.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

Echelon rref(Matrix m);

std::size_t rank(const Matrix& m);

/// Basis of {v : M v = 0}, returned in reduced row echelon form so equal
/// kernels give identical sequences.
std::vector<Vector> kernel_basis(const Matrix& m);

/// Canonical (reduced echelon) basis of the span of the given vectors.
std::vector<Vector> echelon_basis(FieldPtr field, const std::vector<Vector>& vectors, std::size_t length);

/// Some solution x of M x = b, or nullopt when inconsistent.
std::optional<Vector> solve(const Matrix& m, std::span<const Element> b);

}  // namespace quadcode
