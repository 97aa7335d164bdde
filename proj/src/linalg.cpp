#include "quadcode/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace quadcode {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Element> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix entry count does not match shape");
    for (Element e : data_)
        if (!field_->contains(e)) throw std::invalid_argument("matrix entry outside the field");
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<Vector>& rows, std::size_t cols) {
    std::vector<Element> entries;
    entries.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw std::invalid_argument("row length mismatch");
        entries.insert(entries.end(), r.begin(), r.end());
    }
    return Matrix(std::move(field), rows.size(), cols, std::move(entries));
}

Vector Matrix::apply(std::span<const Element> v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
    const Field& F = *field_;
    Vector out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        Element acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc = F.add(acc, F.mul(data_[r * cols_ + c], v[c]));
        out[r] = acc;
    }
    return out;
}

Echelon rref(Matrix m) {
    const Field& F = m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(r, k));
        const Element s = F.inv(m(r, c));
        for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = F.mul(m(r, k), s);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            const Element factor = m(i, c);
            for (std::size_t k = c; k < m.cols(); ++k) m(i, k) = F.sub(m(i, k), F.mul(factor, m(r, k)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> kernel_basis(const Matrix& m) {
    const Field& F = m.field();
    const Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;

    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = F.neg(e.reduced(i, free));
        basis.push_back(std::move(v));
    }
    if (basis.empty()) return basis;
    return echelon_basis(m.field_ptr(), basis, m.cols());
}

std::vector<Vector> echelon_basis(FieldPtr field, const std::vector<Vector>& vectors, std::size_t length) {
    if (vectors.empty()) return {};
    Echelon e = rref(Matrix::from_rows(std::move(field), vectors, length));
    std::vector<Vector> out;
    out.reserve(e.pivots.size());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        auto row = e.reduced.row(i);
        out.emplace_back(row.begin(), row.end());
    }
    return out;
}

std::optional<Vector> solve(const Matrix& m, std::span<const Element> b) {
    if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
    Matrix aug(m.field_ptr(), m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    const Echelon e = rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    Vector x(m.cols(), 0);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, m.cols());
    return x;
}

}  // namespace quadcode
