#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "quadcode/linalg.hpp"

using namespace quadcode;

namespace {

Matrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(0, f->order() - 1);
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<Element>(d(rng));
    return m;
}

// Rank by counting the distinct vectors in the row space: q^rank of them.
std::size_t brute_rank(const Matrix& m) {
    const Field& F = m.field();
    const int q = F.order();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) combos *= q;
    std::vector<Vector> seen;
    for (std::size_t idx = 0; idx < combos; ++idx) {
        Vector v(m.cols(), 0);
        std::size_t t = idx;
        for (std::size_t i = 0; i < m.rows(); ++i, t /= q) {
            const Element c = static_cast<Element>(t % q);
            for (std::size_t j = 0; j < m.cols(); ++j) v[j] = F.add(v[j], F.mul(c, m(i, j)));
        }
        if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
    }
    std::size_t r = 0;
    for (std::size_t n = 1; n < seen.size(); n *= q) ++r;
    return r;
}

}  // namespace

TEST_CASE("rank examples") {
    auto f2 = make_field_of_order(2);
    Matrix id(f2, 3, 3);
    for (int i = 0; i < 3; ++i) id(i, i) = 1;
    CHECK(rank(id) == 3);
    CHECK(rank(Matrix(f2, 3, 4)) == 0);

    // 2 * (1,2) = (2,1) over GF(3): the rows are dependent.
    auto f3 = make_field_of_order(3);
    const Matrix m = Matrix::from_rows(f3, {{1, 2}, {2, 1}}, 2);
    CHECK(brute_rank(m) == 1);
    CHECK(rank(m) == 1);
}

TEST_CASE("kernel examples") {
    auto f2 = make_field_of_order(2);
    Matrix id(f2, 3, 3);
    for (int i = 0; i < 3; ++i) id(i, i) = 1;
    CHECK(kernel_basis(id).empty());
    CHECK(kernel_basis(Matrix(f2, 2, 2)).size() == 2);
    const auto k = kernel_basis(Matrix::from_rows(f2, {{1, 1, 0}}, 3));
    CHECK(k == std::vector<Vector>{{1, 1, 0}, {0, 0, 1}});
}

TEST_CASE("rank-nullity, kernel soundness and canonical output") {
    std::mt19937 rng(7);
    for (int q : {2, 3, 4, 5, 9}) {
        auto f = make_field_of_order(q);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t r = 1 + trial % 4, c = 1 + (trial * 7) % 5;
            Matrix m = random_matrix(f, r, c, rng);
            if (trial % 5 == 0 && r > 1)  // force a dependency
                for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = f->mul(2 % q, m(0, j));
            const auto ker = kernel_basis(m);
            CHECK(rank(m) + ker.size() == c);
            for (const auto& v : ker) CHECK(m.apply(v) == Vector(r, 0));
            CHECK(kernel_basis(Matrix(m)) == ker);
            if (q <= 4) CHECK(rank(m) == brute_rank(m));
        }
    }
}

TEST_CASE("rref pivots and solve") {
    auto f3 = make_field_of_order(3);
    const Matrix m = Matrix::from_rows(f3, {{0, 1, 2}, {1, 1, 0}, {1, 2, 2}}, 3);
    const Echelon e = rref(m);
    CHECK(e.pivots == std::vector<std::size_t>{0, 1});
    CHECK(e.reduced(0, 0) == 1);
    CHECK(e.reduced(1, 1) == 1);
    CHECK(e.reduced(0, 1) == 0);

    const auto x = solve(m, Vector{1, 1, 2});
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == Vector{1, 1, 2});
    CHECK_FALSE(solve(m, Vector{1, 0, 0}).has_value());
}

TEST_CASE("echelon basis spans the same space") {
    auto f2 = make_field_of_order(2);
    const auto b = echelon_basis(f2, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, 3);
    CHECK(b.size() == 2);
    CHECK(b == echelon_basis(f2, {{1, 0, 1}, {0, 1, 1}}, 3));
}
