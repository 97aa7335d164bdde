#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "quadcode/quadric.hpp"

namespace quadcode {

/// The functional code C_2(Q): evaluations of all quadratic forms at the
/// points of a non-singular quadric Q, columns in canonical point order.
class FunctionalCode {
public:
    const QuadraticForm& base_form() const { return base_; }
    const Geometry& geometry() const { return base_.geometry(); }
    const Field& field() const { return base_.field(); }
    Family family() const { return family_; }

    std::size_t length() const { return columns_.size(); }
    /// Measured rank of the generator matrix.
    std::size_t dimension() const { return basis_monomials_.size(); }
    /// C(N+2,2) - 1.
    std::size_t expected_dimension() const { return QuadraticForm::coefficient_count(geometry().dimension()) - 1; }

    /// Point indices of Q in the ambient canonical order.
    const std::vector<std::size_t>& columns() const { return columns_; }
    /// Row m is the evaluation of the m-th monomial X_iX_j at the columns.
    const Matrix& generator() const { return generator_; }
    /// Monomials whose rows form a basis of the row space, chosen greedily in
    /// monomial order.
    const std::vector<std::size_t>& basis_monomials() const { return basis_monomials_; }

private:
    FunctionalCode(QuadraticForm base, Family family, std::vector<std::size_t> columns, Matrix generator,
                   std::vector<std::size_t> basis);
    friend FunctionalCode build_code(const QuadraticForm& f);

    QuadraticForm base_;
    Family family_;
    std::vector<std::size_t> columns_;
    Matrix generator_;
    std::vector<std::size_t> basis_monomials_;
};

/// Throws std::invalid_argument when f is zero or singular.
FunctionalCode build_code(const QuadraticForm& f);

/// Codeword of f2: its values at the columns.
Vector codeword(const FunctionalCode& code, const QuadraticForm& f2);

/// Number of columns where f2 does not vanish, i.e. |Q| - |Q ∩ Z(f2)|.
std::size_t codeword_weight(const FunctionalCode& code, const QuadraticForm& f2);

/// The form sum_i digits[i] * X_{basis monomial i}.
QuadraticForm form_from_digits(const FunctionalCode& code, std::span<const Element> digits);

struct WeightSpectrum {
    std::map<int, std::uint64_t> counts;   // nonzero codewords only
    std::uint64_t scanned = 0;             // nonzero codewords enumerated
    std::optional<int> truncation_bound;

    std::uint64_t total() const;
    std::optional<int> min_weight() const;
    std::uint64_t count(int weight) const;

    bool operator==(const WeightSpectrum&) const = default;
};

struct EnumerationOptions {
    std::optional<int> max_weight;
    unsigned threads = 1;
    bool force = false;  // lift the 2^32 codeword budget
};

constexpr std::uint64_t kCodewordBudget = std::uint64_t{1} << 32;

/// q^dimension; throws std::overflow_error when it does not fit 64 bits.
std::uint64_t codeword_space_size(const FunctionalCode& code);

/// Throws std::length_error when q^dim exceeds the budget and force is off.
void check_budget(const FunctionalCode& code, bool force);

/// Exhaustive weight distribution over every nonzero codeword.
WeightSpectrum weight_spectrum(const FunctionalCode& code, const EnumerationOptions& options = {});

int min_distance(const FunctionalCode& code, const EnumerationOptions& options = {});

/// Walks the codewords with indices [begin, end) of the q-ary modular Gray
/// code over the basis rows. Index i carries the digit vector g with
/// g_j = (n_j - n_{j+1}) mod q, n the base-q digits of i, so consecutive
/// indices differ by adding one basis row. visit(index, weight, digits) sees
/// the digit vector, which is also the form's coefficients on the basis
/// monomials.
class CodewordWalker {
public:
    explicit CodewordWalker(const FunctionalCode& code);

    template <typename Visit>
    void walk(std::uint64_t begin, std::uint64_t end, Visit&& visit) const;

private:
    void seed(std::uint64_t index, std::vector<int>& n, Vector& gray, Vector& word, int& weight) const;

    const FunctionalCode* code_;
    int q_;
    std::size_t k_;
    std::size_t n_;
    // scaled_[(j*q + lambda)*n + i] = lambda * row_j[i]
    std::vector<Element> scaled_;
    // step_[d] = (d+1 mod q) - d as field elements
    std::vector<Element> step_;
    std::vector<std::uint64_t> masks_;  // q == 2 and n <= 64
};

template <typename Visit>
void CodewordWalker::walk(std::uint64_t begin, std::uint64_t end, Visit&& visit) const {
    if (begin >= end) return;
    std::vector<int> n;
    Vector gray;
    Vector word;
    int weight = 0;
    seed(begin, n, gray, word, weight);

    if (!masks_.empty()) {
        std::uint64_t mask = 0;
        for (std::size_t j = 0; j < k_; ++j)
            if (gray[j]) mask ^= masks_[j];
        for (std::uint64_t idx = begin;;) {
            visit(idx, std::popcount(mask), std::span<const Element>(gray));
            if (++idx == end) break;
            const int j = std::countr_zero(idx);
            gray[j] ^= 1;
            mask ^= masks_[j];
        }
        return;
    }

    const Element* add = code_->field().add_table();
    for (std::uint64_t idx = begin;;) {
        visit(idx, weight, std::span<const Element>(gray));
        if (++idx == end) break;
        // The incremented base-q digit is the first one that was not q-1.
        std::size_t j = 0;
        while (n[j] == q_ - 1) n[j++] = 0;
        ++n[j];
        const Element d = gray[j];
        const Element lambda = step_[d];
        gray[j] = static_cast<Element>((d + 1) % q_);
        const Element* row = &scaled_[(j * q_ + lambda) * n_];
        for (std::size_t i = 0; i < n_; ++i) {
            const Element old = word[i];
            const Element now = add[old * q_ + row[i]];
            word[i] = now;
            weight += (now != 0) - (old != 0);
        }
    }
}

}  // namespace quadcode
