#include "quadcode/code.hpp"

#include <stdexcept>
#include <string>

#include "quadcode/parallel.hpp"

namespace quadcode {

FunctionalCode::FunctionalCode(QuadraticForm base, Family family, std::vector<std::size_t> columns, Matrix generator,
                               std::vector<std::size_t> basis)
    : base_(std::move(base)),
      family_(family),
      columns_(std::move(columns)),
      generator_(std::move(generator)),
      basis_monomials_(std::move(basis)) {}

FunctionalCode build_code(const QuadraticForm& f) {
    const QuadricClass cls = classify(f);
    if (cls.singular()) throw std::invalid_argument("functional code needs a non-singular quadric");
    if (cls.base_kind != BaseKind::parabolic && cls.base_kind != BaseKind::hyperbolic && cls.base_kind != BaseKind::elliptic)
        throw std::invalid_argument("functional code needs a quadric of rank at least 3");

    const Geometry& g = f.geometry();
    const Field& F = g.field();
    const int N = g.dimension();
    std::vector<std::size_t> columns = point_indices(f);
    const std::size_t rows = QuadraticForm::coefficient_count(N);
    Matrix gen(g.field_ptr(), rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        auto x = g.point(columns[c]);
        std::size_t k = 0;
        for (int i = 0; i <= N; ++i)
            for (int j = i; j <= N; ++j, ++k) gen(k, c) = F.mul(x[i], x[j]);
    }

    // Greedy row basis in monomial order, kept as a running echelon form.
    std::vector<std::size_t> basis;
    std::vector<Vector> echelon;  // each row normalized with its pivot recorded
    std::vector<std::size_t> pivots;
    for (std::size_t r = 0; r < rows; ++r) {
        auto row = gen.row(r);
        Vector v(row.begin(), row.end());
        for (std::size_t e = 0; e < echelon.size(); ++e) {
            const Element c = v[pivots[e]];
            if (c == 0) continue;
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.sub(v[i], F.mul(c, echelon[e][i]));
        }
        std::size_t p = 0;
        while (p < v.size() && v[p] == 0) ++p;
        if (p == v.size()) continue;
        const Element s = F.inv(v[p]);
        for (auto& x : v) x = F.mul(x, s);
        // Keep earlier rows reduced at the new pivot so the reduction above stays valid.
        for (auto& e : echelon) {
            const Element c = e[p];
            if (c == 0) continue;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = F.sub(e[i], F.mul(c, v[i]));
        }
        echelon.push_back(std::move(v));
        pivots.push_back(p);
        basis.push_back(r);
    }

    return FunctionalCode(f, cls.base_family(), std::move(columns), std::move(gen), std::move(basis));
}

Vector codeword(const FunctionalCode& code, const QuadraticForm& f2) {
    if (f2.dimension() != code.geometry().dimension() || f2.field().order() != code.field().order())
        throw std::invalid_argument("form does not live on the code's geometry");
    Vector out(code.length());
    for (std::size_t c = 0; c < code.length(); ++c) out[c] = f2.evaluate(code.geometry().point(code.columns()[c]));
    return out;
}

std::size_t codeword_weight(const FunctionalCode& code, const QuadraticForm& f2) {
    std::size_t w = 0;
    for (Element e : codeword(code, f2)) w += (e != 0);
    return w;
}

QuadraticForm form_from_digits(const FunctionalCode& code, std::span<const Element> digits) {
    if (digits.size() != code.dimension()) throw std::invalid_argument("digit vector length mismatch");
    Vector c(QuadraticForm::coefficient_count(code.geometry().dimension()), 0);
    for (std::size_t i = 0; i < digits.size(); ++i) c[code.basis_monomials()[i]] = digits[i];
    return QuadraticForm(code.base_form().geometry_ptr(), std::move(c));
}

std::uint64_t WeightSpectrum::total() const {
    std::uint64_t t = 0;
    for (const auto& [w, c] : counts) t += c;
    return t;
}

std::optional<int> WeightSpectrum::min_weight() const {
    for (const auto& [w, c] : counts)
        if (c > 0) return w;
    return std::nullopt;
}

std::uint64_t WeightSpectrum::count(int weight) const {
    auto it = counts.find(weight);
    return it == counts.end() ? 0 : it->second;
}

std::uint64_t codeword_space_size(const FunctionalCode& code) {
    const std::uint64_t q = static_cast<std::uint64_t>(code.field().order());
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < code.dimension(); ++i) {
        if (total > UINT64_MAX / q) throw std::overflow_error("q^dimension does not fit in 64 bits");
        total *= q;
    }
    return total;
}

void check_budget(const FunctionalCode& code, bool force) {
    std::uint64_t total = 0;
    try {
        total = codeword_space_size(code);
    } catch (const std::overflow_error&) {
        throw std::length_error("codeword space exceeds 64-bit indexing");
    }
    if (!force && total > kCodewordBudget)
        throw std::length_error("codeword space of " + std::to_string(total) + " exceeds the 2^32 budget (use force)");
}

CodewordWalker::CodewordWalker(const FunctionalCode& code)
    : code_(&code), q_(code.field().order()), k_(code.dimension()), n_(code.length()) {
    const Field& F = code.field();
    const Matrix& gen = code.generator();
    scaled_.assign(k_ * q_ * n_, 0);
    for (std::size_t j = 0; j < k_; ++j) {
        auto row = gen.row(code.basis_monomials()[j]);
        for (int lambda = 0; lambda < q_; ++lambda)
            for (std::size_t i = 0; i < n_; ++i)
                scaled_[(j * q_ + lambda) * n_ + i] = F.mul(static_cast<Element>(lambda), row[i]);
    }
    step_.resize(q_);
    for (int d = 0; d < q_; ++d)
        step_[d] = F.sub(static_cast<Element>((d + 1) % q_), static_cast<Element>(d));
    if (q_ == 2 && n_ <= 64) {
        masks_.assign(k_, 0);
        for (std::size_t j = 0; j < k_; ++j) {
            auto row = gen.row(code.basis_monomials()[j]);
            for (std::size_t i = 0; i < n_; ++i)
                if (row[i]) masks_[j] |= std::uint64_t{1} << i;
        }
    }
}

void CodewordWalker::seed(std::uint64_t index, std::vector<int>& n, Vector& gray, Vector& word, int& weight) const {
    const Field& F = code_->field();
    n.assign(k_ + 1, 0);
    for (std::size_t j = 0; j < k_; ++j) {
        n[j] = static_cast<int>(index % q_);
        index /= q_;
    }
    gray.assign(k_, 0);
    for (std::size_t j = 0; j < k_; ++j) gray[j] = static_cast<Element>(((n[j] - n[j + 1]) % q_ + q_) % q_);
    word.assign(n_, 0);
    for (std::size_t j = 0; j < k_; ++j) {
        if (gray[j] == 0) continue;
        const Element* row = &scaled_[(j * q_ + gray[j]) * n_];
        for (std::size_t i = 0; i < n_; ++i) word[i] = F.add(word[i], row[i]);
    }
    weight = 0;
    for (Element e : word) weight += (e != 0);
}

WeightSpectrum weight_spectrum(const FunctionalCode& code, const EnumerationOptions& options) {
    check_budget(code, options.force);
    const std::uint64_t total = codeword_space_size(code);
    const CodewordWalker walker(code);
    const std::size_t n = code.length();

    auto tallies = run_shards<std::vector<std::uint64_t>>(total, options.threads, [&](std::uint64_t b, std::uint64_t e) {
        std::vector<std::uint64_t> hist(n + 1, 0);
        walker.walk(b, e, [&](std::uint64_t, int w, std::span<const Element>) { ++hist[w]; });
        return hist;
    });

    std::vector<std::uint64_t> hist(n + 1, 0);
    for (const auto& t : tallies)
        for (std::size_t w = 0; w < t.size(); ++w) hist[w] += t[w];
    // Index 0 is the only zero codeword: the basis rows are independent.
    if (hist[0] != 1) throw std::logic_error("basis rows are dependent: zero codeword repeated");
    hist[0] = 0;

    WeightSpectrum out;
    out.scanned = total - 1;
    out.truncation_bound = options.max_weight;
    for (std::size_t w = 1; w <= n; ++w) {
        if (hist[w] == 0) continue;
        if (options.max_weight && static_cast<int>(w) > *options.max_weight) continue;
        out.counts[static_cast<int>(w)] = hist[w];
    }
    return out;
}

int min_distance(const FunctionalCode& code, const EnumerationOptions& options) {
    EnumerationOptions all = options;
    all.max_weight.reset();
    const auto w = weight_spectrum(code, all).min_weight();
    if (!w) throw std::logic_error("code has no nonzero codeword");
    return *w;
}

}  // namespace quadcode
