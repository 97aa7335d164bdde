#include "quadcode/tables.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "quadcode/parallel.hpp"
#include "quadcode/series.hpp"

namespace quadcode {

std::string describe(const SectionType& t, int dim) {
    const int base_dim = dim - t.vertex_dim - 1;
    std::string sign = t.base == Family::hyperbolic ? "+" : t.base == Family::elliptic ? "-" : "";
    std::string body = "Q" + sign + "(" + std::to_string(base_dim) + ")";
    switch (t.vertex_dim) {
        case -1: return body;
        case 0: return "P " + body;
        case 1: return "L " + body;
        default: return "pi_" + std::to_string(t.vertex_dim) + " " + body;
    }
}

int ambient_dimension(Family family, int l) { return family == Family::parabolic ? 2 * l : 2 * l + 1; }

namespace {

using I = __int128;

constexpr SectionType kPar{-1, Family::parabolic};
constexpr SectionType kHyp{-1, Family::hyperbolic};
constexpr SectionType kEll{-1, Family::elliptic};

void check_grid(int l, int q, bool force) {
    if (l < 2) throw std::invalid_argument("tables need l >= 2");
    if (q < 2 || q > 256 || !make_field_of_order(q)) throw std::invalid_argument("q is not a supported field order");
    if (!force && (l != 2 || (q != 2 && q != 3)))
        throw std::invalid_argument("(l, q) outside the verified grid l = 2, q in {2, 3}; use force");
}

struct RowPattern {
    const char* label;
    SectionType first, second, meet;
};

// Section patterns of the pair tables, with the hyperplane sections listed
// in the order the size formulas name them.
std::vector<RowPattern> row_patterns(Family family) {
    switch (family) {
        case Family::hyperbolic: {
            const SectionType tan{0, Family::hyperbolic};
            return {{"(1.1)", kPar, kPar, kHyp},
                    {"(1.2)", tan, kPar, kHyp},
                    {"(1.3)", tan, tan, kHyp},
                    {"(2.1)", tan, tan, {1, Family::hyperbolic}},
                    {"(3.1)", kPar, kPar, {0, Family::parabolic}},
                    {"(3.2)", kPar, tan, {0, Family::parabolic}},
                    {"(4.1)", kPar, kPar, kEll}};
        }
        case Family::elliptic: {
            const SectionType tan{0, Family::elliptic};
            return {{"(1.1)", kPar, kPar, kEll},
                    {"(1.2)", tan, kPar, kEll},
                    {"(1.3)", tan, tan, kEll},
                    {"(2.1)", kPar, kPar, {0, Family::parabolic}},
                    {"(2.2)", kPar, tan, {0, Family::parabolic}},
                    {"(3.1)", tan, tan, {1, Family::elliptic}},
                    {"(4.1)", kPar, kPar, kHyp}};
        }
        case Family::parabolic: {
            const SectionType tan{0, Family::parabolic};
            return {{"(1.1)", kHyp, kHyp, kPar},
                    {"(1.2)", kHyp, kEll, kPar},
                    {"(1.3)", tan, kHyp, kPar},
                    {"(1.4)", tan, kEll, kPar},
                    {"(1.5)", kEll, kEll, kPar},
                    {"(1.6)", tan, tan, kPar},
                    {"(2.1)", kHyp, kHyp, {0, Family::hyperbolic}},
                    {"(2.2)", kHyp, tan, {0, Family::hyperbolic}},
                    {"(3.1)", kEll, kEll, {0, Family::elliptic}},
                    {"(3.2)", kEll, tan, {0, Family::elliptic}},
                    {"(4.1)", tan, tan, {1, Family::parabolic}}};
        }
    }
    throw std::invalid_argument("unknown family");
}

// Printed closed-form sizes.
std::int64_t printed_size(Family family, const std::string& label, int l, std::int64_t q) {
    auto P = [&](int e) { return ipow(q, e); };
    auto S = [&](int lo, int hi) { return power_sum(q, lo, hi); };
    if (family == Family::hyperbolic) {
        const std::int64_t head = 2 * P(2 * l - 1);
        if (label == "(1.1)") return head + S(l, 2 * l - 2) + S(0, l - 2);
        if (label == "(1.2)") return head + S(l + 1, 2 * l - 2) + 2 * P(l) + S(0, l - 2);
        if (label == "(1.3)") return head + S(l + 1, 2 * l - 2) + 3 * P(l) + S(0, l - 2);
        if (label == "(2.1)") return head + S(l + 1, 2 * l - 2) + 2 * P(l) + S(0, l - 1);
        if (label == "(3.1)") return head + S(l, 2 * l - 2) + S(0, l - 1);
        if (label == "(3.2)") return head + S(l + 1, 2 * l - 2) + 2 * P(l) + S(0, l - 1);
        if (label == "(4.1)") return head + S(l, 2 * l - 2) + 2 * P(l - 1) + S(0, l - 2);
    } else if (family == Family::elliptic) {
        const std::int64_t head = 2 * P(2 * l - 1);
        if (label == "(1.1)") return head + S(l, 2 * l - 2) + 2 * P(l - 1) + S(0, l - 2);
        if (label == "(1.2)") return head + S(l + 1, 2 * l - 2) + 2 * P(l - 1) + S(0, l - 2);
        if (label == "(1.3)") return head + S(l + 1, 2 * l - 2) - P(l) + 2 * P(l - 1) + S(0, l - 2);
        if (label == "(2.1)") return head + S(l + 1, 2 * l - 2) + P(l) + S(0, l - 1);
        if (label == "(2.2)") return head + S(l + 1, 2 * l - 2) + S(0, l - 1);
        if (label == "(3.1)") return head + S(l + 1, 2 * l - 2) + S(0, l - 1);
        if (label == "(4.1)") return head + S(l, 2 * l - 2) + S(0, l - 2);
    } else {
        // 2q^{2l-2} + q^{2l-3}+...+q^l + c q^{l-1} + q^{l-2}+...+q+1
        static const std::map<std::string, int> c = {{"(1.1)", 3}, {"(1.2)", 1}, {"(1.3)", 2}, {"(1.4)", 0},
                                                     {"(1.5)", -1}, {"(1.6)", 1}, {"(2.1)", 2}, {"(2.2)", 1},
                                                     {"(3.1)", 0}, {"(3.2)", 1}, {"(4.1)", 1}};
        auto it = c.find(label);
        if (it != c.end()) return 2 * P(2 * l - 2) + S(l, 2 * l - 3) + it->second * P(l - 1) + S(0, l - 2);
    }
    throw std::invalid_argument("no size row " + label);
}

BaseKind kind_of(Family f) {
    switch (f) {
        case Family::parabolic: return BaseKind::parabolic;
        case Family::hyperbolic: return BaseKind::hyperbolic;
        case Family::elliptic: return BaseKind::elliptic;
    }
    return BaseKind::empty_or_degenerate;
}

std::int64_t section_points(const SectionType& t, int dim, int q) {
    return static_cast<std::int64_t>(cone_size(t.vertex_dim, kind_of(t.base), dim, q));
}

// Exact num / den; a printed fraction that does not divide is a finding, not a rounding.
I exact(I num, I den, const char* where) {
    if (num % den != 0) throw std::domain_error(std::string("count term is not integral in ") + where);
    return num / den;
}

std::int64_t narrow(I v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("count exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

SectionType section_type(const QuadricClass& c) { return {c.vertex_dim, c.base_family()}; }

}  // namespace

std::vector<SizeRow> table_sizes(Family family, int l, int q, bool force) {
    check_grid(l, q, force);
    const int N = ambient_dimension(family, l);
    const std::int64_t n = static_cast<std::int64_t>(quadric_size(family, N, q));
    std::vector<SizeRow> rows;
    for (const auto& pattern : row_patterns(family)) {
        SizeRow r;
        r.pair_case = {family, pattern.label, {pattern.first, pattern.second, pattern.meet}};
        r.size = printed_size(family, pattern.label, l, q);
        r.weight = n - r.size;
        r.section_size = section_points(pattern.first, N - 1, q) + section_points(pattern.second, N - 1, q) -
                         section_points(pattern.meet, N - 2, q);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<WeightRow> table_weights_counts(Family family, int l, int q, std::optional<ParabolicVariant> variant,
                                            bool force) {
    check_grid(l, q, force);
    const I Q = q;
    auto P = [&](int e) -> I { return ipow(q, e); };
    std::vector<WeightRow> rows;
    auto add = [&](std::vector<std::string> cases, I weight, I count) {
        std::string label;
        for (const auto& c : cases) label += (label.empty() ? "" : "+") + c;
        rows.push_back({label, std::move(cases), narrow(weight), narrow(count)});
    };

    if (family == Family::hyperbolic) {
        const I w1 = P(2 * l) - P(2 * l - 1) - P(l) + P(l - 1);
        const I base = (P(3 * l) + P(2 * l)) * (P(l + 1) - 1);
        add({"(1.3)"}, w1, exact(base, 2, "(1.3)"));
        add({"(2.1)", "(3.2)"}, w1 + P(l) - P(l - 1),
            exact((P(2 * l + 1) - Q) * (P(l + 1) - 1) * (P(l - 1) + 1), 2 * (Q - 1), "(2.1)+(3.2)") +
                (P(3 * l - 1) - P(l - 1)) * (P(l + 2) - Q));
        add({"(1.2)"}, w1 + P(l), base * (Q - 1));
        add({"(4.1)"}, w1 + 2 * P(l) - 2 * P(l - 1),
            exact(P(2 * l + 1) * (P(l + 1) - 1) * (P(l) - 1) * (Q - 1), 4, "(4.1)"));
        add({"(3.1)"}, w1 + 2 * P(l) - P(l - 1),
            exact((P(3 * l - 1) - P(l - 1)) * (P(l + 1) - 1) * (Q * Q - Q), 2, "(3.1)"));
        add({"(1.1)"}, w1 + 2 * P(l), exact(base * (Q * Q - 3 * Q + 2), 4, "(1.1)"));
        return rows;
    }

    if (family == Family::elliptic) {
        const I w1 = P(2 * l) - P(2 * l - 1) - P(l) - P(l - 1);
        const I base = (P(3 * l + 1) + P(2 * l)) * (P(l) - 1);
        add({"(1.1)"}, w1, exact(base * (Q * Q - 3 * Q + 2), 4, "(1.1)"));
        add({"(2.1)"}, w1 + P(l - 1), exact((P(2 * l + 1) + P(l)) * (P(2 * l) - 1) * (Q - 1), 2, "(2.1)"));
        add({"(4.1)"}, w1 + 2 * P(l - 1), exact(P(2 * l + 1) * (P(l + 1) + 1) * (P(l) + 1) * (Q - 1), 4, "(4.1)"));
        add({"(1.2)"}, w1 + P(l), base * (Q - 1));
        add({"(2.2)", "(3.1)"}, w1 + P(l) + P(l - 1),
            (P(2 * l) + P(l - 1)) * (P(2 * l) - 1) * Q +
                exact((P(l + 2) + Q) * (P(2 * l) - 1) * (P(l - 1) - 1), 2 * (Q - 1), "(2.2)+(3.1)"));
        add({"(1.3)"}, w1 + 2 * P(l), exact(base, 2, "(1.3)"));
        return rows;
    }

    const ParabolicVariant actual = q % 2 ? ParabolicVariant::q_odd : ParabolicVariant::q_even;
    if (variant && *variant != actual) throw std::invalid_argument("parabolic count table does not match the parity of q");
    const I w1 = P(2 * l - 1) - P(2 * l - 2) - 2 * P(l - 1);
    const I A = P(2 * l) - 1;
    const I h = P(2 * l - 1);
    const I k = P(l - 1);
    const I tan_hyp = exact(A * h * (Q - 1), 2, "(1.3)");
    const I pqp = exact(P(l) * (k + 1) * A * (Q - 1), 4, "(2.1)");
    const I pqm = exact(P(l) * (k - 1) * A * (Q - 1), 4, "(3.1)");
    if (actual == ParabolicVariant::q_odd) {
        const I outer = exact(A * h * (Q - 1) * (Q - 3), 16, "(1.1)") + exact(h * A * (Q - 1) * (Q - 1), 16, "(1.1)");
        add({"(1.1)"}, w1, outer);
        add({"(1.3)", "(2.1)"}, w1 + k, tan_hyp + pqp);
        add({"(1.2)", "(1.6)", "(2.2)", "(3.2)", "(4.1)"}, w1 + 2 * k,
            exact(A * h * (Q - 1) * (Q - 1), 8, "(1.2)") + exact(h * A * (Q * Q - 1), 8, "(1.2)") +
                exact(A * h, 2, "(1.6)") + exact(P(l) * (k + 1) * A, 2, "(2.2)") + exact(P(l) * (k - 1) * A, 2, "(3.2)") +
                exact(A * (P(2 * l - 2) - 1) * Q, 2 * (Q - 1), "(4.1)"));
        add({"(1.4)", "(3.1)"}, w1 + 3 * k, tan_hyp + pqm);
        add({"(1.5)"}, w1 + 4 * k, outer);
    } else {
        const I outer = exact(A * h * (Q - 2) * (Q - 1), 8, "(1.1)");
        add({"(1.1)"}, w1, outer);
        add({"(1.3)", "(2.1)"}, w1 + k, tan_hyp + pqp);
        add({"(1.2)", "(1.6)", "(4.1)", "(2.2)", "(3.2)"}, w1 + 2 * k,
            exact(A * P(2 * l) * (Q - 1), 4, "(1.2)") + exact(h * A, 2, "(1.6)") +
                exact(Q * (P(2 * l - 2) - 1) * A, 2 * (Q - 1), "(4.1)") + exact(P(l) * (k + 1) * A, 2, "(2.2)") +
                exact(P(l) * (k - 1) * A, 2, "(3.2)"));
        add({"(1.4)", "(3.1)"}, w1 + 3 * k, tan_hyp + pqm);
        add({"(1.5)"}, w1 + 4 * k, outer);
    }
    return rows;
}

PairSections measure_pair(const QuadraticForm& base, const Hyperplane& h1, const Hyperplane& h2) {
    const Geometry& g = base.geometry();
    return {classify_section(base, h1), classify_section(base, h2), classify_on(base, intersect(h1, h2, g))};
}

namespace {

std::optional<std::string> match_row(const std::vector<RowPattern>& patterns, const SectionType& a, const SectionType& b,
                                     const SectionType& s) {
    for (const auto& r : patterns) {
        if (!(r.meet == s)) continue;
        if ((r.first == a && r.second == b) || (r.first == b && r.second == a)) return std::string(r.label);
    }
    return std::nullopt;
}

Family checked_family(const QuadraticForm& base) {
    const QuadricClass cls = classify(base);
    if (cls.singular()) throw std::invalid_argument("pair classification needs a non-singular quadric");
    const Family f = cls.base_family();
    const int N = base.dimension();
    if (N < 4) throw std::invalid_argument("pair tables need N >= 4");
    if ((f == Family::parabolic) != (N % 2 == 0)) throw std::invalid_argument("family does not match N");
    return f;
}

}  // namespace

PairCase classify_pair(const QuadraticForm& base, const Hyperplane& h1, const Hyperplane& h2) {
    if (h1 == h2) throw std::invalid_argument("hyperplanes are equal");
    const Family family = checked_family(base);
    const PairSections m = measure_pair(base, h1, h2);
    const SectionType a = section_type(m.first), b = section_type(m.second), s = section_type(m.meet);
    const auto patterns = row_patterns(family);
    const auto label = match_row(patterns, a, b, s);
    if (!label) throw std::logic_error("hyperplane pair matches no table row");
    for (const auto& r : patterns)
        if (*label == r.label) return {family, *label, {r.first, r.second, r.meet}};
    throw std::logic_error("unreachable");
}

bool Reconciliation::sizes_ok() const {
    if (unclassified) return false;
    return std::all_of(sizes.begin(), sizes.end(), [](const SizeCheck& s) { return s.match; });
}

bool Reconciliation::counts_ok() const {
    return std::all_of(counts.begin(), counts.end(), [](const CountCheck& c) { return c.match && c.weight_consistent; });
}

bool Reconciliation::spectrum_ok() const {
    return std::all_of(spectrum.begin(), spectrum.end(), [](const SpectrumLine& s) { return s.match; });
}

std::vector<SpectrumLine> reconcile_spectrum(const std::vector<WeightRow>& rows, const WeightSpectrum& spectrum) {
    std::map<std::int64_t, SpectrumLine> by_weight;
    for (const auto& r : rows) {
        auto& line = by_weight[r.weight];
        line.weight = r.weight;
        line.rows.push_back(r.label);
        line.predicted_count += r.count;
    }
    std::vector<SpectrumLine> out;
    for (auto& [w, line] : by_weight) {
        line.measured_count = w > 0 ? spectrum.count(static_cast<int>(w)) : 0;
        line.match = line.predicted_count >= 0 && static_cast<std::uint64_t>(line.predicted_count) == line.measured_count;
        out.push_back(std::move(line));
    }
    return out;
}

namespace {

constexpr std::size_t kMaskWords = 4;
using PointMask = std::array<std::uint64_t, kMaskWords>;

struct CensusPart {
    std::map<std::string, std::pair<std::uint64_t, std::set<std::int64_t>>> cases;
    std::uint64_t pairs = 0;
    std::uint64_t unclassified = 0;
};

}  // namespace

Reconciliation verify_family(Family family, int l, int q, const VerifyOptions& options) {
    const auto size_rows = table_sizes(family, l, q, options.force);
    const auto weight_rows = table_weights_counts(family, l, q, std::nullopt, options.force);

    Reconciliation rec;
    rec.family = family;
    rec.l = l;
    rec.q = q;
    rec.N = ambient_dimension(family, l);
    const GeometryPtr geo = make_geometry(make_field_of_order(q), rec.N);
    const QuadraticForm base = standard_form(family, geo);
    const auto columns = point_indices(base);
    rec.quadric_points = columns.size();
    if (columns.size() > 64 * kMaskWords) throw std::length_error("quadric too large for the pair census");

    const auto hyperplanes = enumerate_hyperplanes(*geo);
    rec.hyperplanes = hyperplanes.size();
    std::vector<PointMask> masks(hyperplanes.size(), PointMask{});
    std::vector<SectionType> sections(hyperplanes.size());
    for (std::size_t h = 0; h < hyperplanes.size(); ++h) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            if (incident(geo->field(), hyperplanes[h], geo->point(columns[c]))) masks[h][c / 64] |= std::uint64_t{1} << (c % 64);
        sections[h] = section_type(classify_section(base, hyperplanes[h]));
    }

    const auto patterns = row_patterns(family);
    auto parts = run_shards<CensusPart>(hyperplanes.size(), options.threads, [&](std::uint64_t b, std::uint64_t e) {
        CensusPart part;
        for (std::size_t i = b; i < e; ++i) {
            for (std::size_t j = i + 1; j < hyperplanes.size(); ++j) {
                ++part.pairs;
                const SectionType s = section_type(classify_on(base, intersect(hyperplanes[i], hyperplanes[j], *geo)));
                const auto label = match_row(patterns, sections[i], sections[j], s);
                if (!label) {
                    ++part.unclassified;
                    continue;
                }
                std::int64_t size = 0;
                for (std::size_t w = 0; w < kMaskWords; ++w) size += std::popcount(masks[i][w] | masks[j][w]);
                auto& slot = part.cases[*label];
                ++slot.first;
                slot.second.insert(size);
            }
        }
        return part;
    });

    std::map<std::string, std::pair<std::uint64_t, std::set<std::int64_t>>> cases;
    for (const auto& p : parts) {
        rec.pairs += p.pairs;
        rec.unclassified += p.unclassified;
        for (const auto& [label, slot] : p.cases) {
            auto& into = cases[label];
            into.first += slot.first;
            into.second.insert(slot.second.begin(), slot.second.end());
        }
    }

    std::map<std::string, std::int64_t> size_of;
    for (const auto& r : size_rows) {
        SizeCheck c;
        c.label = r.pair_case.label;
        c.predicted_size = r.size;
        c.section_size = r.section_size;
        if (auto it = cases.find(c.label); it != cases.end()) {
            c.pairs = it->second.first;
            c.measured_sizes = it->second.second;
        }
        c.match = r.section_size == r.size &&
                  std::all_of(c.measured_sizes.begin(), c.measured_sizes.end(), [&](std::int64_t s) { return s == r.size; });
        if (c.pairs == 0) rec.notes.push_back("no pair realizes case " + c.label);
        size_of[c.label] = r.size;
        rec.sizes.push_back(std::move(c));
    }

    const std::int64_t n = static_cast<std::int64_t>(rec.quadric_points);
    for (const auto& r : weight_rows) {
        CountCheck c;
        c.label = r.label;
        c.weight = r.weight;
        c.predicted_count = r.count;
        c.weight_consistent = true;
        for (const auto& label : r.cases) {
            const std::uint64_t k = cases.count(label) ? cases[label].first * static_cast<std::uint64_t>(q - 1) : 0;
            c.split.emplace_back(label, k);
            c.measured_count += k;
            c.weight_consistent = c.weight_consistent && r.weight == n - size_of.at(label);
        }
        c.match = r.count >= 0 && static_cast<std::uint64_t>(r.count) == c.measured_count;
        rec.counts.push_back(std::move(c));
    }

    if (options.spectrum) {
        const FunctionalCode code = build_code(base);
        const std::uint64_t space = codeword_space_size(code);
        // Brute force stays at desk scale unless forced.
        constexpr std::uint64_t kDeskBudget = std::uint64_t{1} << 28;
        if (space > kDeskBudget && !options.force) {
            rec.spectrum_skipped = "q^dim = " + std::to_string(space) + " codewords exceeds the desk budget of 2^28";
        } else {
            std::int64_t max_w = 0;
            for (const auto& r : weight_rows) max_w = std::max(max_w, r.weight);
            EnumerationOptions eo;
            eo.max_weight = static_cast<int>(max_w);
            eo.threads = options.threads;
            eo.force = options.force;
            rec.spectrum = reconcile_spectrum(weight_rows, weight_spectrum(code, eo));
        }
    }
    return rec;
}

bool divisibility_check(const WeightSpectrum& spectrum, int l, int q) {
    if (l < 1) throw std::invalid_argument("divisibility needs l >= 1");
    const std::int64_t m = ipow(q, l - 1);
    for (const auto& [w, c] : spectrum.counts)
        if (c > 0 && w % m != 0) return false;
    return true;
}

}  // namespace quadcode
