#include "quadcode/pencil.hpp"

#include <bit>
#include <random>
#include <stdexcept>

#include "quadcode/code.hpp"
#include "quadcode/parallel.hpp"
#include "quadcode/series.hpp"

namespace quadcode {

Pencil make_pencil(const QuadraticForm& f1, const QuadraticForm& f2) {
    if (f1.dimension() != f2.dimension() || f1.field().order() != f2.field().order())
        throw std::invalid_argument("pencil forms live on different geometries");
    if (f1.is_zero() || f2.is_zero()) throw std::invalid_argument("pencil needs nonzero forms");
    if (f1.proportional_to(f2)) throw std::invalid_argument("pencil forms are proportional");
    Pencil p{f1, f2, {}};
    const int q = f1.field().order();
    p.members.reserve(q + 1);
    for (int t = 0; t < q; ++t) p.members.push_back(f1 + f2.scaled(static_cast<Element>(t)));
    p.members.push_back(f2);
    return p;
}

std::uint64_t intersection_size(const QuadraticForm& f1, const QuadraticForm& f2) {
    const Geometry& g = f1.geometry();
    if (f2.dimension() != g.dimension() || f2.field().order() != g.q())
        throw std::invalid_argument("forms live on different geometries");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < g.point_count(); ++i) {
        auto x = g.point(i);
        v += f1.evaluate(x) == 0 && f2.evaluate(x) == 0;
    }
    return v;
}

bool verify_counting_identity(const Pencil& p) {
    std::uint64_t sum = 0;
    for (const auto& m : p.members) sum += point_count(m);
    const auto& g = p.f1.geometry();
    return sum == g.point_count() + static_cast<std::uint64_t>(g.q()) * intersection_size(p.f1, p.f2);
}

ReducibleMembers two_hyperplane_member(const Pencil& p) {
    ReducibleMembers out;
    for (const auto& m : p.members) {
        const auto kind = reducible_kind(m);
        if (!kind) continue;
        if (*kind == BaseKind::two_distinct_hyperplanes && !out.two_distinct) out.two_distinct = m;
        if (*kind == BaseKind::repeated_hyperplane && !out.repeated) out.repeated = m;
        if (*kind == BaseKind::conjugate_hyperplane_pair && !out.conjugate) out.conjugate = m;
    }
    return out;
}

PencilReport report_pencil(const Pencil& p) {
    PencilReport r;
    r.v_size = intersection_size(p.f1, p.f2);
    for (const auto& m : p.members) r.member_classes.push_back(classify(m));
    const auto red = two_hyperplane_member(p);
    r.has_two_hyperplanes = red.two_distinct.has_value();
    r.witness = red.two_distinct;
    return r;
}

std::string_view to_string(ThresholdKind k) {
    switch (k) {
        case ThresholdKind::general_N: return "general_N";
        case ThresholdKind::hyperbolic5_corollary: return "hyperbolic5_corollary";
        case ThresholdKind::parabolic4: return "parabolic4";
        case ThresholdKind::hyperbolic5_line_in_v: return "hyperbolic5_line_in_v";
        case ThresholdKind::hyperbolic5_bisecant_line: return "hyperbolic5_bisecant_line";
    }
    return "?";
}

ThresholdKind parse_threshold_kind(std::string_view name) {
    for (auto k : {ThresholdKind::general_N, ThresholdKind::hyperbolic5_corollary, ThresholdKind::parabolic4,
                   ThresholdKind::hyperbolic5_line_in_v, ThresholdKind::hyperbolic5_bisecant_line})
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown threshold kind: " + std::string(name));
}

std::int64_t threshold(ThresholdKind kind, int N, int q) {
    const std::int64_t Q = q;
    switch (kind) {
        case ThresholdKind::general_N: {
            if (N < 5) throw std::invalid_argument("general_N threshold needs N >= 5");
            std::int64_t t = ipow(Q, N - 2) + 3 * ipow(Q, N - 3) + 3 * ipow(Q, N - 4) + 1;
            for (int j = N - 5; j >= 1; --j) t += 2 * ipow(Q, j);
            return t;
        }
        case ThresholdKind::hyperbolic5_corollary:
            if (N != 5) throw std::invalid_argument("hyperbolic5 thresholds need N = 5");
            return Q * Q * Q + 5 * Q * Q + 1;
        case ThresholdKind::hyperbolic5_line_in_v:
            if (N != 5) throw std::invalid_argument("hyperbolic5 thresholds need N = 5");
            return Q * Q * Q + 4 * Q * Q + 1;
        case ThresholdKind::hyperbolic5_bisecant_line:
            if (N != 5) throw std::invalid_argument("hyperbolic5 thresholds need N = 5");
            return Q * Q * Q + 5 * Q * Q - Q + 1;
        case ThresholdKind::parabolic4:
            if (N != 4) throw std::invalid_argument("parabolic4 threshold needs N = 4");
            return Q * Q + 11 * Q + 1;
    }
    throw std::invalid_argument("unknown threshold kind");
}

std::optional<ThresholdKind> default_threshold_kind(Family family, int N) {
    if (N >= 6) return ThresholdKind::general_N;
    if (N == 5 && family == Family::elliptic) return ThresholdKind::general_N;
    if (N == 5 && family == Family::hyperbolic) return ThresholdKind::hyperbolic5_corollary;
    if (N == 4 && family == Family::parabolic) return ThresholdKind::parabolic4;
    return std::nullopt;
}

namespace {

void check_scan_scope(Family family, int N, ThresholdKind kind) {
    bool ok = false;
    switch (kind) {
        case ThresholdKind::general_N: ok = N >= 6 || (N == 5 && family == Family::elliptic); break;
        case ThresholdKind::hyperbolic5_corollary: ok = N == 5 && family == Family::hyperbolic; break;
        case ThresholdKind::parabolic4: ok = N == 4 && family == Family::parabolic; break;
        default: ok = false;
    }
    if (!ok)
        throw std::invalid_argument("threshold " + std::string(to_string(kind)) + " does not apply to " +
                                    std::string(to_string(family)) + " N=" + std::to_string(N));
}

// Scan result for one shard.
struct Partial {
    std::uint64_t scanned = 0;
    std::uint64_t skipped = 0;
    std::uint64_t above = 0;
    std::uint64_t only_degenerate = 0;
    std::vector<std::string> violations;
    std::int64_t max_v = -1;
    std::optional<std::string> witness;
};

bool pencil_all_irreducible(const QuadraticForm& base, const QuadraticForm& g) {
    for (const auto& m : make_pencil(base, g).members)
        if (reducible_kind(m)) return false;
    return true;
}

void examine(const QuadraticForm& base, const QuadraticForm& g, std::int64_t v, std::int64_t thr, Partial& part) {
    ++part.scanned;
    if (v > thr) {
        ++part.above;
        const auto red = two_hyperplane_member(make_pencil(base, g));
        if (!red.two_distinct) {
            if (red.any()) ++part.only_degenerate;
            part.violations.push_back(g.to_line());
        }
    }
    if (v > part.max_v && pencil_all_irreducible(base, g)) {
        part.max_v = v;
        part.witness = g.to_line();
    }
}

Partial merge(std::vector<Partial>& parts) {
    Partial all;
    for (auto& p : parts) {
        all.scanned += p.scanned;
        all.skipped += p.skipped;
        all.above += p.above;
        all.only_degenerate += p.only_degenerate;
        for (auto& v : p.violations) all.violations.push_back(std::move(v));
        // Shards are in index order, so strict > keeps the earliest witness.
        if (p.max_v > all.max_v) {
            all.max_v = p.max_v;
            all.witness = std::move(p.witness);
        }
    }
    return all;
}

constexpr std::uint64_t kSampleBlock = 4096;

Element uniform_element(std::mt19937_64& rng, int q) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % static_cast<std::uint64_t>(q);
    for (;;) {
        const std::uint64_t r = rng();
        if (r < limit) return static_cast<Element>(r % static_cast<std::uint64_t>(q));
    }
}

}  // namespace

ScanReport scan_theorem(const QuadraticForm& base, ThresholdKind kind, const ScanOptions& options) {
    const QuadricClass cls = classify(base);
    if (cls.singular()) throw std::invalid_argument("scan needs a non-singular base quadric");
    const Family family = cls.base_family();
    const int N = base.dimension();
    const int q = base.field().order();
    check_scan_scope(family, N, kind);

    ScanReport report;
    report.kind = kind;
    report.threshold = threshold(kind, N, q);
    report.sampled = options.sample.has_value();
    report.seed = options.sample ? options.seed : 0;

    const FunctionalCode code = build_code(base);
    const std::int64_t n = static_cast<std::int64_t>(code.length());
    std::vector<Partial> parts;

    if (!options.sample) {
        check_budget(code, options.force);
        const std::uint64_t total = codeword_space_size(code);
        const CodewordWalker walker(code);
        parts = run_shards<Partial>(total, options.threads, [&](std::uint64_t b, std::uint64_t e) {
            Partial part;
            // Index 0 is the zero codeword, i.e. a form proportional to the base (or zero).
            walker.walk(std::max<std::uint64_t>(b, 1), std::max<std::uint64_t>(e, 1),
                        [&](std::uint64_t, int w, std::span<const Element> digits) {
                            const std::int64_t v = n - w;
                            if (v <= report.threshold && v <= part.max_v) {
                                ++part.scanned;
                                return;
                            }
                            examine(base, form_from_digits(code, digits), v, report.threshold, part);
                        });
            return part;
        });
    } else {
        const std::uint64_t samples = *options.sample;
        const std::uint64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
        const std::size_t coeffs = QuadraticForm::coefficient_count(N);
        const Geometry& geo = base.geometry();
        parts = run_shards<Partial>(blocks, options.threads, [&](std::uint64_t b, std::uint64_t e) {
            Partial part;
            for (std::uint64_t blk = b; blk < e; ++blk) {
                std::seed_seq sq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                                 static_cast<std::uint32_t>(blk), static_cast<std::uint32_t>(blk >> 32)};
                std::mt19937_64 rng(sq);
                const std::uint64_t end = std::min(samples, (blk + 1) * kSampleBlock);
                for (std::uint64_t s = blk * kSampleBlock; s < end; ++s) {
                    Vector c(coeffs);
                    for (auto& x : c) x = uniform_element(rng, q);
                    QuadraticForm g(base.geometry_ptr(), std::move(c));
                    if (g.is_zero() || g.proportional_to(base)) {
                        ++part.skipped;
                        continue;
                    }
                    std::int64_t v = 0;
                    for (std::size_t col : code.columns()) v += g.evaluate(geo.point(col)) == 0;
                    if (v <= report.threshold && v <= part.max_v) {
                        ++part.scanned;
                        continue;
                    }
                    examine(base, g, v, report.threshold, part);
                }
            }
            return part;
        });
    }

    Partial all = merge(parts);
    report.scanned = all.scanned;
    report.skipped = all.skipped;
    report.above_threshold = all.above;
    report.only_degenerate_pair = all.only_degenerate;
    report.violations = std::move(all.violations);
    report.max_v_irreducible = all.max_v;
    report.max_v_witness = std::move(all.witness);

    if (report.threshold >= n)
        report.notes.push_back("threshold " + std::to_string(report.threshold) + " is at least |Q| = " +
                               std::to_string(n) + ", so no intersection can exceed it");
    else if (report.above_threshold == 0)
        report.notes.push_back("no scanned pencil has |V| above the threshold, so the check is vacuous here");
    if (kind == ThresholdKind::general_N && N == 5)
        report.notes.push_back("N = 5: the 2q^j run of the general bound is empty, giving q^3+3q^2+3q+1");
    if (kind == ThresholdKind::hyperbolic5_corollary)
        report.notes.push_back("Q+(5,q) is outside the general bound; the q^3+5q^2+1 threshold applies");
    if (!report.sampled)
        report.notes.push_back("full scan: one representative form per nonzero codeword");
    return report;
}

IdentityCensus counting_identity_census_binary(const GeometryPtr& geometry) {
    const Geometry& g = *geometry;
    if (g.q() != 2) throw std::invalid_argument("binary census needs q = 2");
    if (g.dimension() > 4) throw std::invalid_argument("binary census is limited to N <= 4");
    const std::size_t P = g.point_count();
    const std::size_t C = QuadraticForm::coefficient_count(g.dimension());
    const std::uint64_t forms = std::uint64_t{1} << C;
    const std::uint64_t full = P == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << P) - 1;

    // Zero-set mask of every form, by direct evaluation.
    std::vector<std::uint64_t> zeros(forms);
    for (std::uint64_t c = 0; c < forms; ++c) {
        Vector coeffs(C);
        for (std::size_t k = 0; k < C; ++k) coeffs[k] = (c >> k) & 1;
        const QuadraticForm f(geometry, std::move(coeffs));
        std::uint64_t z = 0;
        for (std::size_t i = 0; i < P; ++i)
            if (f.evaluate(g.point(i)) == 0) z |= std::uint64_t{1} << i;
        zeros[c] = z & full;
    }

    IdentityCensus out;
    for (std::uint64_t a = 1; a < forms; ++a) {
        const std::uint64_t za = zeros[a];
        const int sa = std::popcount(za);
        for (std::uint64_t b = a + 1; b < forms; ++b) {
            const std::uint64_t zb = zeros[b];
            const int lhs = sa + std::popcount(zb) + std::popcount(zeros[a ^ b]);
            const int rhs = static_cast<int>(P) + 2 * std::popcount(za & zb);
            ++out.pairs;
            out.failures += lhs != rhs;
        }
    }
    return out;
}

}  // namespace quadcode
