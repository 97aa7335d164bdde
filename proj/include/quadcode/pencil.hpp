#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadcode/quadric.hpp"

namespace quadcode {

/// The q+1 forms lambda f1 + mu f2 up to scalars, listed as f1 + t f2 for t
/// in encoding order, then f2.
struct Pencil {
    QuadraticForm f1;
    QuadraticForm f2;
    std::vector<QuadraticForm> members;
};

/// Throws std::invalid_argument when either form is zero or they are
/// proportional.
Pencil make_pencil(const QuadraticForm& f1, const QuadraticForm& f2);

/// |Z(f1) ∩ Z(f2)| by a scan over PG(N,q).
std::uint64_t intersection_size(const QuadraticForm& f1, const QuadraticForm& f2);

/// Sum of member sizes == |PG(N,q)| + q |V|.
bool verify_counting_identity(const Pencil& p);

/// Rank <= 2 members of a pencil, first in member order for each kind.
struct ReducibleMembers {
    std::optional<QuadraticForm> two_distinct;
    std::optional<QuadraticForm> repeated;
    std::optional<QuadraticForm> conjugate;

    bool any() const { return two_distinct || repeated || conjugate; }
};

ReducibleMembers two_hyperplane_member(const Pencil& p);

struct PencilReport {
    std::uint64_t v_size = 0;
    std::vector<QuadricClass> member_classes;
    bool has_two_hyperplanes = false;
    std::optional<QuadraticForm> witness;
};

PencilReport report_pencil(const Pencil& p);

/// Intersection-size thresholds above which a pencil must contain a pair of
/// distinct hyperplanes.
enum class ThresholdKind {
    general_N,                 // N >= 6, or N = 5 with an elliptic base
    hyperbolic5_corollary,     // Q+(5,q): q^3 + 5q^2 + 1
    parabolic4,                // Q(4,q): q^2 + 11q + 1
    hyperbolic5_line_in_v,     // Q+(5,q), vertex line inside V: q^3 + 4q^2 + 1
    hyperbolic5_bisecant_line, // Q+(5,q), vertex line meets V twice: q^3 + 5q^2 - q + 1
};

std::string_view to_string(ThresholdKind k);
ThresholdKind parse_threshold_kind(std::string_view name);

/// general_N expands q^{N-2} + 3q^{N-3} + 3q^{N-4} + 2q^{N-5} + ... + 2q + 1
/// as one term each of q^{N-2}, 3q^{N-3}, 3q^{N-4}, then 2q^j for
/// j = N-5 down to 1, then +1. For N = 5 the 2q^j run is empty.
/// Throws std::invalid_argument for an unsupported (kind, N).
std::int64_t threshold(ThresholdKind kind, int N, int q);

/// The threshold kind that applies to a family and dimension, if any.
std::optional<ThresholdKind> default_threshold_kind(Family family, int N);

struct ScanOptions {
    std::optional<std::uint64_t> sample;  // number of random forms; full scan when empty
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool force = false;
};

struct ScanReport {
    ThresholdKind kind = ThresholdKind::general_N;
    std::int64_t threshold = 0;
    bool sampled = false;
    std::uint64_t seed = 0;
    std::uint64_t scanned = 0;           // pencils examined
    std::uint64_t skipped = 0;           // sampled forms proportional to the base (no pencil)
    std::uint64_t above_threshold = 0;   // pencils with |V| > threshold
    std::uint64_t only_degenerate_pair = 0;  // above threshold, no distinct pair but a repeated/conjugate member
    std::vector<std::string> violations; // form lines of Q' with no distinct hyperplane pair
    std::int64_t max_v_irreducible = -1; // max |V| over pencils with no rank <= 2 member
    std::optional<std::string> max_v_witness;
    std::vector<std::string> notes;

    bool operator==(const ScanReport&) const = default;
};

/// For every Q' in scope (all codewords of C_2(Q) via their basis-monomial
/// representative, or a fixed-seed uniform sample of forms) checks that
/// |Q ∩ Q'| > threshold forces a pair of distinct hyperplanes into the pencil.
/// Throws std::invalid_argument when the kind does not apply to the base and
/// std::length_error when a full scan exceeds the budget.
ScanReport scan_theorem(const QuadraticForm& base, ThresholdKind kind, const ScanOptions& options);

/// Exhaustive counting-identity check over every pair of distinct nonzero
/// forms on PG(N,2), N <= 4 (the third member is their sum).
struct IdentityCensus {
    std::uint64_t pairs = 0;
    std::uint64_t failures = 0;
};
IdentityCensus counting_identity_census_binary(const GeometryPtr& geometry);

}  // namespace quadcode
