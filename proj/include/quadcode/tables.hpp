#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quadcode/code.hpp"
#include "quadcode/quadric.hpp"

namespace quadcode {

/// A cone pi_s B with B non-singular of the given family, as it appears in the
/// section columns of the pair tables. vertex_dim -1 is a non-singular quadric.
struct SectionType {
    int vertex_dim = -1;
    Family base = Family::parabolic;

    bool operator==(const SectionType&) const = default;
};

/// Short name such as "Q+(3)", "P Q(2)" or "L Q-(1)" for a section living in PG(dim, q).
std::string describe(const SectionType& t, int dim);

/// Case of an unordered hyperplane pair {Pi1, Pi2} with respect to a
/// non-singular quadric Q. sections = (Pi1 ∩ Q, Pi2 ∩ Q, Pi1 ∩ Pi2 ∩ Q); the
/// two hyperplane sections are unordered.
struct PairCase {
    Family family = Family::parabolic;
    std::string label;  // "(1.3)"
    std::array<SectionType, 3> sections;
};

/// One row of the size tables.
struct SizeRow {
    PairCase pair_case;
    std::int64_t size = 0;    // printed closed form
    std::int64_t weight = 0;  // |Q| - size
    /// |Pi1 ∩ Q| + |Pi2 ∩ Q| - |Pi1 ∩ Pi2 ∩ Q| from the cone sizes, an
    /// independent route to the same number.
    std::int64_t section_size = 0;
};

/// One row of the weight/count tables. Rows printed merged stay merged.
struct WeightRow {
    std::string label;               // "(2.1)+(3.2)"
    std::vector<std::string> cases;  // {"(2.1)", "(3.2)"}
    std::int64_t weight = 0;
    std::int64_t count = 0;
};

/// Which parabolic count table to evaluate; must match the parity of q.
enum class ParabolicVariant { q_odd, q_even };

/// Throws std::invalid_argument when l < 2, and when (l, q) lies outside the
/// verified grid l = 2, q in {2, 3} unless force is set.
std::vector<SizeRow> table_sizes(Family family, int l, int q, bool force = false);

/// Throws std::invalid_argument as table_sizes, on a parity mismatch, and
/// std::domain_error when a printed fraction does not divide exactly.
std::vector<WeightRow> table_weights_counts(Family family, int l, int q,
                                            std::optional<ParabolicVariant> variant = std::nullopt,
                                            bool force = false);

/// Ambient dimension of the family's quadric for a given l: 2l+1 or 2l.
int ambient_dimension(Family family, int l);

/// Measured section classes of a pair.
struct PairSections {
    QuadricClass first;
    QuadricClass second;
    QuadricClass meet;
};
PairSections measure_pair(const QuadraticForm& base, const Hyperplane& h1, const Hyperplane& h2);

/// Row of the family's pair table whose section pattern matches the pair.
/// Throws std::invalid_argument for equal hyperplanes or an unsupported base,
/// std::logic_error when no row matches.
PairCase classify_pair(const QuadraticForm& base, const Hyperplane& h1, const Hyperplane& h2);

struct VerifyOptions {
    bool spectrum = true;  // also reconcile against the enumerated spectrum
    unsigned threads = 1;
    bool force = false;
};

struct SizeCheck {
    std::string label;
    std::int64_t predicted_size = 0;
    std::int64_t section_size = 0;
    std::set<std::int64_t> measured_sizes;
    std::uint64_t pairs = 0;
    bool match = false;
};

struct CountCheck {
    std::string label;
    std::int64_t weight = 0;
    std::int64_t predicted_count = 0;
    std::uint64_t measured_count = 0;  // pairs x (q-1)
    std::vector<std::pair<std::string, std::uint64_t>> split;  // per unmerged case
    bool weight_consistent = false;  // weight == |Q| - size for every case
    bool match = false;
};

struct SpectrumLine {
    std::int64_t weight = 0;
    std::vector<std::string> rows;
    std::int64_t predicted_count = 0;
    std::uint64_t measured_count = 0;
    bool match = false;
};

struct Reconciliation {
    Family family = Family::parabolic;
    int l = 0;
    int q = 0;
    int N = 0;
    std::uint64_t quadric_points = 0;
    std::uint64_t hyperplanes = 0;
    std::uint64_t pairs = 0;
    std::uint64_t unclassified = 0;
    std::vector<SizeCheck> sizes;
    std::vector<CountCheck> counts;
    std::vector<SpectrumLine> spectrum;
    std::optional<std::string> spectrum_skipped;
    std::vector<std::string> notes;

    bool sizes_ok() const;
    bool counts_ok() const;
    bool spectrum_ok() const;
    bool ok() const { return sizes_ok() && counts_ok() && spectrum_ok(); }
};

/// Census of all unordered hyperplane pairs plus the three-way reconciliation
/// of pair counts, printed counts and (optionally) the brute-force spectrum.
Reconciliation verify_family(Family family, int l, int q, const VerifyOptions& options = {});

/// The same reconciliation of printed counts against an already computed spectrum.
std::vector<SpectrumLine> reconcile_spectrum(const std::vector<WeightRow>& rows, const WeightSpectrum& spectrum);

/// True iff every weight with nonzero count is divisible by q^(l-1).
bool divisibility_check(const WeightSpectrum& spectrum, int l, int q);

}  // namespace quadcode
