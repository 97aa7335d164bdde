#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "quadcode/code.hpp"
#include "quadcode/pencil.hpp"
#include "quadcode/tables.hpp"

namespace quadcode {

using Json = nlohmann::ordered_json;

/// Parameters of one batch job, embedded in every report. The thread count is
/// deliberately absent: output must not depend on it.
struct JobConfig {
    std::string command;
    std::optional<int> q;
    std::optional<int> N;
    std::optional<int> l;
    std::optional<std::string> family;
    std::optional<int> max_weight;
    std::optional<std::uint64_t> sample;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> kind;
    std::string format = "json";
    bool force = false;
    std::optional<bool> spectrum;  // verify-tables only
};

Json to_json(const JobConfig& c);
Json to_json(const QuadricClass& c);
Json to_json(const WeightSpectrum& s);
Json to_json(const ScanReport& r);
Json to_json(const Reconciliation& r);

/// Spectrum report with the code parameters and a dimension finding when the
/// measured rank differs from C(N+2,2) - 1.
Json spectrum_report(const FunctionalCode& code, const WeightSpectrum& s, const JobConfig& config);

/// Finding for a measured dimension below C(N+2,2) - 1, or null.
Json dimension_finding(const FunctionalCode& code);

/// Flat CSV of a reconciliation: section,label,weight,predicted,measured,match.
std::string to_csv(const Reconciliation& r);

}  // namespace quadcode
