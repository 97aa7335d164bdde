#include "quadcode/report.hpp"

#include <sstream>

namespace quadcode {

namespace {

template <typename T>
Json opt(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const JobConfig& c) {
    Json j;
    j["command"] = c.command;
    j["q"] = opt(c.q);
    j["N"] = opt(c.N);
    j["l"] = opt(c.l);
    j["family"] = opt(c.family);
    j["max_weight"] = opt(c.max_weight);
    j["sample"] = opt(c.sample);
    j["seed"] = opt(c.seed);
    j["kind"] = opt(c.kind);
    j["format"] = c.format;
    j["force"] = c.force;
    j["spectrum"] = opt(c.spectrum);
    return j;
}

Json to_json(const QuadricClass& c) {
    Json j;
    j["vertex_dim"] = c.vertex_dim;
    j["base_kind"] = std::string(to_string(c.base_kind));
    j["base_family"] = std::string(to_string(c.base_family()));
    j["singular"] = c.singular();
    j["point_count"] = c.point_count;
    return j;
}

Json to_json(const WeightSpectrum& s) {
    Json rows = Json::array();
    for (const auto& [w, c] : s.counts) rows.push_back({{"weight", w}, {"count", c}});
    return rows;
}

Json to_json(const ScanReport& r) {
    Json j;
    j["kind"] = std::string(to_string(r.kind));
    j["threshold"] = r.threshold;
    j["sampled"] = r.sampled;
    j["seed"] = r.sampled ? Json(r.seed) : Json(nullptr);
    j["scanned"] = r.scanned;
    j["skipped"] = r.skipped;
    j["above_threshold"] = r.above_threshold;
    j["only_degenerate_pair"] = r.only_degenerate_pair;
    j["violations"] = r.violations;
    j["max_V_irreducible_pencils"] = r.max_v_irreducible;
    j["max_V_witness"] = opt(r.max_v_witness);
    j["notes"] = r.notes;
    return j;
}

Json to_json(const Reconciliation& r) {
    Json j;
    j["family"] = std::string(to_string(r.family));
    j["l"] = r.l;
    j["q"] = r.q;
    j["N"] = r.N;
    j["n"] = r.quadric_points;
    j["hyperplanes"] = r.hyperplanes;
    j["pairs"] = r.pairs;
    j["unclassified"] = r.unclassified;

    Json sizes = Json::array();
    for (const auto& s : r.sizes) {
        Json row;
        row["label"] = s.label;
        row["predicted_size"] = s.predicted_size;
        row["section_size"] = s.section_size;
        row["measured_size"] = s.measured_sizes;
        row["pairs"] = s.pairs;
        row["match"] = s.match;
        sizes.push_back(std::move(row));
    }
    j["size_rows"] = std::move(sizes);

    Json counts = Json::array();
    for (const auto& c : r.counts) {
        Json row;
        row["label"] = c.label;
        row["weight"] = c.weight;
        row["predicted_count"] = c.predicted_count;
        row["measured_count"] = c.measured_count;
        Json split;
        for (const auto& [label, k] : c.split) split[label] = k;
        row["split"] = std::move(split);
        row["weight_consistent"] = c.weight_consistent;
        row["match"] = c.match;
        counts.push_back(std::move(row));
    }
    j["count_rows"] = std::move(counts);

    Json lines = Json::array();
    for (const auto& s : r.spectrum) {
        Json row;
        row["weight"] = s.weight;
        row["rows"] = s.rows;
        row["predicted_count"] = s.predicted_count;
        row["measured_count"] = s.measured_count;
        row["match"] = s.match;
        lines.push_back(std::move(row));
    }
    j["spectrum_rows"] = std::move(lines);
    j["spectrum_skipped"] = opt(r.spectrum_skipped);
    j["notes"] = r.notes;
    j["sizes_ok"] = r.sizes_ok();
    j["counts_ok"] = r.counts_ok();
    j["spectrum_ok"] = r.spectrum_ok();
    j["ok"] = r.ok();
    return j;
}

Json dimension_finding(const FunctionalCode& code) {
    if (code.dimension() == code.expected_dimension()) return nullptr;
    Json j;
    j["claim"] = "dimension C(N+2,2) - 1";
    j["expected"] = code.expected_dimension();
    j["measured"] = code.dimension();
    j["family"] = std::string(to_string(code.family()));
    j["N"] = code.geometry().dimension();
    j["q"] = code.field().order();
    j["reason"] = code.length() < code.expected_dimension() ? "code length is below the claimed dimension"
                                                            : "evaluation map has a larger kernel than the base form";
    return j;
}

Json spectrum_report(const FunctionalCode& code, const WeightSpectrum& s, const JobConfig& config) {
    Json j;
    j["config"] = to_json(config);
    j["q"] = code.field().order();
    j["N"] = code.geometry().dimension();
    j["family"] = std::string(to_string(code.family()));
    j["n"] = code.length();
    j["dimension"] = code.dimension();
    j["expected_dimension"] = code.expected_dimension();
    j["scanned"] = s.scanned;
    j["spectrum"] = to_json(s);
    j["truncated_at"] = opt(s.truncation_bound);
    j["dimension_finding"] = dimension_finding(code);
    return j;
}

std::string to_csv(const Reconciliation& r) {
    std::ostringstream out;
    out << "section,label,weight,predicted,measured,match\n";
    for (const auto& s : r.sizes) {
        std::string measured;
        for (auto v : s.measured_sizes) measured += (measured.empty() ? "" : ";") + std::to_string(v);
        out << "size," << s.label << ",," << s.predicted_size << "," << measured << "," << (s.match ? 1 : 0) << "\n";
    }
    for (const auto& c : r.counts)
        out << "count," << c.label << "," << c.weight << "," << c.predicted_count << "," << c.measured_count << ","
            << (c.match && c.weight_consistent ? 1 : 0) << "\n";
    for (const auto& s : r.spectrum) {
        std::string rows;
        for (const auto& x : s.rows) rows += (rows.empty() ? "" : " ") + x;
        out << "spectrum," << rows << "," << s.weight << "," << s.predicted_count << "," << s.measured_count << ","
            << (s.match ? 1 : 0) << "\n";
    }
    return out.str();
}

}  // namespace quadcode
