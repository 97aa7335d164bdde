#include "quadcode/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "quadcode/report.hpp"
#include "quadcode/series.hpp"

namespace quadcode {

namespace {

struct Flags {
    std::optional<int> q;
    std::optional<int> n;
    std::optional<int> l;
    std::optional<std::string> family;
    std::optional<std::string> form;
    std::vector<std::string> forms;
    std::optional<std::string> input;
    std::optional<int> max_weight;
    std::optional<std::uint64_t> sample;
    std::uint64_t seed = 1;
    std::optional<std::string> kind;
    unsigned threads = 1;
    std::string format = "json";
    bool force = false;
    bool no_spectrum = false;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void add_geometry_flags(CLI::App* cmd, Flags& f, bool with_l) {
    cmd->add_option("--q", f.q, "field order");
    cmd->add_option("--n", f.n, "projective dimension N");
    if (with_l) cmd->add_option("--l", f.l, "half dimension l (N = 2l+1, or 2l for parabolic)");
    cmd->add_option("--family", f.family, "hyperbolic | elliptic | parabolic")
        ->check(CLI::IsMember({"hyperbolic", "elliptic", "parabolic"}));
}

void add_run_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    cmd->add_flag("--force", f.force, "lift the enumeration budget");
}

void add_format_flag(CLI::App* cmd, Flags& f, bool csv) {
    cmd->add_option("--format", f.format, "output format")
        ->check(csv ? CLI::IsMember({"json", "csv"}) : CLI::IsMember({"json"}));
}

int resolve_dimension(const Flags& f, Family family) {
    if (f.n && f.l && *f.n != ambient_dimension(family, *f.l)) throw UsageError("--n and --l disagree");
    if (f.n) return *f.n;
    if (f.l) return ambient_dimension(family, *f.l);
    throw UsageError("--n (or --l) is required");
}

// Base quadric from --form, or the standard form of --family in PG(--n, --q).
QuadraticForm base_form(const Flags& f, JobConfig& cfg) {
    if (f.form) {
        QuadraticForm base = parse_form_line(*f.form);
        cfg.q = base.field().order();
        cfg.N = base.dimension();
        return base;
    }
    if (!f.family || !f.q) throw UsageError("--family and --q (or --form) are required");
    const Family family = parse_family(*f.family);
    const int N = resolve_dimension(f, family);
    if ((family == Family::parabolic) != (N % 2 == 0))
        throw UsageError(std::string(to_string(family)) + " quadrics need " + (N % 2 ? "even" : "odd") + " N");
    cfg.q = *f.q;
    cfg.N = N;
    return standard_form(family, make_geometry(make_field_of_order(*f.q), N));
}

JobConfig config_for(const std::string& command, const Flags& f) {
    JobConfig c;
    c.command = command;
    c.q = f.q;
    c.N = f.n;
    c.l = f.l;
    c.family = f.family;
    c.max_weight = f.max_weight;
    c.format = f.format;
    c.force = f.force;
    return c;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int cmd_points(const Flags& f, std::ostream& out) {
    JobConfig cfg = config_for("points", f);
    const QuadraticForm base = base_form(f, cfg);
    Json pts = Json::array();
    for (const auto& p : point_set(base)) pts.push_back(p.coords);
    Json j;
    j["config"] = to_json(cfg);
    j["form"] = base.to_line();
    j["count"] = pts.size();
    j["points"] = std::move(pts);
    emit(out, j);
    return exit_ok;
}

std::vector<std::string> read_form_lines(const Flags& f, std::istream& in) {
    std::vector<std::string> lines = f.forms;
    auto slurp = [&](std::istream& s) {
        std::string line;
        while (std::getline(s, line)) {
            const auto b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos || line[b] == '#') continue;
            lines.push_back(line.substr(b));
        }
    };
    if (f.input) {
        if (*f.input == "-") {
            slurp(in);
        } else {
            std::ifstream file(*f.input);
            if (!file) throw UsageError("cannot open " + *f.input);
            slurp(file);
        }
    }
    if (lines.empty()) throw UsageError("no form lines given (use --form or --input)");
    return lines;
}

int cmd_classify(const Flags& f, std::istream& in, std::ostream& out) {
    JobConfig cfg = config_for("classify", f);
    Json results = Json::array();
    for (const auto& line : read_form_lines(f, in)) {
        const QuadraticForm form = parse_form_line(line);
        if (form.is_zero()) throw UsageError("the zero form defines no quadric: " + line);
        results.push_back({{"form", form.to_line()}, {"class", to_json(classify(form))}});
    }
    Json j;
    j["config"] = to_json(cfg);
    j["results"] = std::move(results);
    emit(out, j);
    return exit_ok;
}

int cmd_spectrum(const Flags& f, std::ostream& out) {
    JobConfig cfg = config_for("spectrum", f);
    const QuadraticForm base = base_form(f, cfg);
    const FunctionalCode code = build_code(base);
    EnumerationOptions eo;
    eo.max_weight = f.max_weight;
    eo.threads = f.threads;
    eo.force = f.force;
    emit(out, spectrum_report(code, weight_spectrum(code, eo), cfg));
    return exit_ok;
}

int cmd_verify_tables(const Flags& f, std::ostream& out) {
    JobConfig cfg = config_for("verify-tables", f);
    if (!f.family || !f.q) throw UsageError("--family and --q are required");
    const Family family = parse_family(*f.family);
    int l = 0;
    if (f.l) {
        l = *f.l;
    } else if (f.n) {
        if ((family == Family::parabolic) != (*f.n % 2 == 0)) throw UsageError("N has the wrong parity for the family");
        l = *f.n / 2;
    } else {
        throw UsageError("--l (or --n) is required");
    }
    if (f.n && *f.n != ambient_dimension(family, l)) throw UsageError("--n and --l disagree");
    cfg.l = l;
    cfg.N = ambient_dimension(family, l);
    cfg.spectrum = !f.no_spectrum;

    VerifyOptions vo;
    vo.spectrum = !f.no_spectrum;
    vo.threads = f.threads;
    vo.force = f.force;
    const Reconciliation rec = verify_family(family, l, *f.q, vo);
    if (f.format == "csv") {
        out << "# config " << to_json(cfg).dump() << "\n" << to_csv(rec);
    } else {
        Json j;
        j["config"] = to_json(cfg);
        j["report"] = to_json(rec);
        emit(out, j);
    }
    return rec.ok() ? exit_ok : exit_check_failed;
}

int cmd_pencil_scan(const Flags& f, std::ostream& out) {
    JobConfig cfg = config_for("pencil-scan", f);
    const QuadraticForm base = base_form(f, cfg);
    ThresholdKind kind;
    if (f.kind) {
        kind = parse_threshold_kind(*f.kind);
    } else {
        const auto k = default_threshold_kind(classify(base).base_family(), base.dimension());
        if (!k) throw UsageError("no threshold applies to this quadric; pass --kind");
        kind = *k;
    }
    cfg.kind = std::string(to_string(kind));
    cfg.sample = f.sample;
    if (f.sample) cfg.seed = f.seed;

    ScanOptions so;
    so.sample = f.sample;
    so.seed = f.seed;
    so.threads = f.threads;
    so.force = f.force;
    const ScanReport r = scan_theorem(base, kind, so);
    Json j;
    j["config"] = to_json(cfg);
    j["report"] = to_json(r);
    emit(out, j);
    return r.violations.empty() ? exit_ok : exit_check_failed;
}

int cmd_divisibility(const Flags& f, std::ostream& out) {
    JobConfig cfg = config_for("divisibility", f);
    const QuadraticForm base = base_form(f, cfg);
    const FunctionalCode code = build_code(base);
    EnumerationOptions eo;
    eo.threads = f.threads;
    eo.force = f.force;
    const WeightSpectrum s = weight_spectrum(code, eo);
    const int l = base.geometry().half_dimension();
    const bool ok = divisibility_check(s, l, code.field().order());
    Json weights = Json::array();
    for (const auto& [w, c] : s.counts) weights.push_back(w);
    Json j;
    j["config"] = to_json(cfg);
    j["family"] = std::string(to_string(code.family()));
    j["N"] = base.dimension();
    j["q"] = code.field().order();
    j["l"] = l;
    j["modulus"] = ipow(code.field().order(), l - 1);
    j["weights"] = std::move(weights);
    j["divisible"] = ok;
    emit(out, j);
    return ok ? exit_ok : exit_check_failed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Functional codes C_2(Q) on quadrics of PG(N,q)", "quadcode"};
    app.require_subcommand(1);
    Flags f;

    auto* points = app.add_subcommand("points", "list the points of a quadric");
    add_geometry_flags(points, f, true);
    points->add_option("--form", f.form, "form line 'q N a00 a01 ... aNN'");
    add_format_flag(points, f, false);

    auto* cls = app.add_subcommand("classify", "classify quadrics given as form lines");
    cls->add_option("--form", f.forms, "form line (repeatable)");
    cls->add_option("--input", f.input, "file of form lines, '-' for stdin");
    add_format_flag(cls, f, false);

    auto* spectrum = app.add_subcommand("spectrum", "weight spectrum of C_2(Q)");
    add_geometry_flags(spectrum, f, true);
    spectrum->add_option("--form", f.form, "base form line instead of a standard quadric");
    spectrum->add_option("--max-weight", f.max_weight, "only report weights up to this bound")->check(CLI::NonNegativeNumber);
    add_run_flags(spectrum, f);
    add_format_flag(spectrum, f, false);

    auto* verify = app.add_subcommand("verify-tables", "reconcile the pair tables with brute force");
    add_geometry_flags(verify, f, true);
    verify->add_flag("--no-spectrum", f.no_spectrum, "skip the spectrum reconciliation");
    add_run_flags(verify, f);
    add_format_flag(verify, f, true);

    auto* scan = app.add_subcommand("pencil-scan", "check the two-hyperplane thresholds over pencils");
    add_geometry_flags(scan, f, true);
    scan->add_option("--form", f.form, "base form line instead of a standard quadric");
    scan->add_option("--kind", f.kind, "general_N | hyperbolic5_corollary | parabolic4");
    scan->add_option("--sample", f.sample, "number of random forms instead of a full scan")->check(CLI::PositiveNumber);
    scan->add_option("--seed", f.seed, "sampling seed");
    add_run_flags(scan, f);
    add_format_flag(scan, f, false);

    auto* div = app.add_subcommand("divisibility", "check that all weights are divisible by q^(l-1)");
    add_geometry_flags(div, f, true);
    div->add_option("--form", f.form, "base form line instead of a standard quadric");
    add_run_flags(div, f);
    add_format_flag(div, f, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (points->parsed()) return cmd_points(f, out);
        if (cls->parsed()) return cmd_classify(f, in, out);
        if (spectrum->parsed()) return cmd_spectrum(f, out);
        if (verify->parsed()) return cmd_verify_tables(f, out);
        if (scan->parsed()) return cmd_pencil_scan(f, out);
        if (div->parsed()) return cmd_divisibility(f, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_check_failed;
    }
    return exit_usage;
}

}  // namespace quadcode
