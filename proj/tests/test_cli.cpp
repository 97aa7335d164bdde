#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "quadcode/cli.hpp"
#include "quadcode/quadric.hpp"

using namespace quadcode;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::map<int, std::uint64_t> spectrum_of(const json& j) {
    std::map<int, std::uint64_t> m;
    for (const auto& row : j["spectrum"]) m[row["weight"].get<int>()] = row["count"].get<std::uint64_t>();
    return m;
}

std::string standard_line(Family fam, int q, int N) {
    return standard_form(fam, make_geometry(make_field_of_order(q), N)).to_line();
}

}  // namespace

TEST_CASE("spectrum subcommand") {
    const auto r = run_cli({"spectrum", "--family", "hyperbolic", "--n", "5", "--q", "2", "--max-weight", "12"});
    REQUIRE(r.code == exit_ok);
    const json j = json::parse(r.out);
    CHECK(j["n"] == 35);
    CHECK(j["dimension"] == 20);
    CHECK(j["truncated_at"] == 12);
    CHECK(j["dimension_finding"].is_null());
    CHECK(spectrum_of(j) == std::map<int, std::uint64_t>{{6, 280}, {8, 735}, {10, 11648}, {12, 52290}});
    CHECK(j["config"]["command"] == "spectrum");
    CHECK(j["config"]["max_weight"] == 12);
    CHECK_FALSE(j["config"].contains("threads"));
}

TEST_CASE("spectrum reports a dimension finding") {
    const auto r = run_cli({"spectrum", "--family", "elliptic", "--n", "3", "--q", "2"});
    REQUIRE(r.code == exit_ok);
    const json j = json::parse(r.out);
    CHECK(j["dimension"] < j["expected_dimension"]);
    CHECK(j["dimension_finding"]["measured"] == j["dimension"]);
}

TEST_CASE("spectrum accepts --l and --form") {
    const auto a = run_cli({"spectrum", "--family", "parabolic", "--l", "2", "--q", "2"});
    const auto b = run_cli({"spectrum", "--form", standard_line(Family::parabolic, 2, 4)});
    REQUIRE(a.code == exit_ok);
    REQUIRE(b.code == exit_ok);
    CHECK(spectrum_of(json::parse(a.out)) == spectrum_of(json::parse(b.out)));
}

TEST_CASE("verify-tables subcommand") {
    const auto full = run_cli({"verify-tables", "--family", "elliptic", "--l", "2", "--q", "2"});
    const json j = json::parse(full.out);
    CHECK(j["report"]["sizes_ok"] == true);
    CHECK(j["report"]["counts_ok"] == true);
    // the brute-force spectrum disagrees with the printed counts above weight 4
    CHECK(j["report"]["spectrum_ok"] == false);
    CHECK(full.code == exit_check_failed);

    const auto pairs = run_cli({"verify-tables", "--family", "elliptic", "--l", "2", "--q", "2", "--no-spectrum"});
    CHECK(pairs.code == exit_ok);
    CHECK(json::parse(pairs.out)["config"]["spectrum"] == false);

    const auto csv = run_cli({"verify-tables", "--family", "hyperbolic", "--l", "2", "--q", "2", "--no-spectrum",
                              "--format", "csv"});
    CHECK(csv.code == exit_ok);
    CHECK(csv.out.find("section,label,weight,predicted,measured,match\n") != std::string::npos);
    CHECK(csv.out.find("count,(1.3),6,280,280,1\n") != std::string::npos);
}

TEST_CASE("classify subcommand") {
    const std::string line = standard_line(Family::parabolic, 3, 4);
    const auto r = run_cli({"classify", "--form", line});
    REQUIRE(r.code == exit_ok);
    const json c = json::parse(r.out)["results"][0]["class"];
    CHECK(c["vertex_dim"] == -1);
    CHECK(c["base_kind"] == "parabolic");
    CHECK(c["point_count"] == 40);

    const auto s = run_cli({"classify", "--input", "-"}, "# two forms\n2 1 0 1 0\n\n   2 1 1 1 1\n");
    REQUIRE(s.code == exit_ok);
    const json res = json::parse(s.out)["results"];
    REQUIRE(res.size() == 2);
    CHECK(res[0]["class"]["base_kind"] == "two_distinct_hyperplanes");
    CHECK(res[0]["class"]["base_family"] == "hyperbolic");
    CHECK(res[1]["class"]["base_kind"] == "conjugate_hyperplane_pair");
    CHECK(res[1]["class"]["base_family"] == "elliptic");
    CHECK(res[1]["class"]["point_count"] == 0);
}

TEST_CASE("points, divisibility and pencil-scan") {
    const auto p = run_cli({"points", "--family", "hyperbolic", "--n", "3", "--q", "2"});
    REQUIRE(p.code == exit_ok);
    const json pj = json::parse(p.out);
    CHECK(pj["count"] == 9);
    CHECK(pj["points"][0] == json::array({0, 0, 0, 1}));

    const auto d = run_cli({"divisibility", "--family", "parabolic", "--n", "4", "--q", "3"});
    REQUIRE(d.code == exit_ok);
    const json dj = json::parse(d.out);
    CHECK(dj["divisible"] == true);
    CHECK(dj["modulus"] == 3);

    const auto s = run_cli({"pencil-scan", "--family", "parabolic", "--n", "4", "--q", "3", "--sample", "2000"});
    REQUIRE(s.code == exit_ok);
    const json sj = json::parse(s.out)["report"];
    CHECK(sj["kind"] == "parabolic4");
    CHECK(sj["threshold"] == 43);
    CHECK(sj["seed"] == 1);
    CHECK(sj["violations"].empty());
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({}).code == exit_usage);
    CHECK(run_cli({"frobnicate"}).code == exit_usage);
    CHECK(run_cli({"spectrum", "--family", "conic", "--n", "5", "--q", "2"}).code == exit_usage);
    CHECK(run_cli({"spectrum", "--family", "parabolic", "--n", "5", "--q", "2"}).code == exit_usage);
    CHECK(run_cli({"spectrum", "--family", "hyperbolic", "--n", "5", "--q", "6"}).code == exit_usage);
    CHECK(run_cli({"spectrum", "--family", "hyperbolic", "--q", "2"}).code == exit_usage);
    CHECK(run_cli({"spectrum", "--family", "hyperbolic", "--n", "5", "--l", "3", "--q", "2"}).code == exit_usage);
    CHECK(run_cli({"spectrum", "--family", "hyperbolic", "--n", "5", "--q", "2", "--format", "csv"}).code == exit_usage);
    CHECK(run_cli({"spectrum", "--family", "hyperbolic", "--n", "5", "--q", "2", "--bogus"}).code == exit_usage);
    CHECK(run_cli({"classify"}).code == exit_usage);
    CHECK(run_cli({"classify", "--form", "2 1 0 0 0"}).code == exit_usage);
    CHECK(run_cli({"classify", "--form", "2 1 0 0"}).code == exit_usage);
    CHECK(run_cli({"classify", "--input", "/nonexistent/forms.txt"}).code == exit_usage);
    CHECK(run_cli({"pencil-scan", "--family", "hyperbolic", "--n", "5", "--q", "2", "--kind", "parabolic4"}).code ==
          exit_usage);
    CHECK(run_cli({"pencil-scan", "--family", "hyperbolic", "--n", "5", "--q", "2", "--kind", "nope"}).code ==
          exit_usage);
    CHECK(run_cli({"verify-tables", "--family", "hyperbolic", "--l", "3", "--q", "2"}).code == exit_usage);

    const auto budget = run_cli({"spectrum", "--family", "hyperbolic", "--n", "7", "--q", "2"});
    CHECK(budget.code == exit_usage);
    CHECK(budget.err.find("error:") != std::string::npos);
}

TEST_CASE("output does not depend on the thread count") {
    const std::vector<std::vector<std::string>> jobs = {
        {"spectrum", "--family", "elliptic", "--n", "5", "--q", "2"},
        {"spectrum", "--family", "parabolic", "--n", "4", "--q", "3", "--max-weight", "21"},
        {"verify-tables", "--family", "parabolic", "--l", "2", "--q", "3", "--no-spectrum"},
        {"pencil-scan", "--family", "hyperbolic", "--n", "5", "--q", "2"},
        {"pencil-scan", "--family", "parabolic", "--n", "4", "--q", "3", "--sample", "5000", "--seed", "9"},
        {"divisibility", "--family", "hyperbolic", "--n", "3", "--q", "3"},
    };
    for (const auto& job : jobs) {
        auto one = job, eight = job;
        one.insert(one.end(), {"--threads", "1"});
        eight.insert(eight.end(), {"--threads", "8"});
        const auto a = run_cli(one), b = run_cli(eight), c = run_cli(eight);
        CAPTURE(job[0]);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
        CHECK(b.out == c.out);
    }
}
