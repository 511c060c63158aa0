#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "simplexgeo/cli/commands.hpp"
#include "simplexgeo/exact.hpp"
#include "simplexgeo/geometry.hpp"
#include "simplexgeo/montecarlo.hpp"

using namespace simplexgeo;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    const auto dir = std::filesystem::temp_directory_path() / "simplexgeo_cli_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << contents;
    return path;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::stringstream stream(line);
    std::string field;
    while (std::getline(stream, field, sep)) fields.push_back(field);
    if (!line.empty() && line.back() == sep) fields.emplace_back();
    return fields;
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    REQUIRE(result.ec == std::errc{});
    REQUIRE(result.ptr == text.data() + text.size());
    return value;
}

const std::vector<std::string> kFtLinear{"verify", "--identity", "ft-linear", "--d", "2", "--k", "1",
                                         "--semiaxes", "2,1", "--n", "200000", "--seed", "42"};

}  // namespace

TEST_CASE("verify passes and reports the expected value") {
    const auto r = run(kFtLinear);
    CHECK(r.code == 0);
    const auto doc = json::parse(r.out);
    const auto& report = doc.at("report");
    CHECK(report.at("identity") == "ft-linear");
    CHECK(report.at("pass") == true);
    CHECK(report.at("rhs_value").get<double>() == doctest::Approx(8.0).epsilon(1e-13));
    CHECK(std::abs(report.at("lhs_value").get<double>() - 8.0) <= 4.0 * report.at("lhs_stderr").get<double>());
    CHECK(report.at("seed") == 42);
    CHECK(report.at("n") == 200000);
    CHECK(doc.contains("metadata"));
}

TEST_CASE("verify is deterministic apart from metadata") {
    const auto a = json::parse(run(kFtLinear).out);
    const auto b = json::parse(run(kFtLinear).out);
    CHECK(a.at("report").dump() == b.at("report").dump());
    auto with_workers = kFtLinear;
    with_workers.insert(with_workers.end(), {"--workers", "4"});
    auto c = json::parse(run(with_workers).out).at("report");
    CHECK(c.at("workers") == 4);
    c.erase("workers");
    auto a_report = a.at("report");
    a_report.erase("workers");
    CHECK(a_report.dump() == c.dump());
}

TEST_CASE("usage errors exit with 2 and name the problem") {
    const auto bad_k = run({"verify", "--identity", "thm-2.1", "--d", "3", "--k", "5", "--semiaxes", "1,1,1", "--n",
                            "1000", "--seed", "1"});
    CHECK(bad_k.code == 2);
    CHECK_FALSE(bad_k.err.empty());
    CHECK(bad_k.out.empty());

    const auto missing = run({"verify", "--identity", "thm-2.1", "--d", "3", "--k", "1", "--n", "10", "--seed", "1"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("--semiaxes") != std::string::npos);

    const auto malformed = run({"verify", "--identity", "thm-2.1", "--d", "2", "--k", "1", "--semiaxes", "2,x",
                                "--n", "10", "--seed", "1"});
    CHECK(malformed.code == 2);
    CHECK(malformed.err.find("--semiaxes") != std::string::npos);

    CHECK(run({"verify", "--identity", "nope", "--d", "2", "--k", "1", "--semiaxes", "2,1", "--n", "10", "--seed",
               "1"})
              .code == 2);
    CHECK(run({"verify", "--identity", "ft-linear", "--d", "2", "--k", "1", "--semiaxes", "2,1,3", "--n", "10",
               "--seed", "1"})
              .code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("rotation presets and files") {
    auto rotated = kFtLinear;
    rotated.insert(rotated.end(), {"--rotation-seed", "7"});
    const auto r = run(rotated);
    CHECK(r.code == 0);
    CHECK(json::parse(r.out).at("report").at("rotation") == "random(7)");

    const double c = std::cos(0.5), s = std::sin(0.5);
    const auto file = temp_file("rotation.json", json::array({{c, -s}, {s, c}}).dump());
    auto from_file = kFtLinear;
    from_file.insert(from_file.end(), {"--rotation-file", file.string()});
    CHECK(run(from_file).code == 0);

    const auto bad = temp_file("bad_rotation.json", "[[1, 0.5], [0, 1]]");
    auto bad_args = kFtLinear;
    bad_args.insert(bad_args.end(), {"--rotation-file", bad.string()});
    CHECK(run(bad_args).code == 2);
}

TEST_CASE("verify writes csv to a file") {
    const auto path = std::filesystem::temp_directory_path() / "simplexgeo_cli_tests" / "verify.csv";
    std::filesystem::create_directories(path.parent_path());
    auto args = kFtLinear;
    args.insert(args.end(), {"--format", "csv", "--out", path.string()});
    const auto r = run(args);
    CHECK(r.code == 0);
    std::ifstream in(path);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    const auto names = split(header, ',');
    const auto values = split(row, ',');
    REQUIRE(names.size() == values.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == "pass") CHECK(values[i] == "1");
        if (names[i] == "identity") CHECK(values[i] == "ft-linear");
    }
}

TEST_CASE("suite runs, aggregates and fails on a corrupted constant") {
    const auto empty = temp_file("empty.json", R"json({"entries": []})json");
    const auto r0 = run({"suite", empty.string()});
    CHECK(r0.code == 0);
    const auto doc0 = json::parse(r0.out);
    CHECK(doc0.at("entries").empty());
    CHECK(doc0.at("summary").at("total") == 0);

    const auto good = temp_file("good.json", R"json({"entries": [
        {"identity": "ft-linear", "d": 2, "k": 1, "semiaxes": [2, 1], "n": 100000, "seed": 1},
        {"identity": "thm-2.1", "d": 3, "k": 2, "p": 1, "semiaxes": [2, 1, 0.5], "n": 50000, "seed": 2,
         "rotation": "random(3)"}
    ]})json");
    const auto r1 = run({"suite", good.string()});
    CHECK(r1.code == 0);
    const auto doc1 = json::parse(r1.out);
    CHECK(doc1.at("summary").at("passed") == 2);

    const auto corrupted = temp_file("corrupted.json", R"json({"entries": [
        {"identity": "ft-linear", "d": 2, "k": 1, "semiaxes": [2, 1], "n": 100000, "seed": 1},
        {"identity": "ft-linear", "d": 2, "k": 1, "semiaxes": [2, 1], "n": 200000, "seed": 1,
         "constant_scale": 1.05}
    ]})json");
    const auto r2 = run({"suite", corrupted.string()});
    CHECK(r2.code == 1);
    const auto doc2 = json::parse(r2.out);
    CHECK(doc2.at("summary").at("failed") == 1);
    CHECK(doc2.at("entries")[1].at("pass") == false);
}

TEST_CASE("suite schema errors name the entry and field") {
    const auto missing = temp_file("missing.json", R"json({"entries": [
        {"identity": "ft-linear", "d": 2, "k": 1, "semiaxes": [2, 1], "seed": 1},
        {"identity": "ft-linear", "d": 2, "semiaxes": [2, 1], "seed": 1}
    ]})json");
    const auto r = run({"suite", missing.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("entry 1") != std::string::npos);
    CHECK(r.err.find("k") != std::string::npos);

    const auto typo = temp_file("typo.json", R"json({"entries": [
        {"identity": "ft-linear", "d": 2, "k": 1, "semiaxes": [2, 1], "seed": 1, "sed": 4}
    ]})json");
    const auto t = run({"suite", typo.string()});
    CHECK(t.code == 2);
    CHECK(t.err.find("sed") != std::string::npos);

    CHECK(run({"suite", temp_file("broken.json", "{not json").string()}).code == 2);
    CHECK(run({"suite", "/nonexistent/suite.json"}).code == 2);
}

TEST_CASE("table rows match the library and round-trip through csv") {
    const auto r = run({"table", "--d-range", "1:4", "--k-range", "1:4", "--p-list", "1,2", "--n", "5000", "--seed",
                        "11"});
    CHECK(r.code == 0);
    std::stringstream in(r.out);
    std::string line;
    std::getline(in, line);
    const auto names = split(line, ',');
    auto column = [&](const std::string& name) {
        return static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin());
    };
    const RandomStream root(11);
    int row = 0;
    while (std::getline(in, line)) {
        const auto fields = split(line, ',');
        REQUIRE(fields.size() == names.size());
        const int d = std::stoi(fields[column("d")]);
        const int k = std::stoi(fields[column("k")]);
        const double p = parse_double(fields[column("p")]);
        CHECK(k <= d);
        CHECK(parse_double(fields[column("ball_exact")]) == ball_simplex_moment(d, k, p));
        const auto expected =
            estimate_simplex_moment(root.split(row).split(0), Ellipsoid::unit_ball(d), k, p, 5000);
        CHECK(parse_double(fields[column("estimate")]) == expected.value);
        CHECK(parse_double(fields[column("stderr")]) == expected.std_error);
        ++row;
    }
    CHECK(row == 20);
}

TEST_CASE("ellipse table row matches the factorized prediction") {
    const auto r = run({"table", "--d-range", "2:2", "--k-range", "1:1", "--p-list", "1", "--semiaxes", "2,1", "--n",
                        "200000", "--seed", "5", "--format", "json"});
    CHECK(r.code == 0);
    const auto doc = json::parse(r.out);
    const auto& rows = doc.at("rows");
    REQUIRE(rows.size() == 1);
    const double estimate = rows[0].at("estimate");
    const double se = rows[0].at("stderr");
    const double predicted = rows[0].at("predicted");
    const double predicted_se = rows[0].at("predicted_stderr");
    CHECK(std::abs(estimate - predicted) <= 4.0 * std::hypot(se, predicted_se));
    CHECK(predicted / rows[0].at("projection_factor").get<double>() ==
          doctest::Approx(128.0 / (45.0 * std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("table validation") {
    CHECK(run({"table", "--d-range", "3:2", "--k-range", "1:1", "--p-list", "1", "--n", "10", "--seed", "1"}).code ==
          2);
    CHECK(run({"table", "--d-range", "2:3", "--k-range", "1:1", "--p-list", "1", "--semiaxes", "2,1", "--n", "10",
               "--seed", "1"})
              .code == 2);
    CHECK(run({"table", "--d-range", "2:2", "--k-range", "1:1", "--p-list", "-1", "--n", "10", "--seed", "1"})
              .code == 2);
}
