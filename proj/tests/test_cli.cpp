#include "doctest.h"

#include "hypdiff/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliResult {
    int code{0};
    std::string out;
    std::string err;
};

CliResult run(std::initializer_list<const char*> args) {
    std::vector<std::string> v{"hypdiff"};
    for (const char* a : args) v.emplace_back(a);
    std::vector<const char*> p;
    for (const auto& s : v) p.push_back(s.c_str());
    std::ostringstream o, e;
    CliResult r;
    r.code = hypdiff::run_cli(int(p.size()), p.data(), o, e);
    r.out = o.str();
    r.err = e.str();
    return r;
}

// Splits one CSV row, honoring double-quoted fields.
std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

// Data rows of a CSV report: everything after the header, minus comments.
std::vector<std::vector<std::string>> csv_rows(const std::string& out) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(out);
    std::string line;
    bool seen_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            seen_header = true;
            continue;
        }
        rows.push_back(split_row(line));
    }
    return rows;
}

std::string strip_wall(const std::string& s) {
    std::istringstream in(s);
    std::string line, kept;
    while (std::getline(in, line))
        if (line.find("wall_ms") == std::string::npos) kept += line + "\n";
    return kept;
}

std::filesystem::path write_config(const char* name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << body;
    f.close();
    return path;
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("eval reproduces closed-form values") {
    const CliResult k = run({"eval", "--fn", "bessel_k_imag", "--nu", "0", "--x", "1",
                             "--format", "csv"});
    REQUIRE(k.code == 0);
    const auto krows = csv_rows(k.out);
    REQUIRE(krows.size() == 1);
    REQUIRE(krows[0].size() == 5);
    CHECK(std::abs(std::stod(krows[0][2]) - 0.42102443824070834) < 1e-9);

    const CliResult p = run({"eval", "--fn", "conical_p", "--mu", "0", "--nu", "0", "--z",
                             "1.000001", "--format", "csv"});
    REQUIRE(p.code == 0);
    CHECK(std::abs(std::stod(csv_rows(p.out)[0][2]) - 1.0) < 1e-4);

    const CliResult w = run({"eval", "--fn", "whittaker_w", "--kappa", "0", "--m", "0.5",
                             "--z", "2", "--format", "csv"});
    REQUIRE(w.code == 0);
    CHECK(std::abs(std::stod(csv_rows(w.out)[0][2]) - std::exp(-1.0)) < 1e-9);
}

TEST_CASE("eval zipped grids broadcast length-one lists") {
    const CliResult r = run({"eval", "--fn", "bessel_k_imag", "--nu", "0", "--x",
                             "0.5,1,2", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 3);
    // K_0 decreases in x.
    CHECK(std::stod(rows[0][2]) > std::stod(rows[1][2]));
    CHECK(std::stod(rows[1][2]) > std::stod(rows[2][2]));

    const CliResult bad = run({"eval", "--fn", "bessel_k_imag", "--nu", "0,1", "--x",
                               "0.5,1,2"});
    CHECK(bad.code == 2);
    CHECK(!bad.err.empty());
}

TEST_CASE("identical configuration gives byte-identical JSON modulo wall time") {
    const CliResult a = run({"verify", "--suite", "algebra"});
    const CliResult b = run({"verify", "--suite", "algebra"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(strip_wall(a.out) == strip_wall(b.out));
    CHECK(a.out.find("\"schema\": 1") != std::string::npos);
    CHECK(a.out.find("\"suite\": \"algebra\"") != std::string::npos);
    CHECK(a.out.find("\"config_echo\"") != std::string::npos);
    // Records are {anchor, lhs, rhs, rel_err, tol, pass}; param only exists in CSV.
    CHECK(a.out.find("\"anchor\"") != std::string::npos);
    CHECK(a.out.find("\"param\"") == std::string::npos);
}

TEST_CASE("exit codes are stable") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"eval"}).code == 2);                         // missing --fn
    CHECK(run({"eval", "--fn", "bessel_k_imag"}).code == 2); // missing grid axes
    CHECK(run({"eval", "--fn", "bessel_k_imag", "--nu", "0", "--x", "1", "--z", "2"}).code ==
          2); // axis the function does not take
    CHECK(run({"verify", "--suite", "nosuch"}).code == 2);
    CHECK(run({"verify"}).code == 2);
    CHECK(run({"eval", "--fn", "greens_function", "--rho", "1", "--E", "-1"}).code == 2);
    CHECK(!run({"eval", "--fn", "greens_function", "--rho", "1", "--E", "-1"}).err.empty());
    CHECK(run({"kernel"}).code == 2);                              // neither mode picked
    CHECK(run({"kernel", "--t", "0.5", "--E", "0.3"}).code == 2);  // both modes picked

    // Impossible override makes every record fail, but the report is still written.
    const CliResult forced = run({"verify", "--suite", "metric", "--tol", "metric=1e-30"});
    CHECK(forced.code == 1);
    CHECK(forced.out.find("\"pass\": false") != std::string::npos);
}

TEST_CASE("config file fills options and explicit flags win") {
    const auto path = write_config("hypdiff_cli_test.cfg",
                                   "# sample\n"
                                   "command=eval\n"
                                   "fn=whittaker_w\n"
                                   "kappa=0\n"
                                   "m=0.5\n"
                                   "z=2\n"
                                   "format=csv\n");
    const CliResult a = run({"--config", path.string().c_str()});
    REQUIRE(a.code == 0);
    CHECK(std::abs(std::stod(csv_rows(a.out)[0][2]) - std::exp(-1.0)) < 1e-9);
    CHECK(a.out.find("config=") != std::string::npos);

    const CliResult b = run({"--config", path.string().c_str(), "--z", "4"});
    REQUIRE(b.code == 0);
    CHECK(std::abs(std::stod(csv_rows(b.out)[0][2]) - std::exp(-2.0)) < 1e-9);

    const auto bad = write_config("hypdiff_cli_bad.cfg",
                                  "command=eval\nfn=bessel_k_imag\nnu=0\nx=1\nbogus=3\n");
    const CliResult c = run({"--config", bad.string().c_str()});
    CHECK(c.code == 2);
    CHECK(!c.err.empty());
}

TEST_CASE("kernel grid emits a positive decreasing profile") {
    const CliResult r = run({"kernel", "--t", "0.5", "--rho-max", "2", "--n", "5",
                             "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 5);
    double prev = 1e300;
    for (const auto& row : rows) {
        const double v = std::stod(row[2]);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("transform subcommand runs forward grids and round trips") {
    const CliResult f = run({"transform", "--f", "vanishing-exp", "--mu", "0", "--p-max",
                             "4", "--n", "5", "--format", "csv"});
    REQUIRE(f.code == 0);
    const auto rows = csv_rows(f.out);
    REQUIRE(rows.size() == 5);
    for (const auto& row : rows) CHECK(std::isfinite(std::stod(row[2])));

    const CliResult rt = run({"transform", "--f", "vanishing-exp", "--mu", "0", "--p-max",
                              "8", "--mode", "round-trip", "--format", "csv"});
    REQUIRE(rt.code == 0);
    CHECK(std::stod(csv_rows(rt.out)[0][2]) < 5e-2);
}

TEST_CASE("brachistochrone subcommand reports small deviations") {
    const CliResult r = run({"brachistochrone", "--omega", "0.8", "--R", "1.2", "--steps",
                             "256", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() >= 3);
    for (const auto& row : rows) CHECK(std::stod(row[2]) < 1e-6);
}

TEST_SUITE_END();
