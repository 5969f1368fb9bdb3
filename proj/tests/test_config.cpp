// Parser tests for the scenario-file format (a TOML subset) and the CSV
// serialization. CSV round-trips are checked bit-exactly on adversarial
// doubles (denormals, huge exponents, values needing all 17 digits).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qllg/config.hpp"
#include "qllg/timeseries.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

using namespace qllg;

TEST_CASE("parse_config: full happy path") {
    const std::string text = R"(# top comment
title = "damped dimer"   # trailing comment
count = 42
rate = -1.5e-3
enabled = true
tags = ["a", "b"]
mixed_off = false

[grid]
dt = 0.001
steps = [1, 2, 3]

[[run]]
label = "first"
B = [1, 0, 0]

[[run]]
label = "second"
)";
    ConfigDocument doc = parse_config(text);

    CHECK(doc.root.at("title").as_string() == "damped dimer");
    CHECK(doc.root.at("count").as_number() == doctest::Approx(42));
    CHECK(doc.root.at("rate").as_number() == doctest::Approx(-1.5e-3));
    CHECK(doc.root.at("enabled").as_bool());
    CHECK(!doc.root.at("mixed_off").as_bool());
    CHECK(doc.root.at("tags").as_string_array() == std::vector<std::string>{"a", "b"});

    REQUIRE(doc.tables.count("grid") == 1);
    CHECK(doc.tables.at("grid").at("dt").as_number() == doctest::Approx(0.001));
    CHECK(doc.tables.at("grid").at("steps").as_number_array() ==
          std::vector<double>{1.0, 2.0, 3.0});

    REQUIRE(doc.table_arrays.count("run") == 1);
    REQUIRE(doc.table_arrays.at("run").size() == 2);
    CHECK(doc.table_arrays.at("run")[0].at("label").as_string() == "first");
    CHECK(doc.table_arrays.at("run")[0].at("B").as_number_array() ==
          std::vector<double>{1.0, 0.0, 0.0});
    CHECK(doc.table_arrays.at("run")[1].at("label").as_string() == "second");
}

TEST_CASE("parse_config: strings with escapes, hashes and brackets") {
    ConfigDocument doc = parse_config(
        "a = \"quote \\\" backslash \\\\ newline \\n tab \\t\"\n"
        "b = \"hash # inside\"  # real comment\n"
        "c = \"[not a table]\"\n");
    CHECK(doc.root.at("a").as_string() == "quote \" backslash \\ newline \n tab \t");
    CHECK(doc.root.at("b").as_string() == "hash # inside");
    CHECK(doc.root.at("c").as_string() == "[not a table]");
}

TEST_CASE("parse_config: empty arrays and empty input") {
    ConfigDocument doc = parse_config("xs = []\n");
    CHECK(doc.root.at("xs").as_array().empty());
    ConfigDocument empty = parse_config("");
    CHECK(empty.root.entries.empty());
    ConfigDocument comments = parse_config("# just a comment\n\n  \n");
    CHECK(comments.root.entries.empty());
}

TEST_CASE("parse_config: errors carry the right line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.line;
        }
        return -1;
    };

    CHECK(line_of("a = 1\nb = oops\n") == 2);                      // bad value
    CHECK(line_of("a = 1\na = 2\n") == 2);                         // duplicate key
    CHECK(line_of("a = 1\n\n[bad\n") == 3);                        // malformed header
    CHECK(line_of("a = \"unterminated\n") == 1);                   // unterminated string
    CHECK(line_of("xs = [1, 2\n") == 1);                           // unterminated array
    CHECK(line_of("a = 1\njust words\n") == 2);                    // missing '='
    CHECK(line_of("[]\n") == 1);                                   // empty table name
    CHECK(line_of("[t]\nx = 1\n[t]\n") == 3);                      // duplicate table
    CHECK(line_of("bad key = 1\n") == 1);                          // space inside key
    CHECK(line_of("a = 1 tail\n") == 1);                           // trailing junk
    CHECK(line_of("a = \"x\\q\"\n") == 1);                         // unknown escape
    CHECK(line_of("xs = [1; 2]\n") == 1);                          // wrong separator
}

TEST_CASE("typed accessors name the expected type in errors") {
    ConfigDocument doc = parse_config("n = 5\ns = \"text\"\n");
    CHECK_THROWS_AS(doc.root.at("n").as_string(), ConfigError);
    CHECK_THROWS_AS(doc.root.at("s").as_number(), ConfigError);
    CHECK_THROWS_AS(doc.root.at("n").as_bool(), ConfigError);
    CHECK_THROWS_AS(doc.root.at("n").as_array(), ConfigError);
    CHECK_THROWS_AS(doc.root.at("missing"), ConfigError);

    try {
        doc.root.at("n").as_string();
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("expected a string") != std::string::npos);
        CHECK(std::string(e.what()).find("number") != std::string::npos);
    }
}

TEST_CASE("time series validation") {
    TimeSeries s;
    s.times = {0.0, 1.0, 2.0};
    s.names = {"a", "b"};
    s.columns = {{1, 2, 3}, {4, 5, 6}};
    CHECK_NOTHROW(validate_series(s));
    CHECK(s.has_column("a"));
    CHECK(!s.has_column("c"));
    CHECK(s.column("b")[2] == doctest::Approx(6.0));
    CHECK_THROWS_AS(s.column("c"), std::invalid_argument);

    TimeSeries bad = s;
    bad.columns[0].pop_back();
    CHECK_THROWS_AS(validate_series(bad), std::invalid_argument); // length mismatch

    TimeSeries dup = s;
    dup.names[1] = "a";
    CHECK_THROWS_AS(validate_series(dup), std::invalid_argument); // duplicate name

    TimeSeries unsorted = s;
    unsorted.times = {0.0, 2.0, 1.0};
    CHECK_THROWS_AS(validate_series(unsorted), std::invalid_argument);

    TimeSeries flat = s;
    flat.times = {0.0, 1.0, 1.0};
    CHECK_THROWS_AS(validate_series(flat), std::invalid_argument); // strictly increasing

    TimeSeries unnamed = s;
    unnamed.names[0] = "";
    CHECK_THROWS_AS(validate_series(unnamed), std::invalid_argument);
}

TEST_CASE("CSV round-trip is bit-exact on adversarial doubles") {
    TimeSeries s;
    s.times = {0.0, 1e-3, 2e-3, 3e-3, 4e-3, 5e-3};
    s.names = {"nasty", "tiny"};
    s.columns = {{1.0 / 3.0, -0.1, 6.02214076e23, std::nextafter(1.0, 2.0), -1e-300, 0.0},
                 {5e-324, std::numeric_limits<double>::denorm_min(),
                  9007199254740993.0, std::numeric_limits<double>::max(),
                  -std::numeric_limits<double>::max(), 1e308}};

    const std::string text = to_csv(s);
    TimeSeries back = from_csv(text);
    REQUIRE(back.times.size() == s.times.size());
    REQUIRE(back.names == s.names);
    for (size_t i = 0; i < s.times.size(); ++i) {
        CHECK(back.times[i] == s.times[i]); // exact, not approximate
        for (size_t j = 0; j < s.columns.size(); ++j)
            CHECK(back.columns[j][i] == s.columns[j][i]);
    }
    // Header contract.
    CHECK(text.rfind("t_ps,nasty,tiny\n", 0) == 0);
}

TEST_CASE("CSV reader rejects malformed input with line numbers") {
    // Syntax problems surface as std::runtime_error with a line number;
    // semantic problems re-use the series validator (std::invalid_argument).
    auto what_of = [](const std::string& text) -> std::string {
        try {
            from_csv(text);
        } catch (const std::exception& e) {
            return e.what();
        }
        return "";
    };

    CHECK(what_of("") != "");                                     // no header
    CHECK(what_of("t_ps,a\n0,1\n0.5,zebra\n").find("3") != std::string::npos);
    CHECK(what_of("t_ps,a\n0,1\n1\n").find("3") != std::string::npos); // short row
    CHECK(what_of("t_ps,a\n0,1,2\n") != "");                      // long row
    CHECK(what_of("wrong,a\n0,1\n") != "");                       // bad time header
    CHECK(what_of("t_ps,a\n1,1\n0,2\n") != "");                   // non-increasing times
}

TEST_CASE("CSV file round-trip through disk") {
    TimeSeries s;
    s.times = {0.0, 0.25};
    s.names = {"x"};
    s.columns = {{-1.5, 2.75}};

    const std::string path = "/tmp/qllg_test_roundtrip.csv";
    write_csv(s, path);
    TimeSeries back = read_csv(path);
    CHECK(back.times == s.times);
    CHECK(back.names == s.names);
    CHECK(back.columns == s.columns);
    std::remove(path.c_str());

    CHECK_THROWS_AS(read_csv("/nonexistent/dir/file.csv"), std::runtime_error);
}

TEST_CASE("CSV reader tolerates CRLF line endings") {
    TimeSeries back = from_csv("t_ps,a\r\n0,1\r\n0.5,2\r\n");
    REQUIRE(back.times.size() == 2);
    CHECK(back.names == std::vector<std::string>{"a"});
    CHECK(back.columns[0][1] == doctest::Approx(2.0));
}
