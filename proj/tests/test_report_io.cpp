#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "qcorr/presets.hpp"
#include "qcorr/report_io.hpp"

using namespace qcorr;

TEST_CASE("shortest round-trip double formatting")
{
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 2.0, -4.25, 0.30000000000000004}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-0.0) == "0");
}

TEST_CASE("csv writing")
{
    Table t;
    t.header = {"a", "b", "c"};

    std::ostringstream empty;
    write_table(t, OutputFormat::Csv, empty);
    CHECK(empty.str() == "a,b,c\n");

    t.rows.push_back({1.5, std::nullopt, 2.0});
    std::ostringstream one;
    write_table(t, OutputFormat::Csv, one);
    CHECK(one.str() == "a,b,c\n1.5,,2\n");
}

TEST_CASE("json writing")
{
    Table t;
    t.header = {"a", "b"};
    t.rows.push_back({0.5, std::nullopt});
    std::ostringstream os;
    write_table(t, OutputFormat::Json, os);

    const auto parsed = nlohmann::json::parse(os.str());
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0]["a"] == 0.5);
    CHECK(parsed[0]["b"].is_null());
}

TEST_CASE("sweep table schema")
{
    CHECK(sweep_header() ==
          std::vector<std::string>{"axis", "J", "gamma", "Jz", "B", "p", "lambda", "alpha", "beta",
                                   "delta", "concurrence", "n2", "n1", "nf", "fidelity"});

    const auto gad = find_preset("fig1a");
    REQUIRE(gad.has_value());
    auto rows = sweep(gad->spec);
    const Table tg = sweep_table(gad->spec, rows);
    REQUIRE(tg.rows.size() == rows.size());
    // damping rows carry p and lambda but no weights
    CHECK(tg.rows[5][5].has_value());
    CHECK(tg.rows[5][6].has_value());
    CHECK_FALSE(tg.rows[5][7].has_value());
    CHECK(tg.rows[5][0] == tg.rows[5][6]); // swept axis is lambda
    CHECK(tg.rows[5][4] == 0.0);           // B fixed at zero

    const auto hyb = find_preset("fig6b");
    REQUIRE(hyb.has_value());
    auto hrows = sweep(hyb->spec);
    const Table th = sweep_table(hyb->spec, hrows);
    // hybrid rows carry the weights but no lambda
    CHECK_FALSE(th.rows[5][6].has_value());
    CHECK(th.rows[5][7] == 0.3);
    CHECK(th.rows[5][8] == 0.2);
    CHECK(th.rows[5][9] == 0.5);
    CHECK(th.rows[5][0] == th.rows[5][5]); // swept axis is p
}
