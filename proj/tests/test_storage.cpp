#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fano/storage.hpp"

#include <cstdio>
#include <fstream>

using namespace fano;

namespace {

Database dim2_db()
{
    ClassifyOptions opt;
    opt.dim = 2;
    opt.mode = Mode::Canonical;
    opt.threads = 1;
    return build_database(classify(opt), 1);
}

} // namespace

TEST_CASE("record serialization round-trips")
{
    Database db = dim2_db();
    for (const ClassRecord &r : db.records) {
        std::string line = serialize_record(r);
        ClassRecord back = parse_record(line, 1);
        CHECK(back == r);
        CHECK(serialize_record(back) == line);
    }
    // A synthetic record with a null picard and a non-integral degree.
    ClassRecord r;
    r.id = 7;
    r.dim = 3;
    r.vertices = {{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}, {{-1, -2, -3}}};
    r.n_vertices = 4;
    r.n_points = 6;
    r.n_interior = 1;
    r.volume = 7;
    r.degree = Rational{343, 6};
    r.picard = std::nullopt;
    r.nf = "1 0 0 -1;0 1 0 -2;0 0 1 -3";
    r.seed = 12;
    r.added = {{{1, 1, 1}}};
    ClassRecord back = parse_record(serialize_record(r), 1);
    CHECK(back == r);
}

TEST_CASE("database file round-trip")
{
    Database db = dim2_db();
    std::string path = "/tmp/fano_test_db.ndjson";
    write_database(db, path);
    Database back = read_database(path);
    CHECK(back.dim == 2);
    REQUIRE(back.records.size() == db.records.size());
    for (std::size_t i = 0; i < db.records.size(); ++i)
        CHECK(back.records[i] == db.records[i]);
    std::remove(path.c_str());
}

TEST_CASE("malformed lines fail with their line number")
{
    std::string path = "/tmp/fano_test_bad.ndjson";
    {
        Database db = dim2_db();
        std::ofstream out(path);
        out << serialize_record(db.records[0]) << "\n";
        out << "{\"id\":1, this is not json}\n";
    }
    try {
        read_database(path);
        FAIL("expected malformed_record");
    } catch (const malformed_record &e) {
        CHECK(e.line_no == 2);
    }
    {
        std::ofstream out(path, std::ios::trunc);
        out << "{\"id\":0}\n"; // missing fields
    }
    CHECK_THROWS_AS(read_database(path), malformed_record);
    std::remove(path.c_str());
}

TEST_CASE("query filters and conjunctions")
{
    Database db = dim2_db();
    QueryFilter none;
    std::size_t all = 0, refl = 0, refl_smooth = 0, smooth_refl = 0;
    QueryFilter refl_f;
    refl_f.reflexive = true;
    QueryFilter rs;
    rs.reflexive = true;
    rs.smooth = true;
    QueryFilter sr;
    sr.smooth = true;
    sr.reflexive = true;
    for (const ClassRecord &r : db.records) {
        all += matches(r, none);
        refl += matches(r, refl_f);
        refl_smooth += matches(r, rs);
        smooth_refl += matches(r, sr);
    }
    CHECK(all == 16);
    CHECK(refl == 16);
    CHECK(refl_smooth == 5);
    CHECK(smooth_refl == refl_smooth); // conjunction order cannot matter

    QueryFilter deg;
    deg.min_degree = Rational{9};
    std::size_t big = 0;
    for (const ClassRecord &r : db.records)
        big += matches(r, deg);
    CHECK(big == 1); // only P^2 has degree 9 among the 16 polygons

    QueryFilter verts;
    verts.vertices = 6;
    std::size_t hexes = 0;
    for (const ClassRecord &r : db.records)
        hexes += matches(r, verts);
    CHECK(hexes == 1); // the hexagon (dP6)

    QueryFilter pic;
    pic.picard = 4;
    std::size_t p4 = 0;
    for (const ClassRecord &r : db.records)
        p4 += matches(r, pic);
    CHECK(p4 == 1); // the hexagon again: 6 vertices - 2
}

TEST_CASE("stats report")
{
    Database db = dim2_db();
    std::string rep = stats_report(db);
    CHECK(rep.find("records: 16") != std::string::npos);
    CHECK(rep.find("reflexive (Gorenstein): 16") != std::string::npos);
    CHECK(rep.find("smooth: 5") != std::string::npos);
    CHECK(rep.find("terminal: 5") != std::string::npos);
    CHECK(rep.find("max degree: 9 attained by 1 record(s)") !=
          std::string::npos);
}

TEST_CASE("rational parsing")
{
    CHECK(parse_rational("72") == Rational{72});
    CHECK(parse_rational("81/2") == Rational{81, 2});
    CHECK(parse_rational("-5/10") == Rational{-1, 2});
    CHECK_THROWS_AS(parse_rational("7x"), error);
    CHECK_THROWS_AS(parse_rational("1/0"), error);
    CHECK_THROWS_AS(parse_rational(""), error);
}
