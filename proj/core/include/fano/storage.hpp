// Classified-record database: ndjson serialization, queries and statistics.

#ifndef FANO_STORAGE_HPP
#define FANO_STORAGE_HPP

#include "fano/grow.hpp"
#include "fano/props.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fano {

struct ClassRecord {
    std::int64_t id = 0;
    int dim = 3;
    std::vector<Point> vertices;
    int n_vertices = 0;
    int n_points = 0;
    int n_interior = 0;
    Coord volume = 0;
    Rational degree;
    bool terminal = false;
    bool reflexive = false;
    bool simplicial = false;
    bool smooth = false;
    std::optional<int> picard;
    std::string nf;
    int seed = 0;
    std::vector<Point> added;

    friend bool operator==(const ClassRecord &, const ClassRecord &) = default;
};

struct Database {
    int dim = 3;
    std::vector<ClassRecord> records;
};

// Profiles every classified entry (with a full lattice-point re-scan), sorts
// by (n_vertices, n_points, volume, nf) and assigns ids.
Database build_database(const Classification &cls, int threads = 0);

std::string serialize_record(const ClassRecord &r);
ClassRecord parse_record(const std::string &line, std::size_t line_no);

void write_database(const Database &db, const std::string &path);
Database read_database(const std::string &path); // throws malformed_record

struct QueryFilter {
    bool reflexive = false;
    bool simplicial = false;
    bool smooth = false;
    bool terminal = false;
    std::optional<Rational> min_degree;
    std::optional<Rational> max_degree;
    std::optional<int> vertices;
    std::optional<int> picard;
};

bool matches(const ClassRecord &r, const QueryFilter &f);

std::string stats_report(const Database &db);

} // namespace fano

#endif
