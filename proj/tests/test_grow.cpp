#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fano/grow.hpp"
#include "fano/props.hpp"
#include "fano/storage.hpp"
#include "box_oracle.hpp"
#include "helpers.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>

using namespace fano;
using namespace fano::testing;

namespace {

Database classify_db(int dim, Mode mode, int threads)
{
    ClassifyOptions opt;
    opt.dim = dim;
    opt.mode = mode;
    opt.threads = threads;
    return build_database(classify(opt), threads);
}

std::string db_bytes(const Database &db)
{
    std::string s;
    for (const ClassRecord &r : db.records) {
        s += serialize_record(r);
        s += '\n';
    }
    return s;
}

} // namespace

TEST_CASE("growth rule tables")
{
    const GrowthRules &r2 = growth_rules(2);
    CHECK(r2.triples.empty());
    // The six sums expand to ten ordered coefficient pairs: -v1-v2;
    // -2v1-v2 / -v1-2v2; -(v1+v2)/2; -2v1-3v2 / -3v1-2v2; -(v1+3v2)/2 /
    // -(3v1+v2)/2; -(v1+2v2)/3 / -(2v1+v2)/3.
    CHECK(r2.pairs.size() == 10);
    const GrowthRules &r3 = growth_rules(3);
    CHECK(r3.pairs.size() == 10);
    CHECK(!r3.triples.empty());
    CHECK(r3.hash != r2.hash);
}

TEST_CASE("candidate points on the P^3 simplex")
{
    Polytope p = p3_simplex();
    std::vector<Point> cand =
            candidate_points(p, Mode::Canonical, weight_table());
    CHECK(std::is_sorted(cand.begin(), cand.end()));
    auto has = [&](Coord x, Coord y, Coord z) {
        return std::binary_search(cand.begin(), cand.end(),
                                  Point{{x, y, z}});
    };
    CHECK(has(-1, 0, 0));  // rule (a) on e1
    CHECK(has(-1, -1, 0)); // rule (b) -v1-v2 on (e1,e2)
    CHECK(has(1, 1, 1));   // rule (a) on (-1,-1,-1)
    CHECK(has(-2, -1, 0)); // rule (b) -2v1-v2
    // Candidates already inside P are retained.
    CHECK(has(0, 0, 1));   // -(-1,-1,-1)-e1-e2 = (1,1,1)-(1,0,0)-(0,1,0)
    for (const Point &v : cand)
        CHECK(!is_zero(v) == true);
}

TEST_CASE("expansion of the P^3 simplex")
{
    Polytope p = p3_simplex();
    std::vector<Polytope> grown = expand(p, Mode::Canonical, weight_table());
    CHECK(!grown.empty());
    Coord base_points = 5; // 4 vertices + origin
    bool found_5vertex = false;
    for (const Polytope &q : grown) {
        CHECK(is_canonical_fano(q));
        LatticePoints lp = lattice_points(q);
        CHECK(static_cast<Coord>(lp.interior.size() + lp.boundary.size()) >
              base_points); // strict growth, no no-ops
        if (q.n_vertices() == 5)
            found_5vertex = true;
    }
    CHECK(found_5vertex);

    // conv(P u {(-1,-1,0)}) is one of them.
    std::vector<Point> pts = p.vertices;
    pts.push_back({{-1, -1, 0}});
    Polytope manual = convex_hull(pts, 3);
    REQUIRE(is_canonical_fano(manual));
    bool present = false;
    for (const Polytope &q : grown)
        if (q.vertices == manual.vertices)
            present = true;
    CHECK(present);
}

TEST_CASE("no-op additions collapse")
{
    Polytope oct = octahedron();
    std::vector<Polytope> grown = expand(oct, Mode::Canonical, weight_table());
    for (const Polytope &q : grown)
        CHECK(q.vertices != oct.vertices);
}

TEST_CASE("terminal mode filters non-terminal hulls")
{
    Polytope p = p3_simplex();
    std::vector<Polytope> canon = expand(p, Mode::Canonical, weight_table());
    std::vector<Polytope> term = expand(p, Mode::Terminal, weight_table());
    CHECK(term.size() < canon.size());
    for (const Polytope &q : term)
        CHECK(is_terminal_fano(q));
    bool canon_has_nonterminal = false;
    for (const Polytope &q : canon)
        if (!is_terminal_fano(q))
            canon_has_nonterminal = true;
    CHECK(canon_has_nonterminal);
}

TEST_CASE("dimension-2 classification matches Table 1 and the box oracle")
{
    Database db = classify_db(2, Mode::Canonical, 2);
    CHECK(db.records.size() == 16);
    int terminal = 0, smooth = 0, reflexive = 0;
    for (const ClassRecord &r : db.records) {
        terminal += r.terminal;
        smooth += r.smooth;
        reflexive += r.reflexive;
        CHECK(r.simplicial); // every polygon is simplicial
        REQUIRE(r.picard.has_value());
        CHECK(*r.picard == r.n_vertices - 2);
    }
    CHECK(terminal == 5);
    CHECK(smooth == 5);
    CHECK(reflexive == 16);

    BoxOracle oracle;
    CHECK(!oracle.polygons.empty());
    std::set<std::string> oracle_keys;
    std::map<std::string, bool> has_inner_rep;
    for (const std::vector<Point> &ring : oracle.polygons) {
        Polytope p = convex_hull(ring, 2);
        REQUIRE(p.vertices.size() == ring.size()); // strict turns: all extreme
        std::string key = normal_form(p).key;
        oracle_keys.insert(key);
        bool inner = true;
        for (const Point &v : ring)
            if (std::abs(v[0]) > 2 || std::abs(v[1]) > 2)
                inner = false;
        has_inner_rep[key] = has_inner_rep[key] || inner;
    }
    std::set<std::string> engine_keys;
    for (const ClassRecord &r : db.records)
        engine_keys.insert(r.nf);
    CHECK(oracle_keys == engine_keys);
    // The box is comfortably large: every class already appears strictly
    // inside [-2,2]^2, so clipping at the boundary cannot hide a class.
    for (const auto &[key, inner] : has_inner_rep)
        CHECK(inner);
}

TEST_CASE("terminal dimension-2 classification")
{
    Database db = classify_db(2, Mode::Terminal, 1);
    CHECK(db.records.size() == 5);
    for (const ClassRecord &r : db.records) {
        CHECK(r.terminal);
        CHECK(r.smooth); // terminal Fano surfaces are nonsingular
    }
}

TEST_CASE("schedule independence in dimension 2")
{
    Database a = classify_db(2, Mode::Canonical, 1);
    Database b = classify_db(2, Mode::Canonical, 2);
    Database c = classify_db(2, Mode::Canonical, 3);
    CHECK(db_bytes(a) == db_bytes(b));
    CHECK(db_bytes(a) == db_bytes(c));
}

TEST_CASE("monotone growth along provenance chains")
{
    Database db = classify_db(2, Mode::Canonical, 2);
    // Rebuild each record's parent chain by replaying the added points.
    SeedSet seeds = builtin_seeds(2, Mode::Canonical);
    for (const ClassRecord &r : db.records) {
        Polytope cur = seeds.polytopes[static_cast<std::size_t>(r.seed)];
        // The chain starts at the seed's normal-form representative.
        cur = polytope_from_nf(normal_form(cur).matrix, 2);
        LatticePoints lp = lattice_points(cur);
        std::size_t npts = lp.interior.size() + lp.boundary.size();
        for (const Point &v : r.added) {
            std::vector<Point> pts = cur.vertices;
            pts.push_back(v);
            Polytope next = convex_hull(pts, 2);
            LatticePoints ln = lattice_points(next);
            std::size_t nn = ln.interior.size() + ln.boundary.size();
            CHECK(nn > npts);
            npts = nn;
            cur = polytope_from_nf(normal_form(next).matrix, 2);
        }
        CHECK(normal_form(cur).key == r.nf);
    }
}

TEST_CASE("checkpoint save right after seeding")
{
    std::string path = "/tmp/fano_test_seedckpt";
    ClassifyOptions opt;
    opt.dim = 3;
    opt.mode = Mode::Canonical;
    opt.threads = 1;
    opt.checkpoint_path = path;
    opt.stop_after_layers = 0;
    Classification cls = classify(opt);
    CHECK_FALSE(cls.complete);
    CHECK(cls.entries.size() == 26);
    CheckpointState st = load_checkpoint(path, 3, Mode::Canonical);
    CHECK(st.cls.entries.size() == 26);
    CHECK(st.queue.size() == 26);
    CHECK(st.layer == 0);
    std::remove(path.c_str());
}

TEST_CASE("kill-and-resume reproduces the uninterrupted run (dim 2)")
{
    std::string path = "/tmp/fano_test_resume2";
    ClassifyOptions part;
    part.dim = 2;
    part.mode = Mode::Canonical;
    part.threads = 2;
    part.checkpoint_path = path;
    part.stop_after_layers = 1;
    Classification partial = classify(part);
    CHECK_FALSE(partial.complete);

    ClassifyOptions res = part;
    res.stop_after_layers = -1;
    res.resume = true;
    Classification resumed = classify(res);
    CHECK(resumed.complete);

    ClassifyOptions direct;
    direct.dim = 2;
    direct.mode = Mode::Canonical;
    direct.threads = 1;
    Classification full = classify(direct);
    REQUIRE(resumed.entries.size() == full.entries.size());
    CHECK(db_bytes(build_database(resumed, 1)) ==
          db_bytes(build_database(full, 1)));

    // Resuming a finished run terminates immediately with the stored result.
    Classification again = classify(res);
    CHECK(again.entries.size() == full.entries.size());
    std::remove(path.c_str());
}

TEST_CASE("corrupt checkpoints are rejected")
{
    std::string path = "/tmp/fano_test_corrupt";
    ClassifyOptions opt;
    opt.dim = 2;
    opt.mode = Mode::Canonical;
    opt.threads = 1;
    opt.checkpoint_path = path;
    classify(opt);
    // Flip a byte in the middle of the file.
    std::ifstream in(path, std::ios::binary);
    std::string data((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    in.close();
    data[data.size() / 2] = data[data.size() / 2] == 'x' ? 'y' : 'x';
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << data;
    out.close();
    CHECK_THROWS_AS(load_checkpoint(path, 2, Mode::Canonical),
                    checkpoint_corrupt);
    // Mode mismatch is also a corruption.
    ClassifyOptions good = opt;
    classify(good);
    CHECK_THROWS_AS(load_checkpoint(path, 2, Mode::Terminal),
                    checkpoint_corrupt);
    std::remove(path.c_str());
}

TEST_CASE("classification entries are canonical representatives")
{
    Classification cls;
    cls.dim = 2;
    cls.mode = Mode::Canonical;
    ClassifyOptions opt;
    opt.dim = 2;
    opt.mode = Mode::Canonical;
    opt.threads = 1;
    cls = classify(opt);
    for (const ClassifiedEntry &e : cls.entries) {
        Polytope p = polytope_from_nf(nf_parse(e.nf, 2), 2);
        CHECK(normal_form(p).key == e.nf);
        CHECK(is_canonical_fano(p));
    }
}
