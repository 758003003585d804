// Command-line driver: classify | verify-seeds | query | stats.
//
// Exit codes: 0 success, 1 failed verification, 2 bad flags or malformed
// database, 3 corrupt checkpoint, 4 overflow abort.

#include "fano/grow.hpp"
#include "fano/normal_form.hpp"
#include "fano/seeds.hpp"
#include "fano/storage.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>

namespace {

using namespace fano;

Mode parse_mode(const std::string &s)
{
    if (s == "canonical")
        return Mode::Canonical;
    if (s == "terminal")
        return Mode::Terminal;
    throw CLI::ValidationError("--mode", "must be 'canonical' or 'terminal'");
}

int run_classify(int dim, const std::string &mode_str, const std::string &out,
                 int threads, const std::string &checkpoint, bool resume)
{
    ClassifyOptions opt;
    opt.dim = dim;
    opt.mode = parse_mode(mode_str);
    opt.threads = threads;
    opt.checkpoint_path = checkpoint;
    opt.resume = resume;
    if (resume && checkpoint.empty()) {
        std::cerr << "error: --resume requires --checkpoint\n";
        return 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        Classification cls = classify(opt);
        Database db = build_database(cls, threads);
        write_database(db, out);
        auto dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        std::fprintf(stderr,
                     "classified %zu polytopes (dim %d, %s) in %.1fs -> %s\n",
                     db.records.size(), dim, mode_str.c_str(), dt,
                     out.c_str());
        return 0;
    } catch (const checkpoint_corrupt &e) {
        std::cerr << "checkpoint corrupt: " << e.what() << "\n";
        return 3;
    } catch (const OverflowAbort &e) {
        std::cerr << "overflow abort; offending polytope: " << e.polytope
                  << "\n";
        return 4;
    }
}

int run_verify_seeds()
{
    bool ok = true;
    int min3 = 0, min2 = 0, weights_ok = 0;

    for (int dim : {3, 2}) {
        SeedSet seeds = builtin_seeds(dim, Mode::Canonical);
        for (std::size_t i = 0; i < seeds.polytopes.size(); ++i) {
            bool minimal = false;
            try {
                minimal = verify_minimal(seeds.polytopes[i], Mode::Canonical);
            } catch (const not_fano &e) {
                std::cout << "seed " << seeds.names[i] << ": FAIL ("
                          << e.what() << ")\n";
                ok = false;
                continue;
            }
            std::cout << "seed " << seeds.names[i]
                      << (minimal ? ": minimal ok" : ": FAIL (not minimal)")
                      << "\n";
            if (minimal)
                (dim == 3 ? min3 : min2)++;
            else
                ok = false;
        }
        CorollaryReport rep = verify_decomposition_corollaries(seeds);
        if (!rep.ok) {
            ok = false;
            for (const std::string &v : rep.violations)
                std::cout << "corollary violation: " << v << "\n";
        } else {
            std::cout << "decomposition corollaries ok (dim " << dim << ")\n";
        }
    }

    const WeightTable &wt = weight_table();
    for (const auto &[w, sum] : wt.entries) {
        std::string label = "(" + std::to_string(w[0]) + "," +
                            std::to_string(w[1]) + "," + std::to_string(w[2]) +
                            "," + std::to_string(w[3]) + ")";
        try {
            Polytope s = simplex_from_weights(w);
            WeightSystem back = weights_of_simplex(s);
            Coord check = 0;
            for (Coord x : w)
                check = checked_add(check, x);
            if (back.weights != w || back.index != 1 || check != sum ||
                !is_canonical_fano(s)) {
                std::cout << "weight " << label << ": FAIL (roundtrip)\n";
                ok = false;
            } else {
                ++weights_ok;
            }
        } catch (const std::exception &e) {
            std::cout << "weight " << label << ": FAIL (" << e.what() << ")\n";
            ok = false;
        }
    }

    std::cout << min3 << "/26 minimal (dim 3), " << min2
              << "/3 minimal (dim 2), " << weights_ok << "/104 weights OK\n";
    return ok && min3 == 26 && min2 == 3 && weights_ok == 104 ? 0 : 1;
}

int run_query(const std::string &path, const QueryFilter &filter, bool count)
{
    Database db = read_database(path);
    std::size_t n = 0;
    std::string buf;
    for (const ClassRecord &r : db.records) {
        if (!matches(r, filter))
            continue;
        ++n;
        if (!count) {
            buf += serialize_record(r);
            buf += '\n';
            if (buf.size() > 1 << 16) {
                std::cout << buf;
                buf.clear();
            }
        }
    }
    if (count)
        std::cout << n << "\n";
    else
        std::cout << buf;
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"exact lattice-polytope classification of toric Fano "
                 "varieties in dimensions 2 and 3"};
    app.require_subcommand(1);

    // classify
    auto *classify_cmd =
            app.add_subcommand("classify", "run the seed-and-grow closure");
    int dim = 3;
    std::string mode = "canonical";
    std::string out_path;
    int threads = 0;
    std::string checkpoint;
    bool resume = false;
    classify_cmd->add_option("--dim", dim, "dimension (2 or 3)")
            ->check(CLI::IsMember({2, 3}));
    classify_cmd->add_option("--mode", mode, "canonical or terminal")
            ->check(CLI::IsMember({"canonical", "terminal"}));
    classify_cmd->add_option("--out", out_path, "output ndjson path")
            ->required();
    classify_cmd->add_option("--threads", threads,
                             "worker threads (default: machine parallelism, "
                             "override with FANO_THREADS)");
    classify_cmd->add_option("--checkpoint", checkpoint,
                             "checkpoint file, written after every layer");
    classify_cmd->add_flag("--resume", resume,
                           "resume from the checkpoint file");

    // verify-seeds
    auto *verify_cmd = app.add_subcommand(
            "verify-seeds", "verify minimality of the built-in seeds and the "
                            "weight-table roundtrip");

    // query
    auto *query_cmd =
            app.add_subcommand("query", "filter a classification database");
    std::string query_db;
    QueryFilter filter;
    bool count_only = false;
    std::string min_deg, max_deg;
    int want_vertices = -1, want_picard = INT32_MIN;
    query_cmd->add_option("db", query_db, "database path")->required();
    query_cmd->add_flag("--reflexive", filter.reflexive);
    query_cmd->add_flag("--simplicial", filter.simplicial);
    query_cmd->add_flag("--smooth", filter.smooth);
    query_cmd->add_flag("--terminal", filter.terminal);
    query_cmd->add_option("--min-degree", min_deg, "rational, e.g. 54 or 81/2");
    query_cmd->add_option("--max-degree", max_deg, "rational");
    query_cmd->add_option("--vertices", want_vertices, "exact vertex count");
    query_cmd->add_option("--picard", want_picard, "exact Picard rank");
    query_cmd->add_flag("--count", count_only, "print only the match count");

    // stats
    auto *stats_cmd =
            app.add_subcommand("stats", "summary table for a database");
    std::string stats_db;
    stats_cmd->add_option("db", stats_db, "database path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (classify_cmd->parsed())
            return run_classify(dim, mode, out_path, threads, checkpoint,
                                resume);
        if (verify_cmd->parsed())
            return run_verify_seeds();
        if (query_cmd->parsed()) {
            if (!min_deg.empty())
                filter.min_degree = parse_rational(min_deg);
            if (!max_deg.empty())
                filter.max_degree = parse_rational(max_deg);
            if (want_vertices >= 0)
                filter.vertices = want_vertices;
            if (want_picard != INT32_MIN)
                filter.picard = want_picard;
            return run_query(query_db, filter, count_only);
        }
        if (stats_cmd->parsed()) {
            Database db = read_database(stats_db);
            std::cout << stats_report(db);
            return 0;
        }
    } catch (const malformed_record &e) {
        std::cerr << "malformed database: " << e.what() << "\n";
        return 2;
    } catch (const fano::error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
