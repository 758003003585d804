#include "fano/storage.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace fano {

namespace {

void append_point(std::string &out, const Point &p, int dim)
{
    out += '[';
    for (int i = 0; i < dim; ++i) {
        if (i)
            out += ',';
        out += std::to_string(p[i]);
    }
    out += ']';
}

void append_points(std::string &out, const std::vector<Point> &pts, int dim)
{
    out += '[';
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i)
            out += ',';
        append_point(out, pts[i], dim);
    }
    out += ']';
}

} // namespace

std::string serialize_record(const ClassRecord &r)
{
    std::string s;
    s.reserve(256);
    s += "{\"id\":" + std::to_string(r.id);
    s += ",\"vertices\":";
    append_points(s, r.vertices, r.dim);
    s += ",\"n_vertices\":" + std::to_string(r.n_vertices);
    s += ",\"n_points\":" + std::to_string(r.n_points);
    s += ",\"n_interior\":" + std::to_string(r.n_interior);
    s += ",\"volume\":" + std::to_string(r.volume);
    s += ",\"degree_num\":" + std::to_string(r.degree.num);
    s += ",\"degree_den\":" + std::to_string(r.degree.den);
    s += std::string(",\"terminal\":") + (r.terminal ? "true" : "false");
    s += std::string(",\"reflexive\":") + (r.reflexive ? "true" : "false");
    s += std::string(",\"simplicial\":") + (r.simplicial ? "true" : "false");
    s += std::string(",\"smooth\":") + (r.smooth ? "true" : "false");
    s += ",\"picard\":";
    s += r.picard ? std::to_string(*r.picard) : "null";
    s += ",\"nf\":\"" + r.nf + "\"";
    s += ",\"seed\":" + std::to_string(r.seed);
    s += ",\"added\":";
    append_points(s, r.added, r.dim);
    s += "}";
    return s;
}

ClassRecord parse_record(const std::string &line, std::size_t line_no)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &e) {
        throw malformed_record(line_no, e.what());
    }
    try {
        ClassRecord r;
        auto read_points = [&](const nlohmann::json &arr) {
            std::vector<Point> pts;
            for (const auto &q : arr) {
                Point p;
                int d = static_cast<int>(q.size());
                if (d != 2 && d != 3)
                    throw malformed_record(line_no, "bad point arity");
                for (int i = 0; i < d; ++i)
                    p[i] = q[static_cast<std::size_t>(i)].get<Coord>();
                r.dim = d;
                pts.push_back(p);
            }
            return pts;
        };
        r.id = j.at("id").get<std::int64_t>();
        r.vertices = read_points(j.at("vertices"));
        r.n_vertices = j.at("n_vertices").get<int>();
        r.n_points = j.at("n_points").get<int>();
        r.n_interior = j.at("n_interior").get<int>();
        r.volume = j.at("volume").get<Coord>();
        r.degree = Rational{j.at("degree_num").get<Coord>(),
                            j.at("degree_den").get<Coord>()};
        r.terminal = j.at("terminal").get<bool>();
        r.reflexive = j.at("reflexive").get<bool>();
        r.simplicial = j.at("simplicial").get<bool>();
        r.smooth = j.at("smooth").get<bool>();
        if (!j.at("picard").is_null())
            r.picard = j.at("picard").get<int>();
        r.nf = j.at("nf").get<std::string>();
        r.seed = j.at("seed").get<int>();
        r.added = read_points(j.at("added"));
        return r;
    } catch (const nlohmann::json::exception &e) {
        throw malformed_record(line_no, e.what());
    }
}

Database build_database(const Classification &cls, int threads)
{
    if (threads <= 0)
        threads = default_thread_count();
    Database db;
    db.dim = cls.dim;
    db.records.resize(cls.entries.size());

    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex mu;

    auto worker = [&]() {
        while (true) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= cls.entries.size() || failed.load())
                break;
            const ClassifiedEntry &e = cls.entries[i];
            try {
                Polytope p = polytope_from_nf(nf_parse(e.nf, cls.dim), cls.dim);
                FanoProfile fp = compute_profile(p);
                // Emission-time soundness re-check via the fresh scan above.
                if (!fp.is_canonical)
                    throw error("emitted polytope is not canonical Fano: " +
                                e.nf);
                if (cls.mode == Mode::Terminal && !fp.is_terminal)
                    throw error("emitted polytope is not terminal Fano: " +
                                e.nf);
                for (const Point &v : p.vertices)
                    if (!is_primitive_point(v))
                        throw error("non-primitive vertex in " + e.nf);
                ClassRecord r;
                r.dim = cls.dim;
                r.vertices = p.vertices;
                r.n_vertices = fp.n_vertices;
                r.n_points = fp.n_lattice_points;
                r.n_interior = fp.n_interior_points;
                r.volume = fp.volume;
                r.degree = fp.degree;
                r.terminal = fp.is_terminal;
                r.reflexive = fp.is_reflexive;
                r.simplicial = fp.is_simplicial;
                r.smooth = fp.is_smooth;
                r.picard = fp.picard_rank;
                r.nf = e.nf;
                r.seed = e.seed;
                for (std::uint32_t at = static_cast<std::uint32_t>(i);
                     cls.entries[at].parent != at; at = cls.entries[at].parent)
                    r.added.push_back(cls.entries[at].added);
                std::reverse(r.added.begin(), r.added.end());
                db.records[i] = std::move(r);
            } catch (const std::exception &ex) {
                std::lock_guard<std::mutex> lk(mu);
                failed = true;
                if (failure.empty())
                    failure = ex.what();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (std::thread &t : pool)
            t.join();
    }
    if (failed)
        throw error(failure);

    std::sort(db.records.begin(), db.records.end(),
              [](const ClassRecord &a, const ClassRecord &b) {
                  if (a.n_vertices != b.n_vertices)
                      return a.n_vertices < b.n_vertices;
                  if (a.n_points != b.n_points)
                      return a.n_points < b.n_points;
                  if (a.volume != b.volume)
                      return a.volume < b.volume;
                  return a.nf < b.nf;
              });
    for (std::size_t i = 0; i < db.records.size(); ++i)
        db.records[i].id = static_cast<std::int64_t>(i);
    return db;
}

void write_database(const Database &db, const std::string &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw error("cannot open output file " + path);
    std::string buf;
    buf.reserve(1 << 20);
    for (const ClassRecord &r : db.records) {
        buf += serialize_record(r);
        buf += '\n';
        if (buf.size() > (1 << 20) - 1024) {
            out << buf;
            buf.clear();
        }
    }
    out << buf;
    if (!out)
        throw error("write failure on " + path);
}

Database read_database(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error("cannot open database " + path);
    Database db;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            throw malformed_record(line_no, "empty line");
        db.records.push_back(parse_record(line, line_no));
    }
    if (!db.records.empty())
        db.dim = db.records.front().dim;
    return db;
}

bool matches(const ClassRecord &r, const QueryFilter &f)
{
    if (f.reflexive && !r.reflexive)
        return false;
    if (f.simplicial && !r.simplicial)
        return false;
    if (f.smooth && !r.smooth)
        return false;
    if (f.terminal && !r.terminal)
        return false;
    if (f.min_degree && r.degree < *f.min_degree)
        return false;
    if (f.max_degree && r.degree > *f.max_degree)
        return false;
    if (f.vertices && r.n_vertices != *f.vertices)
        return false;
    if (f.picard && (!r.picard || *r.picard != *f.picard))
        return false;
    return true;
}

std::string stats_report(const Database &db)
{
    std::ostringstream out;
    std::size_t n = db.records.size();
    std::size_t reflexive = 0, simplicial = 0, smooth = 0, terminal = 0;
    std::map<std::pair<Coord, Coord>, std::size_t> degree_hist;
    std::map<int, std::size_t> picard_hist;
    std::map<int, std::size_t> vertex_hist;
    Rational max_degree{0};
    std::vector<std::int64_t> max_degree_ids;
    for (const ClassRecord &r : db.records) {
        reflexive += r.reflexive;
        simplicial += r.simplicial;
        smooth += r.smooth;
        terminal += r.terminal;
        degree_hist[{r.degree.num, r.degree.den}]++;
        vertex_hist[r.n_vertices]++;
        if (r.picard)
            picard_hist[*r.picard]++;
        if (r.degree > max_degree) {
            max_degree = r.degree;
            max_degree_ids.clear();
        }
        if (r.degree == max_degree)
            max_degree_ids.push_back(r.id);
    }
    out << "records: " << n << "\n";
    out << "reflexive (Gorenstein): " << reflexive << "\n";
    out << "simplicial (Q-factorial): " << simplicial << "\n";
    out << "smooth: " << smooth << "\n";
    out << "terminal: " << terminal << "\n";
    out << "max degree: " << max_degree.str() << " attained by "
        << max_degree_ids.size() << " record(s):";
    for (std::int64_t id : max_degree_ids)
        out << " " << id;
    out << "\n";
    out << "vertex-count histogram:\n";
    for (const auto &[k, c] : vertex_hist)
        out << "  " << k << " vertices: " << c << "\n";
    out << "picard-rank histogram (simplicial only):\n";
    for (const auto &[k, c] : picard_hist)
        out << "  rho=" << k << ": " << c << "\n";
    out << "degree histogram:\n";
    for (const auto &[k, c] : degree_hist)
        out << "  " << Rational{k.first, k.second}.str() << ": " << c << "\n";
    return out.str();
}

} // namespace fano
