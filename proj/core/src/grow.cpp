#include "fano/grow.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

namespace fano {

namespace {

std::uint64_t rules_hash(const GrowthRules &r)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](Coord v) { h = fnv1a(&v, sizeof v, h); };
    mix(r.dim);
    for (const auto &p : r.pairs) {
        mix(p.d);
        mix(p.a);
        mix(p.b);
    }
    for (const auto &t : r.triples) {
        mix(t.d);
        mix(t.a);
        mix(t.b);
        mix(t.c);
    }
    return h;
}

GrowthRules build_rules(int dim)
{
    GrowthRules r;
    r.dim = dim;

    // The six pair sums, expanded over both coefficient orders.  They are
    // the weight relations of the Fano triangles.
    const Coord six[6][3] = {{1, 1, 1}, {1, 2, 1}, {2, 1, 1},
                             {1, 2, 3}, {2, 1, 3}, {3, 1, 2}};
    std::set<std::array<Coord, 3>> pair_set;
    for (const auto &s : six) {
        pair_set.insert({s[0], s[1], s[2]});
        pair_set.insert({s[0], s[2], s[1]});
    }
    for (const auto &p : pair_set)
        r.pairs.push_back({p[0], p[1], p[2]});

    if (dim == 3) {
        // One slot per weight: divide by each entry in turn, the other three
        // are the coefficients.  Ordered-tuple coverage is obtained by
        // listing all distinct permutations and iterating unordered triples.
        std::set<std::array<Coord, 4>> canon;
        for (const auto &[w, sum] : weight_table().entries) {
            (void)sum;
            for (int slot = 0; slot < 4; ++slot) {
                std::array<Coord, 3> n{};
                int k = 0;
                for (int i = 0; i < 4; ++i)
                    if (i != slot)
                        n[static_cast<std::size_t>(k++)] =
                                w[static_cast<std::size_t>(i)];
                std::sort(n.begin(), n.end());
                canon.insert({w[static_cast<std::size_t>(slot)], n[0], n[1],
                              n[2]});
            }
        }
        std::set<std::array<Coord, 4>> expanded;
        for (const auto &c : canon) {
            std::array<Coord, 3> n{c[1], c[2], c[3]};
            std::sort(n.begin(), n.end());
            do {
                expanded.insert({c[0], n[0], n[1], n[2]});
            } while (std::next_permutation(n.begin(), n.end()));
        }
        for (const auto &e : expanded)
            r.triples.push_back({e[0], e[1], e[2], e[3]});
    }
    r.hash = rules_hash(r);
    return r;
}

// Divisibility-checked -(a*va + b*vb [+ c*vc])/d with early exit per
// coordinate.
inline bool rule_point(Coord d, Coord a, const Point &va, Coord b,
                       const Point &vb, Coord c, const Point *vc, Point &out)
{
    for (int i = 0; i < 3; ++i) {
        Coord s = checked_add(checked_mul(a, va[i]), checked_mul(b, vb[i]));
        if (vc)
            s = checked_add(s, checked_mul(c, (*vc)[i]));
        if (d != 1) {
            if (s % d != 0)
                return false;
            s /= d;
        }
        out[i] = checked_neg(s);
    }
    return true;
}

void generate_candidates(const Polytope &p, const GrowthRules &rules,
                         std::vector<Point> &out)
{
    out.clear();
    const auto &vs = p.vertices;
    const int nv = static_cast<int>(vs.size());
    for (const Point &v : vs)
        out.push_back(neg(v));
    Point cand;
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            for (const auto &r : rules.pairs)
                if (rule_point(r.d, r.a, vs[static_cast<std::size_t>(i)], r.b,
                               vs[static_cast<std::size_t>(j)], 0, nullptr,
                               cand))
                    out.push_back(cand);
    if (p.dim == 3) {
        for (int i = 0; i < nv; ++i)
            for (int j = i + 1; j < nv; ++j)
                for (int k = j + 1; k < nv; ++k)
                    for (const auto &r : rules.triples)
                        if (rule_point(r.d, r.a,
                                       vs[static_cast<std::size_t>(i)], r.b,
                                       vs[static_cast<std::size_t>(j)], r.c,
                                       &vs[static_cast<std::size_t>(k)], cand))
                            out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

// Expansion working state for one polytope; reused across candidates.
struct Expander {
    Mode mode;
    const GrowthRules *rules;
    Polytope p;
    std::vector<Point> candidates;
    std::vector<Coord> fval;
    std::uint64_t visible = 0;
    // Non-vertex boundary lattice points with their facet saturation masks.
    struct BPoint {
        Point x;
        std::uint64_t sat;
    };
    std::vector<BPoint> bpts;

    void load(Polytope poly)
    {
        p = std::move(poly);
        assert(p.n_facets() <= 64);
        bpts.clear();
        LatticePoints pts = lattice_points(p);
        for (const Point &b : pts.boundary) {
            if (std::binary_search(p.vertices.begin(), p.vertices.end(), b))
                continue;
            BPoint bp{b, 0};
            for (std::size_t f = 0; f < p.facets.size(); ++f)
                if (checked_add(dot(p.facets[f].normal, b),
                                p.facets[f].level) == 0)
                    bp.sat |= std::uint64_t{1} << f;
            bpts.push_back(bp);
        }
        generate_candidates(p, *rules, candidates);
    }

    // Facet values of v; fills `visible`, returns true iff v is outside P.
    bool facet_values(const Point &v)
    {
        visible = 0;
        bool outside = false;
        for (std::size_t f = 0; f < p.facets.size(); ++f) {
            fval.resize(p.facets.size());
            Coord s = checked_add(dot(p.facets[f].normal, v),
                                  p.facets[f].level);
            fval[f] = s;
            if (s < 0) {
                visible |= std::uint64_t{1} << f;
                outside = true;
            }
        }
        return outside;
    }

    // True iff some point of the open ray {w + s(w - v) : s >= 0} is strictly
    // interior to P; then w itself is a non-origin interior lattice point of
    // conv(P u {v}) and the candidate is dead.
    bool interior_certificate(const Point &w, const Point &v) const
    {
        // Interval (lo, hi) of admissible s as exact fractions.
        Coord lo_n = 0, lo_d = 1;   // s > lo_n/lo_d (initially s >= 0)
        bool lo_closed = true;
        Coord hi_n = 1, hi_d = 0;   // s < hi_n/hi_d (initially +inf)
        Point dir = sub(w, v);
        for (const Facet &f : p.facets) {
            Coord a = dot(f.normal, dir);
            Coord b = checked_add(dot(f.normal, w), f.level);
            if (a == 0) {
                if (b <= 0)
                    return false;
            } else if (a > 0) {
                // s > -b/a
                Wide lhs = static_cast<Wide>(-b) * lo_d;
                Wide rhs = static_cast<Wide>(lo_n) * a;
                if (lhs > rhs || (lhs == rhs && lo_closed)) {
                    lo_n = -b;
                    lo_d = a;
                    lo_closed = false;
                }
            } else {
                // s < b/(-a)
                Coord na = -a;
                Wide lhs = static_cast<Wide>(b) * hi_d;
                Wide rhs = static_cast<Wide>(hi_n) * na;
                if (hi_d == 0 || lhs < rhs) {
                    hi_n = b;
                    hi_d = na;
                }
            }
        }
        if (hi_d == 0)
            return true; // unbounded above, lo is finite
        // Need lo < hi strictly.
        Wide lhs = static_cast<Wide>(lo_n) * hi_d;
        Wide rhs = static_cast<Wide>(hi_n) * lo_d;
        return lhs < rhs;
    }

    static Point round_shift(const Point &v, int k)
    {
        Point w;
        Coord m = Coord{1} << k;
        for (int i = 0; i < 3; ++i) {
            Coord x = v[i];
            w[i] = x >= 0 ? (x + m / 2) / m : -((-x + m / 2) / m);
        }
        return w;
    }

    bool probe_reject(const Point &v) const
    {
        if (p.dim != 3)
            return false;
        for (int k = 1; k <= 6; ++k) {
            Point w = round_shift(v, k);
            if (is_zero(w))
                break;
            if (interior_certificate(w, v))
                return true;
        }
        return false;
    }

    // Full exactness check of one accepted enlargement candidate; returns
    // the hull when conv(P u {v}) is canonical (resp. terminal) Fano.
    std::optional<Polytope> try_grow(const Point &v)
    {
        if (content(v) != 1)
            return std::nullopt; // v = k*w makes w interior
        if (!facet_values(v))
            return std::nullopt; // inside P: no-op growth
        if (probe_reject(v))
            return std::nullopt;

        std::optional<Polytope> grown = add_point(p, v);
        assert(grown.has_value());
        Polytope &q = *grown;

        // Old vertices absorbed by the growth.
        {
            std::size_t qi = 0;
            for (const Point &u : p.vertices) {
                while (qi < q.vertices.size() && q.vertices[qi] < u)
                    ++qi;
                if (qi < q.vertices.size() && q.vertices[qi] == u)
                    continue;
                switch (locate(q, u)) {
                case Location::Interior:
                    return std::nullopt;
                case Location::Boundary:
                    if (mode == Mode::Terminal)
                        return std::nullopt;
                    break;
                case Location::Outside:
                    assert(false);
                }
            }
        }

        // Old non-vertex boundary points of P pulled into the interior.
        for (const BPoint &b : bpts) {
            if ((b.sat & ~visible) != 0)
                continue; // still on a surviving facet plane
            if (locate(q, b.x) == Location::Interior)
                return std::nullopt;
        }

        // New lattice points: scan the cap between P and q.
        Point lo = v, hi = v;
        for (std::size_t f = 0; f < p.facets.size(); ++f) {
            if (!(visible & (std::uint64_t{1} << f)))
                continue;
            for (std::size_t i = 0; i < p.vertices.size(); ++i) {
                if (!(p.facets[f].vmask & (std::uint64_t{1} << i)))
                    continue;
                for (int c = 0; c < 3; ++c) {
                    lo[c] = std::min(lo[c], p.vertices[i][c]);
                    hi[c] = std::max(hi[c], p.vertices[i][c]);
                }
            }
        }
        auto ceil_div = [](Coord a, Coord b) {
            Coord r = a / b;
            if (a % b != 0 && a > 0)
                ++r;
            return r;
        };
        auto floor_div = [](Coord a, Coord b) {
            Coord r = a / b;
            if (a % b != 0 && a < 0)
                --r;
            return r;
        };
        for (Coord z = lo[2]; z <= hi[2]; ++z) {
            for (Coord y = lo[1]; y <= hi[1]; ++y) {
                Coord xlo = lo[0], xhi = hi[0];
                bool empty = false;
                for (const Facet &f : q.facets) {
                    Coord rest = checked_add(
                            checked_add(checked_mul(f.normal[1], y),
                                        checked_mul(f.normal[2], z)),
                            f.level);
                    Coord a = f.normal[0];
                    if (a == 0) {
                        if (rest < 0) {
                            empty = true;
                            break;
                        }
                    } else if (a > 0) {
                        xlo = std::max(xlo, ceil_div(checked_neg(rest), a));
                    } else {
                        xhi = std::min(xhi, floor_div(rest, checked_neg(a)));
                    }
                }
                if (empty)
                    continue;
                for (Coord x = xlo; x <= xhi; ++x) {
                    Point pt{{x, y, z}};
                    if (locate(p, pt) != Location::Outside)
                        continue; // an old point, handled above
                    switch (locate(q, pt)) {
                    case Location::Interior:
                        return std::nullopt;
                    case Location::Boundary:
                        if (mode == Mode::Terminal && !(pt == v))
                            return std::nullopt;
                        break;
                    case Location::Outside:
                        break;
                    }
                }
            }
        }
        return grown;
    }
};

} // namespace

const GrowthRules &growth_rules(int dim)
{
    if (dim != 2 && dim != 3)
        throw unsupported_dimension(dim);
    static const GrowthRules r2 = build_rules(2);
    static const GrowthRules r3 = build_rules(3);
    return dim == 2 ? r2 : r3;
}

std::vector<Point> candidate_points(const Polytope &p, Mode mode,
                                    const WeightTable &wt)
{
    (void)mode;
    (void)wt; // the triple rules are built from the same table
    std::vector<Point> out;
    generate_candidates(p, growth_rules(p.dim), out);
    return out;
}

std::vector<Polytope> expand(const Polytope &p, Mode mode,
                             const WeightTable &wt)
{
    (void)wt;
    Expander ex;
    ex.mode = mode;
    ex.rules = &growth_rules(p.dim);
    ex.load(p);
    std::vector<Polytope> out;
    for (const Point &v : ex.candidates)
        if (std::optional<Polytope> q = ex.try_grow(v))
            out.push_back(std::move(*q));
    return out;
}

int default_thread_count()
{
    if (const char *env = std::getenv("FANO_THREADS")) {
        int n = std::atoi(env);
        if (n > 0)
            return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace {

struct Discovery {
    std::uint32_t parent;
    Point added;
};

using DiscoveryMap = std::unordered_map<std::string, Discovery>;

void keep_min(DiscoveryMap &m, std::string key, std::uint32_t parent,
              const Point &added)
{
    auto [it, inserted] = m.try_emplace(std::move(key), Discovery{parent, added});
    if (inserted)
        return;
    Discovery &d = it->second;
    if (parent < d.parent || (parent == d.parent && added < d.added))
        d = Discovery{parent, added};
}

} // namespace

void save_checkpoint(const Classification &cls,
                     const std::vector<std::uint32_t> &queue, int layer,
                     const std::string &path)
{
    std::string body;
    body += "fano-checkpoint 1\n";
    body += "dim " + std::to_string(cls.dim) + "\n";
    body += std::string("mode ") + mode_name(cls.mode) + "\n";
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(growth_rules(cls.dim).hash));
    body += std::string("rules ") + hex + "\n";
    body += "layer " + std::to_string(layer) + "\n";
    body += "entries " + std::to_string(cls.entries.size()) + "\n";
    for (const ClassifiedEntry &e : cls.entries) {
        body += e.nf;
        body += '\t';
        body += std::to_string(e.seed);
        body += '\t';
        body += std::to_string(e.parent);
        body += '\t';
        body += std::to_string(e.added[0]) + " " + std::to_string(e.added[1]) +
                " " + std::to_string(e.added[2]);
        body += '\t';
        body += std::to_string(e.layer);
        body += '\n';
    }
    body += "queue " + std::to_string(queue.size()) + "\n";
    for (std::uint32_t q : queue) {
        body += std::to_string(q);
        body += '\n';
    }
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a(body)));
    body += std::string("checksum ") + hex + "\n";

    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw error("cannot write checkpoint " + tmp);
        out << body;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw error("cannot rename checkpoint into place: " + path);
}

CheckpointState load_checkpoint(const std::string &path, int dim, Mode mode)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw checkpoint_corrupt("cannot open checkpoint " + path);
    std::string data((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());

    std::size_t csum_pos = data.rfind("checksum ");
    if (csum_pos == std::string::npos || csum_pos == 0)
        throw checkpoint_corrupt("missing checksum");
    std::string body = data.substr(0, csum_pos);
    std::string stored = data.substr(csum_pos + 9);
    while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r'))
        stored.pop_back();
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a(body)));
    if (stored != hex)
        throw checkpoint_corrupt("checksum mismatch");

    CheckpointState st;
    st.cls.dim = dim;
    st.cls.mode = mode;

    std::size_t pos = 0;
    auto next_line = [&]() -> std::string {
        std::size_t end = body.find('\n', pos);
        if (end == std::string::npos)
            throw checkpoint_corrupt("truncated checkpoint");
        std::string line = body.substr(pos, end - pos);
        pos = end + 1;
        return line;
    };
    auto expect_kv = [&](const std::string &key) -> std::string {
        std::string line = next_line();
        if (line.rfind(key + " ", 0) != 0)
            throw checkpoint_corrupt("expected '" + key + "' line");
        return line.substr(key.size() + 1);
    };

    if (next_line() != "fano-checkpoint 1")
        throw checkpoint_corrupt("bad header");
    if (std::stoi(expect_kv("dim")) != dim)
        throw checkpoint_corrupt("dimension mismatch");
    if (expect_kv("mode") != mode_name(mode))
        throw checkpoint_corrupt("mode mismatch");
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(growth_rules(dim).hash));
    if (expect_kv("rules") != hex)
        throw checkpoint_corrupt("rule table mismatch");
    st.layer = std::stoi(expect_kv("layer"));
    std::size_t n_entries = std::stoull(expect_kv("entries"));
    st.cls.entries.reserve(n_entries);
    for (std::size_t i = 0; i < n_entries; ++i) {
        std::string line = next_line();
        ClassifiedEntry e;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = line.find('\t', t1 + 1);
        std::size_t t3 = line.find('\t', t2 + 1);
        std::size_t t4 = line.find('\t', t3 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos ||
            t3 == std::string::npos || t4 == std::string::npos)
            throw checkpoint_corrupt("bad entry line");
        e.nf = line.substr(0, t1);
        e.seed = std::stoi(line.substr(t1 + 1, t2 - t1 - 1));
        e.parent = static_cast<std::uint32_t>(
                std::stoul(line.substr(t2 + 1, t3 - t2 - 1)));
        std::string pt = line.substr(t3 + 1, t4 - t3 - 1);
        std::size_t s1 = pt.find(' ');
        std::size_t s2 = pt.find(' ', s1 + 1);
        e.added[0] = std::stoll(pt.substr(0, s1));
        e.added[1] = std::stoll(pt.substr(s1 + 1, s2 - s1 - 1));
        e.added[2] = std::stoll(pt.substr(s2 + 1));
        e.layer = std::stoi(line.substr(t4 + 1));
        st.cls.entries.push_back(std::move(e));
    }
    std::size_t n_queue = std::stoull(expect_kv("queue"));
    st.queue.reserve(n_queue);
    for (std::size_t i = 0; i < n_queue; ++i)
        st.queue.push_back(
                static_cast<std::uint32_t>(std::stoul(next_line())));
    return st;
}

Classification classify(const ClassifyOptions &opt)
{
    if (opt.dim != 2 && opt.dim != 3)
        throw unsupported_dimension(opt.dim);
    const int threads =
            opt.threads > 0 ? opt.threads : default_thread_count();

    Classification cls;
    cls.dim = opt.dim;
    cls.mode = opt.mode;
    std::unordered_map<std::string, std::uint32_t> seen;
    std::vector<std::uint32_t> queue;
    int layer = 0;

    if (opt.resume) {
        if (opt.checkpoint_path.empty())
            throw error("resume requested without a checkpoint path");
        CheckpointState st =
                load_checkpoint(opt.checkpoint_path, opt.dim, opt.mode);
        cls = std::move(st.cls);
        queue = std::move(st.queue);
        layer = st.layer;
        for (std::uint32_t i = 0; i < cls.entries.size(); ++i)
            seen.emplace(cls.entries[i].nf, i);
    } else {
        SeedSet seeds = builtin_seeds(opt.dim, opt.mode);
        // Seed entries sorted by normal form key; ids are then deterministic.
        std::vector<std::pair<std::string, int>> keyed;
        for (std::size_t i = 0; i < seeds.polytopes.size(); ++i)
            keyed.emplace_back(normal_form(seeds.polytopes[i]).key,
                               static_cast<int>(i));
        std::sort(keyed.begin(), keyed.end());
        for (const auto &[key, seed_id] : keyed) {
            assert(seen.find(key) == seen.end());
            std::uint32_t id = static_cast<std::uint32_t>(cls.entries.size());
            seen.emplace(key, id);
            ClassifiedEntry e;
            e.nf = key;
            e.seed = seed_id;
            e.parent = id;
            e.layer = 0;
            cls.entries.push_back(std::move(e));
            queue.push_back(id);
        }
        if (!opt.checkpoint_path.empty())
            save_checkpoint(cls, queue, layer, opt.checkpoint_path);
    }

    int layers_done = 0;
    while (!queue.empty()) {
        if (opt.stop_after_layers >= 0 && layers_done >= opt.stop_after_layers) {
            cls.complete = false;
            return cls;
        }

        std::atomic<std::size_t> cursor{0};
        std::vector<DiscoveryMap> found(static_cast<std::size_t>(threads));
        std::exception_ptr first_error;
        std::mutex error_mu;

        auto worker = [&](int tid) {
            Expander ex;
            ex.mode = opt.mode;
            ex.rules = &growth_rules(opt.dim);
            DiscoveryMap &local = found[static_cast<std::size_t>(tid)];
            try {
                while (true) {
                    std::size_t i = cursor.fetch_add(1);
                    if (i >= queue.size())
                        break;
                    std::uint32_t id = queue[i];
                    const std::string &nf = cls.entries[id].nf;
                    try {
                        ex.load(polytope_from_nf(nf_parse(nf, opt.dim),
                                                 opt.dim));
                        for (const Point &v : ex.candidates) {
                            std::optional<Polytope> q = ex.try_grow(v);
                            if (!q)
                                continue;
                            std::string key = normal_form(*q).key;
                            if (seen.find(key) != seen.end())
                                continue; // read-only during the layer
                            keep_min(local, std::move(key), id, v);
                        }
                    } catch (const overflow_error &) {
                        throw OverflowAbort(nf);
                    }
                }
            } catch (...) {
                std::lock_guard<std::mutex> lk(error_mu);
                if (!first_error)
                    first_error = std::current_exception();
            }
        };

        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t)
                pool.emplace_back(worker, t);
            for (std::thread &t : pool)
                t.join();
        }
        if (first_error)
            std::rethrow_exception(first_error);

        // Deterministic merge: minimal (parent, added) per key, keys sorted.
        DiscoveryMap merged = std::move(found[0]);
        for (int t = 1; t < threads; ++t)
            for (auto &[key, d] : found[static_cast<std::size_t>(t)])
                keep_min(merged, key, d.parent, d.added);
        std::vector<std::pair<std::string, Discovery>> fresh(merged.begin(),
                                                             merged.end());
        std::sort(fresh.begin(), fresh.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });

        queue.clear();
        ++layer;
        for (auto &[key, d] : fresh) {
            assert(seen.find(key) == seen.end());
            std::uint32_t id = static_cast<std::uint32_t>(cls.entries.size());
            seen.emplace(key, id);
            ClassifiedEntry e;
            e.nf = key;
            e.seed = cls.entries[d.parent].seed;
            e.parent = d.parent;
            e.added = d.added;
            e.layer = layer;
            cls.entries.push_back(std::move(e));
            queue.push_back(id);
        }
        ++layers_done;
        if (!opt.checkpoint_path.empty())
            save_checkpoint(cls, queue, layer, opt.checkpoint_path);
    }
    return cls;
}

} // namespace fano
