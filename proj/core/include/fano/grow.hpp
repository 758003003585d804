// The seed-and-grow classification engine: candidate generation from the
// fixed rule tables, canonical/terminal growth steps, and the parallel
// deduplicated closure with checkpointing.

#ifndef FANO_GROW_HPP
#define FANO_GROW_HPP

#include "fano/normal_form.hpp"
#include "fano/polytope.hpp"
#include "fano/seeds.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fano {

// Candidate vertices are -(a*v1 + ... )/d over tuples of distinct vertices,
// kept only when every division is exact.  Pair rules are the six fixed
// sums; triple rules are derived from the weight table, one slot per weight.
struct GrowthRules {
    struct Pair {
        Coord d, a, b;
    };
    struct Triple {
        Coord d, a, b, c;
    };
    int dim = 3;
    std::vector<Pair> pairs;     // applied to unordered pairs, all
                                 // inequivalent coefficient orders listed
    std::vector<Triple> triples; // likewise for unordered triples; empty in dim 2
    std::uint64_t hash = 0;      // stable content hash (checkpoint guard)
};

const GrowthRules &growth_rules(int dim);

// Full candidate set for one growth step (rule (a) negations, rule (b) pair
// sums, rule (c) weighted triple sums), sorted and deduplicated.  Points
// already inside P are retained.
std::vector<Point> candidate_points(const Polytope &p, Mode mode,
                                    const WeightTable &wt);

// All strict enlargements conv(P u {v}) over the candidate set that are
// canonical (resp. terminal) Fano with v a vertex of the result.  No-op
// additions (v already in P) collapse and are not returned.
std::vector<Polytope> expand(const Polytope &p, Mode mode,
                             const WeightTable &wt);

struct ClassifyOptions {
    int dim = 3;
    Mode mode = Mode::Canonical;
    int threads = 0;             // 0: FANO_THREADS or hardware concurrency
    std::string checkpoint_path; // empty: no checkpoints
    bool resume = false;
    int stop_after_layers = -1;  // test hook: simulate a killed run
};

// One discovered equivalence class.  The representative polytope is the hull
// of the normal-form matrix columns; `added` is the vertex that was added to
// the parent representative (in the parent's coordinates).
struct ClassifiedEntry {
    std::string nf;
    int seed = 0;
    std::uint32_t parent = 0; // index into entries; self for seeds
    Point added{};
    int layer = 0;
};

struct Classification {
    int dim = 3;
    Mode mode = Mode::Canonical;
    std::vector<ClassifiedEntry> entries;
    bool complete = true; // false when stop_after_layers fired
};

struct OverflowAbort : error {
    std::string polytope;
    explicit OverflowAbort(std::string poly)
            : error("arithmetic overflow while expanding " + poly),
              polytope{std::move(poly)}
    {
    }
};

// Closure of the seed set under expansion, deduplicated by normal form.
// The entry list is a deterministic function of (dim, mode) alone: identical
// across thread counts, schedules and resume points.
Classification classify(const ClassifyOptions &opt);

void save_checkpoint(const Classification &cls,
                     const std::vector<std::uint32_t> &queue, int layer,
                     const std::string &path);

struct CheckpointState {
    Classification cls;
    std::vector<std::uint32_t> queue;
    int layer = 0;
};

CheckpointState load_checkpoint(const std::string &path, int dim, Mode mode);

int default_thread_count();

} // namespace fano

#endif
