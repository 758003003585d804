// Canonical form for lattice polytopes under GL(n,Z) x vertex relabeling.
//
// The form is computed from the vertex-facet pairing matrix: its
// lexicographically maximal row/column arrangement pins down the candidate
// vertex orderings (up to the pairing matrix's automorphisms), each ordering
// yields the Hermite normal form of the vertex matrix, and the
// lexicographically maximal of those HNFs is the normal form.  NF(P) = NF(Q)
// iff P and Q are unimodular equivalent.
//
// Serialization is the dedup-map key and must stay bit-stable: decimal
// entries, row-major, single-space separated, rows joined by semicolons.

#ifndef FANO_NORMAL_FORM_HPP
#define FANO_NORMAL_FORM_HPP

#include "fano/matrix.hpp"
#include "fano/polytope.hpp"

#include <string>
#include <vector>

namespace fano {

struct NormalForm {
    MatZ matrix; // dim x n_vertices
    std::string key;

    friend bool operator==(const NormalForm &a, const NormalForm &b)
    {
        return a.key == b.key;
    }
};

NormalForm normal_form(const Polytope &p);

// Cheap invariants compared before the full normal form.
struct Fingerprint {
    int n_vertices = 0;
    int n_lattice_points = 0;
    Coord volume = 0;
    std::vector<Coord> levels; // sorted facet-level multiset

    friend bool operator==(const Fingerprint &, const Fingerprint &) = default;
};

Fingerprint fingerprint(const Polytope &p);

bool is_equivalent(const Polytope &p, const Polytope &q);

std::string nf_serialize(const MatZ &m);
MatZ nf_parse(const std::string &key, int dim);

// The canonical representative: hull of the normal-form matrix columns.
Polytope polytope_from_nf(const MatZ &m, int dim);

} // namespace fano

#endif
