#pragma once

#include <string>
#include <vector>

#include "ihcalc/complex.hpp"

namespace ih {

// A stratum: one connected component of the simplices at a fixed level.
// Two level-i simplices are connected when one is a face of the other,
// transitively; this is the PL shadow of "component of X_i \ X_{i-1}".
struct Stratum {
    std::string id;  // "S{level}.{index}", index by lexicographic least member
    int level = 0;
    int codim = 0;
    bool regular = false;
    std::vector<std::pair<int, int>> simplices;  // (dim, idx), deterministic order
    int depth = 0;  // length of the longest strict chain upward
};

struct StratumSet {
    std::vector<Stratum> strata;
    // stratum_of[dim][idx] = index into strata of the stratum whose level-set
    // component the simplex belongs to, or -1 when the simplex's level differs
    // from the stratum level (never happens: every simplex has a stratum).
    std::vector<std::vector<int>> stratum_of;
    // order[a][b] = true iff strata[a] <= strata[b] in the closure partial order.
    std::vector<std::vector<bool>> order;

    int count() const { return static_cast<int>(strata.size()); }
    int index_of(const std::string& id) const;  // -1 when absent
    int stratum_of_simplex(const FilteredComplex& X, const Simplex& s) const;
    bool leq(int a, int b) const { return order[a][b]; }
};

StratumSet compute_strata(const FilteredComplex& X);

// Bundles a complex with its strata; most chain-level operations want both.
struct Space {
    FilteredComplex complex;
    StratumSet strata;

    static Space analyze(FilteredComplex X);
};

// A simplicial map between filtered complexes given on vertices, together
// with the induced assignment of strata.
struct StratifiedMapDescriptor {
    const Space* source = nullptr;
    const Space* target = nullptr;
    std::vector<VertexIdx> vertex_map;  // source vertex index -> target vertex index
    std::vector<int> stratum_map;       // source stratum -> target stratum

    // Image of a simplex with repeated vertices removed (always a target simplex
    // when the map is simplicial).
    Simplex image(const Simplex& s) const;
};

struct MapCheckIssue {
    errc code;
    std::string detail;
};

struct StratifiedMapCheck {
    bool valid = true;
    std::vector<MapCheckIssue> issues;
};

// Builds the stratum assignment and verifies simpliciality, the single-target
// condition, codim monotonicity, and that S -> S^f respects the partial order.
StratifiedMapCheck check_stratified_map(StratifiedMapDescriptor& f);

StratifiedMapDescriptor make_vertex_map(const Space& source, const Space& target,
                                        const std::vector<std::pair<VertexId, VertexId>>& pairs);

// Identity-on-vertices descriptor (vertex names must coincide).
StratifiedMapDescriptor identity_map(const Space& source, const Space& target);

}  // namespace ih
