#pragma once

#include <vector>

#include "ihcalc/homology.hpp"

namespace ih {

// Homology of a field presentation with chosen representative cycles and the
// reduction of arbitrary cycles to coordinates in the homology basis.
template <class Ops>
struct HomologyWithReps {
    using T = typename Ops::value;

    struct Degree {
        // Echelonized reduction set: boundary columns first, then homology
        // representatives; rep_index[j] >= 0 marks the j-th column as the
        // rep of that homology coordinate.
        std::vector<SparseVec<T>> reducers;
        std::vector<int> reducer_pivots;
        std::vector<int> rep_index;
        std::vector<SparseVec<T>> reps;  // representative cycles, presented coords
        int h_dim = 0;
    };

    Ops ops;
    std::vector<Degree> degs;

    int dim(int k) const {
        return (k >= 0 && k < (int)degs.size()) ? degs[k].h_dim : 0;
    }
    // Coordinates of a cycle's class in the chosen homology basis.
    SparseVec<T> class_coords(int k, const SparseVec<T>& cycle) const;
};

template <class Ops>
HomologyWithReps<Ops> homology_with_reps(const Presentation<Ops>& P);

// A long exact sequence candidate: module dimensions and the maps between
// them, ready for check_exactness.
template <class Ops>
struct LESData {
    std::vector<int> dims;
    std::vector<SparseMat<typename Ops::value>> maps;
    std::vector<std::string> labels;
};

template <class Ops>
ExactnessReport check_les(const Ops& ops, const LESData<Ops>& les) {
    return check_exactness(ops, les.dims, les.maps);
}

// LES of a pair (X, L): ... -> H_k(L) -> H_k(X) -> H_k(X,L) -> H_{k-1}(L) -> ...
// built from the presented complexes via the snake construction.
template <class Ops>
LESData<Ops> pair_les(const Space& X, const SimplexSubset& L, const Perversity& p,
                      const Ops& ops, bool tame);

// Mayer-Vietoris data for a two-set subcomplex cover K = K1 ∪ K2. The LES uses
// the internal sum C(K1)+C(K2) as middle homology; `sum_iso` records whether
// its inclusion into C(X) is an isomorphism on homology (the key MV property).
template <class Ops>
struct MVData {
    LESData<Ops> les;
    bool sum_iso = false;
    int subdivisions_used = 0;
};

template <class Ops>
MVData<Ops> mv_les(const Space& X, const SimplexSubset& K1, const SimplexSubset& K2,
                   const Perversity& p, const Ops& ops, bool tame);

// Retries mv_les after barycentric subdivision (complex, cover and perversity
// transported) until the sum inclusion is a homology isomorphism or the bound
// is reached. A failure after the bound is reported, not thrown.
template <class Ops>
MVData<Ops> mv_les_with_subdivision(const Space& X, const SimplexSubset& K1,
                                    const SimplexSubset& K2, const Perversity& p, const Ops& ops,
                                    bool tame, int max_subdivisions = 2);

}  // namespace ih
