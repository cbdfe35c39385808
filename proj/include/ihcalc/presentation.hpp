#pragma once

#include <string>
#include <vector>

#include "ihcalc/chain.hpp"
#include "ihcalc/snf.hpp"

namespace ih {

// An explicit chain complex presentation over a chosen ring: per degree an
// echelonized basis of the chain module in global simplex coordinates and the
// boundary matrix expressed in those bases. d.d = 0 is verified at build time.
//
// Degree-k basis columns live over rows indexed by the complex's k-simplices
// (global indices), which makes chain maps between presentations of
// subcomplexes of one complex a matter of solving against the target basis.
template <class Ops>
struct Presentation {
    using T = typename Ops::value;

    struct Degree {
        std::vector<int> ambient;         // eligible cells (global indices), sorted
        std::vector<SparseVec<T>> basis;  // echelon columns over global rows
        std::vector<int> pivots;          // pivot row per basis column
        SparseMat<T> d;                   // boundary into degree k-1, presented bases
        // For quotient presentations: each basis column's lift into the
        // absolute presentation's basis coordinates (empty otherwise).
        std::vector<SparseVec<T>> lift;

        int rank() const { return static_cast<int>(basis.size()); }
        // Solve for presented coordinates of a chain in global coordinates.
        SparseVec<T> solve(const Ops& ops, const SparseVec<T>& chain_global) const;
    };

    Ops ops;
    RingInfo ring;
    std::string label;
    bool tame = false;
    std::vector<Degree> degs;  // index = degree

    int max_degree() const { return static_cast<int>(degs.size()) - 1; }
    int rank(int k) const {
        return (k >= 0 && k <= max_degree()) ? degs[k].rank() : 0;
    }
};

// Build the chain complex of (a subcomplex of) X: intersection or tame
// variant when a perversity is given, ordinary simplicial chains otherwise.
// `domain` restricts to a face-closed subset (nullptr = the whole complex).
template <class Ops>
Presentation<Ops> build_presentation(const Space& X, const Ops& ops, const Perversity* p,
                                     bool tame, const SimplexSubset* domain = nullptr);

// Quotient by the part supported on a subcomplex: presentation of C(X)/C(L),
// with lifts retained for connecting-map construction.
template <class Ops>
Presentation<Ops> build_quotient(const Space& X, const Presentation<Ops>& absolute,
                                 const SimplexSubset& L);

// Internal sum C(K1) + C(K2) inside the chains of X (Mayer-Vietoris middle
// object). lifts record each basis column as a combination of the
// concatenated bases of the two terms.
template <class Ops>
Presentation<Ops> build_sum(const Space& X, const Presentation<Ops>& K1,
                            const Presentation<Ops>& K2);

// Named entry points for the standard variants ---------------------------------

template <class Ops>
Presentation<Ops> build_intersection_complex(const Space& X, const Perversity& p,
                                             const Ops& ops) {
    return build_presentation(X, ops, &p, /*tame=*/false);
}

template <class Ops>
Presentation<Ops> build_tame_complex(const Space& X, const Perversity& p, const Ops& ops) {
    return build_presentation(X, ops, &p, /*tame=*/true);
}

// Relative complex of a pair (X, L); L must be a full subcomplex.
template <class Ops>
Presentation<Ops> build_relative_complex(const Space& X, const SimplexSubset& L,
                                         const Perversity& p, const Ops& ops, bool tame);

// Ordinary simplicial chains (no admissibility constraints).
template <class Ops>
Presentation<Ops> ordinary_presentation(const Space& X, const Ops& ops,
                                        const SimplexSubset* domain = nullptr);

template <class Ops>
Presentation<Ops> ordinary_relative_presentation(const Space& X, const SimplexSubset& L,
                                                 const Ops& ops);

}  // namespace ih
