#pragma once

#include <string>
#include <vector>

#include "ihcalc/presentation.hpp"

namespace ih {

// A finitely generated homology group: free rank plus invariant factors
// d_1 | d_2 | ... (each >= 2; empty over a field).
struct HomologyGroup {
    RingInfo ring;
    int free_rank = 0;
    std::vector<Int> torsion;

    std::string str() const;
    friend bool operator==(const HomologyGroup& a, const HomologyGroup& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
};

bool groups_equal(const std::vector<HomologyGroup>& a, const std::vector<HomologyGroup>& b);

// Homology of a presentation, by degree 0..max_degree. The reduced variant
// subtracts one from the degree-0 free rank when the complex is augmentable
// (nonempty degree-0 basis); it is never applied implicitly.
std::vector<HomologyGroup> homology(const Presentation<ZOps>& P, bool reduced = false);
std::vector<HomologyGroup> homology(const Presentation<QOps>& P, bool reduced = false);
std::vector<HomologyGroup> homology(const Presentation<FpOps>& P, bool reduced = false);

// One-call driver: build the requested presentation and take homology.
// p == nullptr computes ordinary homology. Degrees are padded with zero
// groups up to X.formal_dim (+1 never hurts callers that slice).
struct HomologyRequest {
    RingInfo ring;
    bool tame = false;
    bool reduced = false;
    const SimplexSubset* relative_to = nullptr;  // quotient by this full subcomplex
    const SimplexSubset* domain = nullptr;       // restrict to a subcomplex
};

std::vector<HomologyGroup> compute_homology(const Space& X, const Perversity* p,
                                            const HomologyRequest& req);

// --- exactness ---------------------------------------------------------------

struct ExactnessSlot {
    int index;          // position of the module in the sequence
    int rank_in;        // rank of the incoming map
    int dim_kernel;     // nullity of the outgoing map
    bool exact;
};

struct ExactnessReport {
    bool exact = true;
    bool compositions_vanish = true;
    std::vector<ExactnessSlot> slots;  // interior modules only
};

// Checks exactness of M_0 -> M_1 -> ... -> M_r at every interior module.
// dims[i] is the dimension of M_i; maps[i] : M_i -> M_{i+1} over the field.
template <class Ops>
ExactnessReport check_exactness(const Ops& ops, const std::vector<int>& dims,
                                const std::vector<SparseMat<typename Ops::value>>& maps);

}  // namespace ih
