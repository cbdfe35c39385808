#pragma once

// Test-only oracles, kept independent of the implementation paths they check.

#include "ihcalc/chain.hpp"
#include "ihcalc/perversity.hpp"
#include "ihcalc/strata.hpp"

namespace ihtest {

// Admissibility by the skeleton-containment definition, evaluated directly:
// for every stratum S met by s, every face G of s carried by S must satisfy
// dim G <= dim s - codim S + p(S). Enumerates all faces.
inline bool oracle_admissible(const ih::Space& X, const ih::Simplex& s, const ih::Perversity& p) {
    const int n = X.complex.formal_dim;
    const int dim = static_cast<int>(s.size()) - 1;
    const int k = static_cast<int>(s.size());
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        ih::Simplex face;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) face.push_back(s[i]);
        int level = 0;
        for (ih::VertexIdx v : face) level = std::max(level, X.complex.level_of_vertex(v));
        if (level == n) continue;  // regular strata impose nothing
        int stratum = X.strata.stratum_of_simplex(X.complex, face);
        int bound = dim - (n - level) + p.values[stratum];
        if (static_cast<int>(face.size()) - 1 > bound) return false;
    }
    return true;
}

// Facet enumeration for the funest-face characterizations.
inline std::vector<ih::Simplex> oracle_facets(const ih::Simplex& s) {
    std::vector<ih::Simplex> out;
    if (s.size() <= 1) return out;
    for (size_t i = 0; i < s.size(); ++i) {
        ih::Simplex f;
        for (size_t j = 0; j < s.size(); ++j)
            if (j != i) f.push_back(s[j]);
        out.push_back(std::move(f));
    }
    return out;
}

inline bool face_contains(const ih::Simplex& big, const ih::Simplex& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace ihtest
