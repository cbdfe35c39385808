#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ihcalc/exact.hpp"
#include "ihcalc/perversity.hpp"
#include "ihcalc/strata.hpp"

namespace ih {

// Perverse degree of a simplex, computed from its vertex levels.
struct PerverseDegree {
    Simplex simplex;
    std::vector<ExtDim> by_index;    // ||s||_i = dim(Delta_0 * ... * Delta_{n-i})
    std::vector<ExtDim> by_stratum;  // per stratum; NEG_INF when the stratum is missed
};

PerverseDegree perverse_degree(const Space& X, const Simplex& s);

bool is_admissible(const Space& X, const Simplex& s, const Perversity& p);

// Precomputed admissibility and regularity flags for every simplex.
struct AdmissibilityTable {
    std::vector<std::vector<char>> admissible;  // [dim][idx]
    std::vector<std::vector<char>> regular;     // Delta_n nonempty, i.e. level == n
};

AdmissibilityTable admissibility_table(const Space& X, const Perversity& p);
AdmissibilityTable all_admissible_table(const Space& X);  // ordinary chains

struct FunestReport {
    Simplex simplex;
    std::optional<Simplex> funest_face;
    std::optional<std::string> guilty_stratum;
    int defect = 0;  // codim of the guilty stratum; 0 iff no funest face
};

FunestReport funest_report(const Space& X, const Simplex& s, const Perversity& p);

// Integer chains keyed by simplex; used by the simplex-level operations.
using Chain = std::map<Simplex, Int>;

Chain boundary_chain(const Simplex& s);

// Splits the boundary into faces with / without a top-level vertex.
std::pair<Chain, Chain> boundary_split(const Space& X, const Simplex& s);

// Union of closures of singular strata with p(S) > codim S - 2.
SimplexSubset grandes_strates(const Space& X, const Perversity& p);

// Diagnostic for the X_p locus: every admissible simplex inside the singular
// set lies in it. Returns offending simplices (empty = holds).
std::vector<Simplex> lemma_grandes_strates_violations(const Space& X, const Perversity& p);

// Image chain under a stratified map; degenerate simplices are dropped.
// Checks f*Dq <= Dp on strata sent to singular strata and admissibility of the
// input; the image is verified q-admissible.
Chain pushforward_chain(const StratifiedMapDescriptor& f, const Chain& xi, const Perversity& p,
                        const Perversity& q);

}  // namespace ih
