#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ihcalc/strata.hpp"

namespace ih {

// A classical perversity: codimension -> value, with implicit p(0) = 0.
struct ClassicalPerversitySpec {
    std::map<int, int> by_codim;
};

// A perversity on a filtered complex: integer per stratum, zero on regular
// strata. When built from a classical spec the spec is kept for King/GM
// classification, which constrains codimensions the complex may not realize.
struct Perversity {
    std::string complex_ref;
    std::vector<int> values;  // by stratum index
    std::optional<ClassicalPerversitySpec> classical;

    int operator()(int stratum) const { return values[stratum]; }
    int value_of(const StratumSet& strata, const std::string& id) const;
};

// Construct from explicit per-stratum values (regular strata forced to 0;
// a nonzero value on a regular stratum is rejected).
Perversity make_perversity(const Space& X, const std::map<std::string, int>& values);

Perversity from_classical(const ClassicalPerversitySpec& spec, const Space& X);

Perversity top_perversity(const Space& X);    // t(S) = codim S - 2 on singular strata
Perversity zero_perversity(const Space& X);   // 0 everywhere
Perversity dual(const Perversity& p, const Space& X);  // Dp + p = t

// Pointwise order: p <= q on every stratum.
bool leq(const Perversity& p, const Perversity& q);

struct PerversityClass {
    bool is_classical = false;   // constant on strata of equal codimension
    bool has_classical_spec = false;
    bool is_king = false;        // p(i) <= p(i+1) <= p(i)+1 over the spec's domain
    bool is_gm = false;          // King and p(1) = p(2) = 0 where defined
};

PerversityClass classify(const Perversity& p, const Space& X);

// Pullback along a stratified map: (f*q)(S) = q(S^f).
Perversity pullback(const StratifiedMapDescriptor& f, const Perversity& q_target);

// Declared equivalences between strata. Topological equivalence of points is
// a homeomorphism problem, so the relation is always an input, never inferred.
struct EquivalenceDeclaration {
    std::vector<std::pair<std::string, std::string>> pairs;
};

// Union-find closure of declared pairs over the strata of X; singleton classes
// for undeclared strata. Throws UnknownStratumInEquiv on bad ids.
std::vector<int> equivalence_classes(const Space& X, const EquivalenceDeclaration& equiv);

struct KPerversityReport {
    bool pass = true;
    bool cond_equal_on_sources = true;   // (i)
    bool cond_nonneg_near_regular = true;  // (ii)
    bool cond_monotone = true;           // (iii)
    std::vector<std::string> witnesses;
};

class RefinementPair;  // invariance module

// K-perversity conditions on the decidable surrogate: sources come from the
// coarsening when given, otherwise the maximal-dimension strata of each
// declared equivalence class play that role.
KPerversityReport check_K_perversity(const Space& X, const Perversity& p,
                                     const EquivalenceDeclaration& equiv,
                                     const RefinementPair* coarsening = nullptr);

// nu_* p along a refinement: target stratum takes the common value of its
// sources. Errors: SourceValueConflict, NotARefinement (sourceless stratum).
Perversity pushforward(const RefinementPair& pair, const Perversity& p_fine);

}  // namespace ih
