#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ihcalc/homology.hpp"
#include "ihcalc/perversity.hpp"
#include "ihcalc/strata.hpp"

namespace ih {

// A declared refinement: same simplices and formal dimension, the identity on
// vertices is a stratified map fine -> coarse. Holds the correspondence and,
// per fine stratum, whether it is a source (equal level) of its coarse image.
class RefinementPair {
  public:
    const Space* fine = nullptr;
    const Space* coarse = nullptr;
    std::vector<int> correspondence;  // fine stratum -> coarse stratum
    std::vector<bool> source_flag;    // fine stratum is a source of its image

    int coarse_of(int fine_stratum) const { return correspondence[fine_stratum]; }
};

// Verifies the refinement conditions. Errors: SimplexSetMismatch, NotARefinement.
RefinementPair check_refinement(const Space& fine, const Space& coarse);

// Local-homology refutation oracle for a declared equivalence S ~ S'.
// Compares H_*(|X|, |X| - x; F_2) at a canonical vertex of each stratum via
// simplicial links. Different signatures refute; equal signatures decide nothing.
struct RefutationResult {
    bool refuted = false;
    std::string evidence;
    std::vector<int> signature_s;   // local homology ranks by degree
    std::vector<int> signature_s2;
};

RefutationResult equivalence_refutation(const Space& X, const std::string& stratum_s,
                                        const std::string& stratum_s2);

struct HomogeneityReport {
    bool homogeneous = true;     // no singular stratum declared equivalent to a regular one
    bool p_homogeneous = true;   // such strata satisfy p(S) <= t(S)
    std::vector<std::string> witnesses;
};

HomogeneityReport check_homogeneous(const Space& X, const Perversity& p,
                                    const EquivalenceDeclaration& equiv);

// --- side-by-side invariance comparison ---------------------------------------

struct HypothesisEntry {
    std::string check;
    bool pass = true;
    std::vector<std::string> witnesses;
};

enum class Variant { intersection, tame };

std::string variant_name(Variant v);

struct DegreeComparison {
    int degree;
    HomologyGroup fine;
    HomologyGroup coarse;
    bool match;
};

struct InvarianceResult {
    RingInfo ring;
    Variant variant;
    std::vector<DegreeComparison> degrees;
    bool all_match = true;
    // "match" when hypotheses hold and groups agree; "no-claim" when a
    // hypothesis fails (the theorems are one-directional, so a mismatch under
    // failed hypotheses is consistent, not an error).
    std::string verdict;
};

struct InvarianceReport {
    std::string fine_name, coarse_name;
    std::vector<HypothesisEntry> hypotheses;     // intersection-variant hypotheses
    std::vector<HypothesisEntry> tame_hypotheses;  // extra checks for the tame variant
    std::vector<InvarianceResult> results;
    bool hypotheses_pass = false;       // K-perversity transcript
    bool tame_hypotheses_pass = false;  // + codim-1 and p-homogeneity conditions
    std::string overall;
};

// Runs the refinement-invariance comparison on a declared pair. The fine
// perversity is the pullback of p_coarse along the identity; strata landing in
// the same coarse stratum are treated as declared-equivalent for hypothesis
// checking, extended by `extra_equiv` when given. An explicit fine perversity
// override replaces the pullback (used to exhibit hypothesis failures).
InvarianceReport invariance_report(const RefinementPair& pair, const Perversity& p_coarse,
                                   const std::vector<RingInfo>& rings,
                                   const std::vector<Variant>& variants,
                                   const EquivalenceDeclaration* extra_equiv = nullptr,
                                   const Perversity* fine_override = nullptr);

}  // namespace ih
