#include "ihcalc/invariance.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ih {

std::string variant_name(Variant v) { return v == Variant::intersection ? "intersection" : "tame"; }

RefinementPair check_refinement(const Space& fine, const Space& coarse) {
    const FilteredComplex& F = fine.complex;
    const FilteredComplex& C = coarse.complex;
    if (F.formal_dim != C.formal_dim)
        fail(errc::simplex_set_mismatch, "refinement: formal dimensions differ");
    if (F.vertex_names() != C.vertex_names())
        fail(errc::simplex_set_mismatch, "refinement: vertex sets differ");
    if (F.top_dim() != C.top_dim())
        fail(errc::simplex_set_mismatch, "refinement: simplex sets differ");
    for (int d = 0; d <= F.top_dim(); ++d)
        if (F.simplices(d) != C.simplices(d))
            fail(errc::simplex_set_mismatch, "refinement: simplex sets differ in dimension " +
                                                 std::to_string(d));

    RefinementPair pair;
    pair.fine = &fine;
    pair.coarse = &coarse;
    pair.correspondence.assign(fine.strata.count(), -1);
    pair.source_flag.assign(fine.strata.count(), false);
    for (int i = 0; i < fine.strata.count(); ++i) {
        const Stratum& S = fine.strata.strata[i];
        int target = -1;
        for (auto& [d, idx] : S.simplices) {
            int t = coarse.strata.stratum_of[d][idx];
            if (target < 0) target = t;
            if (t != target)
                fail(errc::not_a_refinement,
                     "fine stratum " + S.id + " meets several coarse strata (" +
                         coarse.strata.strata[target].id + ", " + coarse.strata.strata[t].id + ")");
        }
        const Stratum& T = coarse.strata.strata[target];
        if (T.codim > S.codim)
            fail(errc::not_a_refinement, "coarse stratum " + T.id + " has larger codimension than " +
                                             S.id);
        pair.correspondence[i] = target;
        pair.source_flag[i] = S.level == T.level;
    }
    return pair;
}

RefutationResult equivalence_refutation(const Space& X, const std::string& stratum_s,
                                        const std::string& stratum_s2) {
    int a = X.strata.index_of(stratum_s);
    int b = X.strata.index_of(stratum_s2);
    if (a < 0 || b < 0)
        fail(errc::unknown_stratum, "equivalence_refutation: unknown stratum id");

    RefutationResult out;
    if (a == b) {
        out.evidence = "same stratum";
        return out;
    }

    // Canonical vertex of a stratum: least vertex among its 0-simplices.
    auto vertex_of = [&](int sidx) -> VertexIdx {
        for (auto& [d, idx] : X.strata.strata[sidx].simplices)
            if (d == 0) return X.complex.simplices(0)[idx][0];
        fail(errc::internal, "stratum without a vertex");
    };

    // Local homology H_*(|X|, |X| - v; F_2) computed as relative homology of
    // (X, complement), the complement being the full subcomplex missing v.
    auto signature = [&](VertexIdx v) {
        std::vector<VertexIdx> rest;
        for (int u = 0; u < X.complex.vertex_count(); ++u)
            if (u != v) rest.push_back(u);
        SimplexSubset complement = full_subcomplex(X.complex, rest);
        FpOps f2(2);
        Presentation<FpOps> rel = ordinary_relative_presentation(X, complement, f2);
        auto groups = homology(rel, false);
        std::vector<int> sig;
        for (auto& g : groups) sig.push_back(g.free_rank);
        while (!sig.empty() && sig.back() == 0) sig.pop_back();
        return sig;
    };

    out.signature_s = signature(vertex_of(a));
    out.signature_s2 = signature(vertex_of(b));
    if (out.signature_s != out.signature_s2) {
        out.refuted = true;
        out.evidence = "local homology signatures differ";
    } else {
        out.evidence = "local homology signatures agree; equivalence undecided";
    }
    return out;
}

HomogeneityReport check_homogeneous(const Space& X, const Perversity& p,
                                    const EquivalenceDeclaration& equiv) {
    HomogeneityReport rep;
    std::vector<int> cls = equivalence_classes(X, equiv);
    std::set<int> classes_with_regular;
    for (int i = 0; i < X.strata.count(); ++i)
        if (X.strata.strata[i].regular) classes_with_regular.insert(cls[i]);
    for (int i = 0; i < X.strata.count(); ++i) {
        const Stratum& S = X.strata.strata[i];
        if (S.regular || !classes_with_regular.count(cls[i])) continue;
        rep.homogeneous = false;
        rep.witnesses.push_back("singular " + S.id + " declared equivalent to a regular stratum");
        if (p.values[i] > S.codim - 2) {
            rep.p_homogeneous = false;
            rep.witnesses.push_back("p(" + S.id + ") = " + std::to_string(p.values[i]) + " > t = " +
                                    std::to_string(S.codim - 2));
        }
    }
    return rep;
}

InvarianceReport invariance_report(const RefinementPair& pair, const Perversity& p_coarse,
                                   const std::vector<RingInfo>& rings,
                                   const std::vector<Variant>& variants,
                                   const EquivalenceDeclaration* extra_equiv,
                                   const Perversity* fine_override) {
    const Space& fine = *pair.fine;
    const Space& coarse = *pair.coarse;

    InvarianceReport rep;
    rep.fine_name = fine.complex.name;
    rep.coarse_name = coarse.complex.name;

    // Fine perversity: pullback along the refinement identity, unless overridden.
    Perversity p_fine;
    p_fine.complex_ref = fine.complex.name;
    p_fine.values.assign(fine.strata.count(), 0);
    for (int i = 0; i < fine.strata.count(); ++i)
        if (!fine.strata.strata[i].regular)
            p_fine.values[i] = p_coarse.values[pair.coarse_of(i)];
    if (fine_override) p_fine = *fine_override;

    EquivalenceDeclaration equiv = extra_equiv ? *extra_equiv : EquivalenceDeclaration{};

    // K-perversity transcript on the fine side. Strata sharing a coarse
    // stratum are treated as equivalent; this is sound for refinement pairs
    // but may under-approximate topological equivalence in general, so the
    // transcript says so.
    KPerversityReport k = check_K_perversity(fine, p_fine, equiv, &pair);
    rep.hypotheses.push_back(
        {"note: equivalences induced from the coarse correspondence"
         " (may under-approximate topological equivalence)",
         true,
         {}});
    rep.hypotheses.push_back({"K(i) equal values on sources", k.cond_equal_on_sources, {}});
    rep.hypotheses.push_back({"K(ii) nonnegative near regular strata", k.cond_nonneg_near_regular, {}});
    rep.hypotheses.push_back({"K(iii) monotone along closures", k.cond_monotone, {}});
    for (auto& h : rep.hypotheses)
        if (!h.pass) h.witnesses = k.witnesses;
    rep.hypotheses_pass = k.pass;

    // Tame hypotheses: no codimension-1 fine stratum may become regular, and
    // the fine side must be p-homogeneous for the induced equivalences.
    {
        HypothesisEntry codim1{"tame: no codim-1 stratum becomes regular", true, {}};
        for (int i = 0; i < fine.strata.count(); ++i) {
            const Stratum& S = fine.strata.strata[i];
            if (S.codim == 1 && coarse.strata.strata[pair.coarse_of(i)].regular) {
                codim1.pass = false;
                codim1.witnesses.push_back(S.id);
            }
        }
        // Induced equivalences: same coarse stratum, plus declared ones.
        EquivalenceDeclaration induced = equiv;
        std::map<int, std::string> first_in_coarse;
        for (int i = 0; i < fine.strata.count(); ++i) {
            int t = pair.coarse_of(i);
            auto it = first_in_coarse.find(t);
            if (it == first_in_coarse.end())
                first_in_coarse[t] = fine.strata.strata[i].id;
            else
                induced.pairs.push_back({it->second, fine.strata.strata[i].id});
        }
        HomogeneityReport hom = check_homogeneous(fine, p_fine, induced);
        HypothesisEntry homog{"tame: p-homogeneous fine side", hom.p_homogeneous, hom.witnesses};
        rep.tame_hypotheses.push_back(codim1);
        rep.tame_hypotheses.push_back(homog);
        rep.tame_hypotheses_pass = rep.hypotheses_pass && codim1.pass && hom.p_homogeneous;
    }

    for (const auto& ring : rings)
        for (Variant variant : variants) {
            InvarianceResult res;
            res.ring = ring;
            res.variant = variant;
            HomologyRequest req;
            req.ring = ring;
            req.tame = variant == Variant::tame;
            auto hf = compute_homology(fine, &p_fine, req);
            auto hc = compute_homology(coarse, &p_coarse, req);
            size_t degs = std::max(hf.size(), hc.size());
            res.all_match = true;
            for (size_t kdeg = 0; kdeg < degs; ++kdeg) {
                DegreeComparison cmp;
                cmp.degree = static_cast<int>(kdeg);
                cmp.fine = kdeg < hf.size() ? hf[kdeg] : HomologyGroup{ring, 0, {}};
                cmp.coarse = kdeg < hc.size() ? hc[kdeg] : HomologyGroup{ring, 0, {}};
                cmp.match = cmp.fine == cmp.coarse;
                if (!cmp.match) res.all_match = false;
                res.degrees.push_back(std::move(cmp));
            }
            bool hyp = variant == Variant::tame ? rep.tame_hypotheses_pass : rep.hypotheses_pass;
            if (hyp)
                res.verdict = res.all_match ? "match" : "MISMATCH despite hypotheses";
            else
                res.verdict = res.all_match ? "no-claim (groups agree anyway)"
                                            : "no-claim, mismatch consistent";
            rep.results.push_back(std::move(res));
        }

    bool all = true, any_unexpected = false;
    for (auto& r : rep.results) {
        if (r.verdict != "match") all = false;
        if (r.verdict == "MISMATCH despite hypotheses") any_unexpected = true;
    }
    rep.overall = any_unexpected ? "MISMATCH despite hypotheses"
                                 : (all ? "match" : "no-claim");
    return rep;
}

}  // namespace ih
