#include "ihcalc/perversity.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "ihcalc/invariance.hpp"

namespace ih {

int Perversity::value_of(const StratumSet& strata, const std::string& id) const {
    int i = strata.index_of(id);
    if (i < 0) fail(errc::unknown_stratum, "perversity: unknown stratum " + id);
    return values[i];
}

Perversity make_perversity(const Space& X, const std::map<std::string, int>& vals) {
    Perversity p;
    p.complex_ref = X.complex.name;
    p.values.assign(X.strata.count(), 0);
    std::set<int> seen;
    for (const auto& [id, v] : vals) {
        int i = X.strata.index_of(id);
        if (i < 0) fail(errc::unknown_stratum, "perversity names unknown stratum " + id);
        if (X.strata.strata[i].regular && v != 0)
            fail(errc::unknown_stratum,
                 "perversity must vanish on regular stratum " + id);
        p.values[i] = v;
        seen.insert(i);
    }
    for (int i = 0; i < X.strata.count(); ++i)
        if (!X.strata.strata[i].regular && !seen.count(i))
            fail(errc::missing_codim,
                 "perversity missing a value for singular stratum " + X.strata.strata[i].id);
    return p;
}

Perversity from_classical(const ClassicalPerversitySpec& spec, const Space& X) {
    Perversity p;
    p.complex_ref = X.complex.name;
    p.values.assign(X.strata.count(), 0);
    for (int i = 0; i < X.strata.count(); ++i) {
        const Stratum& S = X.strata.strata[i];
        if (S.regular) continue;
        auto it = spec.by_codim.find(S.codim);
        if (it == spec.by_codim.end())
            fail(errc::missing_codim, "classical perversity lacks codimension " +
                                          std::to_string(S.codim) + " (stratum " + S.id + ")");
        p.values[i] = it->second;
    }
    p.classical = spec;
    return p;
}

namespace {

// Default spec domain for derived classical perversities: codimensions 2..C
// plus any realized singular codimension, C the largest realized one.
std::set<int> default_spec_domain(const Space& X) {
    std::set<int> domain;
    int maxc = 0;
    for (const auto& S : X.strata.strata)
        if (!S.regular) {
            domain.insert(S.codim);
            maxc = std::max(maxc, S.codim);
        }
    for (int c = 2; c <= maxc; ++c) domain.insert(c);
    return domain;
}

}  // namespace

Perversity top_perversity(const Space& X) {
    ClassicalPerversitySpec spec;
    for (int c : default_spec_domain(X)) spec.by_codim[c] = c - 2;
    Perversity p;
    p.complex_ref = X.complex.name;
    p.values.assign(X.strata.count(), 0);
    for (int i = 0; i < X.strata.count(); ++i)
        if (!X.strata.strata[i].regular) p.values[i] = X.strata.strata[i].codim - 2;
    p.classical = spec;
    return p;
}

Perversity zero_perversity(const Space& X) {
    ClassicalPerversitySpec spec;
    for (int c : default_spec_domain(X)) spec.by_codim[c] = 0;
    Perversity p;
    p.complex_ref = X.complex.name;
    p.values.assign(X.strata.count(), 0);
    p.classical = spec;
    return p;
}

Perversity dual(const Perversity& p, const Space& X) {
    Perversity d;
    d.complex_ref = p.complex_ref;
    d.values.assign(X.strata.count(), 0);
    for (int i = 0; i < X.strata.count(); ++i)
        if (!X.strata.strata[i].regular)
            d.values[i] = X.strata.strata[i].codim - 2 - p.values[i];
    if (p.classical) {
        ClassicalPerversitySpec spec;
        for (const auto& [c, v] : p.classical->by_codim) spec.by_codim[c] = c - 2 - v;
        d.classical = spec;
    }
    return d;
}

bool leq(const Perversity& p, const Perversity& q) {
    for (size_t i = 0; i < p.values.size(); ++i)
        if (p.values[i] > q.values[i]) return false;
    return true;
}

PerversityClass classify(const Perversity& p, const Space& X) {
    PerversityClass out;

    // Classical: constant on strata of equal codimension.
    std::map<int, int> by_codim_seen;
    out.is_classical = true;
    for (int i = 0; i < X.strata.count(); ++i) {
        const Stratum& S = X.strata.strata[i];
        if (S.regular) continue;
        auto it = by_codim_seen.find(S.codim);
        if (it == by_codim_seen.end())
            by_codim_seen[S.codim] = p.values[i];
        else if (it->second != p.values[i])
            out.is_classical = false;
    }

    if (!p.classical) return out;  // King/GM need a total classical spec
    out.has_classical_spec = true;
    const auto& spec = p.classical->by_codim;

    // The spec values must agree with the realized ones.
    for (const auto& [c, v] : by_codim_seen) {
        auto it = spec.find(c);
        if (it == spec.end() || it->second != v) return out;
    }
    if (!out.is_classical) return out;

    // King growth condition between consecutive defined codimensions,
    // telescoped across gaps: v(c) <= v(c') <= v(c) + (c' - c).
    out.is_king = true;
    for (auto it = spec.begin(); it != spec.end(); ++it) {
        auto next = std::next(it);
        if (next == spec.end()) break;
        if (it->first < 1) continue;  // p(0) = 0 implicit, unconstrained downward
        int gap = next->first - it->first;
        if (!(it->second <= next->second && next->second <= it->second + gap))
            out.is_king = false;
    }
    auto val_or = [&](int c, int dflt) {
        auto it = spec.find(c);
        return it == spec.end() ? dflt : it->second;
    };
    out.is_gm = out.is_king && val_or(1, 0) == 0 && val_or(2, 0) == 0;
    return out;
}

Perversity pullback(const StratifiedMapDescriptor& f, const Perversity& q_target) {
    if (f.stratum_map.empty())
        fail(errc::internal, "pullback: stratified map not checked/assigned");
    Perversity p;
    p.complex_ref = f.source->complex.name;
    p.values.assign(f.source->strata.count(), 0);
    for (int i = 0; i < f.source->strata.count(); ++i) {
        if (f.source->strata.strata[i].regular) continue;  // regular maps to regular, value 0
        p.values[i] = q_target.values[f.stratum_map[i]];
    }
    return p;
}

std::vector<int> equivalence_classes(const Space& X, const EquivalenceDeclaration& equiv) {
    const int m = X.strata.count();
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& [a, b] : equiv.pairs) {
        int ia = X.strata.index_of(a), ib = X.strata.index_of(b);
        if (ia < 0 || ib < 0)
            fail(errc::unknown_stratum_in_equiv,
                 "equivalence declares unknown stratum " + (ia < 0 ? a : b));
        parent[find(ia)] = find(ib);
    }
    std::vector<int> cls(m);
    for (int i = 0; i < m; ++i) cls[i] = find(i);
    return cls;
}

KPerversityReport check_K_perversity(const Space& X, const Perversity& p,
                                     const EquivalenceDeclaration& equiv,
                                     const RefinementPair* coarsening) {
    KPerversityReport rep;
    const StratumSet& SS = X.strata;
    const int m = SS.count();

    // Equivalence classes: declared pairs, extended by "same coarse stratum"
    // when a coarsening is given.
    std::vector<int> cls(m);
    {
        std::vector<int> parent(m);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        std::vector<int> declared = equivalence_classes(X, equiv);
        for (int i = 0; i < m; ++i) parent[find(i)] = find(declared[i]);
        if (coarsening) {
            std::vector<int> first_of_coarse(coarsening->coarse->strata.count(), -1);
            for (int i = 0; i < m; ++i) {
                int t = coarsening->coarse_of(i);
                if (first_of_coarse[t] < 0)
                    first_of_coarse[t] = i;
                else
                    parent[find(first_of_coarse[t])] = find(i);
            }
        }
        for (int i = 0; i < m; ++i) cls[i] = find(i);
    }

    // Sources: from the coarsening when given, else maximal-level members of
    // each equivalence class.
    std::vector<bool> source(m, false);
    if (coarsening) {
        for (int i = 0; i < m; ++i) source[i] = coarsening->source_flag[i];
    } else {
        std::map<int, int> class_max_level;
        for (int i = 0; i < m; ++i) {
            auto it = class_max_level.find(cls[i]);
            if (it == class_max_level.end() || SS.strata[i].level > it->second)
                class_max_level[cls[i]] = SS.strata[i].level;
        }
        for (int i = 0; i < m; ++i) source[i] = SS.strata[i].level == class_max_level[cls[i]];
    }

    auto t_of = [&](int i) { return SS.strata[i].codim - 2; };
    auto Dp = [&](int i) { return SS.strata[i].regular ? 0 : t_of(i) - p.values[i]; };

    // (i) sources of a common stratum carry one value. Grouping: with a
    // coarsening, by coarse stratum; otherwise by equivalence class.
    std::map<int, std::pair<int, int>> group_value;  // group -> (witness stratum, value)
    for (int i = 0; i < m; ++i) {
        if (!source[i]) continue;
        int g = coarsening ? coarsening->coarse_of(i) : cls[i];
        auto it = group_value.find(g);
        if (it == group_value.end())
            group_value[g] = {i, p.values[i]};
        else if (it->second.second != p.values[i]) {
            rep.cond_equal_on_sources = false;
            rep.witnesses.push_back("(i) sources " + SS.strata[it->second.first].id + " and " +
                                    SS.strata[i].id + " carry different values " +
                                    std::to_string(it->second.second) + " vs " +
                                    std::to_string(p.values[i]));
        }
    }

    // (ii) strata equivalent to a regular stratum have p >= 0.
    std::set<int> classes_with_regular;
    for (int i = 0; i < m; ++i)
        if (SS.strata[i].regular) classes_with_regular.insert(cls[i]);
    for (int i = 0; i < m; ++i) {
        if (SS.strata[i].regular) continue;
        if (classes_with_regular.count(cls[i]) && p.values[i] < 0) {
            rep.cond_nonneg_near_regular = false;
            rep.witnesses.push_back("(ii) " + SS.strata[i].id + " ~ regular but p = " +
                                    std::to_string(p.values[i]) + " < 0");
        }
    }

    // (iii) for a singular source S' and S <= S' with S ~ S':
    // p(S) <= p(S') and Dp(S') <= Dp(S).
    for (int s2 = 0; s2 < m; ++s2) {
        if (!source[s2] || SS.strata[s2].regular) continue;
        for (int s1 = 0; s1 < m; ++s1) {
            if (s1 == s2 || cls[s1] != cls[s2] || !SS.leq(s1, s2)) continue;
            if (p.values[s1] > p.values[s2]) {
                rep.cond_monotone = false;
                rep.witnesses.push_back("(iii) p(" + SS.strata[s1].id + ") = " +
                                        std::to_string(p.values[s1]) + " > p(" +
                                        SS.strata[s2].id + ") = " + std::to_string(p.values[s2]));
            }
            if (Dp(s2) > Dp(s1)) {
                rep.cond_monotone = false;
                rep.witnesses.push_back("(iii) Dp(" + SS.strata[s2].id + ") = " +
                                        std::to_string(Dp(s2)) + " > Dp(" + SS.strata[s1].id +
                                        ") = " + std::to_string(Dp(s1)));
            }
        }
    }

    rep.pass = rep.cond_equal_on_sources && rep.cond_nonneg_near_regular && rep.cond_monotone;
    return rep;
}

Perversity pushforward(const RefinementPair& pair, const Perversity& p_fine) {
    const StratumSet& fine = pair.fine->strata;
    const StratumSet& coarse = pair.coarse->strata;
    Perversity out;
    out.complex_ref = pair.coarse->complex.name;
    out.values.assign(coarse.count(), 0);

    std::vector<int> chosen(coarse.count(), -1);
    for (int i = 0; i < fine.count(); ++i) {
        if (!pair.source_flag[i]) continue;
        int t = pair.coarse_of(i);
        if (chosen[t] < 0) {
            chosen[t] = i;
        } else if (p_fine.values[chosen[t]] != p_fine.values[i]) {
            fail(errc::source_value_conflict,
                 "pushforward: sources " + fine.strata[chosen[t]].id + " and " +
                     fine.strata[i].id + " of " + coarse.strata[t].id + " disagree");
        }
    }
    for (int t = 0; t < coarse.count(); ++t) {
        if (chosen[t] < 0)
            fail(errc::not_a_refinement,
                 "pushforward: target stratum " + coarse.strata[t].id + " has no source");
        if (!coarse.strata[t].regular) out.values[t] = p_fine.values[chosen[t]];
        else if (p_fine.values[chosen[t]] != 0)
            fail(errc::source_value_conflict,
                 "pushforward: regular target " + coarse.strata[t].id +
                     " would receive nonzero value");
    }
    return out;
}

}  // namespace ih
