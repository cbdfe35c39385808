#include "ihcalc/chain.hpp"

#include <algorithm>

namespace ih {

namespace {

// The face spanned by the vertices of s at levels <= i; empty when none.
Simplex level_prefix(const Space& X, const Simplex& s, int i) {
    Simplex out;
    for (VertexIdx v : s)
        if (X.complex.level_of_vertex(v) <= i) out.push_back(v);
    return out;
}

}  // namespace

PerverseDegree perverse_degree(const Space& X, const Simplex& s) {
    if (!X.complex.contains(s))
        fail(errc::unknown_simplex, "perverse_degree: " + X.complex.simplex_name(s));
    const int n = X.complex.formal_dim;
    PerverseDegree pd;
    pd.simplex = s;

    // Count vertices per level, then prefix joins.
    std::vector<int> count(n + 1, 0);
    for (VertexIdx v : s) count[X.complex.level_of_vertex(v)] += 1;
    std::vector<int> prefix(n + 1, 0);
    int acc = 0;
    for (int i = 0; i <= n; ++i) {
        acc += count[i];
        prefix[i] = acc;
    }
    pd.by_index.assign(n + 1, ExtDim::neg_inf());
    for (int i = 0; i <= n; ++i) {
        int verts = prefix[n - i];
        pd.by_index[i] = verts == 0 ? ExtDim::neg_inf() : ExtDim(verts - 1);
    }

    pd.by_stratum.assign(X.strata.count(), ExtDim::neg_inf());
    for (int i = 0; i <= n; ++i) {
        if (count[i] == 0) continue;  // the simplex misses level i
        Simplex face = level_prefix(X, s, i);
        int stratum = X.strata.stratum_of_simplex(X.complex, face);
        pd.by_stratum[stratum] = ExtDim(prefix[i] - 1);
    }
    return pd;
}

bool is_admissible(const Space& X, const Simplex& s, const Perversity& p) {
    if (!X.complex.contains(s))
        fail(errc::unknown_simplex, "is_admissible: " + X.complex.simplex_name(s));
    const int n = X.complex.formal_dim;
    const int dim = static_cast<int>(s.size()) - 1;
    std::vector<int> count(n + 1, 0);
    for (VertexIdx v : s) count[X.complex.level_of_vertex(v)] += 1;
    int prefix = 0;
    for (int i = 0; i <= n; ++i) {
        prefix += count[i];
        if (count[i] == 0 || i == n) continue;  // regular strata impose nothing
        Simplex face = level_prefix(X, s, i);
        int stratum = X.strata.stratum_of_simplex(X.complex, face);
        int codim = n - i;
        if (prefix - 1 > dim - codim + p.values[stratum]) return false;
    }
    return true;
}

AdmissibilityTable admissibility_table(const Space& X, const Perversity& p) {
    AdmissibilityTable t;
    const FilteredComplex& K = X.complex;
    const int n = K.formal_dim;
    t.admissible.resize(K.top_dim() + 1);
    t.regular.resize(K.top_dim() + 1);
    for (int d = 0; d <= K.top_dim(); ++d) {
        t.admissible[d].resize(K.count(d));
        t.regular[d].resize(K.count(d));
        for (int i = 0; i < K.count(d); ++i) {
            const Simplex& s = K.simplices(d)[i];
            t.admissible[d][i] = is_admissible(X, s, p) ? 1 : 0;
            t.regular[d][i] = K.level_of(d, i) == n ? 1 : 0;
        }
    }
    return t;
}

AdmissibilityTable all_admissible_table(const Space& X) {
    AdmissibilityTable t;
    const FilteredComplex& K = X.complex;
    const int n = K.formal_dim;
    t.admissible.resize(K.top_dim() + 1);
    t.regular.resize(K.top_dim() + 1);
    for (int d = 0; d <= K.top_dim(); ++d) {
        t.admissible[d].assign(K.count(d), 1);
        t.regular[d].resize(K.count(d));
        for (int i = 0; i < K.count(d); ++i) t.regular[d][i] = K.level_of(d, i) == n ? 1 : 0;
    }
    return t;
}

FunestReport funest_report(const Space& X, const Simplex& s, const Perversity& p) {
    if (!is_admissible(X, s, p))
        fail(errc::not_admissible, "funest_report: simplex is not admissible: " +
                                       X.complex.simplex_name(s));
    const int n = X.complex.formal_dim;
    const int dim = static_cast<int>(s.size()) - 1;
    FunestReport rep;
    rep.simplex = s;

    std::vector<int> count(n + 1, 0);
    for (VertexIdx v : s) count[X.complex.level_of_vertex(v)] += 1;
    int prefix = 0;
    // The candidate faces F_S are nested (level prefixes), so the minimum is
    // realized at the lowest qualifying level.
    for (int i = 0; i <= n; ++i) {
        prefix += count[i];
        if (count[i] == 0) continue;
        if (prefix - 1 == dim) break;  // F_S = Delta excluded (also regular strata)
        Simplex face = level_prefix(X, s, i);
        int stratum = X.strata.stratum_of_simplex(X.complex, face);
        int codim = n - i;
        if (prefix - 1 == dim - codim + p.values[stratum]) {
            rep.funest_face = face;
            rep.guilty_stratum = X.strata.strata[stratum].id;
            rep.defect = codim;
            break;
        }
    }
    return rep;
}

Chain boundary_chain(const Simplex& s) {
    Chain out;
    if (s.size() <= 1) return out;
    for (size_t i = 0; i < s.size(); ++i) {
        Simplex f;
        f.reserve(s.size() - 1);
        for (size_t j = 0; j < s.size(); ++j)
            if (j != i) f.push_back(s[j]);
        out[f] = (i % 2 == 0) ? 1 : -1;
    }
    return out;
}

std::pair<Chain, Chain> boundary_split(const Space& X, const Simplex& s) {
    if (!X.complex.contains(s))
        fail(errc::unknown_simplex, "boundary_split: " + X.complex.simplex_name(s));
    const int n = X.complex.formal_dim;
    Chain regular, singular;
    for (auto& [f, c] : boundary_chain(s)) {
        if (X.complex.level_of(f) == n)
            regular[f] = c;
        else
            singular[f] = c;
    }
    return {regular, singular};
}

SimplexSubset grandes_strates(const Space& X, const Perversity& p) {
    std::vector<Simplex> gens;
    for (int i = 0; i < X.strata.count(); ++i) {
        const Stratum& S = X.strata.strata[i];
        if (S.regular || p.values[i] <= S.codim - 2) continue;
        for (auto& [d, idx] : S.simplices) gens.push_back(X.complex.simplices(d)[idx]);
    }
    if (gens.empty()) return SimplexSubset::empty(X.complex);
    return close_under_faces(X.complex, gens);
}

std::vector<Simplex> lemma_grandes_strates_violations(const Space& X, const Perversity& p) {
    SimplexSubset xp = grandes_strates(X, p);
    std::vector<Simplex> bad;
    const int n = X.complex.formal_dim;
    for (int d = 0; d <= X.complex.top_dim(); ++d)
        for (int i = 0; i < X.complex.count(d); ++i) {
            if (X.complex.level_of(d, i) == n) continue;  // not inside Sigma
            const Simplex& s = X.complex.simplices(d)[i];
            if (is_admissible(X, s, p) && !xp.contains(d, i)) bad.push_back(s);
        }
    return bad;
}

Chain pushforward_chain(const StratifiedMapDescriptor& f, const Chain& xi, const Perversity& p,
                        const Perversity& q) {
    const Space& X = *f.source;
    const Space& Y = *f.target;
    if (f.stratum_map.empty())
        fail(errc::internal, "pushforward_chain: map not checked");

    // f* Dq <= Dp, needed only on strata sent to singular strata.
    for (int si = 0; si < X.strata.count(); ++si) {
        const Stratum& S = X.strata.strata[si];
        const Stratum& T = Y.strata.strata[f.stratum_map[si]];
        if (T.regular) continue;
        int Dq = T.codim - 2 - q.values[f.stratum_map[si]];
        int Dp = S.regular ? 0 : S.codim - 2 - p.values[si];
        if (Dq > Dp)
            fail(errc::duality_inequality_violated,
                 "pushforward_chain: f*Dq(" + S.id + ") = " + std::to_string(Dq) + " > Dp = " +
                     std::to_string(Dp));
    }

    Chain out;
    for (const auto& [s, coeff] : xi) {
        if (coeff == 0) continue;
        if (!is_admissible(X, s, p))
            fail(errc::not_admissible_input,
                 "pushforward_chain: " + X.complex.simplex_name(s) + " is not admissible");
        // Image with orientation sign; degenerate images are dropped.
        std::vector<VertexIdx> img;
        img.reserve(s.size());
        for (VertexIdx v : s) img.push_back(f.vertex_map[v]);
        std::vector<VertexIdx> sorted = img;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
        // Sign of the permutation sorting img.
        int sign = 1;
        std::vector<VertexIdx> tmp = img;
        for (size_t i = 0; i < tmp.size(); ++i)
            for (size_t j = i + 1; j < tmp.size(); ++j)
                if (tmp[i] > tmp[j]) {
                    std::swap(tmp[i], tmp[j]);
                    sign = -sign;
                }
        if (!is_admissible(Y, sorted, q))
            fail(errc::internal, "pushforward_chain: image simplex unexpectedly inadmissible");
        out[sorted] += coeff * sign;
        if (out[sorted] == 0) out.erase(sorted);
    }
    return out;
}

}  // namespace ih
