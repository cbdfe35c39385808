#include "ihcalc/strata.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace ih {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int StratumSet::index_of(const std::string& id) const {
    for (int i = 0; i < count(); ++i)
        if (strata[i].id == id) return i;
    return -1;
}

int StratumSet::stratum_of_simplex(const FilteredComplex& X, const Simplex& s) const {
    auto idx = X.find(s);
    if (!idx) fail(errc::unknown_simplex, "stratum_of_simplex: " + X.simplex_name(s));
    return stratum_of[s.size() - 1][*idx];
}

StratumSet compute_strata(const FilteredComplex& X) {
    const int n = X.formal_dim;

    // Flatten simplices into one id space for the union-find.
    std::vector<int> offset(X.top_dim() + 2, 0);
    for (int d = 0; d <= X.top_dim(); ++d) offset[d + 1] = offset[d] + X.count(d);
    const int total = offset[X.top_dim() + 1];
    UnionFind uf(total);

    // Two simplices of the same level are connected when one is a facet of the
    // other; facet chains realize the transitive face relation level-wise.
    for (int d = 1; d <= X.top_dim(); ++d) {
        for (int i = 0; i < X.count(d); ++i) {
            const Simplex& s = X.simplices(d)[i];
            const int lv = X.level_of(d, i);
            for (size_t drop = 0; drop < s.size(); ++drop) {
                Simplex f;
                f.reserve(s.size() - 1);
                for (size_t j = 0; j < s.size(); ++j)
                    if (j != drop) f.push_back(s[j]);
                int fi = *X.find(f);
                if (X.level_of(d - 1, fi) == lv) uf.unite(offset[d] + i, offset[d - 1] + fi);
            }
        }
    }

    // Group components; identify each by (level, lexicographically least member).
    std::map<int, std::vector<std::pair<int, int>>> members;  // root -> [(dim, idx)]
    for (int d = 0; d <= X.top_dim(); ++d)
        for (int i = 0; i < X.count(d); ++i) members[uf.find(offset[d] + i)].push_back({d, i});

    struct Comp {
        int level;
        Simplex least;
        std::vector<std::pair<int, int>> simplices;
    };
    std::vector<Comp> comps;
    for (auto& [root, sims] : members) {
        Comp c;
        c.level = X.level_of(sims.front().first, sims.front().second);
        c.simplices = sims;
        c.least = X.simplices(sims.front().first)[sims.front().second];
        for (auto& [d, i] : sims) {
            const Simplex& s = X.simplices(d)[i];
            if (s < c.least) c.least = s;
        }
        comps.push_back(std::move(c));
    }
    std::sort(comps.begin(), comps.end(), [](const Comp& a, const Comp& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.least < b.least;
    });

    StratumSet set;
    set.stratum_of.resize(X.top_dim() + 1);
    for (int d = 0; d <= X.top_dim(); ++d) set.stratum_of[d].assign(X.count(d), -1);
    std::map<int, int> index_within_level;
    for (const auto& c : comps) {
        Stratum st;
        st.level = c.level;
        st.codim = n - c.level;
        st.regular = (c.level == n);
        st.id = "S" + std::to_string(c.level) + "." + std::to_string(index_within_level[c.level]++);
        st.simplices = c.simplices;
        std::sort(st.simplices.begin(), st.simplices.end());
        int si = set.count();
        for (auto& [d, i] : st.simplices) set.stratum_of[d][i] = si;
        set.strata.push_back(std::move(st));
    }

    // Closure order: face relations between strata, then transitive closure.
    const int m = set.count();
    set.order.assign(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i) set.order[i][i] = true;
    for (int d = 1; d <= X.top_dim(); ++d)
        for (int i = 0; i < X.count(d); ++i) {
            const Simplex& s = X.simplices(d)[i];
            int hi = set.stratum_of[d][i];
            for (size_t drop = 0; drop < s.size(); ++drop) {
                Simplex f;
                for (size_t j = 0; j < s.size(); ++j)
                    if (j != drop) f.push_back(s[j]);
                int lo = set.stratum_of[d - 1][*X.find(f)];
                set.order[lo][hi] = true;
            }
        }
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            if (set.order[i][k])
                for (int j = 0; j < m; ++j)
                    if (set.order[k][j]) set.order[i][j] = true;

    // Depth: longest strict chain upward.
    std::vector<int> depth(m, -1);
    std::function<int(int)> depth_of = [&](int v) {
        if (depth[v] >= 0) return depth[v];
        int best = 0;
        for (int w = 0; w < m; ++w)
            if (w != v && set.order[v][w]) best = std::max(best, 1 + depth_of(w));
        return depth[v] = best;
    };
    for (int v = 0; v < m; ++v) set.strata[v].depth = depth_of(v);

    return set;
}

Space Space::analyze(FilteredComplex X) {
    Space sp;
    sp.strata = compute_strata(X);
    sp.complex = std::move(X);
    return sp;
}

Simplex StratifiedMapDescriptor::image(const Simplex& s) const {
    Simplex img;
    img.reserve(s.size());
    for (VertexIdx v : s) img.push_back(vertex_map[v]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return img;
}

StratifiedMapCheck check_stratified_map(StratifiedMapDescriptor& f) {
    StratifiedMapCheck out;
    const FilteredComplex& X = f.source->complex;
    const FilteredComplex& Y = f.target->complex;
    auto issue = [&](errc code, std::string detail) {
        out.valid = false;
        out.issues.push_back({code, std::move(detail)});
    };

    // Simpliciality: the image of every simplex is a simplex of the target.
    for (int d = 0; d <= X.top_dim(); ++d)
        for (const auto& s : X.simplices(d)) {
            Simplex img = f.image(s);
            if (!Y.contains(img))
                issue(errc::not_simplicial,
                      "image of " + X.simplex_name(s) + " = " + Y.simplex_name(img) +
                          " is not a simplex of " + Y.name);
        }
    if (!out.valid) return out;

    // Each source stratum maps into a single target stratum.
    const StratumSet& SX = f.source->strata;
    const StratumSet& SY = f.target->strata;
    f.stratum_map.assign(SX.count(), -1);
    for (int si = 0; si < SX.count(); ++si) {
        const Stratum& S = SX.strata[si];
        int target = -1;
        for (auto& [d, i] : S.simplices) {
            Simplex img = f.image(X.simplices(d)[i]);
            int ti = SY.stratum_of_simplex(Y, img);
            if (target < 0) target = ti;
            if (ti != target) {
                issue(errc::stratum_split, "stratum " + S.id + " meets target strata " +
                                               SY.strata[target].id + " and " + SY.strata[ti].id);
                break;
            }
        }
        f.stratum_map[si] = target;
    }
    if (!out.valid) return out;

    // codim S^f <= codim S.
    for (int si = 0; si < SX.count(); ++si) {
        const Stratum& S = SX.strata[si];
        const Stratum& T = SY.strata[f.stratum_map[si]];
        if (T.codim > S.codim)
            issue(errc::codim_violation, "codim " + T.id + " = " + std::to_string(T.codim) +
                                             " > codim " + S.id + " = " + std::to_string(S.codim));
    }

    // Monotonicity of S -> S^f with respect to the closure order.
    for (int a = 0; a < SX.count(); ++a)
        for (int b = 0; b < SX.count(); ++b)
            if (SX.leq(a, b) && !SY.leq(f.stratum_map[a], f.stratum_map[b]))
                issue(errc::internal, "stratum map not monotone on " + SX.strata[a].id +
                                          " <= " + SX.strata[b].id);
    return out;
}

StratifiedMapDescriptor make_vertex_map(const Space& source, const Space& target,
                                        const std::vector<std::pair<VertexId, VertexId>>& pairs) {
    StratifiedMapDescriptor f;
    f.source = &source;
    f.target = &target;
    f.vertex_map.assign(source.complex.vertex_count(), -1);
    for (const auto& [from, to] : pairs) {
        auto a = source.complex.vertex_index(from);
        auto b = target.complex.vertex_index(to);
        if (!a || !b) fail(errc::dangling_vertex_ref, "vertex map mentions unknown vertex");
        f.vertex_map[*a] = *b;
    }
    for (int v = 0; v < source.complex.vertex_count(); ++v)
        if (f.vertex_map[v] < 0)
            fail(errc::dangling_vertex_ref,
                 "vertex map not total: missing " + source.complex.vertex_names()[v]);
    return f;
}

StratifiedMapDescriptor identity_map(const Space& source, const Space& target) {
    StratifiedMapDescriptor f;
    f.source = &source;
    f.target = &target;
    f.vertex_map.assign(source.complex.vertex_count(), -1);
    for (int v = 0; v < source.complex.vertex_count(); ++v) {
        auto w = target.complex.vertex_index(source.complex.vertex_names()[v]);
        if (!w)
            fail(errc::simplex_set_mismatch,
                 "identity map: vertex " + source.complex.vertex_names()[v] + " missing in target");
        f.vertex_map[v] = *w;
    }
    return f;
}

}  // namespace ih
