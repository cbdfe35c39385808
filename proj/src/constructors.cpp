#include "ihcalc/constructors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace ih {

namespace {

std::vector<VertexId> names_of(const FilteredComplex& X, const Simplex& s) {
    std::vector<VertexId> out;
    out.reserve(s.size());
    for (VertexIdx v : s) out.push_back(X.vertex_names()[v]);
    return out;
}

std::string fresh_name(const FilteredComplex& X, const std::string& base) {
    if (!X.vertex_index(base)) return base;
    for (int i = 2;; ++i) {
        std::string candidate = base + std::to_string(i);
        if (!X.vertex_index(candidate)) return candidate;
    }
}

}  // namespace

FilteredComplex cone(const FilteredComplex& X, const std::string& apex) {
    const std::string w = fresh_name(X, apex);
    RawComplex raw;
    raw.name = "cone(" + X.name + ")";
    raw.formal_dim = X.formal_dim + 1;
    raw.vertices.push_back({w, 0});
    for (int v = 0; v < X.vertex_count(); ++v)
        raw.vertices.push_back({X.vertex_names()[v], X.level_of_vertex(v) + 1});
    raw.vertex_order.push_back(w);
    for (VertexIdx v : X.vertex_order()) raw.vertex_order.push_back(X.vertex_names()[v]);
    raw.simplices.push_back({w});
    for (int d = 0; d <= X.top_dim(); ++d)
        for (const auto& s : X.simplices(d)) {
            auto ids = names_of(X, s);
            raw.simplices.push_back(ids);
            ids.push_back(w);
            raw.simplices.push_back(std::move(ids));
        }
    return build_complex(raw);
}

FilteredComplex suspension(const FilteredComplex& X, const std::string& apex_plus,
                           const std::string& apex_minus) {
    const std::string wp = fresh_name(X, apex_plus);
    std::string wm = fresh_name(X, apex_minus);
    if (wm == wp) wm = fresh_name(X, apex_minus + "m");
    RawComplex raw;
    raw.name = "susp(" + X.name + ")";
    raw.formal_dim = X.formal_dim + 1;
    raw.vertices.push_back({wp, 0});
    raw.vertices.push_back({wm, 0});
    for (int v = 0; v < X.vertex_count(); ++v)
        raw.vertices.push_back({X.vertex_names()[v], X.level_of_vertex(v) + 1});
    raw.vertex_order.push_back(wp);
    raw.vertex_order.push_back(wm);
    for (VertexIdx v : X.vertex_order()) raw.vertex_order.push_back(X.vertex_names()[v]);
    raw.simplices.push_back({wp});
    raw.simplices.push_back({wm});
    for (int d = 0; d <= X.top_dim(); ++d)
        for (const auto& s : X.simplices(d)) {
            auto ids = names_of(X, s);
            raw.simplices.push_back(ids);
            auto plus = ids;
            plus.push_back(wp);
            raw.simplices.push_back(std::move(plus));
            ids.push_back(wm);
            raw.simplices.push_back(std::move(ids));
        }
    return build_complex(raw);
}

namespace {

std::string product_vertex(const VertexId& v, int t) { return v + "@" + std::to_string(t); }

// Staircase prisms over one simplex and one interval edge (t0, t1). Vertices
// of the simplex ordered by the recorded staircase order.
void staircase_gens(const FilteredComplex& X, const Simplex& s, int t0, int t1,
                    std::vector<std::vector<VertexId>>& out) {
    Simplex ordered = s;
    std::sort(ordered.begin(), ordered.end(),
              [&](VertexIdx a, VertexIdx b) { return X.order_pos(a) < X.order_pos(b); });
    const int k = static_cast<int>(ordered.size()) - 1;
    for (int j = 0; j <= k; ++j) {
        std::vector<VertexId> gen;
        for (int i = 0; i <= j; ++i) gen.push_back(product_vertex(X.vertex_names()[ordered[i]], t0));
        for (int i = j; i <= k; ++i) gen.push_back(product_vertex(X.vertex_names()[ordered[i]], t1));
        out.push_back(std::move(gen));
    }
}

FilteredComplex product_with_path(const FilteredComplex& X, const std::vector<std::pair<int, int>>& edges,
                                  int num_slices, const std::string& name) {
    RawComplex raw;
    raw.name = name;
    raw.formal_dim = X.formal_dim + 1;
    for (int t = 0; t < num_slices; ++t)
        for (VertexIdx v : X.vertex_order()) {
            raw.vertices.push_back({product_vertex(X.vertex_names()[v], t), X.level_of_vertex(v) + 1});
            raw.vertex_order.push_back(product_vertex(X.vertex_names()[v], t));
        }
    for (int d = 0; d <= X.top_dim(); ++d)
        for (const auto& s : X.simplices(d))
            for (auto [t0, t1] : edges) staircase_gens(X, s, t0, t1, raw.simplices);
    return build_complex(raw);
}

}  // namespace

FilteredComplex product_interval(const FilteredComplex& X, int m) {
    if (m < 1) fail(errc::m_too_small, "product_interval: need m >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int t = 0; t < m; ++t) edges.push_back({t, t + 1});
    return product_with_path(X, edges, m + 1, X.name + " x I");
}

FilteredComplex product_circle(const FilteredComplex& X, int m) {
    if (m < 3) fail(errc::m_too_small, "product_circle: need m >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int t = 0; t + 1 < m; ++t) edges.push_back({t, t + 1});
    edges.push_back({0, m - 1});  // wrap edge, ordered by slice index
    return product_with_path(X, edges, m, X.name + " x S1");
}

namespace {

std::string barycenter_name(const FilteredComplex& X, const Simplex& s) {
    std::string out = "(";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ".";
        out += X.vertex_names()[s[i]];
    }
    out += ")";
    return out;
}

}  // namespace

FilteredComplex barycentric_subdivide(const FilteredComplex& X) {
    RawComplex raw;
    raw.name = "sd(" + X.name + ")";
    raw.formal_dim = X.formal_dim;
    for (int d = 0; d <= X.top_dim(); ++d)
        for (int i = 0; i < X.count(d); ++i) {
            raw.vertices.push_back({barycenter_name(X, X.simplices(d)[i]), X.level_of(d, i)});
            raw.vertex_order.push_back(raw.vertices.back().first);
        }

    // Maximal simplices of sd(X) are full flags of maximal simplices of X.
    std::set<Simplex> non_maximal;
    for (int d = 1; d <= X.top_dim(); ++d)
        for (const auto& s : X.simplices(d))
            for (size_t drop = 0; drop < s.size(); ++drop) {
                Simplex f;
                for (size_t j = 0; j < s.size(); ++j)
                    if (j != drop) f.push_back(s[j]);
                non_maximal.insert(f);
            }
    for (int d = 0; d <= X.top_dim(); ++d)
        for (const auto& s : X.simplices(d)) {
            if (non_maximal.count(s)) continue;
            // All permutations of the vertices give the full flags.
            Simplex perm = s;
            std::sort(perm.begin(), perm.end());
            do {
                std::vector<VertexId> flag;
                Simplex prefix;
                for (VertexIdx v : perm) {
                    prefix.push_back(v);
                    Simplex sorted = prefix;
                    std::sort(sorted.begin(), sorted.end());
                    flag.push_back(barycenter_name(X, sorted));
                }
                raw.simplices.push_back(std::move(flag));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    return build_complex(raw);
}

FilteredComplex disjoint_union(const FilteredComplex& X, const FilteredComplex& Y) {
    if (X.formal_dim != Y.formal_dim)
        fail(errc::dim_mismatch, "disjoint_union: formal dimensions differ (" +
                                     std::to_string(X.formal_dim) + " vs " +
                                     std::to_string(Y.formal_dim) + ")");
    RawComplex raw;
    raw.name = X.name + " | " + Y.name;
    raw.formal_dim = X.formal_dim;
    auto add = [&](const FilteredComplex& K, const std::string& prefix) {
        for (VertexIdx v : K.vertex_order()) {
            raw.vertices.push_back({prefix + K.vertex_names()[v], K.level_of_vertex(v)});
            raw.vertex_order.push_back(prefix + K.vertex_names()[v]);
        }
        for (int d = 0; d <= K.top_dim(); ++d)
            for (const auto& s : K.simplices(d)) {
                std::vector<VertexId> ids;
                for (VertexIdx v : s) ids.push_back(prefix + K.vertex_names()[v]);
                raw.simplices.push_back(std::move(ids));
            }
    };
    add(X, "l:");
    add(Y, "r:");
    return build_complex(raw);
}

// --- perversity transport ------------------------------------------------------

namespace {

// Assign to each derived stratum the value of the base stratum its simplices
// come from, via a caller-supplied projection of derived simplices to base
// strata (-1 = the stratum is new and handled by `special`).
Perversity transport(const Space& derived, const std::function<int(int, int)>& base_stratum_of,
                     const Perversity& p, const std::function<std::optional<int>(const Stratum&)>& special) {
    Perversity out;
    out.complex_ref = derived.complex.name;
    out.values.assign(derived.strata.count(), 0);
    for (int i = 0; i < derived.strata.count(); ++i) {
        const Stratum& S = derived.strata.strata[i];
        if (auto v = special(S)) {
            if (!S.regular) out.values[i] = *v;
            continue;
        }
        int chosen = -1;
        for (auto& [d, idx] : S.simplices) {
            int b = base_stratum_of(d, idx);
            if (b < 0) continue;
            if (chosen < 0) chosen = b;
            if (b != chosen)
                fail(errc::internal, "perversity transport: stratum " + S.id +
                                         " projects to several base strata");
        }
        if (chosen < 0)
            fail(errc::internal, "perversity transport: no base stratum for " + S.id);
        if (!S.regular) out.values[i] = p.values[chosen];
    }
    return out;
}

}  // namespace

Perversity cone_perversity(const Space& cone_space, const Space& base, const Perversity& p,
                           int apex_value) {
    // The apex is the vertex absent from the base complex.
    VertexIdx apex = -1;
    for (int v = 0; v < cone_space.complex.vertex_count(); ++v)
        if (!base.complex.vertex_index(cone_space.complex.vertex_names()[v])) {
            if (apex >= 0) fail(errc::internal, "cone_perversity: several new vertices");
            apex = v;
        }
    if (apex < 0) fail(errc::internal, "cone_perversity: apex not found");
    int apex_stratum = cone_space.strata.stratum_of_simplex(cone_space.complex, {apex});

    auto base_stratum_of = [&](int d, int idx) {
        Simplex s = cone_space.complex.simplices(d)[idx];
        Simplex stripped;
        for (VertexIdx v : s)
            if (v != apex) stripped.push_back(v);
        if (stripped.empty()) return -1;
        Simplex in_base = base.complex.simplex_from_names(names_of(cone_space.complex, stripped));
        return base.strata.stratum_of_simplex(base.complex, in_base);
    };
    auto special = [&](const Stratum& S) -> std::optional<int> {
        if (cone_space.strata.index_of(S.id) == apex_stratum) return apex_value;
        return std::nullopt;
    };
    return transport(cone_space, base_stratum_of, p, special);
}

Perversity suspension_perversity(const Space& susp, const Space& base, const Perversity& p,
                                 int plus_value, int minus_value) {
    std::vector<VertexIdx> apexes;
    for (int v = 0; v < susp.complex.vertex_count(); ++v)
        if (!base.complex.vertex_index(susp.complex.vertex_names()[v])) apexes.push_back(v);
    if (apexes.size() != 2) fail(errc::internal, "suspension_perversity: apexes not found");
    // "w+" sorts before "w-"? Order by name for determinism; caller passes
    // values for (plus, minus) in constructor naming order w+, w-.
    VertexIdx plus = apexes[0], minus = apexes[1];
    if (susp.complex.vertex_names()[plus] > susp.complex.vertex_names()[minus])
        std::swap(plus, minus);
    // '+' < '-' in ASCII, so the lexicographically smaller apex is "w+".
    int plus_stratum = susp.strata.stratum_of_simplex(susp.complex, {plus});
    int minus_stratum = susp.strata.stratum_of_simplex(susp.complex, {minus});

    auto base_stratum_of = [&](int d, int idx) {
        Simplex s = susp.complex.simplices(d)[idx];
        Simplex stripped;
        for (VertexIdx v : s)
            if (v != plus && v != minus) stripped.push_back(v);
        if (stripped.empty()) return -1;
        Simplex in_base = base.complex.simplex_from_names(names_of(susp.complex, stripped));
        return base.strata.stratum_of_simplex(base.complex, in_base);
    };
    auto special = [&](const Stratum& S) -> std::optional<int> {
        int idx = susp.strata.index_of(S.id);
        if (idx == plus_stratum) return plus_value;
        if (idx == minus_stratum) return minus_value;
        return std::nullopt;
    };
    return transport(susp, base_stratum_of, p, special);
}

Perversity product_perversity(const Space& prod, const Space& base, const Perversity& p) {
    auto strip = [&](const VertexId& name) {
        auto pos = name.rfind('@');
        if (pos == std::string::npos)
            fail(errc::internal, "product_perversity: vertex lacks slice tag: " + name);
        return name.substr(0, pos);
    };
    auto base_stratum_of = [&](int d, int idx) {
        const Simplex& s = prod.complex.simplices(d)[idx];
        std::set<VertexId> projected;
        for (VertexIdx v : s) projected.insert(strip(prod.complex.vertex_names()[v]));
        Simplex in_base = base.complex.simplex_from_names(
            std::vector<VertexId>(projected.begin(), projected.end()));
        return base.strata.stratum_of_simplex(base.complex, in_base);
    };
    auto special = [&](const Stratum&) -> std::optional<int> { return std::nullopt; };
    return transport(prod, base_stratum_of, p, special);
}

namespace {

std::map<std::string, std::pair<int, int>> barycenter_index(const Space& base) {
    std::map<std::string, std::pair<int, int>> out;
    for (int d = 0; d <= base.complex.top_dim(); ++d)
        for (int i = 0; i < base.complex.count(d); ++i)
            out[barycenter_name(base.complex, base.complex.simplices(d)[i])] = {d, i};
    return out;
}

}  // namespace

Perversity subdivision_perversity(const Space& sd, const Space& base, const Perversity& p) {
    auto table = barycenter_index(base);
    auto base_stratum_of = [&](int d, int idx) {
        const Simplex& flag = sd.complex.simplices(d)[idx];
        // The largest member of the flag carries the stratum's level.
        int best_dim = -1, best_idx = -1;
        for (VertexIdx v : flag) {
            auto it = table.find(sd.complex.vertex_names()[v]);
            if (it == table.end())
                fail(errc::internal, "subdivision_perversity: unknown barycenter");
            if (it->second.first > best_dim) {
                best_dim = it->second.first;
                best_idx = it->second.second;
            }
        }
        return base.strata.stratum_of[best_dim][best_idx];
    };
    auto special = [&](const Stratum&) -> std::optional<int> { return std::nullopt; };
    return transport(sd, base_stratum_of, p, special);
}

SimplexSubset subdivide_subset(const Space& sd, const Space& base, const SimplexSubset& sub) {
    auto table = barycenter_index(base);
    SimplexSubset out = SimplexSubset::empty(sd.complex);
    for (int d = 0; d <= sd.complex.top_dim(); ++d)
        for (int i = 0; i < sd.complex.count(d); ++i) {
            bool inside = true;
            for (VertexIdx v : sd.complex.simplices(d)[i]) {
                auto it = table.find(sd.complex.vertex_names()[v]);
                if (it == table.end()) fail(errc::internal, "subdivide_subset: unknown barycenter");
                if (!sub.contains(it->second.first, it->second.second)) {
                    inside = false;
                    break;
                }
            }
            if (inside) out.by_dim[d].push_back(i);
        }
    return out;
}

}  // namespace ih
