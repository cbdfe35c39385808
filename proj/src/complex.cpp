#include "ihcalc/complex.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace ih {

std::optional<VertexIdx> FilteredComplex::vertex_index(const VertexId& id) const {
    auto it = std::lower_bound(vertex_names_.begin(), vertex_names_.end(), id);
    if (it == vertex_names_.end() || *it != id) return std::nullopt;
    return static_cast<VertexIdx>(it - vertex_names_.begin());
}

const std::vector<Simplex>& FilteredComplex::simplices(int dim) const {
    static const std::vector<Simplex> kEmpty;
    if (dim < 0 || dim >= static_cast<int>(by_dim_.size())) return kEmpty;
    return by_dim_[dim];
}

int FilteredComplex::count(int dim) const { return static_cast<int>(simplices(dim).size()); }

long FilteredComplex::total_simplices() const {
    long n = 0;
    for (const auto& d : by_dim_) n += static_cast<long>(d.size());
    return n;
}

std::optional<int> FilteredComplex::find(const Simplex& s) const {
    int dim = static_cast<int>(s.size()) - 1;
    if (dim < 0 || dim >= static_cast<int>(by_dim_.size())) return std::nullopt;
    const auto& list = by_dim_[dim];
    auto it = std::lower_bound(list.begin(), list.end(), s);
    if (it == list.end() || *it != s) return std::nullopt;
    return static_cast<int>(it - list.begin());
}

int FilteredComplex::level_of(const Simplex& s) const {
    int lv = 0;
    for (VertexIdx v : s) lv = std::max(lv, vertex_levels_[v]);
    return lv;
}

std::string FilteredComplex::simplex_name(const Simplex& s) const {
    return simplex_to_string(s, vertex_names_);
}

Simplex FilteredComplex::simplex_from_names(const std::vector<VertexId>& ids) const {
    Simplex s;
    for (const auto& id : ids) {
        auto v = vertex_index(id);
        if (!v) fail(errc::dangling_vertex_ref, "unknown vertex id: " + id);
        s.push_back(*v);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        fail(errc::parse_error, "simplex repeats a vertex");
    return s;
}

class ComplexBuilder {
  public:
    static FilteredComplex build(const RawComplex& raw, bool validate_top) {
        FilteredComplex X;
        X.name = raw.name;
        X.formal_dim = raw.formal_dim;
        if (raw.formal_dim < 0) fail(errc::level_out_of_range, "formal_dim must be >= 0");

        // Vertex table, index order = lexicographic name order.
        std::vector<std::pair<std::string, int>> verts(raw.vertices.begin(), raw.vertices.end());
        std::sort(verts.begin(), verts.end());
        for (size_t i = 0; i + 1 < verts.size(); ++i)
            if (verts[i].first == verts[i + 1].first)
                fail(errc::duplicate_vertex, "duplicate vertex id: " + verts[i].first);
        for (const auto& [id, lv] : verts) {
            if (lv < 0 || lv > raw.formal_dim)
                fail(errc::level_out_of_range,
                     "vertex " + id + " has level " + std::to_string(lv) + " outside 0.." +
                         std::to_string(raw.formal_dim));
            X.vertex_names_.push_back(id);
            X.vertex_levels_.push_back(lv);
        }

        // Staircase order: explicit list or file order.
        std::vector<VertexId> order_ids;
        if (!raw.vertex_order.empty()) {
            order_ids = raw.vertex_order;
        } else {
            for (const auto& [id, lv] : raw.vertices) order_ids.push_back(id);
        }
        std::set<VertexIdx> seen;
        for (const auto& id : order_ids) {
            auto v = X.vertex_index(id);
            if (!v) fail(errc::dangling_vertex_ref, "vertex_order mentions unknown vertex: " + id);
            if (!seen.insert(*v).second)
                fail(errc::parse_error, "vertex_order repeats vertex: " + id);
            X.vertex_order_.push_back(*v);
        }
        if (X.vertex_order_.size() != X.vertex_names_.size())
            fail(errc::parse_error, "vertex_order must list every vertex");
        X.order_pos_.assign(X.vertex_names_.size(), 0);
        for (size_t i = 0; i < X.vertex_order_.size(); ++i) X.order_pos_[X.vertex_order_[i]] = (int)i;

        // Close the generating simplices under faces.
        std::set<Simplex> closed;
        std::vector<Simplex> stack;
        for (const auto& gen : raw.simplices) {
            Simplex s = X.simplex_from_names(gen);
            if (s.empty()) fail(errc::parse_error, "empty simplex in input");
            if (closed.insert(s).second) stack.push_back(s);
        }
        while (!stack.empty()) {
            Simplex s = std::move(stack.back());
            stack.pop_back();
            if (s.size() == 1) continue;
            for (size_t i = 0; i < s.size(); ++i) {
                Simplex f;
                f.reserve(s.size() - 1);
                for (size_t j = 0; j < s.size(); ++j)
                    if (j != i) f.push_back(s[j]);
                if (closed.insert(f).second) stack.push_back(f);
            }
        }

        int top = -1;
        for (const auto& s : closed) top = std::max(top, (int)s.size() - 1);
        X.by_dim_.assign(std::max(top + 1, 0), {});
        for (const auto& s : closed) X.by_dim_[s.size() - 1].push_back(s);
        // std::set iteration is sorted per dimension? Mixed dims in one set:
        // re-sort each bucket to be safe.
        for (auto& bucket : X.by_dim_) std::sort(bucket.begin(), bucket.end());

        X.levels_by_dim_.resize(X.by_dim_.size());
        for (size_t d = 0; d < X.by_dim_.size(); ++d) {
            X.levels_by_dim_[d].reserve(X.by_dim_[d].size());
            for (const auto& s : X.by_dim_[d]) X.levels_by_dim_[d].push_back(X.level_of(s));
        }

        if (validate_top) {
            bool top_reached = false;
            for (int lv : X.vertex_levels_)
                if (lv == X.formal_dim) top_reached = true;
            if (!top_reached)
                fail(errc::empty_top_level,
                     "no simplex reaches level " + std::to_string(X.formal_dim) +
                         " (X_n \\ X_{n-1} empty)");
        }
        if (X.by_dim_.empty()) fail(errc::empty_input, "complex has no simplices");
        return X;
    }
};

FilteredComplex FilteredComplex::build(const RawComplex& raw) {
    return ComplexBuilder::build(raw, true);
}

FilteredComplex build_complex(const RawComplex& raw) { return FilteredComplex::build(raw); }

DecompositionView decompose(const FilteredComplex& X, const Simplex& s) {
    if (!X.contains(s)) fail(errc::unknown_simplex, "decompose: " + X.simplex_name(s));
    DecompositionView view;
    view.simplex = s;
    const int n = X.formal_dim;
    view.parts.assign(n + 1, {});
    for (VertexIdx v : s) view.parts[X.level_of_vertex(v)].push_back(v);
    view.part_dims.reserve(n + 1);
    view.join_dims.reserve(n + 1);
    int acc = 0;
    for (int i = 0; i <= n; ++i) {
        int sz = static_cast<int>(view.parts[i].size());
        view.part_dims.push_back(sz == 0 ? ExtDim::neg_inf() : ExtDim(sz - 1));
        acc += sz;
        view.join_dims.push_back(acc == 0 ? ExtDim::neg_inf() : ExtDim(acc - 1));
    }
    return view;
}

namespace {

// All codimension-1 faces of a simplex.
std::vector<Simplex> facets(const Simplex& s) {
    std::vector<Simplex> out;
    if (s.size() <= 1) return out;
    for (size_t i = 0; i < s.size(); ++i) {
        Simplex f;
        f.reserve(s.size() - 1);
        for (size_t j = 0; j < s.size(); ++j)
            if (j != i) f.push_back(s[j]);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace

PseudomanifoldReport check_pseudomanifold(const FilteredComplex& X) {
    PseudomanifoldReport report;
    const int n = X.formal_dim;

    // (i) density of the top-dimensional part: every simplex under an n-simplex.
    std::set<Simplex> under;
    for (const auto& s : X.simplices(n)) {
        std::vector<Simplex> stack{s};
        under.insert(s);
        while (!stack.empty()) {
            Simplex cur = std::move(stack.back());
            stack.pop_back();
            for (auto& f : facets(cur))
                if (under.insert(f).second) stack.push_back(f);
        }
    }
    for (int d = 0; d <= X.top_dim(); ++d)
        for (const auto& s : X.simplices(d))
            if (!under.count(s)) report.not_under_top_simplex.push_back(s);

    // (ii) regular (n-1)-simplices have exactly two n-cofaces.
    if (n >= 1) {
        std::map<Simplex, int> coface_count;
        for (const auto& s : X.simplices(n))
            for (auto& f : facets(s)) coface_count[f] += 1;
        for (int i = 0; i < X.count(n - 1); ++i) {
            const Simplex& s = X.simplices(n - 1)[i];
            if (X.level_of(n - 1, i) <= n - 1) continue;  // inside K_{n-1}
            auto it = coface_count.find(s);
            int c = it == coface_count.end() ? 0 : it->second;
            if (c != 2) report.bad_ridges.push_back(s);
        }
    }
    report.is_pm = report.not_under_top_simplex.empty() && report.bad_ridges.empty();
    return report;
}

namespace {

// Link of a simplex: all t disjoint from s with s union t in X.
std::vector<Simplex> link_of(const FilteredComplex& X, const Simplex& s) {
    std::vector<Simplex> out;
    for (int d = 0; d <= X.top_dim(); ++d)
        for (const auto& t : X.simplices(d)) {
            bool disjoint = true;
            for (VertexIdx v : t)
                if (std::binary_search(s.begin(), s.end(), v)) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            Simplex u;
            std::merge(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(u));
            if (X.contains(u)) out.push_back(t);
        }
    return out;
}

bool complex_connected(const std::vector<Simplex>& simplices) {
    std::set<VertexIdx> verts;
    for (const auto& s : simplices)
        for (VertexIdx v : s) verts.insert(v);
    if (verts.empty()) return false;  // empty link counts as a failure
    std::map<VertexIdx, VertexIdx> parent;
    for (VertexIdx v : verts) parent[v] = v;
    std::function<VertexIdx(VertexIdx)> find = [&](VertexIdx v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& s : simplices)
        for (size_t i = 1; i < s.size(); ++i) parent[find(s[0])] = find(s[i]);
    VertexIdx root = find(*verts.begin());
    for (VertexIdx v : verts)
        if (find(v) != root) return false;
    return true;
}

}  // namespace

NormalityReport check_normal(const FilteredComplex& X) {
    NormalityReport report;
    const int n = X.formal_dim;
    for (int d = 0; d <= std::min(X.top_dim(), n - 2); ++d)
        for (const auto& s : X.simplices(d))
            if (!complex_connected(link_of(X, s))) report.disconnected_links.push_back(s);
    report.is_normal = report.disconnected_links.empty();
    return report;
}

// --- simplex subsets ---------------------------------------------------------

bool SimplexSubset::contains(int dim, int idx) const {
    if (dim < 0 || dim >= static_cast<int>(by_dim.size())) return false;
    const auto& v = by_dim[dim];
    return std::binary_search(v.begin(), v.end(), idx);
}

long SimplexSubset::total() const {
    long n = 0;
    for (const auto& d : by_dim) n += static_cast<long>(d.size());
    return n;
}

SimplexSubset SimplexSubset::empty(const FilteredComplex& X) {
    SimplexSubset sub;
    sub.by_dim.assign(X.top_dim() + 1, {});
    return sub;
}

SimplexSubset SimplexSubset::all(const FilteredComplex& X) {
    SimplexSubset sub;
    sub.by_dim.resize(X.top_dim() + 1);
    for (int d = 0; d <= X.top_dim(); ++d) {
        sub.by_dim[d].resize(X.count(d));
        for (int i = 0; i < X.count(d); ++i) sub.by_dim[d][i] = i;
    }
    return sub;
}

SimplexSubset close_under_faces(const FilteredComplex& X, const std::vector<Simplex>& gens) {
    std::set<Simplex> closed;
    std::vector<Simplex> stack;
    for (const auto& g : gens) {
        if (!X.contains(g)) fail(errc::unknown_simplex, "subset generator not in complex");
        if (closed.insert(g).second) stack.push_back(g);
    }
    while (!stack.empty()) {
        Simplex s = std::move(stack.back());
        stack.pop_back();
        if (s.size() == 1) continue;
        for (size_t i = 0; i < s.size(); ++i) {
            Simplex f;
            for (size_t j = 0; j < s.size(); ++j)
                if (j != i) f.push_back(s[j]);
            if (closed.insert(f).second) stack.push_back(f);
        }
    }
    SimplexSubset sub = SimplexSubset::empty(X);
    for (const auto& s : closed) sub.by_dim[s.size() - 1].push_back(*X.find(s));
    for (auto& v : sub.by_dim) std::sort(v.begin(), v.end());
    return sub;
}

SimplexSubset full_subcomplex(const FilteredComplex& X, const std::vector<VertexIdx>& verts) {
    std::vector<char> in(X.vertex_count(), 0);
    for (VertexIdx v : verts) in[v] = 1;
    SimplexSubset sub = SimplexSubset::empty(X);
    for (int d = 0; d <= X.top_dim(); ++d)
        for (int i = 0; i < X.count(d); ++i) {
            const Simplex& s = X.simplices(d)[i];
            bool all_in = true;
            for (VertexIdx v : s)
                if (!in[v]) {
                    all_in = false;
                    break;
                }
            if (all_in) sub.by_dim[d].push_back(i);
        }
    return sub;
}

bool is_face_closed(const FilteredComplex& X, const SimplexSubset& sub) {
    for (int d = 1; d < static_cast<int>(sub.by_dim.size()); ++d)
        for (int idx : sub.by_dim[d]) {
            const Simplex& s = X.simplices(d)[idx];
            for (auto& f : facets(s)) {
                auto fi = X.find(f);
                if (!fi || !sub.contains(d - 1, *fi)) return false;
            }
        }
    return true;
}

bool is_full_subcomplex(const FilteredComplex& X, const SimplexSubset& sub) {
    if (!is_face_closed(X, sub)) return false;
    std::vector<char> in(X.vertex_count(), 0);
    if (!sub.by_dim.empty())
        for (int idx : sub.by_dim[0]) in[X.simplices(0)[idx][0]] = 1;
    for (int d = 0; d <= X.top_dim(); ++d)
        for (int i = 0; i < X.count(d); ++i) {
            const Simplex& s = X.simplices(d)[i];
            bool all_in = true;
            for (VertexIdx v : s)
                if (!in[v]) {
                    all_in = false;
                    break;
                }
            if (all_in && !sub.contains(d, i)) return false;
        }
    return true;
}

FilteredComplex subset_to_complex(const FilteredComplex& X, const SimplexSubset& sub,
                                  const std::string& name) {
    RawComplex raw;
    raw.name = name;
    raw.formal_dim = X.formal_dim;
    std::set<VertexIdx> verts;
    for (int d = 0; d < static_cast<int>(sub.by_dim.size()); ++d)
        for (int idx : sub.by_dim[d])
            for (VertexIdx v : X.simplices(d)[idx]) verts.insert(v);
    for (VertexIdx v : verts)
        raw.vertices.push_back({X.vertex_names()[v], X.level_of_vertex(v)});
    for (int d = 0; d < static_cast<int>(sub.by_dim.size()); ++d)
        for (int idx : sub.by_dim[d]) {
            std::vector<VertexId> names;
            for (VertexIdx v : X.simplices(d)[idx]) names.push_back(X.vertex_names()[v]);
            raw.simplices.push_back(std::move(names));
        }
    if (raw.simplices.empty()) fail(errc::empty_input, "empty subcomplex: " + name);
    return ComplexBuilder::build(raw, /*validate_top=*/false);
}

}  // namespace ih
