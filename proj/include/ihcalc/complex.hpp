#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ihcalc/core.hpp"

namespace ih {

// Raw parsed input before validation: vertex ids with levels and a list of
// generating simplices (maximal simplices suffice; the closure is computed).
struct RawComplex {
    std::string name;
    int formal_dim = 0;
    std::vector<std::pair<VertexId, int>> vertices;
    std::vector<std::vector<VertexId>> simplices;
    std::vector<VertexId> vertex_order;  // optional staircase order; empty = file order
};

// A finite filtered simplicial complex. The filtration is per-vertex:
// level(sigma) = max vertex level, and K_i is the full subcomplex on vertices
// of level <= i, so every simplex is filtered with no side conditions.
class FilteredComplex {
  public:
    std::string name;
    int formal_dim = 0;

    const std::vector<std::string>& vertex_names() const { return vertex_names_; }
    const std::vector<int>& vertex_levels() const { return vertex_levels_; }
    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int level_of_vertex(VertexIdx v) const { return vertex_levels_[v]; }
    std::optional<VertexIdx> vertex_index(const VertexId& id) const;

    // Staircase order for product constructions: position of each vertex.
    const std::vector<VertexIdx>& vertex_order() const { return vertex_order_; }
    int order_pos(VertexIdx v) const { return order_pos_[v]; }

    int top_dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    const std::vector<Simplex>& simplices(int dim) const;
    int count(int dim) const;
    long total_simplices() const;

    // Index of a simplex inside simplices(dim), or nullopt.
    std::optional<int> find(const Simplex& s) const;
    bool contains(const Simplex& s) const { return find(s).has_value(); }

    int level_of(int dim, int idx) const { return levels_by_dim_[dim][idx]; }
    int level_of(const Simplex& s) const;

    std::string simplex_name(const Simplex& s) const;
    Simplex simplex_from_names(const std::vector<VertexId>& ids) const;

    static FilteredComplex build(const RawComplex& raw);

  private:
    std::vector<std::string> vertex_names_;    // sorted lexicographically
    std::vector<int> vertex_levels_;           // by vertex index
    std::vector<VertexIdx> vertex_order_;      // staircase order (indices)
    std::vector<int> order_pos_;               // inverse of vertex_order_
    std::vector<std::vector<Simplex>> by_dim_; // per dimension, sorted
    std::vector<std::vector<int>> levels_by_dim_;

    friend class ComplexBuilder;
};

FilteredComplex build_complex(const RawComplex& raw);

// sigma-decomposition of a simplex: vertices grouped by level.
struct DecompositionView {
    Simplex simplex;
    std::vector<std::vector<VertexIdx>> parts;  // Delta_0 .. Delta_n
    std::vector<ExtDim> part_dims;              // dim Delta_i, NEG_INF when empty
    // dim(Delta_0 * ... * Delta_j), NEG_INF when all parts up to j are empty.
    std::vector<ExtDim> join_dims;
};

DecompositionView decompose(const FilteredComplex& X, const Simplex& s);

struct PseudomanifoldReport {
    bool is_pm = true;
    std::vector<Simplex> not_under_top_simplex;  // witnesses for density failure
    std::vector<Simplex> bad_ridges;             // regular (n-1)-simplices with != 2 cofaces
};

PseudomanifoldReport check_pseudomanifold(const FilteredComplex& X);

struct NormalityReport {
    bool is_normal = true;
    std::vector<Simplex> disconnected_links;
};

NormalityReport check_normal(const FilteredComplex& X);

// --- simplex subsets -------------------------------------------------------

// A face-closed set of simplices of a fixed complex, stored per dimension as
// sorted index lists. Used for subcomplexes, covers and p-large strata.
struct SimplexSubset {
    std::vector<std::vector<int>> by_dim;  // indices into X.simplices(dim)

    bool contains(int dim, int idx) const;
    long total() const;
    static SimplexSubset empty(const FilteredComplex& X);
    static SimplexSubset all(const FilteredComplex& X);
};

// Closure of a set of simplices (all faces added).
SimplexSubset close_under_faces(const FilteredComplex& X, const std::vector<Simplex>& gens);

// Full subcomplex on a vertex set: every simplex all of whose vertices lie in it.
SimplexSubset full_subcomplex(const FilteredComplex& X, const std::vector<VertexIdx>& verts);

bool is_face_closed(const FilteredComplex& X, const SimplexSubset& sub);
bool is_full_subcomplex(const FilteredComplex& X, const SimplexSubset& sub);

// Materialize a subset as a standalone complex with the induced filtration.
// Validation of the top-level invariant is skipped: induced filtrations of
// subcomplexes (e.g. the singular set) legitimately miss the top level.
FilteredComplex subset_to_complex(const FilteredComplex& X, const SimplexSubset& sub,
                                  const std::string& name);

}  // namespace ih
