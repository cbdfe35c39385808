#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ih {

using VertexId = std::string;

// Vertices are stored as indices into a name table sorted lexicographically,
// so index order coincides with name order and boundary signs are reproducible.
using VertexIdx = int32_t;

// A simplex is a strictly increasing list of vertex indices.
using Simplex = std::vector<VertexIdx>;

// Error codes mirror the failure modes named in the per-operation contracts.
enum class errc {
    // input / validation
    duplicate_vertex,
    level_out_of_range,
    empty_top_level,
    dangling_vertex_ref,
    empty_input,
    dim_mismatch,
    m_too_small,
    parse_error,
    // lookups and semantic preconditions
    unknown_simplex,
    unknown_stratum,
    missing_codim,
    not_admissible,
    not_admissible_input,
    duality_inequality_violated,
    not_full_subcomplex,
    not_simplicial,
    stratum_split,
    codim_violation,
    source_value_conflict,
    not_a_refinement,
    simplex_set_mismatch,
    unknown_stratum_in_equiv,
    // engine
    inconsistent_complex,
    shape_mismatch,
    internal,
};

const char* errc_name(errc c);

// Exit-code category used by the CLI: 2 parse, 3 validation, 4 semantic, 5 internal.
int errc_exit_code(errc c);

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

// Dimension value extended with -infinity. The sentinel participates in
// comparisons (a perverse degree along a missed stratum is -inf), so it is a
// distinct state rather than a magic integer.
class ExtDim {
  public:
    constexpr ExtDim() : finite_(false), v_(0) {}
    constexpr explicit ExtDim(int v) : finite_(true), v_(v) {}
    static constexpr ExtDim neg_inf() { return ExtDim(); }

    constexpr bool is_neg_inf() const { return !finite_; }
    int value() const;

    friend constexpr bool operator==(ExtDim a, ExtDim b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.v_ == b.v_);
    }
    friend constexpr bool operator<(ExtDim a, ExtDim b) {
        if (!a.finite_) return b.finite_;
        if (!b.finite_) return false;
        return a.v_ < b.v_;
    }
    friend constexpr bool operator<=(ExtDim a, ExtDim b) { return a < b || a == b; }

    // a <= k for plain int k; -inf satisfies every bound.
    constexpr bool le(int k) const { return !finite_ || v_ <= k; }

    std::string str() const;

  private:
    bool finite_;
    int v_;
};

std::string simplex_to_string(const Simplex& s, const std::vector<std::string>& names);

}  // namespace ih
