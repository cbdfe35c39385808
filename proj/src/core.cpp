#include "ihcalc/core.hpp"

namespace ih {

const char* errc_name(errc c) {
    switch (c) {
        case errc::duplicate_vertex: return "DuplicateVertex";
        case errc::level_out_of_range: return "LevelOutOfRange";
        case errc::empty_top_level: return "EmptyTopLevel";
        case errc::dangling_vertex_ref: return "DanglingVertexRef";
        case errc::empty_input: return "EmptyInput";
        case errc::dim_mismatch: return "DimMismatch";
        case errc::m_too_small: return "MTooSmall";
        case errc::parse_error: return "ParseError";
        case errc::unknown_simplex: return "UnknownSimplex";
        case errc::unknown_stratum: return "UnknownStratum";
        case errc::missing_codim: return "MissingCodim";
        case errc::not_admissible: return "NotAdmissible";
        case errc::not_admissible_input: return "NotAdmissibleInput";
        case errc::duality_inequality_violated: return "DualityInequalityViolated";
        case errc::not_full_subcomplex: return "NotFullSubcomplex";
        case errc::not_simplicial: return "NotSimplicial";
        case errc::stratum_split: return "StratumSplit";
        case errc::codim_violation: return "CodimViolation";
        case errc::source_value_conflict: return "SourceValueConflict";
        case errc::not_a_refinement: return "NotARefinement";
        case errc::simplex_set_mismatch: return "SimplexSetMismatch";
        case errc::unknown_stratum_in_equiv: return "UnknownStratumInEquiv";
        case errc::inconsistent_complex: return "InconsistentComplex";
        case errc::shape_mismatch: return "ShapeMismatch";
        case errc::internal: return "InternalError";
    }
    return "UnknownError";
}

int errc_exit_code(errc c) {
    switch (c) {
        case errc::parse_error:
            return 2;
        case errc::duplicate_vertex:
        case errc::level_out_of_range:
        case errc::empty_top_level:
        case errc::dangling_vertex_ref:
        case errc::empty_input:
        case errc::dim_mismatch:
        case errc::m_too_small:
            return 3;
        case errc::inconsistent_complex:
        case errc::internal:
            return 5;
        default:
            return 4;
    }
}

int ExtDim::value() const {
    if (!finite_) fail(errc::internal, "ExtDim: value() on -inf");
    return v_;
}

std::string ExtDim::str() const { return finite_ ? std::to_string(v_) : "-inf"; }

std::string simplex_to_string(const Simplex& s, const std::vector<std::string>& names) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += names[s[i]];
    }
    out += "}";
    return out;
}

}  // namespace ih
