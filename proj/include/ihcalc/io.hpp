#pragma once

#include <string>

#include "ihcalc/complex.hpp"
#include "ihcalc/perversity.hpp"

namespace ih {

// Complex JSON:
//   {"name": ..., "formal_dim": n,
//    "vertices": [{"id": "a", "level": 0}, ...],
//    "simplices": [["a","b"], ...],            // maximal simplices suffice
//    "vertex_order": ["a","b", ...]}           // optional
RawComplex parse_complex_json(const std::string& text);
std::string emit_complex_json(const FilteredComplex& X);

// Perversity JSON: {"kind":"general","values":{"S0.0":1,...}}
//               or {"kind":"classical","by_codim":{"2":0,"3":1}}
struct PerversityFile {
    bool classical = false;
    std::map<std::string, int> values;
    std::map<int, int> by_codim;
};

PerversityFile parse_perversity_json(const std::string& text);
Perversity resolve_perversity(const PerversityFile& file, const Space& X);
std::string emit_perversity_json(const Perversity& p, const Space& X);

// Equivalence JSON: {"pairs":[["S0.0","S3.0"],...]}
EquivalenceDeclaration parse_equivalence_json(const std::string& text);

// A subcomplex reference: either {"vertices":["a","b",...]} (full subcomplex
// on those vertices) or a complex JSON whose simplices must form a full
// subcomplex of X.
SimplexSubset parse_subcomplex_json(const std::string& text, const Space& X);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace ih
