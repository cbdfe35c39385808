#include "ihcalc/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ih {

using nlohmann::ordered_json;

namespace {

ordered_json parse_or_fail(const std::string& text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(errc::parse_error, "malformed JSON");
    return j;
}

int as_int(const ordered_json& j, const std::string& what) {
    if (!j.is_number_integer()) fail(errc::parse_error, what + " must be an integer");
    return j.get<int>();
}

}  // namespace

RawComplex parse_complex_json(const std::string& text) {
    ordered_json j = parse_or_fail(text);
    if (!j.is_object()) fail(errc::parse_error, "complex file must be a JSON object");
    RawComplex raw;
    raw.name = j.value("name", std::string("unnamed"));
    if (!j.contains("formal_dim")) fail(errc::parse_error, "complex file lacks formal_dim");
    raw.formal_dim = as_int(j["formal_dim"], "formal_dim");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        fail(errc::parse_error, "complex file lacks a vertices array");
    for (const auto& v : j["vertices"]) {
        if (!v.is_object() || !v.contains("id") || !v.contains("level"))
            fail(errc::parse_error, "each vertex needs id and level");
        raw.vertices.push_back({v["id"].get<std::string>(), as_int(v["level"], "vertex level")});
    }
    if (!j.contains("simplices") || !j["simplices"].is_array())
        fail(errc::parse_error, "complex file lacks a simplices array");
    for (const auto& s : j["simplices"]) {
        if (!s.is_array()) fail(errc::parse_error, "each simplex must be an array of vertex ids");
        std::vector<VertexId> ids;
        for (const auto& id : s) ids.push_back(id.get<std::string>());
        raw.simplices.push_back(std::move(ids));
    }
    if (j.contains("vertex_order"))
        for (const auto& id : j["vertex_order"]) raw.vertex_order.push_back(id.get<std::string>());
    return raw;
}

std::string emit_complex_json(const FilteredComplex& X) {
    ordered_json j;
    j["name"] = X.name;
    j["formal_dim"] = X.formal_dim;
    j["vertices"] = ordered_json::array();
    // Emit in staircase order so round-trips preserve it without the
    // optional field... the field is emitted anyway for explicitness.
    for (VertexIdx v : X.vertex_order())
        j["vertices"].push_back({{"id", X.vertex_names()[v]}, {"level", X.level_of_vertex(v)}});
    // Maximal simplices only: smaller files, closure is recomputed on load.
    std::set<Simplex> non_maximal;
    for (int d = 1; d <= X.top_dim(); ++d)
        for (const auto& s : X.simplices(d))
            for (size_t drop = 0; drop < s.size(); ++drop) {
                Simplex f;
                for (size_t k = 0; k < s.size(); ++k)
                    if (k != drop) f.push_back(s[k]);
                non_maximal.insert(f);
            }
    j["simplices"] = ordered_json::array();
    for (int d = 0; d <= X.top_dim(); ++d)
        for (const auto& s : X.simplices(d)) {
            if (non_maximal.count(s)) continue;
            ordered_json arr = ordered_json::array();
            for (VertexIdx v : s) arr.push_back(X.vertex_names()[v]);
            j["simplices"].push_back(std::move(arr));
        }
    j["vertex_order"] = ordered_json::array();
    for (VertexIdx v : X.vertex_order()) j["vertex_order"].push_back(X.vertex_names()[v]);
    return j.dump(2) + "\n";
}

PerversityFile parse_perversity_json(const std::string& text) {
    ordered_json j = parse_or_fail(text);
    if (!j.is_object() || !j.contains("kind"))
        fail(errc::parse_error, "perversity file needs a kind");
    PerversityFile f;
    std::string kind = j["kind"].get<std::string>();
    if (kind == "general") {
        f.classical = false;
        if (!j.contains("values") || !j["values"].is_object())
            fail(errc::parse_error, "general perversity needs a values object");
        for (auto it = j["values"].begin(); it != j["values"].end(); ++it)
            f.values[it.key()] = as_int(it.value(), "perversity value");
    } else if (kind == "classical") {
        f.classical = true;
        if (!j.contains("by_codim") || !j["by_codim"].is_object())
            fail(errc::parse_error, "classical perversity needs a by_codim object");
        for (auto it = j["by_codim"].begin(); it != j["by_codim"].end(); ++it) {
            int c;
            try {
                c = std::stoi(it.key());
            } catch (...) {
                fail(errc::parse_error, "by_codim keys must be integers");
            }
            if (c < 1) fail(errc::parse_error, "by_codim keys must be >= 1");
            f.by_codim[c] = as_int(it.value(), "perversity value");
        }
    } else {
        fail(errc::parse_error, "perversity kind must be general or classical");
    }
    return f;
}

Perversity resolve_perversity(const PerversityFile& file, const Space& X) {
    if (file.classical) {
        ClassicalPerversitySpec spec;
        spec.by_codim = file.by_codim;
        return from_classical(spec, X);
    }
    return make_perversity(X, file.values);
}

std::string emit_perversity_json(const Perversity& p, const Space& X) {
    ordered_json j;
    if (p.classical) {
        j["kind"] = "classical";
        ordered_json vals;
        for (const auto& [c, v] : p.classical->by_codim) vals[std::to_string(c)] = v;
        j["by_codim"] = vals;
    } else {
        j["kind"] = "general";
        ordered_json vals;
        for (int i = 0; i < X.strata.count(); ++i)
            if (!X.strata.strata[i].regular) vals[X.strata.strata[i].id] = p.values[i];
        j["values"] = vals;
    }
    return j.dump(2) + "\n";
}

EquivalenceDeclaration parse_equivalence_json(const std::string& text) {
    ordered_json j = parse_or_fail(text);
    if (!j.is_object() || !j.contains("pairs") || !j["pairs"].is_array())
        fail(errc::parse_error, "equivalence file needs a pairs array");
    EquivalenceDeclaration eq;
    for (const auto& pr : j["pairs"]) {
        if (!pr.is_array() || pr.size() != 2)
            fail(errc::parse_error, "each equivalence pair must list two stratum ids");
        eq.pairs.push_back({pr[0].get<std::string>(), pr[1].get<std::string>()});
    }
    return eq;
}

SimplexSubset parse_subcomplex_json(const std::string& text, const Space& X) {
    ordered_json j = parse_or_fail(text);
    if (j.is_object() && j.contains("formal_dim")) {
        RawComplex raw = parse_complex_json(text);
        // Must agree with X's full subcomplex on the same vertex set.
        std::vector<VertexIdx> verts;
        for (const auto& [id, lv] : raw.vertices) {
            auto v = X.complex.vertex_index(id);
            if (!v) fail(errc::not_full_subcomplex, "subcomplex vertex " + id + " not in complex");
            if (X.complex.level_of_vertex(*v) != lv)
                fail(errc::not_full_subcomplex, "subcomplex level mismatch at " + id);
            verts.push_back(*v);
        }
        SimplexSubset sub = full_subcomplex(X.complex, verts);
        std::vector<Simplex> gens;
        for (const auto& ids : raw.simplices) gens.push_back(X.complex.simplex_from_names(ids));
        SimplexSubset given = close_under_faces(X.complex, gens);
        if (given.by_dim != sub.by_dim)
            fail(errc::not_full_subcomplex,
                 "subcomplex file does not describe a full subcomplex");
        return sub;
    }
    if (j.is_object() && j.contains("vertices") && j["vertices"].is_array()) {
        std::vector<VertexIdx> verts;
        for (const auto& id : j["vertices"]) {
            auto v = X.complex.vertex_index(id.get<std::string>());
            if (!v)
                fail(errc::not_full_subcomplex,
                     "subcomplex vertex " + id.get<std::string>() + " not in complex");
            verts.push_back(*v);
        }
        return full_subcomplex(X.complex, verts);
    }
    fail(errc::parse_error, "subcomplex file needs vertices or a full complex description");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::parse_error, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::parse_error, "cannot write file: " + path);
    out << text;
}

}  // namespace ih
