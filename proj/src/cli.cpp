#include "ihcalc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "ihcalc/chain.hpp"
#include "ihcalc/constructors.hpp"
#include "ihcalc/homology.hpp"
#include "ihcalc/invariance.hpp"
#include "ihcalc/io.hpp"

namespace ih {

using nlohmann::ordered_json;

namespace {

Space load_space(const std::string& path) {
    return Space::analyze(build_complex(parse_complex_json(read_file(path))));
}

// Perversity argument: "zero", "top", or a file path.
Perversity load_perversity(const std::string& arg, const Space& X) {
    if (arg.empty() || arg == "zero" || arg == "0") return zero_perversity(X);
    if (arg == "top" || arg == "t") return top_perversity(X);
    return resolve_perversity(parse_perversity_json(read_file(arg)), X);
}

void emit_json(const ordered_json& j, const std::string& json_arg, std::ostream& out) {
    if (json_arg.empty()) return;
    std::string text = j.dump(2) + "\n";
    if (json_arg == "-") out << text;
    else write_file(json_arg, text);
}

ordered_json groups_to_json(const std::vector<HomologyGroup>& groups) {
    ordered_json degrees;
    for (size_t k = 0; k < groups.size(); ++k) {
        ordered_json g;
        g["free_rank"] = groups[k].free_rank;
        g["torsion"] = ordered_json::array();
        for (const auto& t : groups[k].torsion) g["torsion"].push_back(t.str());
        degrees[std::to_string(k)] = g;
    }
    return degrees;
}

struct StrataPrinter {
    static ordered_json to_json(const Space& X) {
        ordered_json arr = ordered_json::array();
        for (int i = 0; i < X.strata.count(); ++i) {
            const Stratum& S = X.strata.strata[i];
            ordered_json js;
            js["id"] = S.id;
            js["level"] = S.level;
            js["codim"] = S.codim;
            js["regular"] = S.regular;
            js["depth"] = S.depth;
            js["simplex_count"] = S.simplices.size();
            ordered_json above = ordered_json::array();
            for (int j = 0; j < X.strata.count(); ++j)
                if (j != i && X.strata.leq(i, j)) above.push_back(X.strata.strata[j].id);
            js["leq"] = above;  // strata whose closure contains this one
            arr.push_back(std::move(js));
        }
        return arr;
    }

    static void print(const Space& X, std::ostream& out) {
        out << "complex " << X.complex.name << "  formal_dim " << X.complex.formal_dim << "\n";
        out << "simplices:";
        for (int d = 0; d <= X.complex.top_dim(); ++d) out << " " << X.complex.count(d);
        out << "  (by dimension)\n";
        out << "id      level codim reg depth  #simp  <=\n";
        for (int i = 0; i < X.strata.count(); ++i) {
            const Stratum& S = X.strata.strata[i];
            out << S.id;
            for (size_t pad = S.id.size(); pad < 8; ++pad) out << ' ';
            out << S.level << "     " << S.codim << "     " << (S.regular ? "y" : "n") << "   "
                << S.depth << "      " << S.simplices.size() << "     ";
            bool first = true;
            for (int j = 0; j < X.strata.count(); ++j)
                if (j != i && X.strata.leq(i, j)) {
                    if (!first) out << ",";
                    out << X.strata.strata[j].id;
                    first = false;
                }
            out << "\n";
        }
    }
};

int cmd_validate(const std::string& path, const std::string& json_arg, std::ostream& out) {
    Space X = load_space(path);
    if (json_arg != "-") StrataPrinter::print(X, out);
    ordered_json j;
    j["name"] = X.complex.name;
    j["formal_dim"] = X.complex.formal_dim;
    j["strata"] = StrataPrinter::to_json(X);
    emit_json(j, json_arg, out);
    return 0;
}

int cmd_homology(const std::string& path, const std::string& parg, const std::string& ring_s,
                 bool tame, const std::string& relative, bool reduced,
                 const std::string& json_arg, std::ostream& out) {
    Space X = load_space(path);
    Perversity p = load_perversity(parg, X);
    HomologyRequest req;
    req.ring = RingInfo::parse(ring_s);
    req.tame = tame;
    req.reduced = reduced;
    SimplexSubset rel;
    if (!relative.empty()) {
        rel = parse_subcomplex_json(read_file(relative), X);
        req.relative_to = &rel;
    }
    auto groups = compute_homology(X, &p, req);

    if (json_arg != "-") {
        out << "complex " << X.complex.name << "  ring " << req.ring.str()
            << (tame ? "  tame" : "") << (reduced ? "  reduced" : "")
            << (!relative.empty() ? "  relative" : "") << "\n";
        for (size_t k = 0; k < groups.size(); ++k)
            out << "H_" << k << " = " << groups[k].str() << "\n";
    }
    ordered_json j;
    j["complex"] = X.complex.name;
    j["ring"] = req.ring.str();
    j["variant"] = tame ? "tame" : "intersection";
    j["reduced"] = reduced;
    j["relative"] = !relative.empty();
    j["groups"] = groups_to_json(groups);
    emit_json(j, json_arg, out);
    return 0;
}

int cmd_construct(const std::string& kind, const std::vector<std::string>& inputs, int m,
                  const std::string& out_path, std::ostream& out) {
    FilteredComplex result = [&] {
        if (kind == "cone") return cone(build_complex(parse_complex_json(read_file(inputs[0]))));
        if (kind == "suspend")
            return suspension(build_complex(parse_complex_json(read_file(inputs[0]))));
        if (kind == "sd")
            return barycentric_subdivide(build_complex(parse_complex_json(read_file(inputs[0]))));
        if (kind == "prod-i")
            return product_interval(build_complex(parse_complex_json(read_file(inputs[0]))), m);
        if (kind == "prod-s1")
            return product_circle(build_complex(parse_complex_json(read_file(inputs[0]))), m);
        if (kind == "union") {
            if (inputs.size() != 2) fail(errc::parse_error, "union needs two inputs");
            return disjoint_union(build_complex(parse_complex_json(read_file(inputs[0]))),
                                  build_complex(parse_complex_json(read_file(inputs[1]))));
        }
        fail(errc::parse_error, "unknown construction: " + kind);
    }();
    std::string text = emit_complex_json(result);
    if (out_path.empty() || out_path == "-") out << text;
    else write_file(out_path, text);
    return 0;
}

int cmd_check(const std::string& path, const std::string& parg, const std::string& cls,
              const std::string& equiv_path, const std::string& json_arg, std::ostream& out) {
    Space X = load_space(path);
    Perversity p = load_perversity(parg, X);
    ordered_json j;
    j["complex"] = X.complex.name;
    j["class"] = cls;
    bool pass = false;
    std::vector<std::string> notes;

    if (cls == "king" || cls == "gm") {
        PerversityClass c = classify(p, X);
        j["is_classical"] = c.is_classical;
        j["is_king"] = c.is_king;
        j["is_gm"] = c.is_gm;
        if (!c.has_classical_spec)
            notes.push_back("no classical spec attached; King/GM undecidable from strata alone");
        pass = cls == "king" ? c.is_king : c.is_gm;
    } else if (cls == "k") {
        EquivalenceDeclaration eq;
        if (!equiv_path.empty()) eq = parse_equivalence_json(read_file(equiv_path));
        KPerversityReport rep = check_K_perversity(X, p, eq);
        j["cond_i"] = rep.cond_equal_on_sources;
        j["cond_ii"] = rep.cond_nonneg_near_regular;
        j["cond_iii"] = rep.cond_monotone;
        notes = rep.witnesses;
        pass = rep.pass;
    } else {
        fail(errc::parse_error, "--class must be king, gm or k");
    }
    j["pass"] = pass;
    j["notes"] = notes;
    if (json_arg != "-") {
        out << "check " << cls << " on " << X.complex.name << ": " << (pass ? "pass" : "fail")
            << "\n";
        for (auto& n : notes) out << "  " << n << "\n";
    }
    emit_json(j, json_arg, out);
    return pass ? 0 : 1;
}

int cmd_invariance(const std::string& fine_path, const std::string& coarse_path,
                   const std::string& parg, bool tame, std::vector<std::string> rings_s,
                   const std::string& equiv_path, const std::string& fine_p_arg,
                   const std::string& json_arg, std::ostream& out) {
    Space fine = load_space(fine_path);
    Space coarse = load_space(coarse_path);
    RefinementPair pair = check_refinement(fine, coarse);
    Perversity p = load_perversity(parg, coarse);

    if (rings_s.empty()) rings_s = {"z"};
    std::vector<RingInfo> rings;
    for (auto& r : rings_s) rings.push_back(RingInfo::parse(r));
    std::vector<Variant> variants{Variant::intersection};
    if (tame) variants.push_back(Variant::tame);

    EquivalenceDeclaration eq;
    const EquivalenceDeclaration* eqp = nullptr;
    if (!equiv_path.empty()) {
        eq = parse_equivalence_json(read_file(equiv_path));
        eqp = &eq;
    }
    Perversity fine_p;
    const Perversity* overridep = nullptr;
    if (!fine_p_arg.empty()) {
        fine_p = load_perversity(fine_p_arg, fine);
        overridep = &fine_p;
    }

    InvarianceReport rep = invariance_report(pair, p, rings, variants, eqp, overridep);

    ordered_json j;
    j["fine"] = rep.fine_name;
    j["coarse"] = rep.coarse_name;
    auto hyp_json = [](const std::vector<HypothesisEntry>& hs) {
        ordered_json arr = ordered_json::array();
        for (const auto& h : hs) {
            ordered_json e;
            e["check"] = h.check;
            e["pass"] = h.pass;
            e["witnesses"] = h.witnesses;
            arr.push_back(std::move(e));
        }
        return arr;
    };
    j["hypotheses"] = hyp_json(rep.hypotheses);
    j["tame_hypotheses"] = hyp_json(rep.tame_hypotheses);
    j["results"] = ordered_json::array();
    for (const auto& r : rep.results) {
        ordered_json e;
        e["ring"] = r.ring.str();
        e["variant"] = variant_name(r.variant);
        e["verdict"] = r.verdict;
        ordered_json degs = ordered_json::array();
        for (const auto& d : r.degrees) {
            ordered_json dj;
            dj["degree"] = d.degree;
            dj["fine"] = d.fine.str();
            dj["coarse"] = d.coarse.str();
            dj["match"] = d.match;
            degs.push_back(std::move(dj));
        }
        e["degrees"] = degs;
        j["results"].push_back(std::move(e));
    }
    j["overall"] = rep.overall;

    if (json_arg != "-") {
        out << "invariance " << rep.fine_name << " -> " << rep.coarse_name << "\n";
        for (const auto& h : rep.hypotheses)
            out << "  [" << (h.pass ? "ok" : "FAIL") << "] " << h.check << "\n";
        if (tame)
            for (const auto& h : rep.tame_hypotheses)
                out << "  [" << (h.pass ? "ok" : "FAIL") << "] " << h.check << "\n";
        for (const auto& r : rep.results) {
            out << "  " << r.ring.str() << " " << variant_name(r.variant) << ": " << r.verdict
                << "\n";
            for (const auto& d : r.degrees)
                if (!d.match)
                    out << "    H_" << d.degree << ": fine " << d.fine.str() << " vs coarse "
                        << d.coarse.str() << "\n";
        }
        out << "overall: " << rep.overall << "\n";
    }
    emit_json(j, json_arg, out);
    return rep.overall == "MISMATCH despite hypotheses" ? 1 : 0;
}

int cmd_diagnose(const std::string& path, const std::string& parg, bool funest, bool gs,
                 bool defects, const std::string& json_arg, std::ostream& out) {
    Space X = load_space(path);
    Perversity p = load_perversity(parg, X);
    ordered_json j;
    j["complex"] = X.complex.name;

    if (funest || defects) {
        ordered_json arr = ordered_json::array();
        for (int d = 0; d <= X.complex.top_dim(); ++d)
            for (const auto& s : X.complex.simplices(d)) {
                if (!is_admissible(X, s, p)) continue;
                FunestReport rep = funest_report(X, s, p);
                if (rep.defect == 0 && !defects) continue;
                if (rep.defect == 0) continue;
                ordered_json e;
                e["simplex"] = X.complex.simplex_name(s);
                e["funest_face"] = X.complex.simplex_name(*rep.funest_face);
                e["guilty_stratum"] = *rep.guilty_stratum;
                e["defect"] = rep.defect;
                arr.push_back(std::move(e));
            }
        j["funest"] = arr;
        if (json_arg != "-") {
            out << "admissible simplices with a funest face (" << arr.size() << "):\n";
            for (auto& e : arr)
                out << "  " << e["simplex"].get<std::string>() << "  face "
                    << e["funest_face"].get<std::string>() << "  stratum "
                    << e["guilty_stratum"].get<std::string>() << "  defect " << e["defect"]
                    << "\n";
        }
    }
    if (gs) {
        SimplexSubset xp = grandes_strates(X, p);
        ordered_json strata_in = ordered_json::array();
        for (int i = 0; i < X.strata.count(); ++i) {
            const Stratum& S = X.strata.strata[i];
            if (!S.regular && p.values[i] > S.codim - 2) strata_in.push_back(S.id);
        }
        j["grandes_strates"] = {{"strata", strata_in}, {"simplex_count", xp.total()}};
        if (json_arg != "-") {
            out << "X_p strata:";
            for (auto& s : strata_in) out << " " << s.get<std::string>();
            out << "  (" << xp.total() << " simplices in closure)\n";
        }
    }
    emit_json(j, json_arg, out);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"intersection homology of filtered simplicial complexes"};
    app.require_subcommand(1);

    std::string file, file2, parg, ring = "z", relative, json_arg, equiv, cls, fine_p, out_path;
    bool tame = false, reduced = false, funest = false, gs = false, defects = false;
    int m = 1;
    std::vector<std::string> rings;
    std::vector<std::string> inputs;

    auto* validate = app.add_subcommand("validate", "parse a complex and print its strata");
    validate->add_option("file", file)->required();
    validate->add_option("--json", json_arg);

    auto* homology = app.add_subcommand("homology", "homology of a perverse complex");
    homology->add_option("file", file)->required();
    homology->add_option("-p,--perversity", parg);
    homology->add_option("--ring", ring);
    homology->add_flag("--tame", tame);
    homology->add_option("--relative", relative);
    homology->add_flag("--reduced", reduced);
    homology->add_option("--json", json_arg);

    auto* construct = app.add_subcommand("construct", "derive a new complex");
    construct->add_option("kind", cls)->required();
    construct->add_option("inputs", inputs)->expected(1, 2);
    construct->add_option("--m", m);
    construct->add_option("-o,--output", out_path);

    auto* check = app.add_subcommand("check", "perversity classification checks");
    check->add_option("file", file)->required();
    check->add_option("-p,--perversity", parg);
    check->add_option("--class", cls)->required();
    check->add_option("--equiv", equiv);
    check->add_option("--json", json_arg);

    auto* invariance = app.add_subcommand("invariance", "refinement invariance comparison");
    invariance->add_option("fine", file)->required();
    invariance->add_option("coarse", file2)->required();
    invariance->add_option("-p,--perversity", parg);
    invariance->add_flag("--tame", tame);
    invariance->add_option("--ring", rings);
    invariance->add_option("--equiv", equiv);
    invariance->add_option("--fine-perversity", fine_p);
    invariance->add_option("--json", json_arg);

    auto* diagnose = app.add_subcommand("diagnose", "funest faces, defects and p-large strata");
    diagnose->add_option("file", file)->required();
    diagnose->add_option("-p,--perversity", parg);
    diagnose->add_flag("--funest", funest);
    diagnose->add_flag("--grandes-strates", gs);
    diagnose->add_flag("--defects", defects);
    diagnose->add_option("--json", json_arg);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "{\"error\":\"ParseError\",\"message\":" << ordered_json(e.what()).dump() << "}\n";
        return 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(file, json_arg, out);
        if (homology->parsed())
            return cmd_homology(file, parg, ring, tame, relative, reduced, json_arg, out);
        if (construct->parsed()) return cmd_construct(cls, inputs, m, out_path, out);
        if (check->parsed()) return cmd_check(file, parg, cls, equiv, json_arg, out);
        if (invariance->parsed())
            return cmd_invariance(file, file2, parg, tame, rings, equiv, fine_p, json_arg, out);
        if (diagnose->parsed())
            return cmd_diagnose(file, parg, funest, gs, defects, json_arg, out);
    } catch (const error& e) {
        ordered_json ej;
        ej["error"] = errc_name(e.code());
        ej["message"] = e.what();
        err << ej.dump() << "\n";
        return errc_exit_code(e.code());
    } catch (const std::exception& e) {
        ordered_json ej;
        ej["error"] = "InternalError";
        ej["message"] = e.what();
        err << ej.dump() << "\n";
        return 5;
    }
    return 2;
}

}  // namespace ih
