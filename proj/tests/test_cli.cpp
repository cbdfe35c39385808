#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "ihcalc/cli.hpp"
#include "ihcalc/io.hpp"
#include "test_util.hpp"

using namespace ih;
using ihtest::data_path;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string tmp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("ihcalc_test_" + name)).string();
}

}  // namespace

TEST_CASE("validate prints the strata table") {
    CliResult r = run({"validate", data_path("pointed-sphere.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("S0.0") != std::string::npos);
    CHECK(r.out.find("S2.0") != std::string::npos);
}

TEST_CASE("validate exit codes") {
    SUBCASE("invariant violation gives 3") {
        std::string path = tmp_file("empty_top.json");
        write_file(path, R"({"name":"bad","formal_dim":2,
            "vertices":[{"id":"a","level":1},{"id":"b","level":1}],
            "simplices":[["a","b"]]})");
        CliResult r = run({"validate", path});
        CHECK(r.code == 3);
        CHECK(r.err.find("EmptyTopLevel") != std::string::npos);
    }
    SUBCASE("malformed JSON gives 2") {
        std::string path = tmp_file("malformed.json");
        write_file(path, "{ not json");
        CliResult r = run({"validate", path});
        CHECK(r.code == 2);
    }
    SUBCASE("missing file gives 2") {
        CliResult r = run({"validate", tmp_file("no_such_file.json")});
        CHECK(r.code == 2);
    }
}

TEST_CASE("homology command") {
    SUBCASE("cone over the torus with apex value 0") {
        CliResult r = run({"homology", data_path("cone-torus.json"), "-p", data_path("apex0.json"),
                           "--ring", "z", "--json", "-"});
        CHECK(r.code == 0);
        auto j = nlohmann::ordered_json::parse(r.out);
        CHECK(j["groups"]["0"]["free_rank"] == 1);
        CHECK(j["groups"]["1"]["free_rank"] == 2);
        CHECK(j["groups"]["2"]["free_rank"] == 0);
        CHECK(j["groups"]["3"]["free_rank"] == 0);
    }
    SUBCASE("tame cone with large perversity vanishes") {
        CliResult r = run({"homology", data_path("cone-circle.json"), "-p", data_path("apex2.json"),
                           "--tame", "--ring", "z", "--json", "-"});
        CHECK(r.code == 0);
        auto j = nlohmann::ordered_json::parse(r.out);
        for (auto& [k, g] : j["groups"].items()) CHECK(g["free_rank"] == 0);
    }
    SUBCASE("negative point perversity gives the punctured sphere") {
        CliResult r = run({"homology", data_path("pointed-sphere.json"), "-p",
                           data_path("pt_neg1.json"), "--ring", "z", "--json", "-"});
        CHECK(r.code == 0);
        auto j = nlohmann::ordered_json::parse(r.out);
        CHECK(j["groups"]["0"]["free_rank"] == 1);
        CHECK(j["groups"]["1"]["free_rank"] == 0);
        CHECK(j["groups"]["2"]["free_rank"] == 0);
    }
    SUBCASE("perversity for a different complex gives 4") {
        CliResult r = run({"homology", data_path("cone-torus.json"), "-p",
                           data_path("gm-middle.json"), "--ring", "z"});
        CHECK(r.code == 0);  // classical {2:0,3:1} resolves fine on cone-torus
        CliResult bad = run({"homology", data_path("circle3.json"), "-p",
                             data_path("pt_neg1.json")});
        CHECK(bad.code == 4);  // names a stratum the circle does not have
    }
    SUBCASE("relative homology against the singular set") {
        std::string sub = tmp_file("sigma.json");
        write_file(sub, R"({"vertices":["w"]})");
        CliResult r = run({"homology", data_path("cone-circle.json"), "-p", data_path("apex2.json"),
                           "--relative", sub, "--ring", "z", "--json", "-"});
        CHECK(r.code == 0);
    }
}

TEST_CASE("construct command") {
    SUBCASE("cone of the circle") {
        std::string out = tmp_file("cone3.json");
        CliResult r = run({"construct", "cone", data_path("circle3.json"), "-o", out});
        CHECK(r.code == 0);
        Space C = Space::analyze(build_complex(parse_complex_json(read_file(out))));
        CHECK(C.complex.formal_dim == 2);
        CHECK(C.complex.level_of_vertex(*C.complex.vertex_index("w")) == 0);
    }
    SUBCASE("subdivision preserves homology through files") {
        std::string out = tmp_file("sd_sphere.json");
        CliResult r = run({"construct", "sd", data_path("pointed-sphere.json"), "-o", out});
        CHECK(r.code == 0);
        CliResult h1 = run({"homology", data_path("pointed-sphere.json"), "--json", "-"});
        CliResult h2 = run({"homology", out, "--json", "-"});
        auto j1 = nlohmann::ordered_json::parse(h1.out);
        auto j2 = nlohmann::ordered_json::parse(h2.out);
        CHECK(j1["groups"] == j2["groups"]);
    }
    SUBCASE("circle product") {
        std::string out = tmp_file("s1xs2.json");
        CliResult r = run({"construct", "prod-s1", data_path("pointed-sphere.json"), "--m", "3",
                           "-o", out});
        CHECK(r.code == 0);
        CliResult v = run({"validate", out});
        CHECK(v.code == 0);
    }
    SUBCASE("union of mismatched dimensions gives 3") {
        CliResult r = run({"construct", "union", data_path("circle3.json"),
                           data_path("pointed-sphere.json"), "-o", tmp_file("u.json")});
        CHECK(r.code == 3);
    }
}

TEST_CASE("check command") {
    CliResult gm = run({"check", data_path("susp-torus.json"), "-p", data_path("gm-middle.json"),
                        "--class", "gm"});
    CHECK(gm.code == 0);
    CHECK(gm.out.find("pass") != std::string::npos);

    CliResult k = run({"check", data_path("pointed-sphere.json"), "-p", data_path("pt_neg1.json"),
                       "--class", "k", "--equiv", data_path("pt-reg.json"), "--json", "-"});
    CHECK(k.code == 1);
    auto kj = nlohmann::ordered_json::parse(k.out);
    CHECK(kj["cond_ii"] == false);

    CliResult king = run({"check", data_path("susp-torus.json"), "-p", data_path("jump2.json"),
                          "--class", "king"});
    CHECK(king.code == 1);
}

TEST_CASE("invariance command") {
    CliResult ok = run({"invariance", data_path("pointed-sphere.json"),
                        data_path("trivial-sphere.json"), "-p", "zero", "--ring", "z", "--json",
                        "-"});
    CHECK(ok.code == 0);
    auto j = nlohmann::ordered_json::parse(ok.out);
    CHECK(j["overall"] == "match");

    CliResult noclaim = run({"invariance", data_path("pointed-sphere.json"),
                             data_path("trivial-sphere.json"), "-p", "zero", "--fine-perversity",
                             data_path("pt_neg1.json"), "--json", "-"});
    CHECK(noclaim.code == 0);
    auto nj = nlohmann::ordered_json::parse(noclaim.out);
    CHECK(nj["overall"] == "no-claim");

    CliResult tame = run({"invariance", data_path("susp-torus-refined.json"),
                          data_path("susp-torus.json"), "-p", data_path("gm-middle.json"),
                          "--tame", "--ring", "z", "--ring", "f2", "--json", "-"});
    CHECK(tame.code == 0);
    auto tj = nlohmann::ordered_json::parse(tame.out);
    CHECK(tj["overall"] == "match");
}

TEST_CASE("diagnose command") {
    CliResult f = run({"diagnose", data_path("cone-circle.json"), "-p", data_path("apex1.json"),
                       "--funest", "--json", "-"});
    CHECK(f.code == 0);
    auto j = nlohmann::ordered_json::parse(f.out);
    REQUIRE(j["funest"].size() == 3);  // the three edges at the apex
    CHECK(j["funest"][0]["defect"] == 2);
    CHECK(j["funest"][0]["funest_face"] == "{w}");

    CliResult g = run({"diagnose", data_path("pointed-sphere.json"), "-p", data_path("apex1.json"),
                       "--grandes-strates", "--json", "-"});
    auto gj = nlohmann::ordered_json::parse(g.out);
    REQUIRE(gj["grandes_strates"]["strata"].size() == 1);
    CHECK(gj["grandes_strates"]["strata"][0] == "S0.0");

    CliResult t = run({"diagnose", data_path("pointed-sphere.json"), "-p", "top",
                       "--grandes-strates", "--json", "-"});
    auto tj = nlohmann::ordered_json::parse(t.out);
    CHECK(tj["grandes_strates"]["strata"].empty());
}

TEST_CASE("reports are byte-identical across runs") {
    for (int i = 0; i < 2; ++i) {
        CliResult a = run({"homology", data_path("susp-torus.json"), "-p",
                           data_path("gm-middle.json"), "--json", "-"});
        CliResult b = run({"homology", data_path("susp-torus.json"), "-p",
                           data_path("gm-middle.json"), "--json", "-"});
        CHECK(a.out == b.out);
        CliResult v1 = run({"validate", data_path("susp-torus-refined.json"), "--json", "-"});
        CliResult v2 = run({"validate", data_path("susp-torus-refined.json"), "--json", "-"});
        CHECK(v1.out == v2.out);
    }
}

TEST_CASE("every builtin complex round-trips through emit/parse") {
    for (const char* name : {"circle3", "pointed-circle", "pointed-sphere", "trivial-sphere",
                             "torus7", "pinched-torus", "cone-circle", "cone-torus", "susp-torus",
                             "susp-torus-refined"}) {
        FilteredComplex X =
            build_complex(parse_complex_json(read_file(data_path(std::string(name) + ".json"))));
        FilteredComplex Y = build_complex(parse_complex_json(emit_complex_json(X)));
        CHECK(X.name == Y.name);
        CHECK(X.formal_dim == Y.formal_dim);
        CHECK(X.vertex_names() == Y.vertex_names());
        CHECK(X.vertex_levels() == Y.vertex_levels());
        CHECK(X.vertex_order() == Y.vertex_order());
        REQUIRE(X.top_dim() == Y.top_dim());
        for (int d = 0; d <= X.top_dim(); ++d) CHECK(X.simplices(d) == Y.simplices(d));
        // emitted form is stable
        CHECK(emit_complex_json(X) == emit_complex_json(Y));
    }
}
