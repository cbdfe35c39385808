#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ihcalc/constructors.hpp"
#include "ihcalc/presentation.hpp"
#include "test_util.hpp"

using namespace ih;
using ihtest::load;
using ihtest::z_groups_are;
using ihtest::ZG;

namespace {

Space point_space() {
    RawComplex raw;
    raw.name = "pt";
    raw.formal_dim = 0;
    raw.vertices = {{"p", 0}};
    raw.simplices = {{"p"}};
    return Space::analyze(build_complex(raw));
}

std::vector<HomologyGroup> hz(const Space& X, const Perversity& p, bool tame = false) {
    HomologyRequest req;
    req.ring = {RingInfo::Z, 0};
    req.tame = tame;
    return compute_homology(X, &p, req);
}

}  // namespace

TEST_CASE("cone construction") {
    Space circle = load("circle3");
    FilteredComplex C = cone(circle.complex);
    CHECK(C.vertex_count() == 4);
    CHECK(C.formal_dim == 2);
    Space CS = Space::analyze(C);
    REQUIRE(CS.strata.count() == 2);
    CHECK(CS.strata.strata[0].codim == 2);
    CHECK_FALSE(CS.strata.strata[0].regular);

    // matches the shipped cone-circle file structurally
    Space shipped = load("cone-circle");
    CHECK(C.count(0) == shipped.complex.count(0));
    CHECK(C.count(1) == shipped.complex.count(1));
    CHECK(C.count(2) == shipped.complex.count(2));

    FilteredComplex CT = cone(load("torus7").complex);
    Space CTS = Space::analyze(CT);
    CHECK(CTS.strata.strata[0].codim == 3);

    FilteredComplex CP = cone(point_space().complex);
    CHECK(CP.formal_dim == 1);
    CHECK(CP.count(0) == 2);
    CHECK(CP.count(1) == 1);
    CHECK(CP.level_of_vertex(*CP.vertex_index("w")) == 0);
}

TEST_CASE("cone avoids apex name collisions") {
    RawComplex raw;
    raw.name = "has-w";
    raw.formal_dim = 1;
    raw.vertices = {{"w", 1}, {"x", 1}};
    raw.simplices = {{"w", "x"}};
    FilteredComplex C = cone(build_complex(raw));
    CHECK(C.vertex_count() == 3);
    CHECK(C.vertex_index("w2").has_value());
}

TEST_CASE("suspension construction") {
    FilteredComplex S = suspension(load("circle3").complex);
    Space SS = Space::analyze(S);
    REQUIRE(SS.strata.count() == 3);
    CHECK(SS.strata.strata[0].codim == 2);
    CHECK(SS.strata.strata[1].codim == 2);
    // no simplex contains both apexes
    VertexIdx wp = *S.vertex_index("w+");
    VertexIdx wm = *S.vertex_index("w-");
    for (int d = 0; d <= S.top_dim(); ++d)
        for (const auto& s : S.simplices(d)) {
            bool has_p = std::binary_search(s.begin(), s.end(), wp);
            bool has_m = std::binary_search(s.begin(), s.end(), wm);
            bool both = has_p && has_m;
            CHECK_FALSE(both);
        }
    // it is a 2-sphere
    auto H = homology(ordinary_presentation(SS, ZOps{}));
    CHECK(z_groups_are(H, {{1, {}}, {0, {}}, {1, {}}}));

    FilteredComplex ST = suspension(load("torus7").complex);
    CHECK(ST.formal_dim == 3);
    Space shipped = load("susp-torus");
    CHECK(ST.count(3) == shipped.complex.count(3));
}

TEST_CASE("interval products") {
    FilteredComplex edge = product_interval(point_space().complex, 1);
    CHECK(edge.count(0) == 2);
    CHECK(edge.count(1) == 1);
    CHECK(edge.formal_dim == 1);
    CHECK(edge.level_of(1, 0) == 1);

    FilteredComplex annulus = product_interval(load("circle3").complex, 1);
    CHECK(annulus.count(0) == 6);
    Space AS = Space::analyze(annulus);
    CHECK(AS.strata.count() == 1);  // regular
    auto H = homology(ordinary_presentation(AS, ZOps{}));
    CHECK(z_groups_are(H, {{1, {}}, {1, {}}, {0, {}}}));

    FilteredComplex pc = product_interval(load("pointed-circle").complex, 1);
    Space PS = Space::analyze(pc);
    REQUIRE(PS.strata.count() == 2);
    CHECK(PS.strata.strata[0].codim == 1);  // {pt} x I keeps codimension 1
    CHECK_THROWS_AS(product_interval(load("circle3").complex, 0), error);
}

TEST_CASE("circle products") {
    FilteredComplex tri = product_circle(point_space().complex, 3);
    CHECK(tri.count(0) == 3);
    CHECK(tri.count(1) == 3);
    auto Htri = homology(ordinary_presentation(Space::analyze(tri), ZOps{}));
    CHECK(z_groups_are(Htri, {{1, {}}, {1, {}}}));

    FilteredComplex torus = product_circle(load("circle3").complex, 3);
    CHECK(torus.count(0) == 9);
    auto H = homology(ordinary_presentation(Space::analyze(torus), ZOps{}));
    CHECK(z_groups_are(H, {{1, {}}, {2, {}}, {1, {}}}));

    FilteredComplex s1xs2 = product_circle(load("pointed-sphere").complex, 3);
    Space S = Space::analyze(s1xs2);
    REQUIRE(S.strata.count() == 2);
    CHECK(S.strata.strata[0].codim == 2);   // the circle stratum {pt} x S1
    CHECK(S.strata.strata[0].level == 1);
    CHECK_THROWS_AS(product_circle(load("circle3").complex, 2), error);
}

TEST_CASE("barycentric subdivision") {
    SUBCASE("an edge becomes a path of two edges") {
        FilteredComplex sd = barycentric_subdivide(product_interval(point_space().complex, 1));
        CHECK(sd.count(0) == 3);
        CHECK(sd.count(1) == 2);
    }
    SUBCASE("strata counts and levels survive, K_i Euler characteristics agree") {
        for (const char* name : {"pointed-sphere", "susp-torus-refined", "pointed-circle"}) {
            Space X = load(name);
            Space S = Space::analyze(barycentric_subdivide(X.complex));
            REQUIRE(S.strata.count() == X.strata.count());
            for (int i = 0; i < S.strata.count(); ++i) {
                CHECK(S.strata.strata[i].level == X.strata.strata[i].level);
                CHECK(S.strata.strata[i].regular == X.strata.strata[i].regular);
            }
            for (int lvl = 0; lvl <= X.complex.formal_dim; ++lvl) {
                auto chi = [lvl](const FilteredComplex& K) {
                    long c = 0;
                    for (int d = 0; d <= K.top_dim(); ++d)
                        for (int i = 0; i < K.count(d); ++i)
                            if (K.level_of(d, i) <= lvl) c += (d % 2 == 0) ? 1 : -1;
                    return c;
                };
                CHECK(chi(X.complex) == chi(S.complex));
            }
        }
    }
    SUBCASE("subdivision invariance of intersection and tame homology") {
        Space X = load("pointed-sphere");
        Space S = Space::analyze(barycentric_subdivide(X.complex));
        for (int v : {-1, 0, 1, 2}) {
            Perversity p = make_perversity(X, {{"S0.0", v}});
            Perversity psd = subdivision_perversity(S, X, p);
            CHECK(groups_equal(hz(X, p), hz(S, psd)));
            CHECK(groups_equal(hz(X, p, true), hz(S, psd, true)));
        }
    }
}

TEST_CASE("disjoint unions") {
    Space c = load("circle3");
    Space pc = load("pointed-circle");
    Space two = Space::analyze(disjoint_union(c.complex, c.complex));
    CHECK(two.strata.count() == 2);
    Space three = Space::analyze(disjoint_union(c.complex, pc.complex));
    CHECK(three.strata.count() == 3);
    CHECK_THROWS_AS(disjoint_union(c.complex, load("pointed-sphere").complex), error);
    try {
        disjoint_union(c.complex, load("pointed-sphere").complex);
    } catch (const error& e) {
        CHECK(e.code() == errc::dim_mismatch);
    }
}

TEST_CASE("cone formula on the circle (quick sweep)") {
    Space base = load("circle3");
    Perversity pb = zero_perversity(base);
    auto HX = hz(base, pb);
    Space C = Space::analyze(cone(base.complex));
    const int n = base.complex.formal_dim;
    for (int w = -2; w <= n + 2; ++w) {
        Perversity pc = cone_perversity(C, base, pb, w);
        auto HC = hz(C, pc);
        for (int k = 0; k <= n + 1; ++k) {
            HomologyGroup got = k < (int)HC.size() ? HC[k] : HomologyGroup{};
            if (k < n - w) {
                HomologyGroup want = k < (int)HX.size() ? HX[k] : HomologyGroup{};
                CHECK(got == want);
            } else {
                CHECK(got.torsion.empty());
                CHECK(got.free_rank == (k == 0 ? 1 : 0));
            }
        }
    }
}

TEST_CASE("cone formula carries torsion (projective plane base)") {
    RawComplex raw;
    raw.name = "rp2";
    raw.formal_dim = 2;
    for (int i = 1; i <= 6; ++i) raw.vertices.push_back({"v" + std::to_string(i), 2});
    int tris[10][3] = {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                       {2, 3, 5}, {3, 5, 6}, {3, 4, 6}, {2, 4, 6}, {2, 4, 5}};
    for (auto& t : tris)
        raw.simplices.push_back({"v" + std::to_string(t[0]), "v" + std::to_string(t[1]),
                                 "v" + std::to_string(t[2])});
    Space base = Space::analyze(build_complex(raw));
    Perversity pb = zero_perversity(base);
    auto HX = hz(base, pb);
    REQUIRE(HX[1].torsion.size() == 1);
    REQUIRE(HX[1].torsion[0] == 2);

    Space C = Space::analyze(cone(base.complex));
    const int n = base.complex.formal_dim;
    for (int w = -2; w <= n + 2; ++w) {
        Perversity pc = cone_perversity(C, base, pb, w);
        auto HC = hz(C, pc);
        for (int k = 0; k <= n + 1; ++k) {
            HomologyGroup got = k < (int)HC.size() ? HC[k] : HomologyGroup{};
            if (k < n - w) {
                HomologyGroup want = k < (int)HX.size() ? HX[k] : HomologyGroup{};
                CAPTURE(w);
                CAPTURE(k);
                CHECK(got == want);
            } else {
                CHECK(got.torsion.empty());
                CHECK(got.free_rank == (k == 0 ? 1 : 0));
            }
        }
    }
}

TEST_CASE("interval invariance and circle splitting (quick)") {
    Space X = load("cone-circle");
    Perversity p = make_perversity(X, {{"S0.0", 1}});
    auto HX = hz(X, p);

    Space XI = Space::analyze(product_interval(X.complex, 1));
    Perversity pI = product_perversity(XI, X, p);
    CHECK(groups_equal(hz(XI, pI), HX));

    Space XS = Space::analyze(product_circle(X.complex, 3));
    Perversity pS = product_perversity(XS, X, p);
    auto HS = hz(XS, pS);
    for (size_t k = 0; k < HS.size(); ++k) {
        int want = (k < HX.size() ? HX[k].free_rank : 0) +
                   (k >= 1 && k - 1 < HX.size() ? HX[k - 1].free_rank : 0);
        CHECK(HS[k].free_rank == want);
    }
}

TEST_CASE("perversity transports stay consistent with stratum structure") {
    Space base = load("pointed-circle");
    Perversity p = make_perversity(base, {{"S0.0", 1}});

    Space C = Space::analyze(cone(base.complex));
    Perversity pc = cone_perversity(C, base, p, 7);
    // levels in the cone: apex 0, old point 1, circle part 2
    CHECK(pc.value_of(C.strata, "S0.0") == 7);
    CHECK(pc.value_of(C.strata, "S1.0") == 1);

    Space P = Space::analyze(product_interval(base.complex, 2));
    Perversity pp = product_perversity(P, base, p);
    CHECK(pp.value_of(P.strata, "S1.0") == 1);

    Space S = Space::analyze(suspension(base.complex));
    Perversity ps = suspension_perversity(S, base, p, 3, 4);
    CHECK(ps.value_of(S.strata, "S0.0") == 3);
    CHECK(ps.value_of(S.strata, "S0.1") == 4);
    CHECK(ps.value_of(S.strata, "S1.0") == 1);
}
