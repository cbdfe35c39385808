#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ihcalc/constructors.hpp"
#include "ihcalc/les.hpp"
#include "test_util.hpp"

using namespace ih;
using ihtest::load;
using ihtest::z_groups_are;
using ihtest::ZG;

namespace {

Space rp2() {
    RawComplex raw;
    raw.name = "rp2";
    raw.formal_dim = 2;
    for (int i = 1; i <= 6; ++i) raw.vertices.push_back({"v" + std::to_string(i), 2});
    int tris[10][3] = {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                       {2, 3, 5}, {3, 5, 6}, {3, 4, 6}, {2, 4, 6}, {2, 4, 5}};
    for (auto& t : tris)
        raw.simplices.push_back({"v" + std::to_string(t[0]), "v" + std::to_string(t[1]),
                                 "v" + std::to_string(t[2])});
    return Space::analyze(build_complex(raw));
}

}  // namespace

TEST_CASE("ordinary homology of the builtin surfaces over Z") {
    auto h = [](const Space& X) { return homology(ordinary_presentation(X, ZOps{})); };
    CHECK(z_groups_are(h(load("circle3")), {{1, {}}, {1, {}}}));
    CHECK(z_groups_are(h(load("trivial-sphere")), {{1, {}}, {0, {}}, {1, {}}}));
    CHECK(z_groups_are(h(load("torus7")), {{1, {}}, {2, {}}, {1, {}}}));
    CHECK(z_groups_are(h(load("pinched-torus")), {{1, {}}, {1, {}}, {1, {}}}));
    CHECK(z_groups_are(h(rp2()), {{1, {}}, {0, {2}}, {0, {}}}));
}

TEST_CASE("cone formula instance: cone on the torus with zero apex perversity") {
    Space X = load("cone-torus");
    Perversity p = make_perversity(X, {{"S0.0", 0}});
    auto H = homology(build_intersection_complex(X, p, ZOps{}));
    CHECK(z_groups_are(H, {{1, {}}, {2, {}}, {0, {}}, {0, {}}}));
}

TEST_CASE("field homology matches the universal-coefficient prediction on ordinary complexes") {
    for (const char* which : {"torus7", "pinched-torus", "rp2", "trivial-sphere"}) {
        Space X = std::string(which) == "rp2" ? rp2() : load(which);
        auto hz = homology(ordinary_presentation(X, ZOps{}));
        for (uint64_t prime : {2ull, 3ull, 5ull}) {
            auto hp = homology(ordinary_presentation(X, FpOps{prime}));
            for (size_t k = 0; k < hp.size(); ++k) {
                int expect = hz[k].free_rank;
                for (const auto& t : hz[k].torsion)
                    if (t % prime == 0) expect += 1;
                if (k > 0)
                    for (const auto& t : hz[k - 1].torsion)
                        if (t % prime == 0) expect += 1;
                CHECK(hp[k].free_rank == expect);
            }
        }
        auto hq = homology(ordinary_presentation(X, QOps{}));
        for (size_t k = 0; k < hq.size(); ++k) CHECK(hq[k].free_rank == hz[k].free_rank);
    }
}

TEST_CASE("reduced homology convention") {
    Space X = load("circle3");
    auto H = homology(ordinary_presentation(X, ZOps{}), /*reduced=*/true);
    CHECK(H[0].free_rank == 0);
    CHECK(H[1].free_rank == 1);

    // tame cone of large perversity has h_0 = 0 already unreduced
    Space C = load("cone-circle");
    Perversity p = make_perversity(C, {{"S0.0", 2}});
    auto T = homology(build_tame_complex(C, p, ZOps{}), /*reduced=*/false);
    CHECK(T[0].free_rank == 0);
}

TEST_CASE("homology rejects inconsistent complexes") {
    Presentation<ZOps> P;
    P.ring = {RingInfo::Z, 0};
    P.degs.resize(3);
    for (int k = 0; k < 3; ++k) {
        P.degs[k].basis = {SparseVec<Int>{{0, Int(1)}}};
        P.degs[k].pivots = {0};
        P.degs[k].d.rows = k > 0 ? 1 : 0;
        P.degs[k].d.cols.resize(1);
    }
    P.degs[1].d.cols[0][0] = 1;  // d1 = (1)
    P.degs[2].d.cols[0][0] = 1;  // d2 = (1): d1*d2 != 0
    CHECK_THROWS_AS(homology(P), error);
}

TEST_CASE("check_exactness on explicit sequences") {
    QOps q;
    SUBCASE("identity is exact") {
        SparseMat<Rational> id;
        id.rows = 2;
        id.cols.resize(2);
        id.cols[0][0] = 1;
        id.cols[1][1] = 1;
        SparseMat<Rational> from0, to0;
        from0.rows = 2;  // 0 -> V
        to0.rows = 0;    // V -> 0
        to0.cols.resize(2);
        auto rep = check_exactness(q, {0, 2, 2, 0}, {from0, id, to0});
        CHECK(rep.exact);
    }
    SUBCASE("zero map between nonzero spaces is not exact") {
        SparseMat<Rational> zero;
        zero.rows = 2;
        zero.cols.resize(2);
        SparseMat<Rational> from0, to0;
        from0.rows = 2;
        to0.rows = 0;
        to0.cols.resize(2);
        auto rep = check_exactness(q, {0, 2, 2, 0}, {from0, zero, to0});
        CHECK_FALSE(rep.exact);
        // both interior slots fail
        int fails = 0;
        for (auto& s : rep.slots)
            if (!s.exact) ++fails;
        CHECK(fails == 2);
    }
    SUBCASE("shape mismatches are reported") {
        SparseMat<Rational> bad;
        bad.rows = 1;
        bad.cols.resize(2);
        CHECK_THROWS_AS(check_exactness(q, {0, 2, 2, 0}, {bad}), error);
        SparseMat<Rational> a, b, c;
        a.rows = 2;
        b.rows = 3;  // wrong target dim
        b.cols.resize(2);
        c.rows = 0;
        c.cols.resize(2);
        CHECK_THROWS_AS(check_exactness(q, {0, 2, 2, 0}, {a, b, c}), error);
    }
}

TEST_CASE("pair long exact sequence is exact over Q and F_2") {
    Space X = load("cone-circle");
    SimplexSubset base = full_subcomplex(X.complex, {*X.complex.vertex_index("a"),
                                                     *X.complex.vertex_index("b"),
                                                     *X.complex.vertex_index("c")});
    for (int apex : {-1, 0, 1, 2}) {
        Perversity p = make_perversity(X, {{"S0.0", apex}});
        for (bool tame : {false, true}) {
            {
                QOps q;
                auto les = pair_les(X, base, p, q, tame);
                CHECK(check_les(q, les).exact);
            }
            {
                FpOps f2(2);
                auto les = pair_les(X, base, p, f2, tame);
                CHECK(check_les(f2, les).exact);
            }
        }
    }
}

TEST_CASE("Mayer-Vietoris long exact sequence on the half-cone cover") {
    Space X = load("cone-circle");
    // two half-cones: closures of {w,a,b} and of {w,b,c} + {w,a,c}
    SimplexSubset K1 = close_under_faces(X.complex, {X.complex.simplex_from_names({"w", "a", "b"})});
    SimplexSubset K2 = close_under_faces(X.complex,
                                         {X.complex.simplex_from_names({"w", "b", "c"}),
                                          X.complex.simplex_from_names({"w", "a", "c"})});
    for (int apex : {-1, 0, 1, 2}) {
        Perversity p = make_perversity(X, {{"S0.0", apex}});
        for (bool tame : {false, true}) {
            QOps q;
            auto mv = mv_les_with_subdivision(X, K1, K2, p, q, tame, 2);
            // The snake sequence is exact whatever the cover does.
            CHECK(check_les(q, mv.les).exact);
            FpOps f2(2);
            auto mv2 = mv_les_with_subdivision(X, K1, K2, p, f2, tame, 2);
            CHECK(check_les(f2, mv2.les).exact);
            // The half-cone cover splits the apex star between the pieces.
            // For apex = 0 the chains that fill the base cycle need triangles
            // on both sides of the spokes, so the sum never reaches H(X) and
            // the comparison is a reported finding; for the other values the
            // interface chains are themselves (in)admissible uniformly and
            // the comparison holds.
            bool expected_iso = apex != 0;
            CHECK(mv.sum_iso == expected_iso);
            CHECK(mv2.sum_iso == expected_iso);
        }
    }
}

TEST_CASE("Mayer-Vietoris with a stratum-respecting cover needs no extra subdivision") {
    // Subdivide the cone once, then cover by the closed star of the apex and
    // the closure of its complement; the singular point's star lies in one
    // piece, which is what the open-cover theorem models.
    Space base = load("cone-circle");
    Space X = Space::analyze(barycentric_subdivide(base.complex));
    VertexIdx apex_b = *X.complex.vertex_index("(w)");
    std::vector<Simplex> star_gens, rest_gens;
    int D = X.complex.top_dim();
    for (const auto& s : X.complex.simplices(D)) {
        bool touches = std::binary_search(s.begin(), s.end(), apex_b);
        (touches ? star_gens : rest_gens).push_back(s);
    }
    SimplexSubset K1 = close_under_faces(X.complex, star_gens);
    SimplexSubset K2 = close_under_faces(X.complex, rest_gens);
    for (int apex : {-1, 0, 1, 2}) {
        Perversity pb = make_perversity(base, {{"S0.0", apex}});
        Perversity p = subdivision_perversity(X, base, pb);
        for (bool tame : {false, true}) {
            QOps q;
            auto mv = mv_les(X, K1, K2, p, q, tame);
            CHECK(mv.sum_iso);
            CHECK(check_les(q, mv.les).exact);
            FpOps f2(2);
            auto mv2 = mv_les(X, K1, K2, p, f2, tame);
            CHECK(mv2.sum_iso);
            CHECK(check_les(f2, mv2.les).exact);
        }
    }
}

TEST_CASE("relative cone formula against reduced homology of the base") {
    // For the pair (cone X, cone X minus apex): degrees k >= n+1-p(w) carry
    // the reduced homology of X shifted by one, lower degrees vanish. The
    // punctured cone deformation retracts onto the base, which here is the
    // full subcomplex on the non-apex vertices.
    for (const char* name : {"circle3", "torus7"}) {
        Space base = load(name);
        const int n = base.complex.formal_dim;
        Space C = Space::analyze(cone(base.complex));
        std::vector<VertexIdx> non_apex;
        for (int v = 0; v < C.complex.vertex_count(); ++v)
            if (C.complex.vertex_names()[v] != "w") non_apex.push_back(v);
        SimplexSubset U = full_subcomplex(C.complex, non_apex);
        for (int w = -1; w <= n + 1; ++w) {
            Perversity pC = cone_perversity(C, base, zero_perversity(base), w);
            HomologyRequest req;
            req.ring = {RingInfo::Z, 0};
            req.relative_to = &U;
            auto rel = compute_homology(C, &pC, req);
            HomologyRequest rreq;
            rreq.ring = {RingInfo::Z, 0};
            rreq.reduced = true;
            auto reduced_base = compute_homology(base, nullptr, rreq);
            for (int k = 0; k <= n + 1; ++k) {
                HomologyGroup want;
                want.ring = req.ring;
                if (k >= n + 1 - w && k >= 1) {
                    want = k - 1 < (int)reduced_base.size() ? reduced_base[k - 1]
                                                            : HomologyGroup{req.ring, 0, {}};
                }
                HomologyGroup got = k < (int)rel.size() ? rel[k] : HomologyGroup{req.ring, 0, {}};
                CAPTURE(name);
                CAPTURE(w);
                CAPTURE(k);
                CHECK(got == want);
            }
        }
    }
}

TEST_CASE("homology with representatives reduces classes consistently") {
    Space X = load("torus7");
    QOps q;
    auto P = ordinary_presentation(X, q);
    auto H = homology_with_reps(P);
    CHECK(H.dim(0) == 1);
    CHECK(H.dim(1) == 2);
    CHECK(H.dim(2) == 1);
    // a boundary reduces to zero coordinates
    const auto& d2 = P.degs[2].d;
    if (d2.ncols() > 0) {
        auto coords = H.class_coords(1, d2.cols[0]);
        CHECK(coords.empty());
    }
    // representatives reduce to unit coordinates
    for (int j = 0; j < H.dim(1); ++j) {
        auto coords = H.class_coords(1, H.degs[1].reps[j]);
        REQUIRE(coords.size() == 1);
        CHECK(coords.begin()->first == j);
    }
}
