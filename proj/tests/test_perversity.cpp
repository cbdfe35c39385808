#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ihcalc/constructors.hpp"
#include "ihcalc/invariance.hpp"
#include "test_util.hpp"

using namespace ih;
using ihtest::load;

TEST_CASE("from_classical distributes values by codimension") {
    Space susp = load("susp-torus");
    ClassicalPerversitySpec spec;
    spec.by_codim = {{2, 0}, {3, 1}};
    Perversity p = from_classical(spec, susp);
    // both apex strata have codimension 3
    CHECK(p.value_of(susp.strata, "S0.0") == 1);
    CHECK(p.value_of(susp.strata, "S0.1") == 1);
    CHECK(p.value_of(susp.strata, "S3.0") == 0);

    Space sphere = load("pointed-sphere");
    ClassicalPerversitySpec two;
    two.by_codim = {{2, 0}};
    CHECK(from_classical(two, sphere).value_of(sphere.strata, "S0.0") == 0);

    ClassicalPerversitySpec three;
    three.by_codim = {{3, 1}};
    CHECK_THROWS_AS(from_classical(three, sphere), error);
    try {
        from_classical(three, sphere);
    } catch (const error& e) {
        CHECK(e.code() == errc::missing_codim);
    }
}

TEST_CASE("top, zero and dual perversities") {
    Space sphere = load("pointed-sphere");
    Perversity t = top_perversity(sphere);
    CHECK(t.value_of(sphere.strata, "S0.0") == 0);  // codim 2 - 2
    Perversity dt = dual(t, sphere);
    CHECK(dt.value_of(sphere.strata, "S0.0") == 0);

    Space susp = load("susp-torus");
    CHECK(top_perversity(susp).value_of(susp.strata, "S0.0") == 1);
    Perversity p3 = make_perversity(susp, {{"S0.0", 3}, {"S0.1", 3}});
    CHECK(dual(p3, susp).value_of(susp.strata, "S0.0") == -2);

    Space circle = load("circle3");
    Perversity tc = top_perversity(circle);
    for (int v : tc.values) CHECK(v == 0);
}

TEST_CASE("dual is an involution") {
    Space susp = load("susp-torus");
    for (int a = -3; a <= 4; ++a)
        for (int b : {-1, 0, 2}) {
            Perversity p = make_perversity(susp, {{"S0.0", a}, {"S0.1", b}});
            Perversity dd = dual(dual(p, susp), susp);
            CHECK(dd.values == p.values);
        }
}

TEST_CASE("classification: classical, King, GM") {
    Space susp = load("susp-torus");

    PerversityClass t = classify(top_perversity(susp), susp);
    CHECK(t.is_classical);
    CHECK(t.is_king);
    CHECK(t.is_gm);

    Perversity uneven = make_perversity(susp, {{"S0.0", 0}, {"S0.1", 1}});
    PerversityClass u = classify(uneven, susp);
    CHECK_FALSE(u.is_classical);
    CHECK_FALSE(u.has_classical_spec);

    ClassicalPerversitySpec jump;
    jump.by_codim = {{2, 0}, {3, 2}};
    PerversityClass j = classify(from_classical(jump, susp), susp);
    CHECK(j.is_classical);
    CHECK_FALSE(j.is_king);
    CHECK_FALSE(j.is_gm);

    // top perversity is GM whenever all singular codimensions are >= 2 ...
    for (const char* name : {"pointed-sphere", "cone-torus", "susp-torus", "circle3"}) {
        Space X = load(name);
        CHECK(classify(top_perversity(X), X).is_gm);
    }
    // ... and not GM in the presence of a codimension-1 stratum (t(1) = -1)
    Space pc = load("pointed-circle");
    PerversityClass c = classify(top_perversity(pc), pc);
    CHECK(c.is_king);
    CHECK_FALSE(c.is_gm);
}

TEST_CASE("pullback along stratified maps") {
    Space pointed = load("pointed-sphere");
    Space trivial = load("trivial-sphere");
    StratifiedMapDescriptor f = identity_map(pointed, trivial);
    REQUIRE(check_stratified_map(f).valid);
    Perversity q = zero_perversity(trivial);
    Perversity pb = pullback(f, q);
    CHECK(pb.value_of(pointed.strata, "S0.0") == 0);

    // inclusion of a cone slice: the apex value transports
    RawComplex slice;
    slice.name = "slice";
    slice.formal_dim = 2;
    slice.vertices = {{"w", 0}, {"a", 2}, {"b", 2}};
    slice.simplices = {{"w", "a", "b"}};
    Space S = Space::analyze(build_complex(slice));
    Space cone = load("cone-circle");
    StratifiedMapDescriptor inc = identity_map(S, cone);
    REQUIRE(check_stratified_map(inc).valid);
    for (int k : {-1, 0, 3}) {
        Perversity qk = make_perversity(cone, {{"S0.0", k}});
        CHECK(pullback(inc, qk).value_of(S.strata, "S0.0") == k);
    }
}

TEST_CASE("pushforward along refinements") {
    SUBCASE("a singular stratum absorbed by the regular one is forgotten") {
        Space pointed = load("pointed-sphere");
        Space trivial = load("trivial-sphere");
        RefinementPair pair = check_refinement(pointed, trivial);
        Perversity p = make_perversity(pointed, {{"S0.0", 5}});
        Perversity push = pushforward(pair, p);
        for (int v : push.values) CHECK(v == 0);
    }
    SUBCASE("apex values are copied, the extra stratum is not a source") {
        Space fine = load("susp-torus-refined");
        Space coarse = load("susp-torus");
        RefinementPair pair = check_refinement(fine, coarse);
        // fine strata: two apexes, the arc around t0 (codim 2), the regular part
        REQUIRE(fine.strata.count() == 4);
        Perversity p = make_perversity(fine, {{"S0.0", 2}, {"S0.1", 1}, {"S1.0", 0}});
        Perversity push = pushforward(pair, p);
        CHECK(push.value_of(coarse.strata, "S0.0") == 2);
        CHECK(push.value_of(coarse.strata, "S0.1") == 1);
        CHECK(push.value_of(coarse.strata, "S3.0") == 0);
    }
    SUBCASE("pushforward of a pullback is the identity") {
        Space fine = load("susp-torus-refined");
        Space coarse = load("susp-torus");
        RefinementPair pair = check_refinement(fine, coarse);
        StratifiedMapDescriptor nu = identity_map(fine, coarse);
        REQUIRE(check_stratified_map(nu).valid);
        for (int a : {-2, 0, 3})
            for (int b : {-1, 1}) {
                Perversity q = make_perversity(coarse, {{"S0.0", a}, {"S0.1", b}});
                Perversity round = pushforward(pair, pullback(nu, q));
                CHECK(round.values == q.values);
            }
    }
    SUBCASE("classical perversities push forward to themselves") {
        Space fine = load("susp-torus-refined");
        Space coarse = load("susp-torus");
        RefinementPair pair = check_refinement(fine, coarse);
        ClassicalPerversitySpec spec;
        spec.by_codim = {{2, 0}, {3, 1}};
        Perversity p_fine = from_classical(spec, fine);
        Perversity p_coarse = from_classical(spec, coarse);
        Perversity push = pushforward(pair, p_fine);
        CHECK(push.values == p_coarse.values);
    }
    SUBCASE("conflicting source values are rejected") {
        // A path a-b-c at level 1 with its midpoint b in level 0 splits into
        // two level-1 arcs; coarsening b to level 1 merges them into one
        // stratum with two singular sources. A disjoint triangle at level 2
        // keeps the top level inhabited.
        auto make = [](int b_level) {
            RawComplex raw;
            raw.name = "path";
            raw.formal_dim = 2;
            raw.vertices = {{"a", 1}, {"b", b_level}, {"c", 1},
                            {"x", 2}, {"y", 2}, {"z", 2}};
            raw.simplices = {{"a", "b"}, {"b", "c"}, {"x", "y", "z"}};
            return Space::analyze(build_complex(raw));
        };
        Space fine = make(0), coarse = make(1);
        REQUIRE(fine.strata.count() == 4);   // {b}, two arcs, triangle
        REQUIRE(coarse.strata.count() == 2); // merged arc, triangle
        RefinementPair pair = check_refinement(fine, coarse);
        Perversity agree = make_perversity(fine, {{"S0.0", 0}, {"S1.0", 2}, {"S1.1", 2}});
        CHECK(pushforward(pair, agree).value_of(coarse.strata, "S1.0") == 2);
        Perversity clash = make_perversity(fine, {{"S0.0", 0}, {"S1.0", 1}, {"S1.1", 2}});
        try {
            pushforward(pair, clash);
            FAIL("expected SourceValueConflict");
        } catch (const error& e) {
            CHECK(e.code() == errc::source_value_conflict);
        }
        // condition (i) of the K-perversity check sees the same conflict
        KPerversityReport k = check_K_perversity(fine, clash, EquivalenceDeclaration{}, &pair);
        CHECK_FALSE(k.cond_equal_on_sources);
    }
    SUBCASE("a sourceless coarse stratum blocks the pushforward") {
        // fine: marked point at level 0 (codim 2); coarse: same point at
        // level 1 (codim 1). No fine stratum has level 1, so the coarse
        // point stratum has no source.
        RawComplex raw = parse_complex_json(read_file(ihtest::data_path("pointed-sphere.json")));
        Space fine = Space::analyze(build_complex(raw));
        raw.vertices[0].second = 1;
        raw.name = "octa-p1";
        Space coarse = Space::analyze(build_complex(raw));
        RefinementPair pair = check_refinement(fine, coarse);
        Perversity p = make_perversity(fine, {{"S0.0", 1}});
        try {
            pushforward(pair, p);
            FAIL("expected NotARefinement for the sourceless stratum");
        } catch (const error& e) {
            CHECK(e.code() == errc::not_a_refinement);
        }
    }
}

TEST_CASE("K-perversity checks") {
    Space sphere = load("pointed-sphere");
    EquivalenceDeclaration ptreg;
    ptreg.pairs = {{"S0.0", "S2.0"}};

    SUBCASE("nonnegative value near a regular stratum passes") {
        Perversity p = make_perversity(sphere, {{"S0.0", 1}});
        KPerversityReport rep = check_K_perversity(sphere, p, ptreg);
        CHECK(rep.pass);
    }
    SUBCASE("negative value on a stratum equivalent to a regular one fails (ii)") {
        Perversity p = make_perversity(sphere, {{"S0.0", -1}});
        KPerversityReport rep = check_K_perversity(sphere, p, ptreg);
        CHECK_FALSE(rep.pass);
        CHECK_FALSE(rep.cond_nonneg_near_regular);
        CHECK(rep.cond_equal_on_sources);
    }
    SUBCASE("King classical perversities with p(1) >= 0 always pass") {
        for (const char* name : {"pointed-sphere", "susp-torus", "cone-torus"}) {
            Space X = load(name);
            ClassicalPerversitySpec spec;
            spec.by_codim = {{1, 0}, {2, 1}, {3, 1}};  // King, p(1) = 0
            Perversity p = from_classical(spec, X);
            // arbitrary declarations, including everything equivalent
            EquivalenceDeclaration all;
            for (int i = 1; i < X.strata.count(); ++i)
                all.pairs.push_back({X.strata.strata[0].id, X.strata.strata[i].id});
            CHECK(check_K_perversity(X, p, EquivalenceDeclaration{}).pass);
            CHECK(check_K_perversity(X, p, all).pass);
        }
    }
    SUBCASE("unknown stratum ids are rejected") {
        EquivalenceDeclaration bad;
        bad.pairs = {{"S0.0", "S9.9"}};
        Perversity p = make_perversity(sphere, {{"S0.0", 0}});
        try {
            check_K_perversity(sphere, p, bad);
            FAIL("expected UnknownStratumInEquiv");
        } catch (const error& e) {
            CHECK(e.code() == errc::unknown_stratum_in_equiv);
        }
    }
}
