#include "doctest.h"

#include "fixtures.hpp"
#include "laxcat/descent.hpp"

using namespace laxcat;

TEST_CASE("slices and the induced monad") {
    auto x2 = fixtures::x2();
    int q = *x2->morphism_index("0<=1");
    descent_monad_data md = descent_monad(x2, q);

    CHECK(md.dom_slice.com.cat->object_count() == 1);
    CHECK(md.cod_slice.com.cat->object_count() == 2);
    CHECK(md.cod_slice.com.cat->morphism_count() == 3);

    // triangle identities of the postcompose/pullback adjunction
    cat_ptr se = md.dom_slice.com.cat, sb = md.cod_slice.com.cat;
    for (int i = 0; i < se->object_count(); ++i)
        CHECK(sb->compose(md.counit.at(md.sigma.ob(i)), md.sigma.mor(md.unit.at(i))) ==
              sb->identity(md.sigma.ob(i)));
    for (int j = 0; j < sb->object_count(); ++j)
        CHECK(se->compose(md.pullback_along.mor(md.counit.at(j)),
                          md.unit.at(md.pullback_along.ob(j))) ==
              se->identity(md.pullback_along.ob(j)));

    em_result em = em_category(md);
    CHECK(em.objects.size() == 1);
    CHECK(em.cat->morphism_count() == 1);
}

TEST_CASE("classification in the two-chain") {
    auto x2 = fixtures::x2();
    int q = *x2->morphism_index("0<=1");

    descent_report r = classify_descent(x2, q);
    CHECK(r.grade == descent_class::almost);
    CHECK(r.faithful);
    CHECK(!r.fully_faithful);
    CHECK(!r.equivalence);
    CHECK(r.detail == "0<=1 is almost descent (comparison faithful=yes, "
                      "fully faithful=no, equivalence=no)");

    CHECK(classify_descent(x2, x2->identity(0)).grade == descent_class::effective);
    CHECK(classify_descent(x2, x2->identity(1)).grade == descent_class::effective);
}

TEST_CASE("grades are cumulative and pullback-stable") {
    for (cat_ptr c : {fixtures::x2(), fixtures::x3(), fixtures::diamond()}) {
        x_structure xs(c);
        std::vector<descent_report> reports;
        for (int q = 0; q < c->morphism_count(); ++q)
            reports.push_back(classify_descent(c, q));
        for (int q = 0; q < c->morphism_count(); ++q) {
            const auto &r = reports[q];
            if (r.equivalence) CHECK(r.fully_faithful);
            if (r.fully_faithful) CHECK(r.faithful);
            // isos descend effectively; everything else in a thin skeletal
            // poset tops out below
            if (c->is_iso(q)) CHECK(r.grade == descent_class::effective);
            else CHECK(r.grade != descent_class::effective);
            // pulling back never lowers the grade
            for (int n = 0; n < c->morphism_count(); ++n) {
                if (c->cod(n) != c->cod(q)) continue;
                auto pb = xs.pullback(q, n);
                REQUIRE(pb.has_value());
                CHECK(static_cast<int>(reports[pb->p2].grade) >= static_cast<int>(r.grade));
            }
        }
    }
}

TEST_CASE("classification needs pullbacks") {
    auto pp = fixtures::parallel_pair_cat();
    int f = *pp->morphism_index("f");
    try {
        classify_descent(pp, f);
        FAIL("expected a missing pullback");
    } catch (const error &e) {
        CHECK(e.code() == errc::missing_pullbacks);
        CHECK(is_hypothesis_errc(e.code()));
    }
}

TEST_CASE("apex obstruction") {
    auto d = fixtures::diamond();
    auto m3 = fixtures::meetless_p3();
    functor v = fixtures::thin_functor("v", m3, d, {1, 2, 3});
    int f = *m3->morphism_index("p<=t"), g = *m3->morphism_index("q<=t");
    obstruction_report r = obstruction_check(v, f, g);
    CHECK(!r.ok);
    CHECK(r.witness == -1);
    CHECK(r.detail == "no object covers the pullback apex 0");

    obstruction_report ok = obstruction_check(v, f, f);
    CHECK(ok.ok);
    CHECK(m3->objects[ok.witness] == "p");

    functor flat = constant_functor("flat", fixtures::two_cat(), fixtures::one_cat(), 0);
    CHECK_THROWS_AS(obstruction_check(flat, 0, 0), error);
}

TEST_CASE("regular epis by kernel pair") {
    auto x2 = fixtures::x2();
    CHECK(regular_epi_check(x2, x2->identity(0)).ok);
    CHECK(regular_epi_check(x2, x2->identity(1)).ok);
    check_detail r = regular_epi_check(x2, *x2->morphism_index("0<=1"));
    CHECK(!r.ok);

    auto d = fixtures::diamond();
    CHECK(!regular_epi_check(d, *d->morphism_index("p<=1")).ok);
    CHECK(regular_epi_check(d, d->identity(3)).ok);
}

TEST_CASE("pullbacks against zero structures have zero fibres") {
    auto x2 = fixtures::x2();
    auto two = fixtures::two_cat();
    auto one = fixtures::one_cat();
    x_structure xs(x2);

    functor pick_s = constant_functor("ps", one, two, 0);
    lax_object zt = lax_left(two, xs);
    lax_morphism f = make_lax_morphism(
        pick_s,
        make_nat_trans("c", constant_functor("z", one, x2, 0),
                       compose_functor(zt.structure, pick_s), {x2->identity(0)}),
        zt.structure);

    check_detail r = verify_l_pullback_zero(f, identity_functor(two), xs);
    CHECK(r.ok);
    check_detail r2 = verify_l_pullback_zero(lax_left_mor(pick_s, xs), identity_functor(two), xs);
    CHECK(r2.ok);
    check_detail r3 = verify_l_pullback_zero(identity_lax(zt), constant_functor("pt", one, two, 1), xs);
    CHECK(r3.ok);

    lax_object c1 = make_lax_object(constant_functor("c1", one, x2, 1));
    CHECK_THROWS_AS(verify_l_pullback_zero(identity_lax(c1), identity_functor(one), xs), error);
}

TEST_CASE("pulling back along the counit recovers the zero structure") {
    auto x2 = fixtures::x2();
    auto x3 = fixtures::x3();
    auto two = fixtures::two_cat();
    auto one = fixtures::one_cat();

    x_structure xs(x2);
    lax_object f1 = make_lax_object(fixtures::thin_functor("F1", two, x2, {0, 1}));
    lax_object c0 = make_lax_object(constant_functor("c0", one, x2, 0));
    for (const auto &m : enumerate_lax_hom(c0, f1)) CHECK(verify_lu_pullback(m, xs).ok);
    CHECK(verify_lu_pullback(identity_lax(f1), xs).ok);

    x_structure xs3(x3);
    lax_object g = make_lax_object(fixtures::thin_functor("G", two, x3, {1, 2}));
    lax_object cm = make_lax_object(constant_functor("cm", one, x3, 1));
    for (const auto &m : enumerate_lax_hom(cm, g)) CHECK(verify_lu_pullback(m, xs3).ok);
}
